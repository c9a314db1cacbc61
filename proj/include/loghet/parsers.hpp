#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <regex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "loghet/corpus.hpp"
#include "loghet/error.hpp"

namespace loghet {

enum class ParserKind { tree, token_frequency, identity };

inline std::string_view to_string(ParserKind kind) {
  switch (kind) {
    case ParserKind::tree: return "tree";
    case ParserKind::token_frequency: return "tokenfreq";
    case ParserKind::identity: return "identity";
  }
  return "unknown";
}

inline ParserKind parser_kind_from_string(std::string_view name) {
  if (name == "tree" || name == "drain") return ParserKind::tree;
  if (name == "tokenfreq" || name == "token-frequency" || name == "lfa") {
    return ParserKind::token_frequency;
  }
  if (name == "identity") return ParserKind::identity;
  throw Error(ErrorKind::invalid_argument, "unknown parser '" + std::string(name) + "'");
}

struct TreeParserConfig {
  std::size_t depth = 4;  // root and length layer included
  double similarity_threshold = 0.4;
  std::size_t max_children = 100;
};

struct TokenFrequencyConfig {
  double threshold = 0.5;
};

struct ParserConfig {
  ParserKind kind = ParserKind::tree;
  TreeParserConfig tree;
  TokenFrequencyConfig tokenfreq;
  // Optional regexes; a token fully matching one is replaced by `<*>`
  // before parsing. Empty by default.
  std::vector<std::string> masks;

  void validate() const {
    if (tree.depth < 3) throw Error(ErrorKind::invalid_argument, "tree depth must be at least 3");
    if (!(tree.similarity_threshold > 0.0 && tree.similarity_threshold < 1.0)) {
      throw Error(ErrorKind::invalid_argument, "similarity threshold must be in (0, 1)");
    }
    if (tree.max_children < 2) {
      throw Error(ErrorKind::invalid_argument, "max children must be at least 2");
    }
    if (!(tokenfreq.threshold > 0.0 && tokenfreq.threshold <= 1.0)) {
      throw Error(ErrorKind::invalid_argument, "token frequency threshold must be in (0, 1]");
    }
  }
};

inline std::string describe(const ParserConfig& cfg) {
  switch (cfg.kind) {
    case ParserKind::tree: {
      std::string s = "tree(depth=" + std::to_string(cfg.tree.depth) +
                      ",st=" + std::to_string(cfg.tree.similarity_threshold) +
                      ",max_children=" + std::to_string(cfg.tree.max_children);
      if (!cfg.masks.empty()) s += ",masks=" + std::to_string(cfg.masks.size());
      return s + ")";
    }
    case ParserKind::token_frequency: {
      std::string s = "tokenfreq(threshold=" + std::to_string(cfg.tokenfreq.threshold);
      if (!cfg.masks.empty()) s += ",masks=" + std::to_string(cfg.masks.size());
      return s + ")";
    }
    case ParserKind::identity: return "identity";
  }
  return "unknown";
}

namespace detail {

class Masker {
 public:
  explicit Masker(const std::vector<std::string>& patterns) {
    for (const auto& p : patterns) {
      try {
        regexes_.emplace_back(p, std::regex::ECMAScript | std::regex::optimize);
      } catch (const std::regex_error& e) {
        throw Error(ErrorKind::invalid_argument, "bad mask '" + p + "': " + e.what());
      }
    }
  }

  std::vector<std::string> tokenize(std::string_view content) const {
    std::vector<std::string> tokens;
    for (auto word : split_words(content)) {
      const bool masked = std::any_of(regexes_.begin(), regexes_.end(), [&](const std::regex& re) {
        return std::regex_match(word.begin(), word.end(), re);
      });
      tokens.emplace_back(masked ? std::string(kWildcard) : std::string(word));
    }
    return tokens;
  }

 private:
  std::vector<std::regex> regexes_;
};

inline std::string join_tokens(const std::vector<std::string>& tokens) {
  if (tokens.empty()) return std::string(kWildcard);
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

inline bool has_digit(std::string_view token) {
  return std::any_of(token.begin(), token.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace detail

// Online fixed-depth prefix-tree parser. Lines are routed by token count and
// then by their leading tokens; inside a leaf a line joins the most similar
// group if the similarity reaches the threshold, otherwise it starts a new
// group. Disagreeing positions of a group's template become `<*>`.
//
// One instance owns its tree; it is not safe to share across threads.
class TreeParser {
 public:
  explicit TreeParser(TreeParserConfig cfg = {}, const std::vector<std::string>& masks = {})
      : cfg_(cfg), masker_(masks) {}

  // Returns the group the line joined at insertion time.
  std::size_t add(std::string_view content) {
    auto tokens = masker_.tokenize(content);
    Node* leaf = search(tokens);
    std::size_t id = leaf ? best_match(*leaf, tokens) : kNone;
    if (id == kNone) {
      id = groups_.size();
      groups_.push_back({tokens, id});
      insert(tokens).groups.push_back(id);
    } else {
      generalize(*leaf, id, tokens);
    }
    assignment_.push_back(id);
    return id;
  }

  std::size_t lines() const noexcept { return assignment_.size(); }

  // Current template of the group holding line `index` (0-based).
  std::string template_of(std::size_t index) const {
    return detail::join_tokens(groups_[find(assignment_[index])].tokens);
  }

  // Final templates for all lines added so far.
  ParseResult result() const {
    ParseResult out;
    out.templates.reserve(assignment_.size());
    std::vector<std::optional<Template>> cache(groups_.size());
    for (std::size_t g : assignment_) {
      const std::size_t root = find(g);
      if (!cache[root]) cache[root] = Template(detail::join_tokens(groups_[root].tokens));
      out.templates.push_back(*cache[root]);
    }
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Group {
    std::vector<std::string> tokens;
    std::size_t parent;  // union-find link for merged groups
  };

  struct Node {
    std::map<std::string, std::unique_ptr<Node>, std::less<>> children;
    std::vector<std::size_t> groups;
  };

  std::size_t find(std::size_t g) const {
    while (groups_[g].parent != g) g = groups_[g].parent;
    return g;
  }

  std::size_t token_layers(std::size_t n) const { return std::min(cfg_.depth - 2, n); }

  Node& child(Node& node, const std::string& key) {
    auto& slot = node.children[key];
    if (!slot) slot = std::make_unique<Node>();
    return *slot;
  }

  // Read-only walk: exact token branch, else the wildcard branch.
  Node* search(const std::vector<std::string>& tokens) {
    auto root = by_length_.find(tokens.size());
    if (root == by_length_.end()) return nullptr;
    Node* node = &root->second;
    for (std::size_t layer = 0; layer < token_layers(tokens.size()); ++layer) {
      if (auto it = node->children.find(tokens[layer]); it != node->children.end()) {
        node = it->second.get();
      } else if (auto wc = node->children.find(kWildcard); wc != node->children.end()) {
        node = wc->second.get();
      } else {
        return nullptr;
      }
    }
    return node;
  }

  // Walks and grows the tree for a new group. Tokens with digits go to the
  // wildcard branch; once a node is full, new tokens do too.
  Node& insert(const std::vector<std::string>& tokens) {
    Node* node = &by_length_[tokens.size()];
    const std::string wildcard(kWildcard);
    for (std::size_t layer = 0; layer < token_layers(tokens.size()); ++layer) {
      const std::string& tok = tokens[layer];
      if (auto it = node->children.find(tok); it != node->children.end()) {
        node = it->second.get();
      } else if (detail::has_digit(tok)) {
        node = &child(*node, wildcard);
      } else if (node->children.size() + 1 < cfg_.max_children ||
                 (node->children.count(wildcard) != 0 &&
                  node->children.size() < cfg_.max_children)) {
        node = &child(*node, tok);
      } else {
        node = &child(*node, wildcard);
      }
    }
    return *node;
  }

  std::size_t best_match(const Node& leaf, const std::vector<std::string>& tokens) const {
    std::size_t best = kNone;
    double best_sim = -1.0;
    std::size_t best_params = 0;
    for (std::size_t id : leaf.groups) {
      const auto& tmpl = groups_[id].tokens;
      std::size_t same = 0;
      std::size_t params = 0;
      for (std::size_t i = 0; i < tmpl.size(); ++i) {
        if (tmpl[i] == kWildcard) {
          ++params;
        } else if (tmpl[i] == tokens[i]) {
          ++same;
        }
      }
      const double sim =
          tokens.empty() ? 1.0 : static_cast<double>(same) / static_cast<double>(tokens.size());
      if (sim > best_sim || (sim == best_sim && params > best_params)) {
        best = id;
        best_sim = sim;
        best_params = params;
      }
    }
    if (best != kNone && best_sim >= cfg_.similarity_threshold) return best;
    return kNone;
  }

  void generalize(Node& leaf, std::size_t id, const std::vector<std::string>& tokens) {
    auto& tmpl = groups_[id].tokens;
    bool changed = false;
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
      if (tmpl[i] != kWildcard && tmpl[i] != tokens[i]) {
        tmpl[i] = std::string(kWildcard);
        changed = true;
      }
    }
    if (!changed) return;
    // Fold groups that became identical into the older one.
    for (auto it = leaf.groups.begin(); it != leaf.groups.end();) {
      if (*it != id && groups_[*it].tokens == tmpl) {
        const std::size_t keep = std::min(*it, id);
        const std::size_t drop = std::max(*it, id);
        groups_[drop].parent = keep;
        leaf.groups.erase(std::find(leaf.groups.begin(), leaf.groups.end(), drop));
        id = keep;
        it = leaf.groups.begin();
        continue;
      }
      ++it;
    }
  }

  TreeParserConfig cfg_;
  detail::Masker masker_;
  std::map<std::size_t, Node> by_length_;
  std::vector<Group> groups_;
  std::vector<std::size_t> assignment_;
};

// Offline two-pass parser. Counts each token per (line length, position);
// a token whose count is below `threshold` times the count of the most
// frequent token in its line becomes `<*>`.
inline ParseResult token_frequency_parse(const Dataset& ds, const TokenFrequencyConfig& cfg,
                                         const std::vector<std::string>& masks = {}) {
  const detail::Masker masker(masks);
  std::vector<std::vector<std::string>> lines;
  lines.reserve(ds.size());
  for (const auto& r : ds.records) lines.push_back(masker.tokenize(r.content));

  // (length, position) -> token -> count
  std::map<std::pair<std::size_t, std::size_t>, std::unordered_map<std::string, std::size_t>> counts;
  for (const auto& tokens : lines) {
    for (std::size_t p = 0; p < tokens.size(); ++p) ++counts[{tokens.size(), p}][tokens[p]];
  }

  ParseResult out;
  out.templates.reserve(lines.size());
  std::vector<std::size_t> freq;
  for (auto& tokens : lines) {
    freq.assign(tokens.size(), 0);
    std::size_t top = 0;
    for (std::size_t p = 0; p < tokens.size(); ++p) {
      freq[p] = counts[{tokens.size(), p}][tokens[p]];
      top = std::max(top, freq[p]);
    }
    for (std::size_t p = 0; p < tokens.size(); ++p) {
      if (static_cast<double>(freq[p]) < cfg.threshold * static_cast<double>(top)) {
        tokens[p] = std::string(kWildcard);
      }
    }
    out.templates.emplace_back(detail::join_tokens(tokens));
  }
  return out;
}

// Returns the stored ground truth of every record.
inline ParseResult identity_parser(const Dataset& ds) { return ParseResult{labels_of(ds)}; }

inline ParseResult parse(const Dataset& ds, const ParserConfig& cfg) {
  cfg.validate();
  if (ds.empty()) throw Error(ErrorKind::empty_input, "cannot parse empty dataset '" + ds.name + "'");
  switch (cfg.kind) {
    case ParserKind::tree: {
      TreeParser parser(cfg.tree, cfg.masks);
      for (const auto& r : ds.records) parser.add(r.content);
      return parser.result();
    }
    case ParserKind::token_frequency: return token_frequency_parse(ds, cfg.tokenfreq, cfg.masks);
    case ParserKind::identity: return identity_parser(ds);
  }
  throw Error(ErrorKind::invalid_argument, "unknown parser kind");
}

}  // namespace loghet
