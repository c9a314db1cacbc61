#pragma once

// Labeled synthetic log corpora. They stand in for public benchmark datasets
// when those are not at hand: every line is produced from a known template,
// so ground truth is exact.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "loghet/corpus.hpp"
#include "loghet/random.hpp"

namespace loghet::synthetic {

// Draws one variable value.
using ValueGen = std::function<std::string(Rng&)>;

struct TemplateSpec {
  std::string text;
  std::vector<ValueGen> slots;  // one per `<*>`
  std::size_t weight = 1;
};

namespace gen {

inline ValueGen integer(std::uint64_t lo, std::uint64_t hi) {
  return [=](Rng& rng) { return std::to_string(lo + rng.index(hi - lo + 1)); };
}

inline ValueGen choice(std::vector<std::string> options) {
  return [opts = std::move(options)](Rng& rng) { return opts[rng.index(opts.size())]; };
}

inline ValueGen ipv4() {
  return [](Rng& rng) {
    return std::to_string(10 + rng.index(200)) + "." + std::to_string(rng.index(256)) + "." +
           std::to_string(rng.index(256)) + "." + std::to_string(1 + rng.index(254));
  };
}

inline ValueGen hex(std::size_t digits) {
  return [=](Rng& rng) {
    static constexpr std::string_view kHex = "0123456789abcdef";
    std::string out = "0x";
    for (std::size_t i = 0; i < digits; ++i) out.push_back(kHex[rng.index(16)]);
    return out;
  };
}

inline ValueGen clock() {
  return [](Rng& rng) {
    auto two = [&](std::size_t n) {
      const auto v = rng.index(n);
      return (v < 10 ? "0" : "") + std::to_string(v);
    };
    std::string h = two(24);
    std::string m = two(60);
    std::string s = two(60);
    return h + ":" + m + ":" + s;
  };
}

}  // namespace gen

// Builds a labeled dataset of `lines` records. Template i is chosen with
// probability proportional to its weight; each slot draws from its own
// generator. Deterministic in `seed`.
inline Dataset generate(std::string name, const std::vector<TemplateSpec>& specs, std::size_t lines,
                        std::uint64_t seed) {
  std::size_t total = 0;
  for (const auto& s : specs) total += s.weight;
  Dataset ds{std::move(name), {}};
  ds.records.reserve(lines);
  Rng rng = Rng::stream(seed, stream_domain::synthetic, 0);
  std::vector<Template> templates;
  templates.reserve(specs.size());
  for (const auto& s : specs) templates.emplace_back(s.text);
  for (std::size_t i = 0; i < lines; ++i) {
    std::size_t pick = rng.index(total);
    std::size_t t = 0;
    while (pick >= specs[t].weight) pick -= specs[t++].weight;
    std::vector<std::string> values;
    values.reserve(specs[t].slots.size());
    for (const auto& slot : specs[t].slots) values.push_back(slot(rng));
    ds.records.push_back({i + 1, substitute(templates[t], values), templates[t], ds.name});
  }
  return ds;
}

// Six templates shaped like a small web-server error log, heavily skewed
// toward the first three. One slot never varies and one placeholder sits
// inside a bracketed token, so token-aligned parsers cannot recover every
// template exactly.
inline Dataset apache_like(std::size_t lines = 2000, std::uint64_t seed = 1) {
  const std::vector<TemplateSpec> specs = {
      {"jk2_init() Found child <*> in scoreboard slot <*>",
       {gen::integer(1000, 32000), gen::integer(6, 10)}, 415},
      {"workerEnv.init() ok <*>", {gen::choice({"/etc/httpd/conf/workers2.properties"})}, 285},
      {"mod_jk child workerEnv in error state <*>", {gen::integer(6, 10)}, 270},
      {"[client <*>] Directory index forbidden by rule: <*>",
       {gen::ipv4(), gen::choice({"/var/www/html/", "/var/www/html/docs/"})}, 16},
      {"jk2_init() Can't find child <*> in scoreboard", {gen::integer(1000, 32000)}, 8},
      {"mod_jk child init <*> <*>", {gen::integer(1, 2), gen::choice({"-2", "-1"})}, 6},
  };
  return generate("Apache", specs, lines, seed);
}

// Shape of a generated "system": how many templates, how rich its wording
// is, which characters it uses and what its variables look like.
struct FamilyProfile {
  std::size_t templates = 40;
  std::size_t vocabulary = 60;
  std::size_t capitals = 0;         // distinct uppercase initials, from 'A'
  std::string punctuation = ":";    // suffixes for literal tokens
  std::size_t max_literals = 9;
  // Relative weights of value kinds: few distinct values, dozens to
  // hundreds, effectively unique, and multi-word values.
  std::array<std::size_t, 4> value_mix = {1, 1, 1, 1};
  // Rare messages (the less frequent half of the templates) run longer and
  // carry free text more often, like error reports do.
  std::size_t tail_literals = 0;
  std::size_t tail_text_percent = 0;
};

namespace detail {

inline std::string pseudo_word(Rng& rng) {
  static constexpr std::array<std::string_view, 26> kSyllables = {
      "ka", "ro", "mi", "tel", "sor", "van", "qu", "ix", "den", "pha", "lo", "tra", "be",
      "gu", "nex", "ol", "pri", "zen", "cha", "ur", "vy", "mon", "sta", "fe", "jo", "wa"};
  std::string w;
  const std::size_t n = 2 + rng.index(3);
  for (std::size_t i = 0; i < n; ++i) w += kSyllables[rng.index(kSyllables.size())];
  return w;
}

inline std::vector<ValueGen> value_shapes(std::size_t kind, const std::vector<std::string>& vocab) {
  auto word = [vocab](Rng& r) { return vocab[r.index(vocab.size())]; };
  switch (kind) {
    case 0: {
      std::vector<std::string> few;
      for (std::size_t i = 0; i < 4 && i < vocab.size(); ++i) few.push_back(vocab[i]);
      return {gen::integer(0, 9), gen::choice(few)};
    }
    case 1:
      return {gen::integer(0, 999), word,
              [word](Rng& r) { return word(r) + "-" + std::to_string(r.index(8)); }};
    case 2:
      return {gen::integer(0, 99999), gen::ipv4(), gen::hex(8), gen::clock(),
              [word](Rng& r) { return "/" + word(r) + "/" + word(r) + std::to_string(r.index(1000)) + ".log"; }};
    default:
      return {
          // Free text, as in exception messages or user-supplied names.
          [word](Rng& r) {
            std::string s = word(r);
            const std::size_t n = 3 + r.index(16);
            for (std::size_t i = 0; i < n; ++i) s += " " + word(r);
            return s;
          },
          // Configuration dumps.
          [word](Rng& r) {
            std::string s;
            const std::size_t n = 3 + r.index(8);
            for (std::size_t i = 0; i < n; ++i) {
              if (i) s += ", ";
              s += word(r) + "=" + (r.index(2) ? word(r) : std::to_string(r.index(100)));
            }
            return s;
          },
          // Stack frames.
          [word](Rng& r) {
            std::string s;
            const std::size_t n = 2 + r.index(4);
            for (std::size_t i = 0; i < n; ++i) {
              if (i) s += " ";
              s += "at " + word(r) + "." + word(r) + "(" + word(r) + ".java:" + std::to_string(r.index(400)) + ")";
            }
            return s;
          },
          [word](Rng& r) {
            static constexpr std::array<std::string_view, 4> kStatus = {"200", "304", "404", "500"};
            return "get /" + word(r) + "/" + word(r) + " http/1.1 " + std::string(kStatus[r.index(4)]);
          },
      };
  }
}

}  // namespace detail

// A randomly generated system with its own vocabulary, punctuation and value
// shapes. Template weights follow a Zipf-like curve.
inline Dataset family(std::string name, std::uint64_t seed, std::size_t lines = 2000,
                      const FamilyProfile& profile = {}) {
  Rng rng = Rng::stream(seed, stream_domain::synthetic, 1);
  std::vector<std::string> vocab;
  for (std::size_t i = 0; i < profile.vocabulary; ++i) {
    std::string w = detail::pseudo_word(rng);
    if (profile.capitals && rng.index(3) == 0) w[0] = static_cast<char>('A' + rng.index(profile.capitals));
    vocab.push_back(std::move(w));
  }
  std::array<std::vector<ValueGen>, 4> shapes;
  std::size_t mix_total = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    shapes[k] = detail::value_shapes(k, vocab);
    mix_total += profile.value_mix[k];
  }
  auto pick_shape = [&]() {
    std::size_t r = rng.index(mix_total);
    std::size_t k = 0;
    while (r >= profile.value_mix[k]) r -= profile.value_mix[k++];
    return shapes[k][rng.index(shapes[k].size())];
  };

  std::vector<TemplateSpec> specs;
  for (std::size_t t = 0; t < profile.templates; ++t) {
    TemplateSpec spec;
    const bool rare = 2 * t >= profile.templates;
    const std::size_t literal_count =
        2 + rng.index(profile.max_literals - 1 + (rare ? profile.tail_literals : 0));
    const std::size_t wildcard_count = 1 + rng.index(3);
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < literal_count; ++i) {
      std::string tok = vocab[rng.index(vocab.size())];
      if (!profile.punctuation.empty() && rng.index(3) == 0) {
        tok += profile.punctuation[rng.index(profile.punctuation.size())];
      }
      tokens.push_back(std::move(tok));
    }
    for (std::size_t i = 0; i < wildcard_count; ++i) {
      // Never in front, so the template keeps a literal anchor.
      const std::size_t at = 1 + rng.index(tokens.size());
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(at), std::string(kWildcard));
      if (rare && rng.index(100) < profile.tail_text_percent) {
        spec.slots.push_back(shapes[3][rng.index(shapes[3].size())]);
      } else {
        spec.slots.push_back(pick_shape());
      }
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (i) spec.text += ' ';
      spec.text += tokens[i];
    }
    spec.weight = 1 + 1000 / (t + 1);
    specs.push_back(std::move(spec));
  }
  return generate(std::move(name), specs, lines, seed);
}

// Template counts and character sets follow a public nine-system benchmark.
// Rare templates carry long free-text values, so the pooled variables are
// mostly multi-token; this is what makes fuzzing hurt a tree parser.
inline const std::vector<std::pair<std::string, FamilyProfile>>& benchmark_profiles() {
  static const std::vector<std::pair<std::string, FamilyProfile>> profiles = {
      {"Bgl", {120, 150, 22, ":.=()[]_", 9, {2, 1, 0, 6}, 8, 90}},
      {"Hdfs", {14, 30, 10, "_:./", 8, {0, 1, 4, 0}, 0, 0}},
      {"Health", {75, 90, 20, ":|=#[]_", 6, {2, 1, 0, 5}, 6, 90}},
      {"Hpc", {46, 50, 16, ":-=()_", 5, {4, 1, 0, 3}, 4, 90}},
      {"Mac", {341, 300, 26, ":.=()[]{}<>@#$%&*+?!'_", 12, {1, 1, 0, 8}, 10, 90}},
      {"Openstack", {43, 70, 20, ":.=()[]\"_", 8, {2, 1, 0, 5}, 6, 90}},
      {"Spark", {36, 90, 20, ":.=()[]_", 8, {2, 1, 0, 5}, 6, 90}},
      {"Windows", {50, 80, 26, ":.=()[]{}\\_", 9, {2, 1, 0, 5}, 6, 90}},
  };
  return profiles;
}

// Eight distinct families plus the apache-like set: a stand-in for the
// nine-dataset benchmark used to build pools.
inline std::vector<Dataset> benchmark_suite(std::size_t lines = 2000, std::uint64_t seed = 1) {
  std::vector<Dataset> out;
  out.push_back(apache_like(lines, seed));
  const auto& profiles = benchmark_profiles();
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    out.push_back(family(profiles[i].first, seed * 1000 + i, lines, profiles[i].second));
  }
  return out;
}

}  // namespace loghet::synthetic
