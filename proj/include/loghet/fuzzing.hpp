#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loghet/corpus.hpp"
#include "loghet/error.hpp"
#include "loghet/pool.hpp"
#include "loghet/random.hpp"

namespace loghet {

enum class FuzzMode { labeled, parser_driven };

struct FuzzConfig {
  std::uint64_t seed = 0;
  FuzzMode mode = FuzzMode::labeled;
};

struct FuzzResult {
  Dataset dataset;
  std::vector<std::size_t> skipped;  // line ids passed through unaligned
};

// Replaces every variable of every line with an independent uniform draw
// from the variable pool; the literal parts stay as they are. The template
// a record was fuzzed against becomes its ground truth.
inline FuzzResult fuzz(const Dataset& ds, const VariablePool& vpool, const FuzzConfig& cfg,
                       const ParseResult* parsed = nullptr) {
  if (vpool.empty()) throw Error(ErrorKind::empty_pool, "variable pool is empty");
  std::vector<Template> templates;
  if (cfg.mode == FuzzMode::labeled) {
    templates = labels_of(ds);
  } else {
    if (parsed == nullptr) {
      throw Error(ErrorKind::invalid_argument, "parser-driven fuzzing needs a parse result");
    }
    if (parsed->size() != ds.size()) {
      throw Error(ErrorKind::shape, "parse result has " + std::to_string(parsed->size()) +
                                        " templates, dataset has " + std::to_string(ds.size()));
    }
    templates = parsed->templates;
  }

  FuzzResult out{ds, {}};
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto& rec = out.dataset.records[i];
    const Template& templ = templates[i];
    auto values = try_extract_variables(rec.content, templ);
    if (!values) {
      out.skipped.push_back(rec.line_id);
      continue;
    }
    rec.ground_truth = templ;
    if (values->empty()) continue;
    auto rng = Rng::stream(cfg.seed, stream_domain::fuzz, rec.line_id);
    for (auto& v : *values) v = vpool.values[rng.index(vpool.size())].value;
    rec.content = substitute(templ, *values);
  }
  return out;
}

inline FuzzResult fuzz(const Dataset& ds, const VariablePool& vpool, const FuzzConfig& cfg,
                       const std::optional<ParseResult>& parsed) {
  return fuzz(ds, vpool, cfg, parsed ? &*parsed : nullptr);
}

}  // namespace loghet
