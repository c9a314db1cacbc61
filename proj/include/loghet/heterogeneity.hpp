#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>

#include "loghet/corpus.hpp"
#include "loghet/error.hpp"
#include "loghet/utf8.hpp"

namespace loghet {

// Proxy counts for how diverse a set of log lines is.
struct ProxyStats {
  std::size_t unique_words = 0;
  std::size_t unique_chars = 0;
  std::size_t unique_line_lengths = 0;

  friend bool operator==(const ProxyStats&, const ProxyStats&) = default;
};

// Normalization anchor. Defaults to the industry corpus counts, which by
// construction scores H = 1.
struct ReferenceStats {
  double unique_words = 4421;
  double unique_chars = 92;
  double unique_line_lengths = 181;
};

struct HeterogeneityWeights {
  double words = 0.4;
  double chars = 0.2;
  double line_lengths = 0.4;
};

struct HeterogeneityScore {
  double h = 0.0;
  // Capped ratios: words, chars, line lengths.
  std::array<double, 3> components{};
};

// Accumulates proxy statistics line by line.
class ProxyStatsBuilder {
 public:
  void add(std::string_view content) {
    for (auto word : split_words(content)) words_.emplace(word);
    const auto cps = utf8::decode(content);
    for (char32_t cp : cps) {
      if (cp != U'\n' && cp != U'\r') chars_.insert(cp);
    }
    lengths_.insert(cps.size());
    ++lines_;
  }

  std::size_t lines() const noexcept { return lines_; }

  ProxyStats stats() const { return {words_.size(), chars_.size(), lengths_.size()}; }

 private:
  std::unordered_set<std::string> words_;
  std::unordered_set<char32_t> chars_;
  std::unordered_set<std::size_t> lengths_;
  std::size_t lines_ = 0;
};

inline ProxyStats proxy_stats(const Dataset& ds) {
  if (ds.empty()) throw Error(ErrorKind::empty_input, "proxy stats of empty dataset '" + ds.name + "'");
  ProxyStatsBuilder builder;
  for (const auto& r : ds.records) builder.add(r.content);
  return builder.stats();
}

namespace detail {

inline void check_reference(const ReferenceStats& ref) {
  auto bad = [](double v) { return !(v > 0.0) || !std::isfinite(v); };
  if (bad(ref.unique_words) || bad(ref.unique_chars) || bad(ref.unique_line_lengths)) {
    throw Error(ErrorKind::invalid_reference, "reference statistics must be positive");
  }
}

}  // namespace detail

inline HeterogeneityScore h_score(const ProxyStats& stats, const ReferenceStats& ref = {},
                                  const HeterogeneityWeights& weights = {}) {
  detail::check_reference(ref);
  HeterogeneityScore score;
  score.components = {
      std::min(static_cast<double>(stats.unique_words) / ref.unique_words, 1.0),
      std::min(static_cast<double>(stats.unique_chars) / ref.unique_chars, 1.0),
      std::min(static_cast<double>(stats.unique_line_lengths) / ref.unique_line_lengths, 1.0),
  };
  score.h = weights.words * score.components[0] + weights.chars * score.components[1] +
            weights.line_lengths * score.components[2];
  return score;
}

inline HeterogeneityScore h_score(const Dataset& ds, const ReferenceStats& ref = {}) {
  return h_score(proxy_stats(ds), ref);
}

// Sample standard deviation (n - 1) of each reference-normalized proxy
// metric across datasets. Values are not capped here.
inline std::array<double, 3> metric_variability(std::span<const ProxyStats> stats,
                                                const ReferenceStats& ref = {}) {
  if (stats.size() < 2) {
    throw Error(ErrorKind::insufficient_data, "variability needs at least 2 datasets, got " +
                                                  std::to_string(stats.size()));
  }
  detail::check_reference(ref);
  std::array<double, 3> out{};
  const double n = static_cast<double>(stats.size());
  auto spread = [&](auto get, double denom) {
    double mean = 0.0;
    for (const auto& s : stats) mean += static_cast<double>(get(s)) / denom;
    mean /= n;
    double ss = 0.0;
    for (const auto& s : stats) {
      const double d = static_cast<double>(get(s)) / denom - mean;
      ss += d * d;
    }
    return std::sqrt(ss / (n - 1.0));
  };
  out[0] = spread([](const ProxyStats& s) { return s.unique_words; }, ref.unique_words);
  out[1] = spread([](const ProxyStats& s) { return s.unique_chars; }, ref.unique_chars);
  out[2] = spread([](const ProxyStats& s) { return s.unique_line_lengths; }, ref.unique_line_lengths);
  return out;
}

}  // namespace loghet
