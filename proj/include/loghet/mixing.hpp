#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "loghet/corpus.hpp"
#include "loghet/error.hpp"
#include "loghet/pool.hpp"
#include "loghet/random.hpp"

namespace loghet {

inline constexpr double kMaxMixFraction = 0.25;

struct MixConfig {
  double strength = 0.0;  // 0..1, maps linearly onto 0..25% of the lines
  std::uint64_t seed = 0;
  bool exclude_source = true;
};

// floor(0.25 * strength * n).
inline std::size_t mix_replacement_count(double strength, std::size_t n) {
  if (!(strength >= 0.0 && strength <= 1.0)) {
    throw Error(ErrorKind::invalid_argument, "mix strength must be in [0, 1]");
  }
  const double raw = kMaxMixFraction * strength * static_cast<double>(n);
  return std::min(static_cast<std::size_t>(std::floor(raw + 1e-9)), n);
}

// Positions to overwrite, in priority order: templates by descending
// frequency; within a template ascending position; templates of equal
// frequency interleaved round-robin (ordered by first appearance).
inline std::vector<std::size_t> replacement_targets(std::span<const Template> labels,
                                                    std::size_t k) {
  std::map<Template, std::size_t> first_group;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = first_group.emplace(labels[i], groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  // Groups are already in first-appearance order; stable sort by size.
  std::vector<std::size_t> order(groups.size());
  for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return groups[a].size() > groups[b].size();
  });
  std::vector<std::size_t> targets;
  targets.reserve(std::min(k, labels.size()));
  std::size_t tier_begin = 0;
  while (tier_begin < order.size() && targets.size() < k) {
    std::size_t tier_end = tier_begin;
    const std::size_t tier_size = groups[order[tier_begin]].size();
    while (tier_end < order.size() && groups[order[tier_end]].size() == tier_size) ++tier_end;
    for (std::size_t round = 0; round < tier_size && targets.size() < k; ++round) {
      for (std::size_t g = tier_begin; g < tier_end && targets.size() < k; ++g) {
        targets.push_back(groups[order[g]][round]);
      }
    }
    tier_begin = tier_end;
  }
  return targets;
}

// Mixing with explicit frequency labels (ground truth or parser output).
inline Dataset mix_with_labels(const Dataset& ds, std::span<const Template> labels,
                               const OutlierPool& pool, const MixConfig& cfg) {
  if (labels.size() != ds.size()) {
    throw Error(ErrorKind::shape, "labels have " + std::to_string(labels.size()) +
                                      " entries, dataset has " + std::to_string(ds.size()));
  }
  const std::size_t k = mix_replacement_count(cfg.strength, ds.size());
  Dataset out = ds;
  if (k == 0) return out;

  std::vector<const PoolEntry*> eligible;
  eligible.reserve(pool.size());
  for (const auto& e : pool.entries) {
    if (!cfg.exclude_source || e.source != ds.name) eligible.push_back(&e);
  }
  if (eligible.empty()) {
    throw Error(ErrorKind::empty_pool,
                "no outlier pool entries left after excluding source '" + ds.name + "'");
  }
  for (std::size_t idx : replacement_targets(labels, k)) {
    auto& rec = out.records[idx];
    auto rng = Rng::stream(cfg.seed, stream_domain::mix, rec.line_id);
    const PoolEntry& pick = *eligible[rng.index(eligible.size())];
    rec.content = pick.content;
    rec.ground_truth = pick.ground_truth;
    rec.source = pick.source;
  }
  return out;
}

inline Dataset mix(const Dataset& ds, const OutlierPool& pool, const MixConfig& cfg) {
  const auto labels = labels_of(ds);
  return mix_with_labels(ds, labels, pool, cfg);
}

// Frequency ranking from parser output instead of ground truth.
inline Dataset mix_with_parser_labels(const Dataset& ds, const ParseResult& parsed,
                                      const OutlierPool& pool, const MixConfig& cfg) {
  return mix_with_labels(ds, parsed.templates, pool, cfg);
}

}  // namespace loghet
