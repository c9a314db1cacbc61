#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "loghet/corpus.hpp"
#include "loghet/error.hpp"
#include "loghet/utf8.hpp"

namespace loghet {

struct MetricReport {
  double grouping_accuracy = 0.0;
  double template_accuracy = 0.0;
  double mean_edit_distance = 0.0;

  friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

namespace detail {

inline void check_same_length(const ParseResult& predicted, const ParseResult& truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorKind::shape, "predicted has " + std::to_string(predicted.size()) +
                                      " templates, truth has " + std::to_string(truth.size()));
  }
}

// Dense group ids by first appearance.
inline std::vector<std::size_t> group_ids(const ParseResult& result) {
  std::unordered_map<std::string_view, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(result.size());
  for (const auto& t : result.templates) {
    auto [it, inserted] = ids.emplace(t.text(), ids.size());
    out.push_back(it->second);
  }
  return out;
}

}  // namespace detail

// Levenshtein distance over code points, unit costs.
inline std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Two rolling rows over the shorter string.
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

inline std::size_t edit_distance(std::string_view a, std::string_view b) {
  return edit_distance(std::u32string_view(utf8::decode(a)), std::u32string_view(utf8::decode(b)));
}

// Fraction of records whose predicted group (records sharing the predicted
// template) is exactly their ground-truth group. Template strings themselves
// are irrelevant, only the partition they induce.
inline double grouping_accuracy(const ParseResult& predicted, const ParseResult& truth) {
  detail::check_same_length(predicted, truth);
  if (predicted.size() == 0) return 1.0;
  const auto pred = detail::group_ids(predicted);
  const auto gold = detail::group_ids(truth);
  std::unordered_map<std::size_t, std::size_t> pred_size;
  std::unordered_map<std::size_t, std::size_t> gold_size;
  std::unordered_map<std::uint64_t, std::size_t> joint;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    ++pred_size[pred[i]];
    ++gold_size[gold[i]];
    ++joint[(static_cast<std::uint64_t>(pred[i]) << 32) | gold[i]];
  }
  // The two groups are equal iff both have the size of their intersection.
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const std::size_t both = joint[(static_cast<std::uint64_t>(pred[i]) << 32) | gold[i]];
    if (both == pred_size[pred[i]] && both == gold_size[gold[i]]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pred.size());
}

inline double template_accuracy(const ParseResult& predicted, const ParseResult& truth) {
  detail::check_same_length(predicted, truth);
  if (predicted.size() == 0) return 1.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted.templates[i] == truth.templates[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

// Mean per-record distance between predicted and true template strings.
inline double mean_edit_distance(const ParseResult& predicted, const ParseResult& truth) {
  detail::check_same_length(predicted, truth);
  if (predicted.size() == 0) {
    throw Error(ErrorKind::undefined_metric, "mean edit distance of an empty result is undefined");
  }
  // Integer sum in record order, so the mean does not depend on scheduling.
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    total += edit_distance(predicted.templates[i].text(), truth.templates[i].text());
  }
  return static_cast<double>(total) / static_cast<double>(predicted.size());
}

inline MetricReport evaluate(const ParseResult& predicted, const ParseResult& truth) {
  return {grouping_accuracy(predicted, truth), template_accuracy(predicted, truth),
          mean_edit_distance(predicted, truth)};
}

}  // namespace loghet
