#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "loghet/corpus.hpp"
#include "loghet/error.hpp"

namespace loghet {

struct PoolEntry {
  std::string content;
  Template ground_truth;
  std::string source;

  friend bool operator==(const PoolEntry&, const PoolEntry&) = default;
};

// Rare log lines gathered across datasets; the material mixing draws from.
struct OutlierPool {
  std::vector<PoolEntry> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }

  friend bool operator==(const OutlierPool&, const OutlierPool&) = default;
};

struct VariableEntry {
  std::string value;
  std::vector<std::string> sources;  // sorted, unique

  friend bool operator==(const VariableEntry&, const VariableEntry&) = default;
};

// Distinct variable values, sorted by value.
struct VariablePool {
  std::vector<VariableEntry> values;

  std::size_t size() const noexcept { return values.size(); }
  bool empty() const noexcept { return values.empty(); }

  friend bool operator==(const VariablePool&, const VariablePool&) = default;
};

struct SkippedRecord {
  std::string source;
  std::size_t line_id;

  friend bool operator==(const SkippedRecord&, const SkippedRecord&) = default;
};

struct VariablePoolBuild {
  VariablePool pool;
  std::vector<SkippedRecord> skipped;  // records whose content did not align
};

inline constexpr std::string_view kOutlierPoolFile = "outlier_pool.csv";
inline constexpr std::string_view kVariablePoolFile = "variable_pool.tsv";

// Indices of the records with the rarest templates: ascending template
// frequency, ties by position.
inline std::vector<std::size_t> rarest_first(std::span<const Template> labels) {
  const auto freq = template_frequency_map(labels);
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::size_t> count(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) count[i] = freq.at(labels[i]);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return count[a] < count[b]; });
  return order;
}

// ceil(fraction * n), tolerant of representation error in the fraction.
inline std::size_t fraction_count_ceil(double fraction, std::size_t n) {
  const double raw = fraction * static_cast<double>(n);
  const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::min(k, n);
}

inline OutlierPool build_outlier_pool(std::span<const Dataset> datasets, double outlier_fraction) {
  if (!(outlier_fraction > 0.0 && outlier_fraction <= 1.0)) {
    throw Error(ErrorKind::invalid_argument, "outlier fraction must be in (0, 1]");
  }
  OutlierPool pool;
  std::unordered_set<std::string> seen;
  for (const auto& ds : datasets) {
    const auto labels = labels_of(ds);
    const auto order = rarest_first(labels);
    const std::size_t take = fraction_count_ceil(outlier_fraction, ds.size());
    for (std::size_t i = 0; i < take; ++i) {
      const auto& rec = ds.records[order[i]];
      if (!seen.insert(rec.content).second) continue;
      pool.entries.push_back({rec.content, labels[order[i]], rec.source});
    }
  }
  return pool;
}

inline VariablePoolBuild build_variable_pool(std::span<const Dataset> datasets) {
  std::map<std::string, std::set<std::string>> collected;
  VariablePoolBuild out;
  for (const auto& ds : datasets) {
    const auto labels = labels_of(ds);
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const auto& rec = ds.records[i];
      if (!labels[i].has_wildcard()) continue;
      auto values = try_extract_variables(rec.content, labels[i]);
      if (!values) {
        out.skipped.push_back({rec.source, rec.line_id});
        continue;
      }
      for (auto& v : *values) {
        if (v.empty() || v.find_first_of("\r\n") != std::string::npos) continue;
        collected[std::move(v)].insert(rec.source);
      }
    }
  }
  out.pool.values.reserve(collected.size());
  for (auto& [value, sources] : collected) {
    out.pool.values.push_back({value, {sources.begin(), sources.end()}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Serialization

inline Dataset outlier_pool_to_dataset(const OutlierPool& pool) {
  Dataset ds{"outlier_pool", {}};
  ds.records.reserve(pool.size());
  for (const auto& e : pool.entries) {
    ds.records.push_back({ds.records.size() + 1, e.content, e.ground_truth, e.source});
  }
  return ds;
}

inline OutlierPool outlier_pool_from_dataset(const Dataset& ds) {
  const auto labels = labels_of(ds);
  OutlierPool pool;
  pool.entries.reserve(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    pool.entries.push_back({ds.records[i].content, labels[i], ds.records[i].source});
  }
  return pool;
}

inline std::string format_outlier_pool(const OutlierPool& pool) {
  return format_structured(outlier_pool_to_dataset(pool), SourceColumn::always);
}

inline OutlierPool parse_outlier_pool(std::string_view text) {
  return outlier_pool_from_dataset(parse_structured(text, "outlier_pool"));
}

namespace detail {

inline std::string escape_tsv(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

inline std::string unescape_tsv(std::string_view value, std::size_t line) {
  std::string out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] != '\\') {
      out.push_back(value[i]);
      continue;
    }
    if (i + 1 >= value.size()) {
      throw Error(ErrorKind::parse, "variable pool line " + std::to_string(line) + ": dangling escape");
    }
    const char next = value[++i];
    if (next == '\\') {
      out.push_back('\\');
    } else if (next == 't') {
      out.push_back('\t');
    } else {
      throw Error(ErrorKind::parse,
                  "variable pool line " + std::to_string(line) + ": unknown escape");
    }
  }
  return out;
}

}  // namespace detail

// One value per line, followed by its tab-separated source list. Tabs and
// backslashes inside values are backslash-escaped.
inline std::string format_variable_pool(const VariablePool& pool) {
  std::ostringstream out;
  for (const auto& v : pool.values) {
    out << detail::escape_tsv(v.value);
    for (const auto& s : v.sources) out << '\t' << s;
    out << '\n';
  }
  return out.str();
}

inline VariablePool parse_variable_pool(std::string_view text) {
  VariablePool pool;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    VariableEntry entry;
    std::size_t tab = line.find('\t');
    entry.value = detail::unescape_tsv(line.substr(0, tab), line_no);
    if (entry.value.empty()) {
      throw Error(ErrorKind::format, "variable pool line " + std::to_string(line_no) + ": empty value");
    }
    while (tab != std::string_view::npos) {
      const std::size_t next = line.find('\t', tab + 1);
      entry.sources.emplace_back(line.substr(tab + 1, next == std::string_view::npos ? next : next - tab - 1));
      tab = next;
    }
    pool.values.push_back(std::move(entry));
  }
  return pool;
}

inline void write_outlier_pool(const OutlierPool& pool, const std::filesystem::path& path) {
  write_file(path, format_outlier_pool(pool));
}

inline OutlierPool load_outlier_pool(const std::filesystem::path& path) {
  return parse_outlier_pool(read_file(path));
}

inline void write_variable_pool(const VariablePool& pool, const std::filesystem::path& path) {
  write_file(path, format_variable_pool(pool));
}

inline VariablePool load_variable_pool(const std::filesystem::path& path) {
  return parse_variable_pool(read_file(path));
}

// Accepts either a pool directory or the outlier pool file itself.
inline std::filesystem::path outlier_pool_path(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return path / kOutlierPoolFile;
  return path;
}

inline std::filesystem::path variable_pool_path(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return path / kVariablePoolFile;
  return path;
}

}  // namespace loghet
