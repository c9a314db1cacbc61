#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "loghet/error.hpp"

namespace loghet {

inline constexpr std::string_view kWildcard = "<*>";

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Collapses whitespace runs to one space and trims both ends.
inline std::string canonicalize_template(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

// Splits on whitespace runs; never yields empty tokens.
inline std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) words.push_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

// A log template in canonical form: single-space separated tokens, each
// either literal text or containing the `<*>` placeholder.
class Template {
 public:
  explicit Template(std::string_view text) : text_(canonicalize_template(text)) {
    if (text_.empty()) throw Error(ErrorKind::format, "template has no tokens");
  }

  const std::string& text() const noexcept { return text_; }

  std::vector<std::string_view> tokens() const { return split_words(text_); }

  std::size_t wildcard_count() const noexcept {
    std::size_t count = 0;
    for (std::size_t pos = text_.find(kWildcard); pos != std::string::npos;
         pos = text_.find(kWildcard, pos + kWildcard.size())) {
      ++count;
    }
    return count;
  }

  bool has_wildcard() const noexcept { return text_.find(kWildcard) != std::string::npos; }

  // Literal pieces between placeholders; size is wildcard_count() + 1.
  std::vector<std::string_view> literals() const {
    std::vector<std::string_view> pieces;
    std::string_view rest = text_;
    for (std::size_t pos = rest.find(kWildcard); pos != std::string_view::npos;
         pos = rest.find(kWildcard)) {
      pieces.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + kWildcard.size());
    }
    pieces.push_back(rest);
    return pieces;
  }

  friend bool operator==(const Template&, const Template&) = default;
  friend auto operator<=>(const Template&, const Template&) = default;

 private:
  std::string text_;
};

// Blank text has no template.
inline std::optional<Template> make_template(std::string_view text) {
  if (canonicalize_template(text).empty()) return std::nullopt;
  return Template(text);
}

struct LogRecord {
  std::size_t line_id = 0;
  std::string content;
  std::optional<Template> ground_truth;
  std::string source;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

struct Dataset {
  std::string name;
  std::vector<LogRecord> records;

  std::size_t size() const noexcept { return records.size(); }
  bool empty() const noexcept { return records.empty(); }
  bool labeled() const {
    return std::all_of(records.begin(), records.end(),
                       [](const LogRecord& r) { return r.ground_truth.has_value(); });
  }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// One template per record, index-aligned with the dataset's records.
struct ParseResult {
  std::vector<Template> templates;

  std::size_t size() const noexcept { return templates.size(); }

  friend bool operator==(const ParseResult&, const ParseResult&) = default;
};

// Assigns line ids 1..N in current order.
inline void renumber(Dataset& ds) {
  for (std::size_t i = 0; i < ds.records.size(); ++i) ds.records[i].line_id = i + 1;
}

// Ground-truth templates of a fully labeled dataset.
inline std::vector<Template> labels_of(const Dataset& ds) {
  std::vector<Template> labels;
  labels.reserve(ds.size());
  std::vector<std::size_t> missing;
  for (const auto& r : ds.records) {
    if (r.ground_truth) {
      labels.push_back(*r.ground_truth);
    } else {
      missing.push_back(r.line_id);
    }
  }
  if (!missing.empty()) {
    std::string ids;
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
      if (i) ids += ",";
      ids += std::to_string(missing[i]);
    }
    if (missing.size() > 20) ids += ",...";
    throw Error(ErrorKind::labeling, "dataset '" + ds.name + "' has " +
                                         std::to_string(missing.size()) +
                                         " unlabeled records (line ids " + ids + ")");
  }
  return labels;
}

// ---------------------------------------------------------------------------
// Alignment

namespace detail {

// Matches a literal piece at `pos`. With `loose_spaces`, a whitespace run in
// the literal consumes a maximal non-empty whitespace run in the content;
// otherwise the match is byte for byte. Returns the end position or npos.
inline std::size_t match_literal(std::string_view content, std::size_t pos,
                                 std::string_view literal, bool loose_spaces) {
  if (!loose_spaces) {
    return content.substr(pos).starts_with(literal) ? pos + literal.size() : std::string_view::npos;
  }
  std::size_t i = 0;
  while (i < literal.size()) {
    if (is_space(literal[i])) {
      while (i < literal.size() && is_space(literal[i])) ++i;
      if (pos >= content.size() || !is_space(content[pos])) return std::string_view::npos;
      while (pos < content.size() && is_space(content[pos])) ++pos;
      continue;
    }
    if (pos >= content.size() || content[pos] != literal[i]) return std::string_view::npos;
    ++pos;
    ++i;
  }
  return pos;
}

// Character-level matcher: each placeholder takes the shortest non-empty
// span (leftmost first) that still lets the remainder match. Failed
// (placeholder, start) states are memoized, so the search is polynomial.
class CharAligner {
 public:
  CharAligner(std::string_view content, std::vector<std::string_view> literals, bool loose_spaces)
      : content_(content),
        literals_(std::move(literals)),
        loose_(loose_spaces),
        failed_((literals_.size()) * (content.size() + 1), false) {}

  std::optional<std::vector<std::string>> run() {
    const std::size_t start = match_literal(content_, 0, literals_[0], loose_);
    if (start == std::string_view::npos) return std::nullopt;
    if (literals_.size() == 1) {
      if (start != content_.size()) return std::nullopt;
      return std::vector<std::string>{};
    }
    spans_.assign(literals_.size() - 1, {0, 0});
    if (!solve(1, start)) return std::nullopt;
    std::vector<std::string> values;
    values.reserve(spans_.size());
    for (auto [b, e] : spans_) values.emplace_back(content_.substr(b, e - b));
    return values;
  }

 private:
  // Placeholder `slot` (1-based, preceding literals_[slot]) starts at `pos`.
  bool solve(std::size_t slot, std::size_t pos) {
    const std::size_t key = slot * (content_.size() + 1) + pos;
    if (failed_[key]) return false;
    const bool last = slot + 1 == literals_.size();
    for (std::size_t end = pos + 1; end <= content_.size(); ++end) {
      const std::size_t after = match_literal(content_, end, literals_[slot], loose_);
      if (after == std::string_view::npos) continue;
      if (last) {
        if (after != content_.size()) continue;
      } else if (!solve(slot + 1, after)) {
        continue;
      }
      spans_[slot - 1] = {pos, end};
      return true;
    }
    failed_[key] = true;
    return false;
  }

  std::string_view content_;
  std::vector<std::string_view> literals_;
  bool loose_;
  std::vector<bool> failed_;
  std::vector<std::pair<std::size_t, std::size_t>> spans_;
};

struct Span {
  std::size_t begin;
  std::size_t end;
};

inline std::vector<Span> word_spans(std::string_view text) {
  std::vector<Span> spans;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    if (j > i) spans.push_back({i, j});
    i = j;
  }
  return spans;
}

// Token-level matcher. Only valid when every template token is either the
// bare placeholder or placeholder-free and the content is single-spaced with
// no leading or trailing whitespace; under those conditions it agrees with
// CharAligner.
class TokenAligner {
 public:
  TokenAligner(std::string_view content, std::vector<std::string_view> tokens)
      : content_(content),
        words_(word_spans(content)),
        tokens_(std::move(tokens)),
        failed_((tokens_.size() + 1) * (words_.size() + 1), false) {}

  std::optional<std::vector<std::string>> run() {
    captured_.clear();
    if (!solve(0, 0)) return std::nullopt;
    std::vector<std::string> values;
    values.reserve(captured_.size());
    // captured_ is filled on the unwind, so it is in reverse order.
    for (auto it = captured_.rbegin(); it != captured_.rend(); ++it) {
      values.emplace_back(content_.substr(it->begin, it->end - it->begin));
    }
    return values;
  }

 private:
  bool solve(std::size_t t, std::size_t w) {
    if (t == tokens_.size()) return w == words_.size();
    const std::size_t key = t * (words_.size() + 1) + w;
    if (failed_[key]) return false;
    if (tokens_[t] == kWildcard) {
      for (std::size_t end = w + 1; end <= words_.size(); ++end) {
        if (solve(t + 1, end)) {
          captured_.push_back({words_[w].begin, words_[end - 1].end});
          return true;
        }
      }
    } else if (w < words_.size() &&
               content_.substr(words_[w].begin, words_[w].end - words_[w].begin) ==
                   tokens_[t]) {
      if (solve(t + 1, w + 1)) return true;
    }
    failed_[key] = true;
    return false;
  }

  std::string_view content_;
  std::vector<Span> words_;
  std::vector<std::string_view> tokens_;
  std::vector<bool> failed_;
  std::vector<Span> captured_;
};

inline bool token_alignable(std::string_view content, const std::vector<std::string_view>& tokens) {
  if (!content.empty() && (is_space(content.front()) || is_space(content.back()))) return false;
  for (std::size_t i = 0; i < content.size(); ++i) {
    if (is_space(content[i]) && (content[i] != ' ' || is_space(content[i + 1]))) return false;
  }
  return std::all_of(tokens.begin(), tokens.end(), [](std::string_view tok) {
    return tok == kWildcard || tok.find(kWildcard) == std::string_view::npos;
  });
}

}  // namespace detail

// Character-level alignment only; exposed so the token fast path can be
// checked against it. Literal whitespace is matched exactly first; contents
// whose spacing differs from the canonical template are retried with any
// whitespace run accepted for a literal space.
inline std::optional<std::vector<std::string>> align_by_characters(std::string_view content,
                                                                   const Template& templ) {
  if (auto exact = detail::CharAligner(content, templ.literals(), false).run()) return exact;
  return detail::CharAligner(content, templ.literals(), true).run();
}

// Captured variable values in placeholder order, or nullopt when the content
// does not match the template.
inline std::optional<std::vector<std::string>> try_extract_variables(std::string_view content,
                                                                     const Template& templ) {
  auto tokens = templ.tokens();
  if (detail::token_alignable(content, tokens)) {
    return detail::TokenAligner(content, std::move(tokens)).run();
  }
  return align_by_characters(content, templ);
}

inline std::vector<std::string> extract_variables(std::string_view content, const Template& templ) {
  auto values = try_extract_variables(content, templ);
  if (!values) throw AlignmentError(std::string(content), templ.text());
  return std::move(*values);
}

// Fills the template's placeholders in order. Inverse of extract_variables
// whenever the content's literal parts match the template byte for byte.
inline std::string substitute(const Template& templ, std::span<const std::string> values) {
  const auto pieces = templ.literals();
  if (values.size() + 1 != pieces.size()) {
    throw Error(ErrorKind::shape, "template \"" + templ.text() + "\" has " +
                                      std::to_string(pieces.size() - 1) + " placeholders, got " +
                                      std::to_string(values.size()) + " values");
  }
  std::string out(pieces[0]);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += values[i];
    out += pieces[i + 1];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frequencies

inline std::map<Template, std::size_t> template_frequency_map(std::span<const Template> labels) {
  std::map<Template, std::size_t> freq;
  for (const auto& t : labels) ++freq[t];
  return freq;
}

inline std::map<Template, std::size_t> template_frequency_map(const Dataset& ds) {
  const auto labels = labels_of(ds);
  return template_frequency_map(std::span<const Template>(labels));
}

// ---------------------------------------------------------------------------
// Comma-separated files

namespace csv {

struct Row {
  std::size_t number;  // 1-based, header included
  std::vector<std::string> fields;
};

// RFC 4180 reader. Blank lines are skipped; a quote inside an unquoted
// field, text after a closing quote, or an unterminated quote is an error.
inline std::vector<Row> parse(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<Row> rows;
  std::vector<std::string> fields;
  std::string field;
  std::size_t row_number = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto fail = [&](const std::string& msg) {
    throw Error(ErrorKind::parse, "malformed CSV at row " + std::to_string(row_number) + ": " + msg);
  };
  auto end_row = [&] {
    fields.push_back(std::move(field));
    field.clear();
    if (!(fields.size() == 1 && fields[0].empty())) rows.push_back({row_number, std::move(fields)});
    fields.clear();
    ++row_number;
  };
  while (i < n) {
    // Start of a field.
    if (text[i] == '"') {
      ++i;
      bool closed = false;
      while (i < n) {
        if (text[i] == '"') {
          if (i + 1 < n && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        field.push_back(text[i++]);
      }
      if (!closed) fail("unterminated quoted field");
      if (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
        fail("unexpected character after closing quote");
      }
    } else {
      while (i < n && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
        if (text[i] == '"') fail("quote inside unquoted field");
        field.push_back(text[i++]);
      }
    }
    if (i >= n) break;
    if (text[i] == ',') {
      fields.push_back(std::move(field));
      field.clear();
      ++i;
      if (i == n) break;
      continue;
    }
    // Row terminator: \n, \r\n or bare \r.
    if (text[i] == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
    ++i;
    end_row();
  }
  if (!field.empty() || !fields.empty()) end_row();
  return rows;
}

inline bool needs_quotes(std::string_view field) {
  return field.find_first_of(",\"\r\n") != std::string_view::npos;
}

inline void write_field(std::ostream& out, std::string_view field) {
  if (!needs_quotes(field)) {
    out << field;
    return;
  }
  out << '"';
  for (char c : field) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

inline void write_row(std::ostream& out, std::span<const std::string_view> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    write_field(out, fields[i]);
  }
  out << '\n';
}

}  // namespace csv

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorKind::io, "error while reading " + path.string());
  return buf.str();
}

inline void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.flush();
  if (!out) throw Error(ErrorKind::io, "error while writing " + path.string());
}

// "Apache_2k.log_structured.csv" -> "Apache".
inline std::string dataset_name_from_path(const std::filesystem::path& path) {
  const std::string file = path.filename().string();
  const auto cut = file.find_first_of("_.");
  std::string name = file.substr(0, cut);
  return name.empty() ? file : name;
}

namespace detail {

inline std::size_t parse_line_id(std::string_view text, std::size_t row) {
  std::size_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value == 0) {
    throw Error(ErrorKind::format,
                "row " + std::to_string(row) + ": LineId '" + std::string(text) +
                    "' is not a positive integer");
  }
  return value;
}

struct Header {
  std::map<std::string, std::size_t, std::less<>> columns;

  explicit Header(const csv::Row& row) {
    for (std::size_t i = 0; i < row.fields.size(); ++i) {
      std::string name = canonicalize_template(row.fields[i]);
      columns.emplace(std::move(name), i);
    }
  }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = columns.find(name);
    if (it == columns.end()) return std::nullopt;
    return it->second;
  }

  std::size_t require(std::string_view name) const {
    auto idx = find(name);
    if (!idx) throw Error(ErrorKind::format, "missing required column '" + std::string(name) + "'");
    return *idx;
  }
};

inline const std::string& field_at(const csv::Row& row, std::size_t idx, std::size_t width) {
  if (row.fields.size() != width) {
    throw Error(ErrorKind::parse, "row " + std::to_string(row.number) + " has " +
                                      std::to_string(row.fields.size()) + " fields, header has " +
                                      std::to_string(width));
  }
  return row.fields[idx];
}

inline void check_line_id(std::size_t got, std::size_t expected, std::size_t row) {
  if (got != expected) {
    throw Error(ErrorKind::format, "row " + std::to_string(row) + ": LineId " +
                                       std::to_string(got) + " breaks the 1..N sequence (expected " +
                                       std::to_string(expected) + ")");
  }
}

}  // namespace detail

// Parses the structured (LineId,Content,EventTemplate[,Source]) format.
inline Dataset parse_structured(std::string_view text, std::string name) {
  const auto rows = csv::parse(text);
  Dataset ds{std::move(name), {}};
  if (rows.empty()) throw Error(ErrorKind::format, "missing header row");
  const detail::Header header(rows.front());
  const std::size_t width = rows.front().fields.size();
  const std::size_t content_col = header.require("Content");
  const std::size_t template_col = header.require("EventTemplate");
  const auto id_col = header.find("LineId");
  const auto source_col = header.find("Source");
  ds.records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    LogRecord rec;
    rec.line_id = r;
    if (id_col) {
      const auto id = detail::parse_line_id(detail::field_at(row, *id_col, width), row.number);
      detail::check_line_id(id, r, row.number);
    }
    rec.content = detail::field_at(row, content_col, width);
    if (rec.content.find_first_of("\r\n") != std::string::npos) {
      throw Error(ErrorKind::format,
                  "row " + std::to_string(row.number) + ": content contains a line break");
    }
    rec.ground_truth = make_template(detail::field_at(row, template_col, width));
    if (source_col) rec.source = detail::field_at(row, *source_col, width);
    if (rec.source.empty()) rec.source = ds.name;
    ds.records.push_back(std::move(rec));
  }
  return ds;
}

inline Dataset load_structured(const std::filesystem::path& path,
                               std::optional<std::string> name = std::nullopt) {
  return parse_structured(read_file(path), name ? *name : dataset_name_from_path(path));
}

// One record per non-empty line; no labels.
inline Dataset parse_raw(std::string_view text, std::string name) {
  Dataset ds{std::move(name), {}};
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const bool blank = std::all_of(line.begin(), line.end(), is_space);
    if (!blank) {
      ds.records.push_back({ds.records.size() + 1, std::string(line), std::nullopt, ds.name});
    }
    start = end + 1;
  }
  return ds;
}

inline Dataset load_raw(const std::filesystem::path& path,
                        std::optional<std::string> name = std::nullopt) {
  return parse_raw(read_file(path), name ? *name : dataset_name_from_path(path));
}

// `.csv` files are structured, anything else is raw.
inline Dataset load_dataset(const std::filesystem::path& path,
                            std::optional<std::string> name = std::nullopt) {
  if (path.extension() == ".csv") return load_structured(path, std::move(name));
  return load_raw(path, std::move(name));
}

enum class SourceColumn { automatic, always, never };

inline std::string format_structured(const Dataset& ds,
                                     SourceColumn source = SourceColumn::automatic) {
  bool with_source = source == SourceColumn::always;
  if (source == SourceColumn::automatic) {
    with_source = std::any_of(ds.records.begin(), ds.records.end(),
                              [&](const LogRecord& r) { return r.source != ds.name; });
  }
  std::ostringstream out;
  if (with_source) {
    out << "LineId,Content,EventTemplate,Source\n";
  } else {
    out << "LineId,Content,EventTemplate\n";
  }
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    const auto& r = ds.records[i];
    const std::string id = std::to_string(i + 1);
    const std::string_view templ = r.ground_truth ? std::string_view(r.ground_truth->text()) : "";
    if (with_source) {
      const std::string_view row[] = {id, r.content, templ, r.source};
      csv::write_row(out, row);
    } else {
      const std::string_view row[] = {id, r.content, templ};
      csv::write_row(out, row);
    }
  }
  return out.str();
}

inline void write_dataset(const Dataset& ds, const std::filesystem::path& path,
                          SourceColumn source = SourceColumn::automatic) {
  write_file(path, format_structured(ds, source));
}

// Parser output: LineId,EventTemplate, index-aligned with its dataset.
inline ParseResult parse_parse_result(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw Error(ErrorKind::format, "missing header row");
  const detail::Header header(rows.front());
  const std::size_t width = rows.front().fields.size();
  const std::size_t template_col = header.require("EventTemplate");
  const auto id_col = header.find("LineId");
  ParseResult result;
  result.templates.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (id_col) {
      const auto id = detail::parse_line_id(detail::field_at(row, *id_col, width), row.number);
      detail::check_line_id(id, r, row.number);
    }
    auto templ = make_template(detail::field_at(row, template_col, width));
    if (!templ) {
      throw Error(ErrorKind::format, "row " + std::to_string(row.number) + ": empty EventTemplate");
    }
    result.templates.push_back(std::move(*templ));
  }
  return result;
}

inline ParseResult load_parse_result(const std::filesystem::path& path) {
  return parse_parse_result(read_file(path));
}

inline std::string format_parse_result(const ParseResult& result) {
  std::ostringstream out;
  out << "LineId,EventTemplate\n";
  for (std::size_t i = 0; i < result.templates.size(); ++i) {
    const std::string id = std::to_string(i + 1);
    const std::string_view row[] = {id, result.templates[i].text()};
    csv::write_row(out, row);
  }
  return out.str();
}

inline void write_parse_result(const ParseResult& result, const std::filesystem::path& path) {
  write_file(path, format_parse_result(result));
}

}  // namespace loghet
