#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace loghet {

// Broad failure classes. The CLI maps these onto exit codes.
enum class ErrorKind {
  io,
  format,
  parse,
  alignment,
  labeling,
  shape,
  empty_input,
  invalid_reference,
  empty_pool,
  insufficient_data,
  allocation,
  undefined_metric,
  invalid_argument,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::io: return "io";
    case ErrorKind::format: return "format";
    case ErrorKind::parse: return "parse";
    case ErrorKind::alignment: return "alignment";
    case ErrorKind::labeling: return "labeling";
    case ErrorKind::shape: return "shape";
    case ErrorKind::empty_input: return "empty_input";
    case ErrorKind::invalid_reference: return "invalid_reference";
    case ErrorKind::empty_pool: return "empty_pool";
    case ErrorKind::insufficient_data: return "insufficient_data";
    case ErrorKind::allocation: return "allocation";
    case ErrorKind::undefined_metric: return "undefined_metric";
    case ErrorKind::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised when a template cannot be aligned against a log message.
class AlignmentError : public Error {
 public:
  AlignmentError(std::string content, std::string templ)
      : Error(ErrorKind::alignment,
              "cannot align content \"" + content + "\" with template \"" + templ + "\""),
        content_(std::move(content)),
        template_(std::move(templ)) {}

  const std::string& content() const noexcept { return content_; }
  const std::string& template_text() const noexcept { return template_; }

 private:
  std::string content_;
  std::string template_;
};

}  // namespace loghet
