#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfpq {

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(format(line, column, message)),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  static std::string format(std::size_t line, std::size_t column,
                            const std::string& message) {
    std::string out;
    if (line != 0) {
      out += "line " + std::to_string(line);
      if (column != 0) out += ", column " + std::to_string(column);
      out += ": ";
    }
    return out + message;
  }

  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// A caller broke an operation's precondition (e.g. handed a grammar that is
/// not in norm form to the recognizer).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Query evaluation failed on well-formed input (e.g. unresolvable names).
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfpq
