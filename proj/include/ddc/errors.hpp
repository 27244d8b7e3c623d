#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <string>

namespace ddc {

class SyntaxError : public std::runtime_error {
public:
  SyntaxError(std::string message, std::size_t line, std::size_t column,
              std::string origin = {})
      : std::runtime_error(render(message, line, column, origin)),
        message_(std::move(message)), origin_(std::move(origin)), line_(line),
        column_(column) {}

  const std::string &message() const noexcept { return message_; }
  const std::string &origin() const noexcept { return origin_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  static std::string render(const std::string &message, std::size_t line,
                            std::size_t column, const std::string &origin) {
    std::string out = origin.empty() ? std::string("<input>") : origin;
    out += ':' + std::to_string(line) + ':' + std::to_string(column) +
           ": syntax error: " + message;
    return out;
  }

  std::string message_;
  std::string origin_;
  std::size_t line_;
  std::size_t column_;
};

class LoadError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class ErrorKind {
  Instantiation,
  Type,
  Evaluation,
  Resource,
  ShiftInCondition,
  UncaughtShift,
};

const char *to_string(ErrorKind kind) noexcept;

// Runtime errors raised while evaluating object-level goals. Distinct from
// goal failure, which is a value.
class EngineError : public std::runtime_error {
public:
  EngineError(ErrorKind kind, const std::string &message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace ddc
