#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace domino {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct Violation {
  enum class Kind {
    NonSimpleInBooleanRole,   // non-atomic role expression mentions a non-simple role
    NonSimpleInCounting,      // counting restriction over a non-simple role
    UnrestrictedRole,         // role expression satisfied by the empty role set
    NumberTooLarge,
    ReservedName,
  };
  Kind kind;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> v)
      : Error(summary(v)), violations_(std::move(v)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summary(const std::vector<Violation>& v) {
    std::string s = "knowledge base is not in the supported fragment";
    for (const auto& x : v) s += "\n  " + x.message;
    return s;
  }
  std::vector<Violation> violations_;
};

// Input exceeds a configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace domino
