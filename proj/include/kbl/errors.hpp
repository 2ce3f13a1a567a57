#ifndef KBL_ERRORS_HPP
#define KBL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kbl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown sort, malformed vocabulary declaration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A function table has no entry for the requested argument tuple, or a term
// could not be reduced to a domain element.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Undeclared predicate, relation, agent or symbol; arity mismatch.
class VocabularyError : public Error {
 public:
  using Error::Error;
};

// Insertion would make a knowledge base derive both a formula and its negation.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Formula of the wrong shape for its destination (e.g. non-atomic fact for the
// environment, C/D modality in a knowledge base).
class KindError : public Error {
 public:
  using Error::Error;
};

class UnsupportedModality : public Error {
 public:
  using Error::Error;
};

// Step budget or size guard exceeded.
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(format(msg, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& msg, int line, int column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
  }
  int line_;
  int column_;
};

}  // namespace kbl

#endif  // KBL_ERRORS_HPP
