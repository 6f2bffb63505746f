#pragma once

#include <stdexcept>
#include <string>

namespace fsv {

// Parameter or argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A series or iteration failed to converge within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A transform evaluated outside its validity horizon (t >= t*).
class ValidityError : public std::runtime_error {
 public:
  explicit ValidityError(const std::string& what) : std::runtime_error(what) {}
};

// Operation called with the wrong model kind.
class ModelKindError : public std::logic_error {
 public:
  explicit ModelKindError(const std::string& what) : std::logic_error(what) {}
};

// Quoted price violates static no-arbitrage bounds.
class ArbitrageError : public std::invalid_argument {
 public:
  explicit ArbitrageError(const std::string& what) : std::invalid_argument(what) {}
};

// CSV/JSON input problems.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Estimation-specific failures.
class SingularWeightError : public std::runtime_error {
 public:
  explicit SingularWeightError(const std::string& what) : std::runtime_error(what) {}
};

class OptimizationError : public std::runtime_error {
 public:
  explicit OptimizationError(const std::string& what) : std::runtime_error(what) {}
};

class NestingError : public std::logic_error {
 public:
  explicit NestingError(const std::string& what) : std::logic_error(what) {}
};

class InfeasibleStartError : public std::runtime_error {
 public:
  explicit InfeasibleStartError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fsv
