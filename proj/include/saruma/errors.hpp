#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace saruma {

// Base class for every domain error thrown by the library. Anything derived
// from it is a property of the inputs, not a bug.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

// Thrown by divide_exact when the remainder exceeds tolerance.
class NotAFactor : public Error {
 public:
  NotAFactor(const std::string& what, double max_remainder = 0.0)
      : Error(what), max_remainder_(max_remainder) {}
  double max_remainder() const { return max_remainder_; }

 private:
  double max_remainder_;
};

// Thrown by the inverse Levinson-Durbin recursion when some |beta_k| falls
// within unit_eps of 1 and the division by 1 - beta^2 would blow up.
//
// `partial` holds the values extracted before the stop, highest lag first:
// partial[0] = beta_n, partial[1] = beta_{n-1}, ..., and the last entry is
// the unit value beta_k itself. Callers can use it to resume factoring by
// hand.
class UnitPacfEncountered : public Error {
 public:
  UnitPacfEncountered(std::size_t index, std::vector<double> partial)
      : Error("unit partial autocorrelation at index " + std::to_string(index)),
        index_(index),
        partial_(std::move(partial)) {}
  std::size_t index() const { return index_; }
  const std::vector<double>& partial() const { return partial_; }

 private:
  std::size_t index_;
  std::vector<double> partial_;
};

// split_after_unit called at a position whose value is not +1 or -1.
class NotUnitAt : public Error {
 public:
  NotUnitAt(std::size_t index, const std::string& detail)
      : Error("no unit value at index " + std::to_string(index) + ": " + detail),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// Zero-location counting is undefined when some |beta| is within unit_eps
// of 1.
class IllDefinedRCs : public Error {
 public:
  using Error::Error;
};

// build_from_pacf: pinned values are only meaningful on the AR sides.
class PinnedMA : public Error {
 public:
  using Error::Error;
};

struct Violation {
  std::string component;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(summarize(violations)), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string summarize(const std::vector<Violation>& vs) {
    std::string msg = "model validation failed:";
    for (const auto& v : vs) msg += " [" + v.component + "] " + v.message + ";";
    return msg;
  }
  std::vector<Violation> violations_;
};

class SeriesTooShort : public Error {
 public:
  using Error::Error;
};

class NonInvertibleMA : public Error {
 public:
  using Error::Error;
};

class SimulationOverflow : public Error {
 public:
  using Error::Error;
};

class CsvParseError : public Error {
 public:
  CsvParseError(const std::string& source, std::size_t line, const std::string& detail)
      : Error(source + ":" + std::to_string(line) + ": " + detail), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InvalidTemplate : public Error {
 public:
  using Error::Error;
};

class AllStartsFailed : public Error {
 public:
  using Error::Error;
};

// The dense eigenvalue solver behind the root oracle did not converge.
class RootSolveError : public Error {
 public:
  using Error::Error;
};

}  // namespace saruma
