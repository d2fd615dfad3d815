#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fuzzcurve {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `offset` is a byte offset into the source.
class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t offset, std::vector<std::string> expected = {});

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(std::string identifier, std::size_t offset);

  const std::string& identifier() const noexcept { return identifier_; }

 private:
  std::string identifier_;
};

/// Evaluation left the domain of an operator (arccos outside [-1,1], x/0, ...).
class DomainError : public Error {
 public:
  DomainError(std::string reason, std::string subexpression);

  const std::string& subexpression() const noexcept { return subexpression_; }

 private:
  std::string subexpression_;
};

/// A value violates the invariants of a domain type.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed to converge or to bracket a root.
class NumericError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public NumericError {
 public:
  QuadratureError(std::string what, double best_estimate, double error_bound);

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

class BracketError : public NumericError {
 public:
  BracketError(std::string what, double closest_point);

  double closest_point() const noexcept { return closest_point_; }

 private:
  double closest_point_;
};

/// Expert panel whose estimates do not share a common point.
class NoOverlapError : public InvalidInput {
 public:
  NoOverlapError(std::string first, std::string second);

  const std::string& first() const noexcept { return first_; }
  const std::string& second() const noexcept { return second_; }

 private:
  std::string first_;
  std::string second_;
};

}  // namespace fuzzcurve
