#include "fuzzcurve/errors.hpp"

#include <utility>

namespace fuzzcurve {

namespace {

std::string describe_expected(const std::string& message, const std::vector<std::string>& expected) {
  if (expected.empty()) return message;
  std::string out = message + " (expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out + ")";
}

}  // namespace

ParseError::ParseError(std::string message, std::size_t offset, std::vector<std::string> expected)
    : Error(describe_expected(message, expected) + " at offset " + std::to_string(offset)),
      offset_(offset),
      expected_(std::move(expected)) {}

UnknownIdentifierError::UnknownIdentifierError(std::string identifier, std::size_t offset)
    : ParseError("unknown identifier '" + identifier + "'", offset), identifier_(std::move(identifier)) {}

DomainError::DomainError(std::string reason, std::string subexpression)
    : Error(reason + " in '" + subexpression + "'"), subexpression_(std::move(subexpression)) {}

QuadratureError::QuadratureError(std::string what, double best_estimate, double error_bound)
    : NumericError(what + " (best estimate " + std::to_string(best_estimate) + ", error bound " +
                   std::to_string(error_bound) + ")"),
      best_estimate_(best_estimate),
      error_bound_(error_bound) {}

BracketError::BracketError(std::string what, double closest_point)
    : NumericError(what + " (closest grid point " + std::to_string(closest_point) + ")"),
      closest_point_(closest_point) {}

NoOverlapError::NoOverlapError(std::string first, std::string second)
    : InvalidInput("estimates '" + first + "' and '" + second + "' do not overlap"),
      first_(std::move(first)),
      second_(std::move(second)) {}

}  // namespace fuzzcurve
