#pragma once

// Expert interval estimates E_1..E_n averaged into a staircase membership
// xi(x) = (1/n) * sum chi_{E_k}(x), then turned into a piecewise-linear
// fuzzy number with an apex inserted at membership 1.

#include <span>
#include <string>
#include <vector>

#include "fuzzcurve/fuzzy.hpp"

namespace fuzzcurve {

struct ExpertInterval {
  std::string source_id;
  double lower;
  double upper;
};

struct StaircaseLevel {
  double membership;  // k / n
  Interval cut;
};

/// Nested level sets of the averaged indicator functions.
struct StaircaseFN {
  std::vector<StaircaseLevel> levels;  // ascending membership, last one is 1
  double apex = 0.0;                   // single point placed at membership 1

  /// Height of the staircase at x (before apex insertion).
  double membership(double x) const;
  std::size_t experts() const noexcept { return levels.size(); }
};

/// Level k is [k-th smallest lower bound, k-th largest upper bound], the
/// apex is the midpoint of the common intersection.
///
/// Throws InvalidInput for an empty panel or lower > upper, NoOverlapError
/// naming a disjoint pair when the intersection is empty.
StaircaseFN aggregate(std::span<const ExpertInterval> estimates);

/// Piecewise-linear sides through the level endpoints at alpha = k/n for
/// k < n and through the apex at alpha = 1. Below 1/n the sides stay at the
/// lowest level's endpoints.
ParametricFN to_parametric(const StaircaseFN& s);

}  // namespace fuzzcurve
