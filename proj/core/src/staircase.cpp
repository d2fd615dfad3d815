#include "fuzzcurve/staircase.hpp"

#include <algorithm>
#include <cmath>

#include "fuzzcurve/errors.hpp"

namespace fuzzcurve {

double StaircaseFN::membership(double x) const {
  double h = 0.0;
  for (const auto& level : levels) {
    if (level.cut.contains(x)) h = level.membership;
  }
  return h;
}

StaircaseFN aggregate(std::span<const ExpertInterval> estimates) {
  if (estimates.empty()) throw InvalidInput("expert panel is empty");
  for (const auto& e : estimates) {
    if (!std::isfinite(e.lower) || !std::isfinite(e.upper) || e.lower > e.upper)
      throw InvalidInput("estimate '" + e.source_id + "' needs finite lower <= upper");
  }

  // Common intersection; if empty, the largest lower bound and smallest upper
  // bound come from a pair of estimates that are disjoint themselves.
  const auto max_lower = std::max_element(estimates.begin(), estimates.end(),
                                          [](const auto& a, const auto& b) { return a.lower < b.lower; });
  const auto min_upper = std::min_element(estimates.begin(), estimates.end(),
                                          [](const auto& a, const auto& b) { return a.upper < b.upper; });
  if (max_lower->lower > min_upper->upper) throw NoOverlapError(min_upper->source_id, max_lower->source_id);

  std::vector<double> lowers;
  std::vector<double> uppers;
  for (const auto& e : estimates) {
    lowers.push_back(e.lower);
    uppers.push_back(e.upper);
  }
  std::sort(lowers.begin(), lowers.end());
  std::sort(uppers.begin(), uppers.end(), std::greater<>());

  const std::size_t n = estimates.size();
  StaircaseFN s;
  for (std::size_t k = 1; k <= n; ++k) {
    s.levels.push_back({static_cast<double>(k) / static_cast<double>(n), {lowers[k - 1], uppers[k - 1]}});
  }
  s.levels.back().membership = 1.0;
  s.apex = 0.5 * (max_lower->lower + min_upper->upper);
  return s;
}

ParametricFN to_parametric(const StaircaseFN& s) {
  if (s.levels.empty()) throw InvalidInput("staircase has no levels");
  const std::size_t n = s.levels.size();

  std::vector<Knot> d{{0.0, s.levels.front().cut.lower}};
  std::vector<Knot> u{{0.0, s.levels.front().cut.upper}};
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double alpha = s.levels[k].membership;
    d.push_back({alpha, s.levels[k].cut.lower});
    u.push_back({alpha, s.levels[k].cut.upper});
  }
  d.push_back({1.0, s.apex});
  u.push_back({1.0, s.apex});
  return ParametricFN(PiecewiseLinear(std::move(d)), PiecewiseLinear(std::move(u)));
}

}  // namespace fuzzcurve
