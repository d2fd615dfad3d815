#pragma once

// Level-wise fuzzy mean-variance-skewness portfolio programs.
//
// Every fuzzy parameter is cut at alpha and replaced by one endpoint of its
// alpha-cut, giving two crisp programs per level:
//
//   lower (pessimistic): mean and skewness at d(alpha), covariance at u(alpha)
//   upper (optimistic):  mean and skewness at u(alpha), covariance at d(alpha)
//
// The crisp programs are solved over the box-constrained simplex by a grid
// scan followed by a shrinking pattern search, which is exact enough at desk
// scale (a handful of assets) and bit-reproducible.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fuzzcurve/fuzzy.hpp"

namespace fuzzcurve {

enum class ProgramVariant {
  MinVariance,  // min 1/2 w'Sw  s.t. <m,w> >= mu_b, <s,w> >= s_b
  MaxMean,      // max <m,w>     s.t. 1/2 w'Sw <= v_b, <s,w> >= s_b
  MaxSkewness,  // max <s,w>     s.t. <m,w> >= mu_b, 1/2 w'Sw <= v_b
};

enum class Endpoint { Lower, Upper };
enum class ParameterChoice { Lower, Upper, Midpoint };

std::string_view to_string(ProgramVariant v) noexcept;
std::string_view to_string(Endpoint e) noexcept;
ProgramVariant parse_variant(std::string_view name);

struct Box {
  double lower = 0.0;
  double upper = 1.0;
};

/// Fuzzy means, covariances and skewness coefficients of I assets.
///
/// The covariance is stored once per unordered pair, so cov(i, j) and
/// cov(j, i) are the same object.
class FuzzyParamSet {
 public:
  /// `cov_upper` holds the upper triangle row by row:
  /// (0,0), (0,1), ..., (0,I-1), (1,1), ..., (I-1,I-1).
  FuzzyParamSet(std::vector<ParametricFN> mu, std::vector<ParametricFN> cov_upper, std::vector<ParametricFN> skew);

  /// All parameters crisp; `cov` is a full row-major I x I matrix that must be symmetric.
  static FuzzyParamSet crisp(std::span<const double> mu, std::span<const double> cov, std::span<const double> skew);

  std::size_t assets() const noexcept { return mu_.size(); }
  const ParametricFN& mu(std::size_t i) const { return mu_.at(i); }
  const ParametricFN& skew(std::size_t i) const { return skew_.at(i); }
  const ParametricFN& cov(std::size_t i, std::size_t j) const;

 private:
  std::size_t upper_index(std::size_t i, std::size_t j) const;

  std::vector<ParametricFN> mu_;
  std::vector<ParametricFN> cov_;
  std::vector<ParametricFN> skew_;
};

struct PortfolioProblem {
  std::shared_ptr<const FuzzyParamSet> params;
  ProgramVariant variant = ProgramVariant::MinVariance;
  double mu_base = 0.0;
  double var_cap = 0.0;
  double skew_base = 0.0;
  std::vector<Box> boxes;  // one per asset; empty means [0, 1] each

  /// Throws InvalidInput when the boxes cannot hold a simplex point.
  void validate() const;
  Box box(std::size_t i) const { return boxes.empty() ? Box{} : boxes.at(i); }
};

/// A portfolio program with real parameters.
struct CrispProgram {
  ProgramVariant variant = ProgramVariant::MinVariance;
  std::vector<double> mean;
  std::vector<double> cov;  // row-major I x I
  std::vector<double> skew;
  std::vector<Box> boxes;
  double mu_base = 0.0;
  double var_cap = 0.0;
  double skew_base = 0.0;

  std::size_t assets() const noexcept { return mean.size(); }
  double portfolio_mean(std::span<const double> w) const;
  double portfolio_variance(std::span<const double> w) const;  // 1/2 w'Sw
  double portfolio_skewness(std::span<const double> w) const;
  double objective(std::span<const double> w) const;
};

struct SolverOptions {
  double grid_step = 0.01;
  double min_step = 1e-5;
  /// Coarsen the grid (for many assets) so the scan stays below this size.
  std::size_t max_grid_points = 2'000'000;
  double feasibility_tol = 1e-12;
};

struct CrispSolution {
  std::vector<double> weights;
  double objective = 0.0;
  bool feasible = false;
  std::string violated;             // most violated constraint when infeasible
  bool non_psd_covariance = false;  // endpoint covariance has a negative eigenvalue
};

CrispSolution solve_crisp(const CrispProgram& program, const SolverOptions& opt = {});

/// Smallest eigenvalue of a symmetric row-major matrix.
double min_eigenvalue(std::span<const double> symmetric, std::size_t n);

CrispProgram crisp_program(const PortfolioProblem& problem, double alpha, ParameterChoice choice);

/// Solve the crisp program for one endpoint at one level. Throws
/// InvalidInput if the midpoint covariance at alpha is not positive
/// semidefinite (smallest eigenvalue below -1e-9).
CrispSolution crisp_program_at(const PortfolioProblem& problem, double alpha, Endpoint endpoint,
                               const SolverOptions& opt = {});

struct LevelSolution {
  double alpha = 0.0;
  CrispSolution lower_case;
  CrispSolution upper_case;
  std::string error;  // non-empty when this level could not be solved

  bool ok() const noexcept { return error.empty(); }
  /// Hull of the two endpoint objectives.
  Interval objective_interval() const;
};

/// One LevelSolution per alpha. Failures are recorded per level; remaining
/// levels are still solved.
std::vector<LevelSolution> solve_levels(const PortfolioProblem& problem, std::span<const double> alphas,
                                        const SolverOptions& opt = {});

}  // namespace fuzzcurve
