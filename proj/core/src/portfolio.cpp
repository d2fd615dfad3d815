#include "fuzzcurve/portfolio.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fuzzcurve/errors.hpp"

namespace fuzzcurve {

std::string_view to_string(ProgramVariant v) noexcept {
  switch (v) {
    case ProgramVariant::MinVariance: return "min-variance";
    case ProgramVariant::MaxMean: return "max-mean";
    case ProgramVariant::MaxSkewness: return "max-skewness";
  }
  return "?";
}

std::string_view to_string(Endpoint e) noexcept { return e == Endpoint::Lower ? "lower" : "upper"; }

ProgramVariant parse_variant(std::string_view name) {
  for (auto v : {ProgramVariant::MinVariance, ProgramVariant::MaxMean, ProgramVariant::MaxSkewness}) {
    if (to_string(v) == name) return v;
  }
  throw InvalidInput("unknown program variant '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// FuzzyParamSet

FuzzyParamSet::FuzzyParamSet(std::vector<ParametricFN> mu, std::vector<ParametricFN> cov_upper,
                             std::vector<ParametricFN> skew)
    : mu_(std::move(mu)), cov_(std::move(cov_upper)), skew_(std::move(skew)) {
  const std::size_t n = mu_.size();
  if (n == 0) throw InvalidInput("portfolio needs at least one asset");
  if (skew_.size() != n) throw InvalidInput("skewness vector length differs from the number of assets");
  if (cov_.size() != n * (n + 1) / 2) throw InvalidInput("covariance upper triangle has the wrong size");
}

FuzzyParamSet FuzzyParamSet::crisp(std::span<const double> mu, std::span<const double> cov, std::span<const double> skew) {
  const std::size_t n = mu.size();
  if (cov.size() != n * n) throw InvalidInput("covariance must be I x I");
  std::vector<ParametricFN> m, c, s;
  for (double x : mu) m.push_back(ParametricFN::crisp(x));
  for (double x : skew) s.push_back(ParametricFN::crisp(x));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (cov[i * n + j] != cov[j * n + i]) throw InvalidInput("covariance matrix is not symmetric");
      c.push_back(ParametricFN::crisp(cov[i * n + j]));
    }
  }
  return FuzzyParamSet(std::move(m), std::move(c), std::move(s));
}

std::size_t FuzzyParamSet::upper_index(std::size_t i, std::size_t j) const {
  const std::size_t n = assets();
  if (i >= n || j >= n) throw InvalidInput("covariance index out of range");
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

const ParametricFN& FuzzyParamSet::cov(std::size_t i, std::size_t j) const { return cov_[upper_index(i, j)]; }

void PortfolioProblem::validate() const {
  if (!params) throw InvalidInput("portfolio problem has no parameters");
  const std::size_t n = params->assets();
  if (!boxes.empty() && boxes.size() != n) throw InvalidInput("one box constraint per asset is required");
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Box b = box(i);
    if (!(b.lower <= b.upper)) throw InvalidInput("box constraint with lower > upper");
    lo += b.lower;
    hi += b.upper;
  }
  if (lo > 1.0 + 1e-12 || hi < 1.0 - 1e-12) throw InvalidInput("box constraints admit no portfolio summing to 1");
}

// ---------------------------------------------------------------------------
// CrispProgram

double CrispProgram::portfolio_mean(std::span<const double> w) const {
  return std::inner_product(w.begin(), w.end(), mean.begin(), 0.0);
}

double CrispProgram::portfolio_skewness(std::span<const double> w) const {
  return std::inner_product(w.begin(), w.end(), skew.begin(), 0.0);
}

double CrispProgram::portfolio_variance(std::span<const double> w) const {
  const std::size_t n = assets();
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += cov[i * n + j] * w[j];
    q += w[i] * row;
  }
  return 0.5 * q;
}

double CrispProgram::objective(std::span<const double> w) const {
  switch (variant) {
    case ProgramVariant::MinVariance: return portfolio_variance(w);
    case ProgramVariant::MaxMean: return portfolio_mean(w);
    case ProgramVariant::MaxSkewness: return portfolio_skewness(w);
  }
  return 0.0;
}

double min_eigenvalue(std::span<const double> symmetric, std::size_t n) {
  if (symmetric.size() != n * n) throw InvalidInput("matrix size mismatch");
  if (n == 0) return 0.0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = symmetric[i * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// Solver

namespace {

struct Candidate {
  std::vector<double> w;
  bool feasible = false;
  double score = -std::numeric_limits<double>::infinity();  // higher is better
  double violation = std::numeric_limits<double>::infinity();
  std::string violated;
};

class Evaluator {
 public:
  Evaluator(const CrispProgram& p, double tol) : p_(p), tol_(tol) {}

  Candidate evaluate(std::vector<double> w) const {
    Candidate c;
    c.w = std::move(w);
    double worst = 0.0;
    double total = 0.0;
    auto check = [&](double slack, const char* name) {
      // slack >= 0 means satisfied
      if (slack < -tol_) {
        total += -slack;
        if (-slack > worst) {
          worst = -slack;
          c.violated = name;
        }
      }
    };
    const double mean = p_.portfolio_mean(c.w);
    const double var = p_.portfolio_variance(c.w);
    const double skew = p_.portfolio_skewness(c.w);
    switch (p_.variant) {
      case ProgramVariant::MinVariance:
        check(mean - p_.mu_base, "mean >= mu_base");
        check(skew - p_.skew_base, "skewness >= skew_base");
        c.score = -var;
        break;
      case ProgramVariant::MaxMean:
        check(p_.var_cap - var, "variance <= var_cap");
        check(skew - p_.skew_base, "skewness >= skew_base");
        c.score = mean;
        break;
      case ProgramVariant::MaxSkewness:
        check(mean - p_.mu_base, "mean >= mu_base");
        check(p_.var_cap - var, "variance <= var_cap");
        c.score = skew;
        break;
    }
    c.feasible = total == 0.0;
    c.violation = total;
    return c;
  }

  static bool better(const Candidate& a, const Candidate& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (a.feasible) return a.score > b.score + 1e-15 * (1.0 + std::abs(b.score));
    return a.violation < b.violation * (1.0 - 1e-15);
  }

 private:
  const CrispProgram& p_;
  double tol_;
};

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

double choose_step(std::size_t assets, const SolverOptions& opt) {
  for (double step : {opt.grid_step, 0.02, 0.025, 0.05, 0.1, 0.125, 0.2, 0.25, 0.5, 1.0}) {
    if (step < opt.grid_step) continue;
    const auto units = static_cast<std::size_t>(std::llround(1.0 / step));
    if (binomial(units + assets - 1, assets - 1) <= static_cast<double>(opt.max_grid_points)) return step;
  }
  return 1.0;
}

/// Fill the lower bounds, then top up assets in order until the weights sum to 1.
std::vector<double> fill_boxes(const std::vector<Box>& boxes) {
  std::vector<double> w;
  double rest = 1.0;
  for (const auto& b : boxes) {
    w.push_back(b.lower);
    rest -= b.lower;
  }
  for (std::size_t i = 0; i < w.size() && rest > 0.0; ++i) {
    const double add = std::min(rest, boxes[i].upper - w[i]);
    w[i] += add;
    rest -= add;
  }
  return w;
}

std::vector<std::vector<double>> pattern_directions(std::size_t n) {
  std::vector<std::vector<double>> dirs;
  if (n < 2) return dirs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        std::vector<double> d(n, 0.0);
        d[i] = 1.0;
        d[j] = -1.0;
        dirs.push_back(std::move(d));
      }
  if (n < 3 || n > 5) return dirs;

  // Three-asset combinations let the search slide along curved constraint
  // boundaries where every single pair move is blocked.
  std::vector<int> c(n, -2);
  for (;;) {
    int sum = 0, nonzero = 0, maxabs = 0, g = 0;
    for (int v : c) {
      sum += v;
      if (v != 0) ++nonzero;
      maxabs = std::max(maxabs, std::abs(v));
      g = std::gcd(g, std::abs(v));
    }
    if (sum == 0 && nonzero >= 3 && g == 1) {
      std::vector<double> d(n);
      for (std::size_t k = 0; k < n; ++k) d[k] = static_cast<double>(c[k]) / maxabs;
      dirs.push_back(std::move(d));
    }
    std::size_t k = 0;
    while (k < n && c[k] == 2) c[k++] = -2;
    if (k == n) break;
    ++c[k];
  }
  return dirs;
}

bool inside(const std::vector<double>& w, const std::vector<Box>& boxes) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] < boxes[i].lower - 1e-15 || w[i] > boxes[i].upper + 1e-15) return false;
  return true;
}

}  // namespace

CrispSolution solve_crisp(const CrispProgram& program, const SolverOptions& opt) {
  const std::size_t n = program.assets();
  if (n == 0) throw InvalidInput("crisp program has no assets");
  if (program.cov.size() != n * n || program.skew.size() != n) throw InvalidInput("crisp program dimensions disagree");
  std::vector<Box> boxes = program.boxes.empty() ? std::vector<Box>(n) : program.boxes;
  if (boxes.size() != n) throw InvalidInput("one box constraint per asset is required");

  const Evaluator eval(program, opt.feasibility_tol);
  const double step = choose_step(n, opt);
  const auto units = static_cast<int>(std::llround(1.0 / step));

  // Grid scan over compositions k_1 + ... + k_n = units.
  Candidate best;
  bool have_best = false;
  std::vector<int> k(n, 0);
  std::vector<double> w(n, 0.0);
  auto visit = [&](auto&& self, std::size_t i, int remaining) -> void {
    const Box& b = boxes[i];
    if (i + 1 == n) {
      k[i] = remaining;
      w[i] = remaining * step;
      if (w[i] < b.lower - 1e-12 || w[i] > b.upper + 1e-12) return;
      Candidate c = eval.evaluate(w);
      if (!have_best || Evaluator::better(c, best)) {
        best = std::move(c);
        have_best = true;
      }
      return;
    }
    for (int ki = 0; ki <= remaining; ++ki) {
      const double wi = ki * step;
      if (wi < b.lower - 1e-12) continue;
      if (wi > b.upper + 1e-12) break;
      k[i] = ki;
      w[i] = wi;
      self(self, i + 1, remaining - ki);
    }
  };
  visit(visit, 0, units);
  if (!have_best) best = eval.evaluate(fill_boxes(boxes));

  // Clamp grid weights into the boxes exactly.
  for (std::size_t i = 0; i < n; ++i) best.w[i] = std::clamp(best.w[i], boxes[i].lower, boxes[i].upper);
  best = eval.evaluate(best.w);

  const auto dirs = pattern_directions(n);
  for (double h = step; h >= opt.min_step * (1.0 - 1e-9); h /= 2.0) {
    for (int sweep = 0; sweep < 100000; ++sweep) {
      bool improved = false;
      for (const auto& d : dirs) {
        std::vector<double> cand = best.w;
        double t = h;
        const bool pair = std::count_if(d.begin(), d.end(), [](double v) { return v != 0.0; }) == 2;
        if (pair) {
          // Shorten pair moves so they stop exactly on a box face.
          for (std::size_t i = 0; i < n; ++i) {
            if (d[i] > 0.0) t = std::min(t, boxes[i].upper - cand[i]);
            if (d[i] < 0.0) t = std::min(t, cand[i] - boxes[i].lower);
          }
          if (!(t > 0.0)) continue;
        }
        for (std::size_t i = 0; i < n; ++i) cand[i] += t * d[i];
        if (!inside(cand, boxes)) continue;
        Candidate c = eval.evaluate(std::move(cand));
        if (Evaluator::better(c, best)) {
          best = std::move(c);
          improved = true;
        }
      }
      if (!improved) break;
    }
  }

  CrispSolution sol;
  sol.weights = best.w;
  sol.objective = program.objective(best.w);
  sol.feasible = best.feasible;
  sol.violated = best.feasible ? std::string{} : best.violated;
  sol.non_psd_covariance = min_eigenvalue(program.cov, n) < -1e-9;
  return sol;
}

// ---------------------------------------------------------------------------
// Level-wise programs

CrispProgram crisp_program(const PortfolioProblem& problem, double alpha, ParameterChoice choice) {
  problem.validate();
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in [0, 1]");
  const FuzzyParamSet& ps = *problem.params;
  const std::size_t n = ps.assets();

  auto pick = [&](const ParametricFN& fn, bool optimistic_high) {
    const Interval c = fn.cut(alpha);
    switch (choice) {
      case ParameterChoice::Midpoint: return c.midpoint();
      case ParameterChoice::Lower: return optimistic_high ? c.lower : c.upper;
      case ParameterChoice::Upper: return optimistic_high ? c.upper : c.lower;
    }
    return c.midpoint();
  };

  CrispProgram p;
  p.variant = problem.variant;
  p.mu_base = problem.mu_base;
  p.var_cap = problem.var_cap;
  p.skew_base = problem.skew_base;
  for (std::size_t i = 0; i < n; ++i) p.boxes.push_back(problem.box(i));
  for (std::size_t i = 0; i < n; ++i) {
    p.mean.push_back(pick(ps.mu(i), true));
    p.skew.push_back(pick(ps.skew(i), true));
  }
  p.cov.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.cov[i * n + j] = pick(ps.cov(i, j), false);
  return p;
}

CrispSolution crisp_program_at(const PortfolioProblem& problem, double alpha, Endpoint endpoint, const SolverOptions& opt) {
  const CrispProgram mid = crisp_program(problem, alpha, ParameterChoice::Midpoint);
  if (min_eigenvalue(mid.cov, mid.assets()) < -1e-9)
    throw InvalidInput("midpoint covariance is not positive semidefinite at alpha = " + std::to_string(alpha));
  return solve_crisp(crisp_program(problem, alpha, endpoint == Endpoint::Lower ? ParameterChoice::Lower : ParameterChoice::Upper),
                     opt);
}

Interval LevelSolution::objective_interval() const {
  const double a = lower_case.objective;
  const double b = upper_case.objective;
  return {std::min(a, b), std::max(a, b)};
}

std::vector<LevelSolution> solve_levels(const PortfolioProblem& problem, std::span<const double> alphas,
                                        const SolverOptions& opt) {
  if (alphas.empty()) throw InvalidInput("no alpha levels requested");
  problem.validate();
  std::vector<LevelSolution> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    LevelSolution level;
    level.alpha = alpha;
    try {
      level.lower_case = crisp_program_at(problem, alpha, Endpoint::Lower, opt);
      level.upper_case = crisp_program_at(problem, alpha, Endpoint::Upper, opt);
    } catch (const Error& e) {
      level.error = e.what();
    }
    out.push_back(std::move(level));
  }
  return out;
}

}  // namespace fuzzcurve
