#include "fuzzcurve/numerics.hpp"

namespace fuzzcurve {

namespace detail {

std::vector<double> partition(double a, double b, std::span<const double> breakpoints) {
  std::vector<double> cuts{a};
  std::vector<double> inner(breakpoints.begin(), breakpoints.end());
  std::sort(inner.begin(), inner.end());
  for (double x : inner) {
    if (x > cuts.back() && x < b) cuts.push_back(x);
  }
  cuts.push_back(b);
  return cuts;
}

}  // namespace detail

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints, const QuadratureOptions& opt) {
  return integrate_n<1>([&](double x) { return std::array<double, 1>{f(x)}; }, a, b, breakpoints, opt);
}

double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0.0) == (fb < 0.0)) throw BracketError("bisection endpoints do not bracket a root", std::abs(fa) < std::abs(fb) ? a : b);
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    if (!(m > a && m < b)) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  return 0.5 * (a + b);
}

std::vector<double> sign_change_roots(const std::function<double(double)>& f, double a, double b,
                                      std::size_t grid_n, double tol, double zero_tol) {
  std::vector<double> roots;
  if (grid_n < 1 || !(b > a)) return roots;

  auto sign_of = [&](double v) { return v > zero_tol ? 1 : (v < -zero_tol ? -1 : 0); };

  int last_sign = 0;
  double last_x = a;
  for (std::size_t i = 0; i <= grid_n; ++i) {
    const double x = i == grid_n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(grid_n);
    const int s = sign_of(f(x));
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      double lo = last_x, hi = x;
      double root = std::nan("");
      while (hi - lo > tol) {
        const double m = 0.5 * (lo + hi);
        if (!(m > lo && m < hi)) break;
        const double fm = f(m);
        if (fm == 0.0) {
          root = m;
          break;
        }
        if ((fm > 0.0 ? 1 : -1) == last_sign)
          lo = m;
        else
          hi = m;
      }
      if (std::isnan(root)) root = 0.5 * (lo + hi);
      roots.push_back(root);
    }
    last_sign = s;
    last_x = x;
  }
  return roots;
}

}  // namespace fuzzcurve
