#pragma once

// Adaptive Simpson quadrature and bracketed bisection.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fuzzcurve/errors.hpp"

namespace fuzzcurve {

struct QuadratureOptions {
  double abs_tol = 1e-9;
  /// When positive, also require the error below rel_tol times the largest
  /// component magnitude, so ratios of integrals are scale invariant.
  double rel_tol = 0.0;
  int max_depth = 48;
  std::size_t max_evaluations = 4'000'000;
  /// Every breakpoint-delimited piece starts as this many equal panels.
  int initial_panels = 8;
};

template <std::size_t N>
struct QuadratureResultN {
  std::array<double, N> value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

using QuadratureResult = QuadratureResultN<1>;

namespace detail {

template <std::size_t N>
std::array<double, N> simpson(const std::array<double, N>& fa, const std::array<double, N>& fm,
                              const std::array<double, N>& fb, double h) {
  std::array<double, N> s{};
  for (std::size_t k = 0; k < N; ++k) s[k] = h / 6.0 * (fa[k] + 4.0 * fm[k] + fb[k]);
  return s;
}

/// Sorted cut points a = p0 < p1 < ... < pk = b from interior breakpoints.
std::vector<double> partition(double a, double b, std::span<const double> breakpoints);

}  // namespace detail

/// Integrate a vector-valued f over [a, b], refining every component to the
/// same absolute tolerance.
///
/// Globally adaptive: the panel with the largest error estimate is split
/// until the summed estimate drops below abs_tol, so weak endpoint
/// singularities (alpha^p with 1 < p < 2) still converge. Each
/// breakpoint-delimited piece is integrated on its own; at an interior
/// breakpoint f is sampled one ulp inside the piece, so one-sided slopes of
/// piecewise-linear sides never leak into the neighbouring segment.
///
/// Throws QuadratureError (best estimate of component 0, summed error bound)
/// when the tolerance is not met before panels reach max_depth or the
/// evaluation budget runs out.
template <std::size_t N, typename F>
QuadratureResultN<N> integrate_n(F&& f, double a, double b, std::span<const double> breakpoints = {},
                                 const QuadratureOptions& opt = {}) {
  using Vec = std::array<double, N>;
  struct Panel {
    double a, b;
    Vec fa, fm, fb;  // ends and midpoint, as sampled
    Vec flm, frm;    // quarter points
    Vec whole;       // 3-point Simpson
    double err;
    int depth;
    bool splittable;
  };

  QuadratureResultN<N> out;
  if (!(b > a)) return out;

  auto make = [&](double pa, double pb, const Vec& fa, const Vec& fm, const Vec& fb, const Vec& whole, int depth) {
    Panel p{pa, pb, fa, fm, fb, {}, {}, whole, 0.0, depth, false};
    const double m = 0.5 * (pa + pb);
    const double lm = 0.5 * (pa + m);
    const double rm = 0.5 * (m + pb);
    p.flm = f(lm);
    p.frm = f(rm);
    out.evaluations += 2;
    const Vec left = detail::simpson<N>(fa, p.flm, fm, m - pa);
    const Vec right = detail::simpson<N>(fm, p.frm, fb, pb - m);
    for (std::size_t k = 0; k < N; ++k) p.err = std::max(p.err, std::abs(left[k] + right[k] - whole[k]) / 15.0);
    p.splittable = depth < opt.max_depth && pa < lm && lm < m && m < rm && rm < pb;
    return p;
  };
  auto refined = [](const Panel& p, std::size_t k) {
    const double m = 0.5 * (p.a + p.b);
    const double l = (m - p.a) / 6.0 * (p.fa[k] + 4.0 * p.flm[k] + p.fm[k]);
    const double r = (p.b - m) / 6.0 * (p.fm[k] + 4.0 * p.frm[k] + p.fb[k]);
    return l + r + (l + r - p.whole[k]) / 15.0;
  };
  auto worse = [](const Panel& x, const Panel& y) { return x.err < y.err; };

  std::vector<Panel> heap;
  const std::vector<double> cuts = detail::partition(a, b, breakpoints);
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double pa = cuts[p];
    const double pb = cuts[p + 1];
    // One ulp inside at interior breakpoints.
    const double sa = p == 0 ? pa : std::nextafter(pa, pb);
    const double sb = p + 2 == cuts.size() ? pb : std::nextafter(pb, pa);
    const int panels = std::max(1, opt.initial_panels);
    const double h = (pb - pa) / panels;
    Vec prev = f(sa);
    ++out.evaluations;
    for (int i = 0; i < panels; ++i) {
      const double x0 = pa + h * i;
      const double x1 = i + 1 == panels ? pb : pa + h * (i + 1);
      const Vec fm = f(0.5 * (x0 + x1));
      const Vec fb = f(i + 1 == panels ? sb : x1);
      out.evaluations += 2;
      heap.push_back(make(x0, x1, prev, fm, fb, detail::simpson<N>(prev, fm, fb, x1 - x0), 0));
      prev = fb;
    }
  }
  std::make_heap(heap.begin(), heap.end(), worse);

  auto total_error = [&] {
    double e = 0.0;
    for (const auto& p : heap) e += p.err;
    return e;
  };
  // Magnitude of the largest component, for the relative criterion.
  auto scale = [&] {
    double m = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      double v = 0.0;
      for (const auto& p : heap) v += refined(p, k);
      m = std::max(m, std::abs(v));
    }
    return m;
  };
  auto target = [&] { return opt.rel_tol > 0.0 ? std::min(opt.abs_tol, opt.rel_tol * scale()) : opt.abs_tol; };
  double tol = target();
  double err = total_error();
  std::size_t since_resum = 0;
  while (err > tol && out.evaluations < opt.max_evaluations) {
    if (!heap.front().splittable) break;  // the worst panel cannot be refined further
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Panel p = heap.back();
    heap.pop_back();
    const double m = 0.5 * (p.a + p.b);
    const Vec lw = detail::simpson<N>(p.fa, p.flm, p.fm, m - p.a);
    const Vec rw = detail::simpson<N>(p.fm, p.frm, p.fb, p.b - m);
    for (Panel child : {make(p.a, m, p.fa, p.flm, p.fm, lw, p.depth + 1), make(m, p.b, p.fm, p.frm, p.fb, rw, p.depth + 1)}) {
      err += child.err;
      heap.push_back(std::move(child));
      std::push_heap(heap.begin(), heap.end(), worse);
    }
    err -= p.err;
    // Resum now and then so cancellation in the running total cannot drift.
    if (++since_resum == 256) {
      err = total_error();
      if (opt.rel_tol > 0.0) tol = target();
      since_resum = 0;
    }
    if (err <= tol && opt.rel_tol > 0.0) tol = target();
  }
  err = total_error();
  if (opt.rel_tol > 0.0) tol = target();

  for (std::size_t k = 0; k < N; ++k) {
    // Sum small panels first for a little less rounding.
    std::vector<double> parts;
    parts.reserve(heap.size());
    for (const auto& p : heap) parts.push_back(refined(p, k));
    std::sort(parts.begin(), parts.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    double s = 0.0;
    for (double v : parts) s += v;
    out.value[k] = s;
  }
  out.error_estimate = err;
  if (err > tol) throw QuadratureError("adaptive quadrature did not converge", out.value[0], err);
  return out;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           std::span<const double> breakpoints = {}, const QuadratureOptions& opt = {});

/// Root of f in [a, b] by bisection, given f(a) and f(b) of opposite sign
/// (or one of them zero). Stops when the bracket is narrower than tol.
double bisect(const std::function<double(double)>& f, double a, double b, double tol);

/// All sign changes of f on a uniform grid of `grid_n` intervals over [a, b],
/// each refined by bisection to `tol`. Points where |f| <= zero_tol count as
/// zero and do not start a bracket by themselves; an f that is zero
/// everywhere has no sign changes.
std::vector<double> sign_change_roots(const std::function<double(double)>& f, double a, double b,
                                      std::size_t grid_n, double tol, double zero_tol = 0.0);

}  // namespace fuzzcurve
