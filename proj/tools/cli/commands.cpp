#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "config.hpp"
#include "fuzzcurve/geometry.hpp"
#include "fuzzcurve/portfolio.hpp"
#include "fuzzcurve/staircase.hpp"
#include "output.hpp"
#include "svg.hpp"

namespace fuzzcurve::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kBlue = "#1f77b4";
constexpr const char* kOrange = "#ff7f0e";
constexpr const char* kGreen = "#2ca02c";
constexpr const char* kGray = "#7f7f7f";

/// A library failure inside a named step of the pipeline.
struct StageFailure {
  std::string stage;
  std::string message;
  bool numeric;
};

/// Run `fn` as a timed stage. Numeric and domain failures are tagged with
/// the stage name so the message says which operation broke.
template <class F>
auto staged(RunOutput& run, const std::string& name, F&& fn) {
  run.begin_stage(name);
  try {
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      run.end_stage();
    } else {
      auto result = fn();
      run.end_stage();
      return result;
    }
  } catch (const NumericError& e) {
    throw StageFailure{name, e.what(), true};
  } catch (const DomainError& e) {
    throw StageFailure{name, e.what(), true};
  } catch (const InvalidInput& e) {
    throw StageFailure{name, e.what(), false};
  }
}

/// Shared error-to-exit-code mapping for all subcommands.
int guarded(std::ostream& err, const std::string& command, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigIoError& e) {
    err << "fuzzcurve " << command << ": " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    err << "fuzzcurve " << command << ": config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const OutputError& e) {
    err << "fuzzcurve " << command << ": " << e.what() << "\n";
    return kExitIo;
  } catch (const StageFailure& e) {
    err << "fuzzcurve " << command << ": " << (e.numeric ? "numeric failure" : "invalid input") << " in " << e.stage
        << ": " << e.message << "\n";
    return e.numeric ? kExitNumeric : kExitConfig;
  } catch (const NumericError& e) {
    err << "fuzzcurve " << command << ": numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const Error& e) {
    err << "fuzzcurve " << command << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "fuzzcurve " << command << ": internal error: " << e.what() << "\n";
    return kExitUsage;
  }
}

fs::path output_dir(const std::string& flag, const Config& config) {
  return resolve_output_dir(flag, config.analysis.output_dir.value_or(fs::path{}));
}

std::string overlap_message(const std::string& panel, const NoOverlapError& e) {
  return "panel '" + panel + "': estimates '" + e.first() + "' and '" + e.second() + "' have no common point";
}

std::vector<double> alpha_grid(std::size_t n) {
  std::vector<double> a(n + 1);
  for (std::size_t i = 0; i <= n; ++i) a[i] = static_cast<double>(i) / static_cast<double>(n);
  a[n] = 1.0;
  return a;
}

/// Traditional representation: x on the abscissa, membership on the ordinate.
Series membership_series(const std::function<Interval(double)>& cut, const std::vector<double>& alphas, std::string label,
                         std::string color, bool dashed) {
  Series s{std::move(label), {}, std::move(color), dashed};
  for (double a : alphas) s.points.emplace_back(cut(a).lower, a);
  for (auto it = alphas.rbegin(); it != alphas.rend(); ++it) s.points.emplace_back(cut(*it).upper, *it);
  return s;
}

Series f_series(const std::function<Interval(double)>& cut, const std::vector<double>& alphas, std::string label,
                std::string color, bool dashed) {
  Series s{std::move(label), {}, std::move(color), dashed};
  for (double a : alphas) {
    const Interval c = cut(a);
    const auto [x, y] = f_transform(c.lower, c.upper);
    s.points.emplace_back(x, y);
  }
  return s;
}

Series horizontal(double y, double x0, double x1, std::string label, std::string color) {
  return Series{std::move(label), {{x0, y}, {x1, y}}, std::move(color), true};
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ';';
    s += fmt12(xs[i]);
  }
  return s;
}

}  // namespace

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("--alphas: '" + item + "' is not a number");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw ConfigError("--alphas: '" + item + "' is not a number");
    out.push_back(a);
  }
  if (out.empty()) throw ConfigError("--alphas: empty list");
  return out;
}

int cmd_analyze(const AnalyzeArgs& args, std::ostream& log, std::ostream& err) {
  return guarded(err, "analyze", [&] {
    const Config config = load_config(args.config);
    const FuzzyEntry& entry = config.entry(args.name);
    if (entry.overlap_error) {
      err << "fuzzcurve analyze: " << overlap_message(entry.name, *entry.overlap_error) << "\n";
      return static_cast<int>(kExitNoOverlap);
    }
    const ParametricFN& fn = *entry.fn;
    const std::size_t grid_n = args.grid_n.value_or(config.analysis.grid_n);
    if (grid_n < 2) throw ConfigError("grid size must be at least 2");

    RunOutput run(output_dir(args.out, config), args.name, "analyze");
    run.add_input("config", config.raw);
    run.add_input("name", args.name);
    run.add_input("grid_n", std::to_string(grid_n));

    GeometryOptions opt;
    opt.grid_n = grid_n;
    const SkewnessReport rep = staged(run, "skewness", [&] { return analyze_skewness(fn, opt); });
    const DispersionReport disp = staged(run, "dispersion", [&] { return dispersion_report(fn, rep.mean_triangle, opt); });

    struct Row {
      double alpha;
      Interval cut;
      TangentSample t;
      PolarSample p;
      double dispersion;
    };
    const std::vector<double> alphas = alpha_grid(grid_n);
    const std::vector<Row> rows = staged(run, "profiles", [&] {
      std::vector<Row> out;
      out.reserve(alphas.size());
      for (double a : alphas) {
        const TangentSample t = tangent_at(fn, a);
        out.push_back({a, fn.cut(a), t, polar_of(t), disp.level_dispersion(a)});
      }
      return out;
    });

    run.begin_stage("write");
    CsvTable report({"name", "curve_length", "weighted_angle", "overall_skewness_rad", "overall_skewness_pi", "sign_changes",
                     "alpha_mean", "mean_l", "mean_m", "mean_r", "overall_dispersion", "degenerate", "alpha_mean_at_jump"});
    report.cell(std::string_view(args.name))
        .cell(rep.curve_length)
        .cell(rep.weighted_angle)
        .cell(rep.overall_skewness)
        .cell(rep.overall_skewness / std::numbers::pi)
        .cell(std::string_view(join_numbers(rep.sign_changes)))
        .cell(rep.alpha_mean)
        .cell(rep.mean_triangle.l)
        .cell(rep.mean_triangle.m)
        .cell(rep.mean_triangle.r)
        .cell(disp.overall_dispersion)
        .cell(rep.degenerate)
        .cell(rep.alpha_mean_at_jump)
        .end_row();
    run.write(args.name + "_report.csv", report.str());

    CsvTable profiles({"alpha", "d", "u", "d_prime", "u_prime", "r", "gamma", "level_dispersion"});
    for (const Row& r : rows)
      profiles.cell(r.alpha)
          .cell(r.cut.lower)
          .cell(r.cut.upper)
          .cell(r.t.d_prime)
          .cell(r.t.u_prime)
          .cell(r.p.magnitude)
          .cell(r.p.angle)
          .cell(r.dispersion)
          .end_row();
    run.write(args.name + "_profiles.csv", profiles.str());

    const auto fn_cut = [&](double a) { return fn.cut(a); };
    const auto tri_cut = [&](double a) { return rep.mean_triangle.cut(a); };

    Plot membership{args.name + ": membership", "x", "membership", {}, {}, std::pair{0.0, 1.05}, {}};
    membership.series.push_back(membership_series(fn_cut, alphas, args.name, kBlue, false));
    membership.series.push_back(membership_series(tri_cut, {0.0, 1.0}, "mean value triangle", kOrange, true));
    run.write(args.name + "_membership.svg", render_svg(membership));

    Plot fcurve{args.name + ": F-transformed curve", "(d + u) / 2", "(u - d) / 2", {}, {}, {}, {}};
    fcurve.series.push_back(f_series(fn_cut, alphas, args.name, kBlue, false));
    fcurve.series.push_back(f_series(tri_cut, {0.0, 1.0}, "mean value triangle", kOrange, true));
    run.write(args.name + "_fcurve.svg", render_svg(fcurve));

    constexpr double q = std::numbers::pi / 4;
    Plot gamma{args.name + ": pointwise skewness", "alpha", "gamma (rad)", {}, std::pair{0.0, 1.0}, std::pair{-1.1 * q, 1.1 * q},
               rep.sign_changes};
    gamma.x_markers.push_back(rep.alpha_mean);
    Series gs{"gamma", {}, kBlue, false};
    for (const Row& r : rows) gs.points.emplace_back(r.alpha, r.p.angle);
    gamma.series.push_back(std::move(gs));
    gamma.series.push_back(horizontal(rep.overall_skewness, 0.0, 1.0, "overall skewness", kOrange));
    run.write(args.name + "_gamma.svg", render_svg(gamma));

    Plot radius{args.name + ": tangent magnitude", "alpha", "r", {}, std::pair{0.0, 1.0}, {}, {rep.alpha_mean}};
    Series rs{"r", {}, kGreen, false};
    for (const Row& r : rows) rs.points.emplace_back(r.alpha, r.p.magnitude);
    radius.series.push_back(std::move(rs));
    run.write(args.name + "_radius.svg", render_svg(radius));

    Plot dplot{args.name + ": Hausdorff dispersion", "alpha", "dispersion", {}, std::pair{0.0, 1.0}, {}, {}};
    Series ds{"level dispersion", {}, kBlue, false};
    for (const Row& r : rows) ds.points.emplace_back(r.alpha, r.dispersion);
    dplot.series.push_back(std::move(ds));
    dplot.series.push_back(horizontal(disp.overall_dispersion, 0.0, 1.0, "overall dispersion", kGray));
    run.write(args.name + "_dispersion.svg", render_svg(dplot));
    run.end_stage();

    const fs::path manifest = run.finish();
    log << "wrote " << manifest.string() << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_aggregate(const AggregateArgs& args, std::ostream& log, std::ostream& err) {
  return guarded(err, "aggregate", [&] {
    const Config config = load_config(args.config);
    const FuzzyEntry& entry = config.entry(args.panel);
    if (entry.kind != FnKind::Panel) throw ConfigError("'" + args.panel + "' is not a panel");
    if (entry.overlap_error) {
      err << "fuzzcurve aggregate: " << overlap_message(entry.name, *entry.overlap_error) << "\n";
      return static_cast<int>(kExitNoOverlap);
    }

    RunOutput run(output_dir(args.out, config), args.panel, "aggregate");
    run.add_input("config", config.raw);
    run.add_input("panel", args.panel);

    const StaircaseFN stairs = staged(run, "aggregate", [&] { return aggregate(entry.estimates); });
    const ParametricFN fn = staged(run, "join", [&] { return to_parametric(stairs); });

    run.begin_stage("write");
    CsvTable levels({"kind", "membership", "lower", "upper"});
    for (const StaircaseLevel& l : stairs.levels)
      levels.cell(std::string_view("level")).cell(l.membership).cell(l.cut.lower).cell(l.cut.upper).end_row();
    levels.cell(std::string_view("apex")).cell(1.0).cell(stairs.apex).cell(stairs.apex).end_row();
    run.write(args.panel + "_levels.csv", levels.str());

    CsvTable knots({"side", "alpha", "x"});
    for (const auto& [side, fnside] : {std::pair{"d", &fn.lower()}, std::pair{"u", &fn.upper()}})
      for (const Knot& k : fnside->piecewise()->knots()) knots.cell(std::string_view(side)).cell(k.alpha).cell(k.x).end_row();
    run.write(args.panel + "_knots.csv", knots.str());

    Plot plot{args.panel + ": aggregated estimates", "x", "membership", {}, {}, std::pair{0.0, 1.05}, {}};
    double prev = 0.0;
    for (const StaircaseLevel& l : stairs.levels) {
      plot.series.push_back(Series{plot.series.empty() ? "staircase" : "",
                                   {{l.cut.lower, prev}, {l.cut.lower, l.membership}, {l.cut.upper, l.membership}, {l.cut.upper, prev}},
                                   kGray,
                                   false});
      prev = l.membership;
    }
    std::vector<double> ka;
    for (const Knot& k : fn.lower().piecewise()->knots()) ka.push_back(k.alpha);
    for (const Knot& k : fn.upper().piecewise()->knots()) ka.push_back(k.alpha);
    std::sort(ka.begin(), ka.end());
    ka.erase(std::unique(ka.begin(), ka.end()), ka.end());
    plot.series.push_back(membership_series([&](double a) { return fn.cut(a); }, ka, "joined sides", kBlue, false));
    run.write(args.panel + "_staircase.svg", render_svg(plot));
    run.end_stage();

    const fs::path manifest = run.finish();
    log << "wrote " << manifest.string() << "\n";
    return static_cast<int>(kExitOk);
  });
}

int cmd_portfolio(const PortfolioArgs& args, std::ostream& log, std::ostream& err) {
  return guarded(err, "portfolio", [&] {
    const Config config = load_config(args.config);
    std::vector<double> alphas = args.alphas ? *args.alphas : config.analysis.alphas;
    if (alphas.empty()) alphas = default_alphas();
    for (double a : alphas)
      if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alpha " + fmt12(a) + " is outside [0, 1]");

    RunOutput run(output_dir(args.out, config), "portfolio", "portfolio");
    run.add_input("config", config.raw);
    std::string alpha_text;
    for (double a : alphas) alpha_text += fmt12(a) + ",";
    run.add_input("alphas", alpha_text);

    const PortfolioSpec spec = staged(run, "resolve", [&] { return build_portfolio(config); });
    const std::vector<LevelSolution> levels = staged(run, "solve", [&] { return solve_levels(spec.problem, alphas); });

    run.begin_stage("write");
    std::vector<std::string> header{"alpha", "endpoint"};
    for (const auto& n : spec.asset_names) header.push_back("w_" + n);
    for (const char* c : {"objective", "feasible", "violated", "non_psd", "error"}) header.emplace_back(c);
    CsvTable table(header);
    std::size_t failed = 0;
    for (const LevelSolution& lv : levels) {
      const bool level_failed = !lv.ok() || (!lv.lower_case.feasible && !lv.upper_case.feasible);
      if (level_failed) ++failed;
      for (Endpoint e : {Endpoint::Lower, Endpoint::Upper}) {
        const CrispSolution& s = e == Endpoint::Lower ? lv.lower_case : lv.upper_case;
        table.cell(lv.alpha).cell(to_string(e));
        if (lv.ok()) {
          for (std::size_t i = 0; i < spec.asset_names.size(); ++i) table.cell(s.weights.at(i));
          table.cell(s.objective).cell(s.feasible).cell(std::string_view(s.violated)).cell(s.non_psd_covariance);
        } else {
          for (std::size_t i = 0; i < spec.asset_names.size(); ++i) table.cell(std::string_view(""));
          table.cell(std::string_view("")).cell(false).cell(std::string_view("")).cell(false);
        }
        table.cell(std::string_view(lv.error)).end_row();
      }
    }
    run.write("portfolio_levels.csv", table.str());

    Plot plot{"objective interval by level (" + std::string(to_string(spec.problem.variant)) + ")", "alpha", "objective",
              {}, std::pair{0.0, 1.0}, {}, {}};
    Series lo{"lower endpoint", {}, kBlue, false}, hi{"upper endpoint", {}, kOrange, false};
    for (const LevelSolution& lv : levels) {
      if (!lv.ok()) continue;
      if (lv.lower_case.feasible) lo.points.emplace_back(lv.alpha, lv.lower_case.objective);
      if (lv.upper_case.feasible) hi.points.emplace_back(lv.alpha, lv.upper_case.objective);
    }
    std::sort(lo.points.begin(), lo.points.end());
    std::sort(hi.points.begin(), hi.points.end());
    plot.series.push_back(std::move(lo));
    plot.series.push_back(std::move(hi));
    run.write("portfolio_objective.svg", render_svg(plot));
    run.end_stage();

    const fs::path manifest = run.finish();
    log << "wrote " << manifest.string() << "\n";
    if (failed == levels.size()) {
      err << "fuzzcurve portfolio: numeric failure in solve: no level produced a feasible solution\n";
      return static_cast<int>(kExitNumeric);
    }
    return static_cast<int>(kExitOk);
  });
}

}  // namespace fuzzcurve::cli
