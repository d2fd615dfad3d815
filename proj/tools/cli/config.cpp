#include "config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "fuzzcurve/expr.hpp"
#include "fuzzcurve/geometry.hpp"

namespace fuzzcurve::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ConfigError(where + ": " + what); }

json parse_json(const std::string& text) {
  // nlohmann keeps the last of duplicate keys silently; names must be unique.
  std::vector<std::set<std::string>> keys;
  std::string duplicate;
  json::parser_callback_t cb = [&](int, json::parse_event_t ev, json& parsed) {
    switch (ev) {
      case json::parse_event_t::object_start: keys.emplace_back(); break;
      case json::parse_event_t::object_end: keys.pop_back(); break;
      case json::parse_event_t::key:
        if (!keys.back().insert(parsed.get<std::string>()).second && duplicate.empty()) duplicate = parsed.get<std::string>();
        break;
      default: break;
    }
    return true;
  };
  json doc;
  try {
    doc = json::parse(text, cb);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!duplicate.empty()) throw ConfigError("duplicate key '" + duplicate + "'");
  return doc;
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) fail(where, std::string("missing '") + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where, std::string("'") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, std::string("'") + key + "' must be finite");
  return x;
}

std::string text(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj.at(key).is_string()) fail(where, std::string("'") + key + "' must be a string");
  return obj.at(key).get<std::string>();
}

Expression side(const std::string& src, const std::string& where) {
  try {
    return parse_expression(src);
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
}

ParametricFN validated(const std::string& where, auto&& build) {
  try {
    return build();
  } catch (const InvalidInput& e) {
    fail(where, e.what());
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
}

FuzzyEntry parse_entry(const std::string& name, const json& j) {
  const std::string where = "fuzzy number '" + name + "'";
  if (!j.is_object()) fail(where, "must be an object");
  FuzzyEntry e;
  e.name = name;
  const std::string kind = text(j, "kind", where);
  if (kind == "triangle") {
    e.kind = FnKind::Triangle;
    const double l = number(j, "l", where), m = number(j, "m", where), r = number(j, "r", where);
    e.fn = validated(where, [&] {
      e.triangle = TriangularFN::make(l, m, r);
      return triangle_to_parametric(e.triangle);
    });
  } else if (kind == "analytic") {
    e.kind = FnKind::Analytic;
    e.lower_text = text(j, "d", where);
    e.upper_text = text(j, "u", where);
    Expression d = side(e.lower_text, where + ", side d");
    Expression u = side(e.upper_text, where + ", side u");
    e.fn = validated(where, [&] { return ParametricFN(std::move(d), std::move(u)); });
  } else if (kind == "panel") {
    e.kind = FnKind::Panel;
    if (!j.contains("estimates") || !j.at("estimates").is_array() || j.at("estimates").empty())
      fail(where, "'estimates' must be a non-empty array");
    std::set<std::string> sources;
    std::size_t k = 0;
    for (const json& est : j.at("estimates")) {
      ++k;
      const std::string ew = where + ", estimate " + std::to_string(k);
      ExpertInterval iv;
      if (est.is_array()) {
        if (est.size() != 2 || !est[0].is_number() || !est[1].is_number()) fail(ew, "expected [lower, upper]");
        iv = {"E" + std::to_string(k), est[0].get<double>(), est[1].get<double>()};
      } else if (est.is_object()) {
        iv = {est.contains("source") ? text(est, "source", ew) : "E" + std::to_string(k), number(est, "lower", ew),
              number(est, "upper", ew)};
      } else {
        fail(ew, "expected an object or [lower, upper]");
      }
      if (!(iv.lower <= iv.upper)) fail(ew, "lower must not exceed upper");
      if (!sources.insert(iv.source_id).second) fail(ew, "duplicate source '" + iv.source_id + "'");
      e.estimates.push_back(std::move(iv));
    }
    try {
      e.fn = to_parametric(aggregate(e.estimates));
    } catch (const NoOverlapError& err) {
      e.overlap_error = err;
    } catch (const InvalidInput& err) {
      fail(where, err.what());
    }
  } else {
    fail(where, "unknown kind '" + kind + "' (expected triangle, analytic or panel)");
  }
  return e;
}

void parse_analysis(const json& j, const std::filesystem::path& source, AnalysisOptions& out) {
  const std::string where = "analysis";
  if (!j.is_object()) fail(where, "must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "grid_n") {
      if (!value.is_number_integer() || value.get<long long>() < 2) fail(where, "'grid_n' must be an integer >= 2");
      out.grid_n = value.get<std::size_t>();
    } else if (key == "alphas") {
      if (!value.is_array() || value.empty()) fail(where, "'alphas' must be a non-empty array");
      for (const json& a : value) {
        if (!a.is_number() || !(a.get<double>() >= 0.0 && a.get<double>() <= 1.0)) fail(where, "alphas must lie in [0, 1]");
        out.alphas.push_back(a.get<double>());
      }
    } else if (key == "output_dir") {
      if (!value.is_string()) fail(where, "'output_dir' must be a string");
      std::filesystem::path p = value.get<std::string>();
      if (p.is_relative() && !source.empty()) p = source.parent_path() / p;
      out.output_dir = p;
    } else {
      fail(where, "unknown option '" + key + "'");
    }
  }
}

// ---------------------------------------------------------------------------
// Portfolio

struct Resolver {
  const Config& config;

  ParametricFN named(const std::string& name, const std::string& where) const {
    const auto it = config.fuzzy_numbers.find(name);
    if (it == config.fuzzy_numbers.end()) fail(where, "unknown fuzzy number '" + name + "'");
    if (!it->second.fn) fail(where, "panel '" + name + "' has no common intersection");
    return *it->second.fn;
  }

  ParametricFN resolve(const json& ref, const std::string& where, bool skew_allowed) const {
    if (ref.is_number()) return ParametricFN::crisp(ref.get<double>());
    if (ref.is_string()) return named(ref.get<std::string>(), where);
    if (ref.is_object() && ref.contains("from_skewness_of")) {
      if (!skew_allowed) fail(where, "'from_skewness_of' is only meaningful for skewness");
      const json& src = ref.at("from_skewness_of");
      if (!src.is_string()) fail(where, "'from_skewness_of' must name a fuzzy number");
      return ParametricFN::crisp(overall_skewness(named(src.get<std::string>(), where)));
    }
    if (ref.is_object()) {
      FuzzyEntry e = parse_entry(where, ref);
      if (!e.fn) fail(where, "inline panel has no common intersection");
      return *e.fn;
    }
    fail(where, "expected a number, a fuzzy number name or an inline definition");
  }
};

}  // namespace

const FuzzyEntry& Config::entry(const std::string& name) const {
  const auto it = fuzzy_numbers.find(name);
  if (it == fuzzy_numbers.end()) throw ConfigError("unknown fuzzy number '" + name + "'");
  return it->second;
}

Config parse_config(const std::string& raw, const std::filesystem::path& source) {
  const json doc = parse_json(raw);
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");

  Config cfg;
  cfg.source = source;
  cfg.raw = raw;
  for (const auto& [key, value] : doc.items()) {
    if (key == "fuzzy_numbers") {
      if (!value.is_object()) throw ConfigError("'fuzzy_numbers' must be an object keyed by name");
      for (const auto& [name, entry] : value.items()) cfg.fuzzy_numbers.emplace(name, parse_entry(name, entry));
    } else if (key == "portfolio") {
      if (!value.is_object()) throw ConfigError("'portfolio' must be an object");
      cfg.portfolio = value;
    } else if (key == "analysis") {
      parse_analysis(value, source, cfg.analysis);
    } else {
      throw ConfigError("unknown top-level key '" + key + "'");
    }
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigIoError("cannot read configuration '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ConfigIoError("error reading configuration '" + path.string() + "'");
  return parse_config(ss.str(), path);
}

PortfolioSpec build_portfolio(const Config& config) {
  if (!config.portfolio) throw ConfigError("configuration has no 'portfolio' block");
  const json& p = *config.portfolio;
  const std::string where = "portfolio";
  const Resolver res{config};

  static const std::set<std::string> known{"variant", "mu_base", "var_cap", "skew_base", "assets", "cov"};
  for (const auto& [key, value] : p.items())
    if (!known.count(key)) fail(where, "unknown key '" + key + "'");

  PortfolioSpec spec;
  try {
    spec.problem.variant = parse_variant(text(p, "variant", where));
  } catch (const InvalidInput& e) {
    fail(where, e.what());
  }
  spec.problem.mu_base = p.contains("mu_base") ? number(p, "mu_base", where) : 0.0;
  spec.problem.var_cap = p.contains("var_cap") ? number(p, "var_cap", where) : 0.0;
  spec.problem.skew_base = p.contains("skew_base") ? number(p, "skew_base", where) : 0.0;
  if (spec.problem.variant != ProgramVariant::MinVariance && !p.contains("var_cap")) fail(where, "'var_cap' is required");
  if (spec.problem.variant != ProgramVariant::MaxMean && !p.contains("mu_base")) fail(where, "'mu_base' is required");
  if (spec.problem.variant != ProgramVariant::MaxSkewness && !p.contains("skew_base")) fail(where, "'skew_base' is required");

  if (!p.contains("assets") || !p.at("assets").is_array() || p.at("assets").empty())
    fail(where, "'assets' must be a non-empty array");
  const json& assets = p.at("assets");
  const std::size_t n = assets.size();

  std::vector<ParametricFN> mu, skew, cov;
  std::set<std::string> names;
  bool any_box = false;
  std::vector<Box> boxes;
  for (std::size_t i = 0; i < n; ++i) {
    const json& a = assets[i];
    const std::string aw = where + ", asset " + std::to_string(i + 1);
    if (!a.is_object()) fail(aw, "must be an object");
    const std::string name = a.contains("name") ? text(a, "name", aw) : "asset" + std::to_string(i + 1);
    if (!names.insert(name).second) fail(aw, "duplicate asset name '" + name + "'");
    spec.asset_names.push_back(name);
    if (!a.contains("mu")) fail(aw, "missing 'mu'");
    mu.push_back(res.resolve(a.at("mu"), aw + " mu", false));
    skew.push_back(a.contains("skew") ? res.resolve(a.at("skew"), aw + " skew", true) : ParametricFN::crisp(0.0));
    Box b;
    if (a.contains("box")) {
      const json& bj = a.at("box");
      if (!bj.is_array() || bj.size() != 2 || !bj[0].is_number() || !bj[1].is_number()) fail(aw, "'box' must be [lower, upper]");
      b = {bj[0].get<double>(), bj[1].get<double>()};
      any_box = true;
    }
    boxes.push_back(b);
  }
  if (any_box) spec.problem.boxes = boxes;

  if (!p.contains("cov") || !p.at("cov").is_array() || p.at("cov").size() != n) fail(where, "'cov' must be an I x I matrix");
  const json& c = p.at("cov");
  for (std::size_t i = 0; i < n; ++i)
    if (!c[i].is_array() || c[i].size() != n) fail(where, "'cov' must be an I x I matrix");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      if (c[i][j] != c[j][i]) fail(where, "'cov' must be symmetric (entries " + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      cov.push_back(res.resolve(c[i][j], where + " cov[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]", false));
    }
  }

  try {
    spec.problem.params = std::make_shared<FuzzyParamSet>(std::move(mu), std::move(cov), std::move(skew));
    spec.problem.validate();
  } catch (const InvalidInput& e) {
    fail(where, e.what());
  }
  return spec;
}

std::vector<double> default_alphas() {
  std::vector<double> a;
  for (int i = 0; i <= 10; ++i) a.push_back(i / 10.0);
  return a;
}

}  // namespace fuzzcurve::cli
