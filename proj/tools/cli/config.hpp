#pragma once

// JSON run configuration: named fuzzy numbers, an optional portfolio block
// and analysis options. See docs/config.md for the schema.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "fuzzcurve/errors.hpp"
#include "fuzzcurve/fuzzy.hpp"
#include "fuzzcurve/portfolio.hpp"
#include "fuzzcurve/staircase.hpp"

namespace fuzzcurve::cli {

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The configuration file could not be read (exit code 4).
class ConfigIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FnKind { Triangle, Analytic, Panel };

struct FuzzyEntry {
  std::string name;
  FnKind kind = FnKind::Triangle;
  TriangularFN triangle{};
  std::string lower_text;  // analytic sides as written
  std::string upper_text;
  std::vector<ExpertInterval> estimates;
  /// Validated number; for panels, the joined staircase. Empty for a panel
  /// whose estimates do not overlap, so `aggregate` can report it.
  std::optional<ParametricFN> fn;
  std::optional<NoOverlapError> overlap_error;
};

struct PortfolioSpec {
  PortfolioProblem problem;
  std::vector<std::string> asset_names;
};

struct AnalysisOptions {
  std::size_t grid_n = 1024;
  std::vector<double> alphas;           // empty: 0, 0.1, ..., 1
  std::optional<std::filesystem::path> output_dir;  // resolved against the config's directory
};

struct Config {
  std::filesystem::path source;
  std::string raw;  // file bytes, for the manifest digest
  std::map<std::string, FuzzyEntry> fuzzy_numbers;
  std::optional<nlohmann::json> portfolio;  // checked and resolved by build_portfolio
  AnalysisOptions analysis;

  const FuzzyEntry& entry(const std::string& name) const;
};

Config parse_config(const std::string& text, const std::filesystem::path& source = {});
Config load_config(const std::filesystem::path& path);

/// Resolve the portfolio block. Skewness given as {"from_skewness_of": name}
/// runs the curve analysis of that number, so this can throw NumericError.
PortfolioSpec build_portfolio(const Config& config);

std::vector<double> default_alphas();

}  // namespace fuzzcurve::cli
