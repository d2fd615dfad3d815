#pragma once

// The three subcommands. Each returns a process exit code and reports
// problems on `err`; nothing here calls std::exit.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fuzzcurve::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,  // unexpected internal failure
  kExitConfig = 2,
  kExitNumeric = 3,
  kExitIo = 4,
  kExitNoOverlap = 5,
};

struct AnalyzeArgs {
  std::filesystem::path config;
  std::string name;
  std::optional<std::size_t> grid_n;
  std::string out;  // empty: FUZZCURVE_OUT, then the config's output_dir
};

struct AggregateArgs {
  std::filesystem::path config;
  std::string panel;
  std::string out;
};

struct PortfolioArgs {
  std::filesystem::path config;
  std::optional<std::vector<double>> alphas;
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& args, std::ostream& log, std::ostream& err);
int cmd_aggregate(const AggregateArgs& args, std::ostream& log, std::ostream& err);
int cmd_portfolio(const PortfolioArgs& args, std::ostream& log, std::ostream& err);

/// "0,0.5,1" -> {0, 0.5, 1}. Throws ConfigError on malformed text.
std::vector<double> parse_alpha_list(const std::string& text);

}  // namespace fuzzcurve::cli
