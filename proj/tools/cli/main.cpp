#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

#ifndef FUZZCURVE_VERSION
#define FUZZCURVE_VERSION "unknown"
#endif

int main(int argc, char** argv) {
  using namespace fuzzcurve::cli;

  CLI::App app{"Curve geometry of fuzzy numbers: skewness, dispersion, expert aggregation, portfolios", "fuzzcurve"};
  app.set_version_flag("--version", std::string("fuzzcurve ") + FUZZCURVE_VERSION);
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  std::size_t grid = 0;
  auto* an = app.add_subcommand("analyze", "Skewness, mean value triangle and dispersion of one fuzzy number");
  an->add_option("--config", analyze.config, "Configuration file")->required();
  an->add_option("--name", analyze.name, "Fuzzy number to analyze")->required();
  auto* grid_opt = an->add_option("--grid", grid, "Sampling grid size (overrides analysis.grid_n)")->check(CLI::PositiveNumber);
  an->add_option("--out", analyze.out, "Output directory");

  AggregateArgs aggregate;
  auto* ag = app.add_subcommand("aggregate", "Aggregate an expert panel into a fuzzy number");
  ag->add_option("--config", aggregate.config, "Configuration file")->required();
  ag->add_option("--panel", aggregate.panel, "Panel to aggregate")->required();
  ag->add_option("--out", aggregate.out, "Output directory");

  PortfolioArgs portfolio;
  std::string alphas;
  auto* pf = app.add_subcommand("portfolio", "Solve the fuzzy portfolio program level by level");
  pf->add_option("--config", portfolio.config, "Configuration file")->required();
  auto* alphas_opt = pf->add_option("--alphas", alphas, "Comma-separated levels (overrides analysis.alphas)");
  pf->add_option("--out", portfolio.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (an->parsed()) {
    if (grid_opt->count()) analyze.grid_n = grid;
    return cmd_analyze(analyze, std::cout, std::cerr);
  }
  if (ag->parsed()) return cmd_aggregate(aggregate, std::cout, std::cerr);
  if (alphas_opt->count()) {
    try {
      portfolio.alphas = parse_alpha_list(alphas);
    } catch (const ConfigError& e) {
      std::cerr << "fuzzcurve portfolio: " << e.what() << "\n";
      return kExitConfig;
    }
  }
  return cmd_portfolio(portfolio, std::cout, std::cerr);
}
