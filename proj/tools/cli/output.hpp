#pragma once

// Output files of one command run: CSV formatting, atomic writes and the
// run manifest.

#include <chrono>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fuzzcurve::cli {

/// Writing an output file failed (exit code 4).
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest text for x with at most 12 significant digits ("%.12g").
std::string fmt12(double x);

/// Comma-separated table with a mandatory header row.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& cell(double x);
  CsvTable& cell(std::string_view s);  // quoted when it holds , " or newline
  CsvTable& cell(bool b);
  void end_row();

  std::string str() const;

 private:
  std::size_t columns_;
  std::vector<std::string> row_;
  std::string out_;
};

/// Lowercase hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

/// Choose the output directory: --out, then FUZZCURVE_OUT, then the
/// config's output_dir, then the working directory.
std::filesystem::path resolve_output_dir(const std::string& flag, const std::filesystem::path& from_config);

class RunOutput {
 public:
  RunOutput(std::filesystem::path dir, std::string stem, std::string command);

  /// Write via a temporary file in the same directory, then rename.
  void write(const std::string& filename, std::string_view content);

  /// Digest over everything that determines the outputs.
  void add_input(std::string_view label, std::string_view data);

  void begin_stage(std::string name);
  void end_stage();

  /// Write `<stem>_manifest.json`; returns its path.
  std::filesystem::path finish();

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
  std::string stem_;
  std::string command_;
  std::vector<std::string> files_;
  std::vector<std::pair<std::string, double>> stages_;
  std::string inputs_;
  std::string current_stage_;
  std::chrono::steady_clock::time_point stage_start_{};
};

}  // namespace fuzzcurve::cli
