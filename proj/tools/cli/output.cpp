#include "output.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>

#include "json.hpp"

#ifndef FUZZCURVE_VERSION
#define FUZZCURVE_VERSION "unknown"
#endif

namespace fuzzcurve::cli {

namespace fs = std::filesystem;

std::string fmt12(double x) {
  if (x == 0.0) return "0";  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  for (const auto& h : header) cell(std::string_view(h));
  end_row();
}

CsvTable& CsvTable::cell(double x) {
  row_.push_back(fmt12(x));
  return *this;
}

CsvTable& CsvTable::cell(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) {
    row_.emplace_back(s);
  } else {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    row_.push_back(q + "\"");
  }
  return *this;
}

CsvTable& CsvTable::cell(bool b) {
  row_.emplace_back(b ? "1" : "0");
  return *this;
}

void CsvTable::end_row() {
  if (row_.size() != columns_) throw std::logic_error("CSV row has the wrong number of cells");
  for (std::size_t i = 0; i < row_.size(); ++i) {
    if (i) out_ += ',';
    out_ += row_[i];
  }
  out_ += '\n';
  row_.clear();
}

std::string CsvTable::str() const { return out_; }

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

fs::path resolve_output_dir(const std::string& flag, const fs::path& from_config) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("FUZZCURVE_OUT"); env && *env) return env;
  if (!from_config.empty()) return from_config;
  return ".";
}

RunOutput::RunOutput(fs::path dir, std::string stem, std::string command)
    : dir_(std::move(dir)), stem_(std::move(stem)), command_(std::move(command)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_)) throw OutputError("cannot create output directory '" + dir_.string() + "'");
}

void RunOutput::write(const std::string& filename, std::string_view content) {
  for (const auto& f : files_)
    if (f == filename) throw std::logic_error("output '" + filename + "' written twice");
  const fs::path target = dir_ / filename;
  const fs::path tmp = dir_ / ("." + filename + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::error_code ignore;
      fs::remove(tmp, ignore);
      throw OutputError("cannot write '" + target.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw OutputError("cannot move output into place at '" + target.string() + "'");
  }
  files_.push_back(filename);
}

void RunOutput::add_input(std::string_view label, std::string_view data) {
  inputs_ += label;
  inputs_ += '\0';
  inputs_ += std::to_string(data.size());
  inputs_ += '\0';
  inputs_ += data;
}

void RunOutput::begin_stage(std::string name) {
  current_stage_ = std::move(name);
  stage_start_ = std::chrono::steady_clock::now();
}

void RunOutput::end_stage() {
  const std::chrono::duration<double> d = std::chrono::steady_clock::now() - stage_start_;
  stages_.emplace_back(current_stage_, d.count());
  current_stage_.clear();
}

fs::path RunOutput::finish() {
  const std::string name = stem_ + "_manifest.json";
  nlohmann::ordered_json m;
  m["tool"] = "fuzzcurve";
  m["version"] = FUZZCURVE_VERSION;
  m["command"] = command_;
  m["output_dir"] = dir_.string();
  m["inputs_sha256"] = sha256_hex(inputs_);
  auto& files = m["files"] = nlohmann::ordered_json::array();
  for (const auto& f : files_) files.push_back(f);
  files.push_back(name);
  auto& stages = m["stages"] = nlohmann::ordered_json::array();
  for (const auto& [stage, seconds] : stages_) stages.push_back({{"stage", stage}, {"seconds", seconds}});
  write(name, m.dump(2) + "\n");
  return dir_ / name;
}

}  // namespace fuzzcurve::cli
