#pragma once

#include <string>
#include <vector>

#include "gaplab/rational.hpp"

namespace gaplab {

struct ExperimentConfig {
  std::vector<u64> x_grid;                // strictly increasing, each >= 3
  unsigned t_max = 3;                     // longest consecutive-gap vector
  std::vector<double> c_values;           // menu-budget exponents, in (0,1)
  std::vector<unsigned> menu_exponents;   // repetition counts m
  u64 mc_samples = 1'000'000;             // >= 10^4
  u64 mc_seed = 1;
  std::vector<std::vector<u64>> constellation_offsets;
  std::vector<std::string> pattern_files;  // resolved paths
  std::vector<std::string> pattern_names;  // as written in the config
  double selberg_s = 2.0;                  // R = z^s, s in [1,3]
  double cost_exponent = 3.0;
  bool bench_traces = false;
  std::string output_dir = "out";
};

// Flat key=value file; '#' starts a comment. Errors carry file:line and
// the offending field.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin,
                                   const std::string& base_dir);

// Canonical serialization (fixed key order, machine independent) and its
// FNV-1a hash; every CSV header records the hash and seed.
std::string config_canonical(const ExperimentConfig& cfg);
std::string config_hash_hex(const ExperimentConfig& cfg);

std::string run_gaps_csv(const ExperimentConfig& cfg);
std::string run_constellations_csv(const ExperimentConfig& cfg);
std::string run_selberg_csv(const ExperimentConfig& cfg);
std::string run_bench_csv(const ExperimentConfig& cfg);
std::string run_bench_traces_csv(const ExperimentConfig& cfg);

// Maps output file name -> generator, in emission order.
std::vector<std::pair<std::string, std::string (*)(const ExperimentConfig&)>>
csv_outputs(const ExperimentConfig& cfg);

struct VerifyIssue {
  std::string file;
  std::size_t row = 0;     // 1-based; 0 = whole file
  std::size_t column = 0;  // 1-based; 0 = whole row
  std::string message;
};

struct VerifyResult {
  bool ok = true;
  std::vector<VerifyIssue> issues;
};

// Recompute every golden CSV from golden_dir/config.cfg and compare:
// exact match for integer/rational/text cells, 1e-9 relative for floats.
VerifyResult verify_goldens(const std::string& golden_dir);

// "%.12g" float cell
std::string fmt_float(double v);

}  // namespace gaplab
