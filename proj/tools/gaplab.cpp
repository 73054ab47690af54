#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "gaplab/experiment.hpp"
#include "gaplab/gap_stats.hpp"
#include "gaplab/pair_constellation.hpp"
#include "gaplab/quantale.hpp"

namespace fs = std::filesystem;
using namespace gaplab;

namespace {

void write_output(const std::string& dir, const std::string& name,
                  const std::string& text) {
  fs::create_directories(dir);
  fs::path p = fs::path(dir) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
  std::printf("wrote %s\n", p.string().c_str());
}

// stdout walkthrough of the abstract-weakness view of one window
void quantale_demo(const ExperimentConfig& cfg) {
  if (cfg.x_grid.empty()) return;
  u64 X = cfg.x_grid.front();
  PrimeWindow w = build_window(X);
  GapDistribution d = gap_distribution(w);
  Rat via_q = gap_collision_via_quantale(d);
  Rat direct = collision_probability(d);
  std::printf("quantale demo at X=%llu:\n", static_cast<unsigned long long>(X));
  std::printf("  diagonal weakness       = %s\n", rat_string(via_q).c_str());
  std::printf("  collision probability   = %s  (%s)\n", rat_string(direct).c_str(),
              via_q == direct ? "identical" : "MISMATCH");
  std::printf("  logical entropy         = %s\n",
              rat_string(logical_entropy(d)).c_str());

  // counting view: tokens = gap atoms, diagonal relation, unit valuation
  auto cq = counting_quantale();
  WeightedRelation<u64, u64> rel;
  for (const auto& [h, c] : d.counts) {
    rel.valuation[h] = 1;
    rel.pairs.emplace_back(h, h);
  }
  u64 joined = weakness(cq, rel);
  u64 pairs = counting_pair_total(rel);
  std::printf("  counting weakness (max) = %llu, undistinguished pairs = %llu, "
              "MDL approx = %s bits\n",
              static_cast<unsigned long long>(joined),
              static_cast<unsigned long long>(pairs),
              fmt_float(mdl_bits(d.counts.size(), pairs)).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime-gap statistics laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_dir, golden_dir;
  u64 seed_override = 0;
  bool have_seed = false, verbose = false;
  std::vector<std::string> offsets_override;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config file")->required();
    cmd->add_option("--out", out_dir, "output directory (overrides config)");
    cmd->add_option("--seed", seed_override, "Monte Carlo seed (overrides config)")
        ->each([&](const std::string&) { have_seed = true; });
  };

  auto* gaps = app.add_subcommand("gaps", "per-window gap statistics table");
  add_common(gaps);
  gaps->add_flag("-v,--verbose", verbose, "print the quantale demo");

  auto* consts =
      app.add_subcommand("constellations", "constellation counts and densities");
  add_common(consts);
  consts->add_option("--offsets", offsets_override,
                     "offset tuple like '0,2,6' (repeatable; overrides config)");

  auto* selberg = app.add_subcommand("selberg", "sieve weakness reports");
  add_common(selberg);

  auto* bench = app.add_subcommand("bench", "successor baseline accounting");
  add_common(bench);

  auto* verify = app.add_subcommand("verify", "recompute and check golden CSVs");
  verify->add_option("golden_dir", golden_dir, "directory with config.cfg + CSVs")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      VerifyResult res = verify_goldens(golden_dir);
      for (const auto& issue : res.issues)
        std::printf("FAIL %s row=%zu col=%zu: %s\n", issue.file.c_str(), issue.row,
                    issue.column, issue.message.c_str());
      if (res.ok) {
        std::printf("PASS all goldens match\n");
        return 0;
      }
      return 2;
    }

    ExperimentConfig cfg = parse_config(config_path);
    if (have_seed) cfg.mc_seed = seed_override;
    if (!out_dir.empty()) cfg.output_dir = out_dir;

    if (gaps->parsed()) {
      write_output(cfg.output_dir, "gaps.csv", run_gaps_csv(cfg));
      if (verbose) quantale_demo(cfg);
    } else if (consts->parsed()) {
      if (!offsets_override.empty()) {
        cfg.constellation_offsets.clear();
        for (const auto& s : offsets_override) {
          std::vector<u64> offs;
          std::stringstream in(s);
          std::string item;
          while (std::getline(in, item, ','))
            offs.push_back(std::stoull(item));
          cfg.constellation_offsets.push_back(std::move(offs));
        }
        for (const auto& offs : cfg.constellation_offsets)
          (void)OffsetTuple(offs);
      }
      write_output(cfg.output_dir, "constellations.csv",
                   run_constellations_csv(cfg));
    } else if (selberg->parsed()) {
      write_output(cfg.output_dir, "selberg.csv", run_selberg_csv(cfg));
    } else if (bench->parsed()) {
      write_output(cfg.output_dir, "bench.csv", run_bench_csv(cfg));
      if (cfg.bench_traces)
        write_output(cfg.output_dir, "bench_traces.csv", run_bench_traces_csv(cfg));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
