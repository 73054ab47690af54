#include "gaplab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gaplab/gap_stats.hpp"
#include "gaplab/pair_constellation.hpp"
#include "gaplab/quantale.hpp"
#include "gaplab/selberg.hpp"
#include "gaplab/successor.hpp"

namespace gaplab {

namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

[[noreturn]] void cfg_fail(const std::string& origin, std::size_t line,
                           const std::string& field, const std::string& msg) {
  throw std::invalid_argument(origin + ":" + std::to_string(line) + ": field '" +
                              field + "': " + msg);
}

u64 to_u64(const std::string& s, const std::string& origin, std::size_t line,
           const std::string& field) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    cfg_fail(origin, line, field, "'" + s + "' is not an integer");
  }
}

double to_f64(const std::string& s, const std::string& origin, std::size_t line,
              const std::string& field) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    cfg_fail(origin, line, field, "'" + s + "' is not a number");
  }
}

std::string offsets_label(const std::vector<u64>& offs) {
  std::string s;
  for (std::size_t i = 0; i < offs.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(offs[i]);
  }
  return s;
}

u64 fnv1a(const std::string& s) {
  u64 h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string csv_header(const char* command, const ExperimentConfig& cfg) {
  return std::string("# gaplab ") + command + " config=" + config_hash_hex(cfg) +
         " seed=" + std::to_string(cfg.mc_seed) + "\n";
}

double loglog3(double x) { return std::log(std::log(3.0 * x)); }

std::string fmt_c(double c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", c);
  return buf;
}

}  // namespace

std::string fmt_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path,
                           fs::path(path).parent_path().string());
}

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::string& origin,
                                   const std::string& base_dir) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool saw_offsets = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    if (key == "x_grid") {
      cfg.x_grid.clear();
      for (const auto& item : split(value, ','))
        cfg.x_grid.push_back(to_u64(item, origin, lineno, key));
    } else if (key == "t_max") {
      cfg.t_max = static_cast<unsigned>(to_u64(value, origin, lineno, key));
    } else if (key == "c_values") {
      cfg.c_values.clear();
      for (const auto& item : split(value, ','))
        cfg.c_values.push_back(to_f64(item, origin, lineno, key));
    } else if (key == "menu_exponents") {
      cfg.menu_exponents.clear();
      for (const auto& item : split(value, ','))
        cfg.menu_exponents.push_back(
            static_cast<unsigned>(to_u64(item, origin, lineno, key)));
    } else if (key == "mc_samples") {
      cfg.mc_samples = to_u64(value, origin, lineno, key);
    } else if (key == "mc_seed") {
      cfg.mc_seed = to_u64(value, origin, lineno, key);
    } else if (key == "constellation_offsets") {
      saw_offsets = true;
      cfg.constellation_offsets.clear();
      for (const auto& tuple : split(value, ';')) {
        std::vector<u64> offs;
        for (const auto& item : split(tuple, ','))
          offs.push_back(to_u64(item, origin, lineno, key));
        if (offs.empty()) cfg_fail(origin, lineno, key, "empty offset tuple");
        cfg.constellation_offsets.push_back(std::move(offs));
      }
    } else if (key == "pattern_files") {
      cfg.pattern_files.clear();
      cfg.pattern_names.clear();
      for (const auto& item : split(value, ',')) {
        cfg.pattern_names.push_back(item);
        fs::path p(item);
        cfg.pattern_files.push_back(
            p.is_absolute() || base_dir.empty() ? item
                                                : (fs::path(base_dir) / p).string());
      }
    } else if (key == "selberg_s") {
      cfg.selberg_s = to_f64(value, origin, lineno, key);
    } else if (key == "cost_exponent") {
      cfg.cost_exponent = to_f64(value, origin, lineno, key);
    } else if (key == "bench_traces") {
      if (value == "on")
        cfg.bench_traces = true;
      else if (value == "off")
        cfg.bench_traces = false;
      else
        cfg_fail(origin, lineno, key, "expected 'on' or 'off'");
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else {
      cfg_fail(origin, lineno, key, "unknown key");
    }
  }

  if (!saw_offsets)
    cfg.constellation_offsets = {{0, 2}, {0, 2, 6}, {0, 2, 4}};

  // validation
  for (std::size_t i = 0; i < cfg.x_grid.size(); ++i) {
    if (cfg.x_grid[i] < 3)
      throw std::invalid_argument(origin + ": field 'x_grid': entries must be >= 3");
    if (i && cfg.x_grid[i] <= cfg.x_grid[i - 1])
      throw std::invalid_argument(origin +
                                  ": field 'x_grid': must be strictly increasing");
  }
  if (cfg.t_max < 1)
    throw std::invalid_argument(origin + ": field 't_max': must be >= 1");
  for (double c : cfg.c_values)
    if (!(c > 0.0 && c < 1.0))
      throw std::invalid_argument(origin + ": field 'c_values': must lie in (0,1)");
  for (unsigned m : cfg.menu_exponents)
    if (m < 1)
      throw std::invalid_argument(origin + ": field 'menu_exponents': must be >= 1");
  if (cfg.mc_samples < 10'000)
    throw std::invalid_argument(origin + ": field 'mc_samples': must be >= 10000");
  if (!(cfg.selberg_s >= 1.0 && cfg.selberg_s <= 3.0))
    throw std::invalid_argument(origin + ": field 'selberg_s': must lie in [1,3]");
  for (const auto& offs : cfg.constellation_offsets)
    (void)OffsetTuple(offs);  // throws on malformed tuples
  return cfg;
}

std::string config_canonical(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "x_grid=";
  for (std::size_t i = 0; i < cfg.x_grid.size(); ++i)
    out << (i ? "," : "") << cfg.x_grid[i];
  out << "\nt_max=" << cfg.t_max << "\nc_values=";
  for (std::size_t i = 0; i < cfg.c_values.size(); ++i)
    out << (i ? "," : "") << fmt_c(cfg.c_values[i]);
  out << "\nmenu_exponents=";
  for (std::size_t i = 0; i < cfg.menu_exponents.size(); ++i)
    out << (i ? "," : "") << cfg.menu_exponents[i];
  out << "\nmc_samples=" << cfg.mc_samples << "\nmc_seed=" << cfg.mc_seed
      << "\nconstellation_offsets=";
  for (std::size_t i = 0; i < cfg.constellation_offsets.size(); ++i)
    out << (i ? ";" : "") << offsets_label(cfg.constellation_offsets[i]);
  out << "\npattern_files=";
  for (std::size_t i = 0; i < cfg.pattern_names.size(); ++i)
    out << (i ? "," : "") << cfg.pattern_names[i];
  out << "\nselberg_s=" << fmt_c(cfg.selberg_s)
      << "\ncost_exponent=" << fmt_c(cfg.cost_exponent)
      << "\nbench_traces=" << (cfg.bench_traces ? "on" : "off") << "\n";
  return out.str();
}

std::string config_hash_hex(const ExperimentConfig& cfg) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(config_canonical(cfg))));
  return buf;
}

std::string run_gaps_csv(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << csv_header("gaps", cfg);
  out << "X,pi_X,atom_max,w,ell,H_bits,H2_bits";
  for (double c : cfg.c_values) out << ",k_c" << fmt_c(c) << ",topk_c" << fmt_c(c);
  out << ",wnorm";
  for (unsigned t = 2; t <= cfg.t_max; ++t) out << ",w_t" << t;
  for (unsigned m : cfg.menu_exponents)
    out << ",mc_coll_m" << m << ",mc_coll_se_m" << m << ",mc_menu_m" << m
        << ",mc_menu_se_m" << m;
  out << "\n";

  for (u64 X : cfg.x_grid) {
    PrimeWindow w = build_window(X);
    GapDistribution d = gap_distribution(w);
    out << X << "," << d.total << "," << rat_string(atom_max(d)) << ","
        << rat_string(collision_probability(d)) << ","
        << rat_string(logical_entropy(d)) << "," << fmt_float(shannon_entropy_bits(d))
        << "," << fmt_float(renyi2_entropy_bits(d));
    for (double c : cfg.c_values) {
      u64 k = exceptional_budget(X, c);
      out << "," << k << "," << rat_string(top_k_mass(d, k));
    }
    double wnorm = to_double(collision_probability(d)) *
                   std::log(static_cast<double>(X)) /
                   loglog3(static_cast<double>(X));
    out << "," << fmt_float(wnorm);
    for (unsigned t = 2; t <= cfg.t_max; ++t) {
      GapVectorDistribution vd = gap_vector_distribution(w, t);
      out << "," << rat_string(collision_probability(vd));
    }
    if (!cfg.menu_exponents.empty()) {
      std::set<u64> menu = top_k_set(d, exceptional_budget(X, 0.5));
      for (unsigned m : cfg.menu_exponents) {
        McEstimate coll = mc_tensor_collision(d, m, cfg.mc_samples, cfg.mc_seed);
        McEstimate rep = mc_menu_repeat(d, menu, m, cfg.mc_samples, cfg.mc_seed);
        out << "," << fmt_float(coll.frequency) << "," << fmt_float(coll.std_error)
            << "," << fmt_float(rep.frequency) << "," << fmt_float(rep.std_error);
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string run_constellations_csv(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << csv_header("constellations", cfg);
  out << "X,offsets,m,admissible,count,singular,singular_tail,norm_prob\n";
  for (u64 X : cfg.x_grid) {
    u64 pi_x = prime_count(X, 2 * X);
    for (const auto& offs : cfg.constellation_offsets) {
      OffsetTuple t(offs);
      u64 count = constellation_count(X, t);
      SingularSeriesValue ss = singular_series(t);
      double prob = static_cast<double>(count) / static_cast<double>(pi_x);
      std::string norm = "nan";  // inadmissible tuples have no density to divide by
      if (ss.value > 0.0)
        norm = fmt_float(prob *
                         std::pow(std::log(static_cast<double>(X)), t.order()) /
                         ss.value);
      out << X << "," << offsets_label(offs) << "," << t.order() << ","
          << (t.admissible() ? 1 : 0) << "," << count << "," << fmt_float(ss.value)
          << "," << fmt_float(ss.tail_bound) << "," << norm << "\n";
    }
  }
  return out.str();
}

std::string run_selberg_csv(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << csv_header("selberg", cfg);
  out << "pattern,X,W0,b,z,n_supported,max_omega,weak_exact,weak,R,s,"
         "selberg_closed,selberg_qf,closed_qf_relerr,F1,count,main_term,ratio,"
         "split_product\n";
  for (u64 X : cfg.x_grid) {
    PrimeWindow w = build_window(X);
    for (std::size_t i = 0; i < cfg.pattern_files.size(); ++i) {
      ObstructionPattern pat = parse_pattern_file(cfg.pattern_files[i]);
      std::string name = fs::path(cfg.pattern_files[i]).stem().string();
      u64 R = static_cast<u64>(std::llround(
          std::pow(static_cast<double>(pat.z), cfg.selberg_s)));
      R = std::max<u64>(R, 1);
      SelbergSystem sys = make_selberg_system(pat, R);

      unsigned max_omega = 0;
      std::size_t n_supported = 0;
      for (const auto& [p, omega] : pat.forbidden) {
        max_omega = std::max<unsigned>(max_omega, omega.size());
        if (!omega.empty()) ++n_supported;
      }

      std::string closed_s = "na", qf_s = "na", relerr_s = "na";
      bool degenerate = false;
      for (const auto& [p, omega] : pat.forbidden)
        if (omega.size() == p - 1) degenerate = true;
      if (!degenerate) {
        Rat closed = selberg_weakness_closed_form(sys);
        QfSolution qf = selberg_weakness_qf(sys);
        double cd = to_double(closed);
        closed_s = fmt_float(cd);
        qf_s = fmt_float(qf.minimum);
        relerr_s = fmt_float(std::abs(qf.minimum - cd) / cd);
      }

      SiftedBoundReport rep = sifted_bound_report(w, pat, R);

      std::string split = "na";
      std::vector<u64> supported;
      for (const auto& [p, omega] : pat.forbidden)
        if (!omega.empty()) supported.push_back(p);
      if (supported.size() >= 2) {
        ObstructionPattern a{pat.W0, pat.b, pat.z, {}};
        ObstructionPattern bq{pat.W0, pat.b, pat.z, {}};
        for (std::size_t j = 0; j < supported.size(); ++j)
          (j % 2 ? bq : a).forbidden[supported[j]] = pat.forbidden.at(supported[j]);
        Rat lhs = local_weakness_exact(combine_patterns(a, bq));
        Rat rhs = local_weakness_exact(a) * local_weakness_exact(bq);
        split = (lhs == rhs) ? "pass" : "fail";
      }

      out << name << "," << X << "," << pat.W0 << "," << pat.b << "," << pat.z
          << "," << n_supported << "," << max_omega << ","
          << rat_string(local_weakness_exact(pat)) << ","
          << fmt_float(rep.weakness) << "," << R << "," << fmt_float(rep.s) << ","
          << closed_s << "," << qf_s << "," << relerr_s << ","
          << (rep.f1_defined ? fmt_float(rep.f1) : "na") << "," << rep.count << ","
          << (rep.f1_defined ? fmt_float(rep.main_term) : "na") << ","
          << (rep.ratio_defined ? fmt_float(rep.ratio) : "undefined") << ","
          << split << "\n";
    }
  }
  return out.str();
}

std::string run_bench_csv(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << csv_header("bench", cfg);
  out << "X,pi_X,mean_gap,max_gap,seq_mean_cand,seq_max_cand,seq_mean_cost";
  for (u64 wheel : kWheels)
    out << ",w" << wheel << "_mean_cand,w" << wheel << "_ratio";
  out << "\n";
  for (u64 X : cfg.x_grid) {
    PrimeWindow w = build_window(X);
    BaselineReport rep = window_baseline_report(w, cfg.cost_exponent);
    out << X << "," << rep.pi << "," << fmt_float(rep.mean_gap) << ","
        << rep.max_gap << "," << fmt_float(rep.mean_candidates_seq) << ","
        << rep.max_candidates_seq << "," << fmt_float(rep.mean_cost_units_seq);
    for (u64 wheel : kWheels) {
      const WheelSummary* found = nullptr;
      for (const auto& ws : rep.wheels)
        if (ws.wheel == wheel) found = &ws;
      if (found)
        out << "," << fmt_float(found->mean_candidates) << ","
            << fmt_float(found->candidate_ratio_vs_seq);
      else
        out << ",na,na";
    }
    out << "\n";
  }
  return out.str();
}

std::string run_bench_traces_csv(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << csv_header("bench_traces", cfg);
  out << "X,p,gap,candidates,cost_units,variant\n";
  for (u64 X : cfg.x_grid) {
    PrimeWindow w = build_window(X);
    for (std::size_t i = 0; i < w.pi(); ++i) {
      u64 p = w.primes[i];
      u64 succ = (i + 1 < w.pi()) ? w.primes[i + 1] : w.overflow_prime;
      RunTrace t = run_seq(p, cfg.cost_exponent);
      out << X << "," << p << "," << succ - p << "," << t.candidates_tested << ","
          << fmt_float(t.cost_units) << ",seq\n";
      for (u64 wheel : kWheels) {
        if (X <= wheel_largest_factor(wheel)) continue;
        RunTrace tw = run_wheel(p, wheel, cfg.cost_exponent);
        out << X << "," << p << "," << succ - p << "," << tw.candidates_tested
            << "," << fmt_float(tw.cost_units) << ",wheel" << wheel << "\n";
      }
    }
  }
  return out.str();
}

std::vector<std::pair<std::string, std::string (*)(const ExperimentConfig&)>>
csv_outputs(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string (*)(const ExperimentConfig&)>> out{
      {"gaps.csv", &run_gaps_csv},
      {"constellations.csv", &run_constellations_csv},
      {"selberg.csv", &run_selberg_csv},
      {"bench.csv", &run_bench_csv},
  };
  if (cfg.bench_traces) out.emplace_back("bench_traces.csv", &run_bench_traces_csv);
  return out;
}

namespace {

bool parse_full_double(const std::string& s, double& v) {
  if (s.empty()) return false;
  char* end = nullptr;
  v = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

void compare_csv(const std::string& file, const std::string& expected,
                 const std::string& actual, VerifyResult& res) {
  std::vector<std::string> exp_lines = split(expected, '\n');
  std::vector<std::string> act_lines = split(actual, '\n');
  if (exp_lines.size() != act_lines.size()) {
    res.ok = false;
    res.issues.push_back({file, 0, 0,
                          "row count mismatch: golden has " +
                              std::to_string(act_lines.size()) + ", recomputed " +
                              std::to_string(exp_lines.size())});
    return;
  }
  for (std::size_t r = 0; r < exp_lines.size(); ++r) {
    auto exp_cells = split(exp_lines[r], ',');
    auto act_cells = split(act_lines[r], ',');
    if (exp_cells.size() != act_cells.size()) {
      res.ok = false;
      res.issues.push_back({file, r + 1, 0, "column count mismatch"});
      continue;
    }
    for (std::size_t c = 0; c < exp_cells.size(); ++c) {
      if (exp_cells[c] == act_cells[c]) continue;
      double ev, av;
      if (parse_full_double(exp_cells[c], ev) && parse_full_double(act_cells[c], av)) {
        double denom = std::max(std::abs(ev), std::abs(av));
        if (std::isfinite(ev) && std::isfinite(av) &&
            std::abs(ev - av) <= 1e-9 * denom)
          continue;
      }
      res.ok = false;
      res.issues.push_back({file, r + 1, c + 1,
                            "expected '" + exp_cells[c] + "', golden has '" +
                                act_cells[c] + "'"});
    }
  }
}

}  // namespace

VerifyResult verify_goldens(const std::string& golden_dir) {
  VerifyResult res;
  fs::path dir(golden_dir);
  fs::path cfg_path = dir / "config.cfg";
  if (!fs::exists(cfg_path)) {
    res.ok = false;
    res.issues.push_back({cfg_path.string(), 0, 0, "missing config"});
    return res;
  }
  ExperimentConfig cfg = parse_config(cfg_path.string());
  for (const auto& [name, runner] : csv_outputs(cfg)) {
    fs::path p = dir / name;
    if (!fs::exists(p)) {
      res.ok = false;
      res.issues.push_back({p.string(), 0, 0, "missing golden file"});
      continue;
    }
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    compare_csv(name, runner(cfg), buf.str(), res);
  }
  return res;
}

}  // namespace gaplab
