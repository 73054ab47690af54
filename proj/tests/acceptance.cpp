// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Trend thresholds were frozen from independent bring-up oracle
// runs and are fixed constants here.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <vector>

#include "gaplab/experiment.hpp"
#include "gaplab/gap_stats.hpp"
#include "gaplab/pair_constellation.hpp"
#include "gaplab/quantale.hpp"
#include "gaplab/selberg.hpp"
#include "gaplab/successor.hpp"

using namespace gaplab;

namespace {

// frozen bring-up constants
constexpr double kCollisionNormSpread = 3.0;   // observed 1.413
constexpr double kEntropyTotalGrowth = 0.8;    // observed 1.269 bits
constexpr double kEntropyPerDecade = 0.2;      // observed min 0.2234 bits
constexpr double kExceptionalAt1e7 = 0.45;     // observed 0.3939
constexpr double kExceptionalNormC0 = 1.0;     // observed max 0.857
constexpr double kAtomNormC = 1.2;             // observed max 0.927
constexpr double kVectorNormSpread = 5.0;      // observed 2.385
constexpr double kPairFactorCF = 2.1;          // observed max 2.0810 at h=105
constexpr double kSiftedSlack = 0.10;          // observed max ratio 0.825
constexpr u64 kSeed = 20260810;
constexpr u64 kMcSamples = 1'000'000;

const std::vector<u64> kGrid{1'000, 10'000, 100'000, 1'000'000, 10'000'000};

struct WindowStats {
  u64 X = 0;
  GapDistribution d;
  Rat w, w2, w3;
  double H = 0, H2 = 0;
  u64 k05 = 0;
  Rat ex05;
};

std::vector<WindowStats>& grid_stats() {
  static std::vector<WindowStats> stats = [] {
    std::vector<WindowStats> out;
    for (u64 X : kGrid) {
      PrimeWindow w = build_window(X);
      WindowStats s;
      s.X = X;
      s.d = gap_distribution(w);
      s.w = collision_probability(s.d);
      s.w2 = collision_probability(gap_vector_distribution(w, 2));
      s.w3 = collision_probability(gap_vector_distribution(w, 3));
      s.H = shannon_entropy_bits(s.d);
      s.H2 = renyi2_entropy_bits(s.d);
      s.k05 = exceptional_budget(X, 0.5);
      s.ex05 = exceptional_fraction(s.d, 0.5);
      out.push_back(std::move(s));
    }
    return out;
  }();
  return stats;
}

double loglog3(double x) { return std::log(std::log(3.0 * x)); }

int g_failures = 0;

void report(int number, bool ok, const char* label, const std::string& detail) {
  if (!ok) ++g_failures;
  std::printf("criterion %2d %s  %-24s %s\n", number, ok ? "PASS" : "FAIL", label,
              detail.c_str());
  std::fflush(stdout);
}

char buf[512];

// ---------------------------------------------------------------- 1
void criterion_oracle_equivalence() {
  bool ok = true;
  std::vector<u64> xs;
  std::set<u64> seen;
  for (int i = 0; i < 50; ++i) {
    double t = static_cast<double>(i) / 49.0;
    u64 X = static_cast<u64>(std::llround(3.0 * std::pow(100'000.0 / 3.0, t)));
    while (seen.count(X)) ++X;
    seen.insert(X);
    xs.push_back(X);
  }
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
  for (i64 i = 0; i < static_cast<i64>(xs.size()); ++i) {
    PrimeWindow w = build_window(xs[i]);
    ok = ok && (w.primes == ref::primes_in(xs[i], 2 * xs[i]));
  }
  bool windows_ok = ok;

  bool prime_ok = true;
#pragma omp parallel for schedule(dynamic, 4096) reduction(&& : prime_ok)
  for (i64 n = 0; n <= 1'000'000; ++n)
    prime_ok = prime_ok && (is_prime(static_cast<u64>(n)) ==
                            ref::is_prime(static_cast<u64>(n)));

  std::snprintf(buf, sizeof buf,
                "50-window grid vs trial division %s; is_prime exhaustive to 1e6 %s",
                windows_ok ? "exact" : "MISMATCH", prime_ok ? "exact" : "MISMATCH");
  report(1, windows_ok && prime_ok, "oracle equivalence", buf);
}

// ---------------------------------------------------------------- 2
void criterion_bertrand() {
  auto primes = primes_upto(1'000'000);
  bool ok = true;
#pragma omp parallel for schedule(dynamic, 1024) reduction(&& : ok)
  for (i64 i = 0; i < static_cast<i64>(primes.size()); ++i)
    ok = ok && (next_prime(primes[i]) <= 2 * primes[i]);
  std::snprintf(buf, sizeof buf, "next_prime(p) <= 2p for all %zu primes <= 1e6",
                primes.size());
  report(2, ok, "doubling range", buf);
}

// ---------------------------------------------------------------- 3
void criterion_collision_decay() {
  auto& stats = grid_stats();
  bool decreasing = true;
  double lo = 1e300, hi = 0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (i && !(stats[i].w < stats[i - 1].w)) decreasing = false;
    double norm = to_double(stats[i].w) * std::log(static_cast<double>(stats[i].X)) /
                  loglog3(static_cast<double>(stats[i].X));
    lo = std::min(lo, norm);
    hi = std::max(hi, norm);
  }
  bool bounded = hi / lo < kCollisionNormSpread;
  std::snprintf(buf, sizeof buf,
                "w strictly decreasing: %s; normalized spread %.4f < %.1f",
                decreasing ? "yes" : "NO", hi / lo, kCollisionNormSpread);
  report(3, decreasing && bounded, "collision decay", buf);
}

// ---------------------------------------------------------------- 4
void criterion_entropy_chain() {
  auto& stats = grid_stats();
  bool dominance = true, growth = true;
  double min_step = 1e300;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (stats[i].H < stats[i].H2 - 1e-12) dominance = false;
    double expected = -std::log2(to_double(stats[i].w));
    if (std::abs(stats[i].H2 - expected) > 1e-12) dominance = false;
    if (i) {
      double step = stats[i].H2 - stats[i - 1].H2;
      min_step = std::min(min_step, step);
      if (step < kEntropyPerDecade) growth = false;
    }
  }
  double total = stats.back().H2 - stats.front().H2;
  if (total < kEntropyTotalGrowth) growth = false;
  std::snprintf(buf, sizeof buf,
                "H >= H2 = -log2(w) per window: %s; H2 growth %.3f bits total "
                "(min step %.3f)",
                dominance ? "yes" : "NO", total, min_step);
  report(4, dominance && growth, "entropy chain", buf);
}

// ---------------------------------------------------------------- 5
void criterion_menu_bound() {
  auto& stats = grid_stats();
  std::mt19937_64 rng(kSeed);
  bool menus_ok = true;
  bool atoms_ok = true;
  for (auto& s : stats) {
    Rat amax = atom_max(s.d);
    double lx = std::log(static_cast<double>(s.X));
    if (to_double(amax) * lx / loglog3(static_cast<double>(s.X)) > kAtomNormC)
      atoms_ok = false;
    u64 k09 = std::max<u64>(
        1, static_cast<u64>(std::floor(
               std::pow(std::log2(static_cast<double>(s.X)), 0.9))));
    for (u64 k = 1; k <= k09; ++k) {
      std::set<u64> menu = top_k_set(s.d, k);
      if (!(menu_mass(s.d, menu) <= Rat(Int(menu.size()), Int(1)) * amax))
        menus_ok = false;
      if (top_k_mass(s.d, k) != menu_mass(s.d, menu)) menus_ok = false;
    }
    std::vector<u64> keys;
    for (const auto& [h, c] : s.d.counts) keys.push_back(h);
    for (int trial = 0; trial < 20; ++trial) {
      std::set<u64> menu;
      u64 size = 1 + rng() % k09;
      while (menu.size() < size) {
        if (rng() % 3 == 0)
          menu.insert(2 * (1 + rng() % (3 * keys.size())));
        else
          menu.insert(keys[rng() % keys.size()]);
      }
      if (!(menu_mass(s.d, menu) <= Rat(Int(menu.size()), Int(1)) * amax))
        menus_ok = false;
    }
  }

  // adversarial fraction: decreasing along fixed-budget segments, small at
  // the top of the grid, and under the normalized envelope
  bool fraction_ok = true;
  double norm_max = 0;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    if (i && stats[i].k05 == stats[i - 1].k05 && !(stats[i].ex05 < stats[i - 1].ex05))
      fraction_ok = false;
    double lx = std::log(static_cast<double>(stats[i].X));
    norm_max = std::max(norm_max,
                        to_double(stats[i].ex05) * std::sqrt(lx) / std::log(lx));
  }
  double at_top = to_double(stats.back().ex05);
  if (!(at_top < kExceptionalAt1e7)) fraction_ok = false;
  if (!(norm_max <= kExceptionalNormC0)) fraction_ok = false;

  std::snprintf(buf, sizeof buf,
                "menu_mass <= |S|*atom_max exact: %s; atom envelope <= %.1f: %s; "
                "ex(c=.5) at 1e7 = %.4f < %.2f, envelope %.3f <= %.1f",
                menus_ok ? "yes" : "NO", kAtomNormC, atoms_ok ? "yes" : "NO",
                at_top, kExceptionalAt1e7, norm_max, kExceptionalNormC0);
  report(5, menus_ok && atoms_ok && fraction_ok, "menu bound", buf);
}

// ---------------------------------------------------------------- 6
void criterion_gap_pair_domination() {
  bool ok = true;
  u64 checked = 0;
  for (u64 X : kGrid) {
    PrimeWindow w = build_window(X);
    GapDistribution d = gap_distribution(w);
    u64 hmax = d.counts.rbegin()->first;
    PrimalityMap pm(X, 2 * X + hmax);
    for (const auto& [h, c] : d.counts) {
      if (c > pair_count(pm, X, h)) ok = false;
      ++checked;
    }
  }
  std::snprintf(buf, sizeof buf, "count[h] <= A_h(X) for %llu (window, gap) pairs",
                static_cast<unsigned long long>(checked));
  report(6, ok, "gap <= pair count", buf);
}

// ---------------------------------------------------------------- 7
void criterion_vector_collisions() {
  auto& stats = grid_stats();
  bool monotone = true;
  double lo = 1e300, hi = 0;
  for (auto& s : stats) {
    if (!(s.w2 <= s.w) || !(s.w3 <= s.w2)) monotone = false;
    double lx = std::log(static_cast<double>(s.X));
    double n2 = to_double(s.w2) * lx * lx /
                (loglog3(static_cast<double>(s.X)) * loglog3(static_cast<double>(s.X)));
    lo = std::min(lo, n2);
    hi = std::max(hi, n2);
  }
  bool bounded = hi / lo < kVectorNormSpread;
  std::snprintf(buf, sizeof buf,
                "w3 <= w2 <= w exact on grid: %s; w2 normalized spread %.4f < %.1f",
                monotone ? "yes" : "NO", hi / lo, kVectorNormSpread);
  report(7, monotone && bounded, "consecutive collisions", buf);
}

// ---------------------------------------------------------------- 8
void criterion_tensorization() {
  auto& stats = grid_stats();
  bool ok = true;
  double worst_sigma = 0;
  for (auto& s : stats) {
    double w = to_double(s.w);
    std::set<u64> menu = top_k_set(s.d, 3);
    double alpha = to_double(menu_mass(s.d, menu));
    for (unsigned m = 1; m <= 3; ++m) {
      double p = std::pow(w, m);
      double sigma = std::sqrt(p * (1 - p) / static_cast<double>(kMcSamples));
      McEstimate e = mc_tensor_collision(s.d, m, kMcSamples, kSeed);
      double dev = std::abs(e.frequency - p) / sigma;
      worst_sigma = std::max(worst_sigma, dev);
      if (dev > 4.0) ok = false;

      double pm = std::pow(alpha, m);
      double sigma_m = std::sqrt(pm * (1 - pm) / static_cast<double>(kMcSamples));
      McEstimate r = mc_menu_repeat(s.d, menu, m, kMcSamples, kSeed);
      double dev_m = std::abs(r.frequency - pm) / sigma_m;
      worst_sigma = std::max(worst_sigma, dev_m);
      if (dev_m > 4.0) ok = false;
    }
  }
  std::snprintf(buf, sizeof buf,
                "N=1e6, m in {1,2,3}, tensor and menu-repeat: worst deviation "
                "%.2f sigma <= 4",
                worst_sigma);
  report(8, ok, "tensorization", buf);
}

// ---------------------------------------------------------------- 9
void criterion_pair_factor_bound() {
  bool hand = pair_singular_series(6) == 2 && pair_singular_series(15) == Rat(8, 3);
  auto primes = primes_upto(10'000'000);
  const u64 lo = 100, hi = 10'000'000, chunk = 1'000'000;
  bool ok = true;
  double max_ratio = 0;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok) reduction(max : max_ratio)
  for (i64 c = 0; c < static_cast<i64>((hi - lo + chunk) / chunk); ++c) {
    u64 clo = lo + static_cast<u64>(c) * chunk;
    u64 chi = std::min(hi, clo + chunk - 1);
    std::vector<double> f(chi - clo + 1, 1.0);
    for (u64 p : primes) {
      if (p == 2) continue;
      if (p > chi) break;
      double fac = static_cast<double>(p - 1) / static_cast<double>(p - 2);
      for (u64 m = ((clo + p - 1) / p) * p; m <= chi; m += p) f[m - clo] *= fac;
    }
    for (u64 h = clo; h <= chi; ++h) {
      double ratio = f[h - clo] / std::log(std::log(static_cast<double>(h)));
      max_ratio = std::max(max_ratio, ratio);
      if (ratio > kPairFactorCF) ok = false;
    }
  }
  std::snprintf(buf, sizeof buf,
                "F(6)=2, F(15)=8/3 exact: %s; max F(h)/loglog h on [100,1e7] = "
                "%.4f <= %.2f",
                hand ? "yes" : "NO", max_ratio, kPairFactorCF);
  report(9, hand && ok, "pair factor bound", buf);
}

// ---------------------------------------------------------------- 10
void criterion_selberg_cross_validation() {
  std::mt19937_64 rng(kSeed);
  bool ok = true;
  double worst = 0;
  std::size_t biggest = 0;
  int done = 0;
  while (done < 100) {
    ObstructionPattern pat;
    pat.z = 10 + rng() % 41;
    for (u64 p : primes_upto(pat.z)) {
      if (p == 2) continue;
      if (rng() % 4 == 0) continue;
      pat.forbidden[p] = {1 + rng() % (p - 1)};
    }
    double s = 1.0 + 2.0 * (static_cast<double>(rng() % 1000) / 999.0);
    u64 R = static_cast<u64>(std::llround(std::pow(static_cast<double>(pat.z), s)));
    SelbergSystem sys = make_selberg_system(pat, std::max<u64>(R, 1));
    if (sys.support.size() > kQfSupportCap) continue;
    biggest = std::max(biggest, sys.support.size());
    double closed = to_double(selberg_weakness_closed_form(sys));
    double qf = selberg_weakness_qf(sys).minimum;
    double rel = std::abs(closed - qf) / closed;
    worst = std::max(worst, rel);
    if (rel > 1e-9) ok = false;
    ++done;
  }

  // near-cap dense system: every odd prime to 47 obstructed
  ObstructionPattern dense;
  dense.z = 50;
  std::mt19937_64 drng(kSeed + 7);
  for (u64 p : primes_upto(50)) {
    if (p == 2) continue;
    dense.forbidden[p] = {1 + drng() % (p - 1)};
  }
  SelbergSystem big = make_selberg_system(dense, 10'000'000);
  biggest = std::max(biggest, big.support.size());
  bool cap_ok = big.support.size() > 3000 && big.support.size() <= kQfSupportCap;
  double closed_big = to_double(selberg_weakness_closed_form(big));
  double rel_big = std::abs(selberg_weakness_qf(big).minimum - closed_big) / closed_big;
  worst = std::max(worst, rel_big);
  if (rel_big > 1e-9) ok = false;

  // the one-variable hand case
  ObstructionPattern single;
  single.z = 3;
  single.forbidden[3] = {1};
  SelbergSystem sys = make_selberg_system(single, 3);
  bool hand = selberg_weakness_closed_form(sys) == Rat(1, 2) &&
              std::abs(selberg_weakness_qf(sys).minimum - 0.5) < 1e-12;

  std::snprintf(buf, sizeof buf,
                "101 systems, worst rel err %.2e <= 1e-9 (largest support %zu); "
                "hand case 1/2: %s",
                worst, biggest, hand ? "yes" : "NO");
  report(10, ok && hand && cap_ok, "selberg cross-check", buf);
}

// ---------------------------------------------------------------- 11
void criterion_multiplicativity() {
  std::mt19937_64 rng(kSeed + 1);
  bool ok = true;
  for (int trial = 0; trial < 50; ++trial) {
    u64 z = 20 + rng() % 31;
    ObstructionPattern a, b;
    a.z = b.z = z;
    for (u64 p : primes_upto(z)) {
      if (p == 2) continue;
      u64 r = 1 + rng() % (p - 1);
      if (rng() % 2)
        a.forbidden[p] = {r};
      else
        b.forbidden[p] = {r};
    }
    if (local_weakness_exact(combine_patterns(a, b)) !=
        local_weakness_exact(a) * local_weakness_exact(b))
      ok = false;
  }
  report(11, ok, "multiplicativity", "50 disjoint pattern pairs, exact product identity");
}

// ---------------------------------------------------------------- 12
void criterion_sifted_bound() {
  PrimeWindow w = build_window(1'000'000);
  std::mt19937_64 rng(kSeed + 2);
  bool ok = true;
  double worst = 0;
  int rows = 0;
  for (u64 W0 : {1ull, 6ull}) {
    for (u64 z : {10ull, 30ull, 50ull}) {
      for (int trial = 0; trial < 8; ++trial) {
        ObstructionPattern pat;
        pat.W0 = W0;
        pat.b = W0 == 1 ? 0 : (trial % 2 ? 1 : 5);
        pat.z = z;
        for (u64 p : primes_upto(z)) {
          if (p == 2 || W0 % p == 0) continue;
          if (rng() % 10 < 7) pat.forbidden[p] = {1 + rng() % (p - 1)};
        }
        for (double s : {1.2, 1.5, 2.0, 3.0}) {
          u64 R = static_cast<u64>(
              std::llround(std::pow(static_cast<double>(z), s)));
          SiftedBoundReport rep = sifted_bound_report(w, pat, R);
          if (!rep.ratio_defined) continue;
          ++rows;
          worst = std::max(worst, rep.ratio);
          if (rep.ratio > 1.0 + kSiftedSlack) ok = false;
        }
      }
    }
  }
  std::snprintf(buf, sizeof buf,
                "%d grid rows at X=1e6: max count/main ratio %.4f <= %.2f", rows,
                worst, 1.0 + kSiftedSlack);
  report(12, ok && rows > 100, "sifted upper bound", buf);
}

// ---------------------------------------------------------------- 13
template <typename V, typename Sampler>
bool axioms_hold(const Quantale<V>& q, Sampler draw, int n) {
  std::mt19937_64 rng(kSeed + 3);
  for (int i = 0; i < n; ++i) {
    V x = draw(rng), y = draw(rng), z = draw(rng);
    if (!(q.tensor(q.tensor(x, y), z) == q.tensor(x, q.tensor(y, z)))) return false;
    if (!(q.tensor(x, y) == q.tensor(y, x))) return false;
    if (!(q.tensor(x, q.unit) == x)) return false;
    if (!(q.join(x, q.bottom) == x)) return false;
    if (!q.leq(x, q.join(x, y)) || !q.leq(y, q.join(x, y))) return false;
    V lhs = q.tensor(x, q.join(y, z));
    V rhs = q.join(q.tensor(x, y), q.tensor(x, z));
    if (q.join_is_lattice_sup ? !(lhs == rhs) : !q.leq(lhs, rhs)) return false;
  }
  return true;
}

void criterion_quantale_identities() {
  bool identity = true;
  for (auto& s : grid_stats())
    if (gap_collision_via_quantale(s.d) != s.w) identity = false;

  bool axioms =
      axioms_hold(probabilistic_quantale(),
                  [](std::mt19937_64& rng) {
                    u64 den = 1 + rng() % 64;
                    return Rat(Int(rng() % (den + 1)), Int(den));
                  },
                  1000) &&
      axioms_hold(counting_quantale(),
                  [](std::mt19937_64& rng) {
                    return rng() % 7 == 0 ? kCountInfinity : rng() % 1000;
                  },
                  1000) &&
      axioms_hold(set_quantale({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}),
                  [](std::mt19937_64& rng) {
                    WorldSet s;
                    for (u64 i = 0; i < 12; ++i)
                      if (rng() % 2) s.insert(i);
                    return s;
                  },
                  1000);

  std::snprintf(buf, sizeof buf,
                "diagonal weakness == collision on all grid windows: %s; axiom "
                "suite 3x1000 samples: %s",
                identity ? "yes" : "NO", axioms ? "pass" : "FAIL");
  report(13, identity && axioms, "quantale identities", buf);
}

// ---------------------------------------------------------------- 14
void criterion_baseline_accounting() {
  PrimeWindow w = build_window(100'000);
  bool counts_ok = true;
#pragma omp parallel for schedule(dynamic, 256) reduction(&& : counts_ok)
  for (i64 i = 0; i < static_cast<i64>(w.pi()); ++i) {
    u64 succ = (static_cast<std::size_t>(i) + 1 < w.pi()) ? w.primes[i + 1]
                                                          : w.overflow_prime;
    RunTrace t = run_seq(w.primes[i]);
    counts_ok = counts_ok && t.successor == succ &&
                t.candidates_tested == succ - w.primes[i];
  }

  ExperimentConfig cfg = parse_config_text(
      "x_grid = 1000, 10000\nmc_samples = 50000\nmc_seed = 20260810\n"
      "t_max = 2\nc_values = 0.5\nmenu_exponents = 1,2\n",
      "acceptance", "");
  bool deterministic = run_bench_csv(cfg) == run_bench_csv(cfg) &&
                       run_gaps_csv(cfg) == run_gaps_csv(cfg);

  std::snprintf(buf, sizeof buf,
                "run_seq candidates == g(p) for all %llu primes at X=1e5: %s; "
                "CSV reruns byte-identical: %s",
                static_cast<unsigned long long>(w.pi()),
                counts_ok ? "yes" : "NO", deterministic ? "yes" : "NO");
  report(14, counts_ok && deterministic, "baseline accounting", buf);
}

}  // namespace

int main() {
  criterion_oracle_equivalence();
  criterion_bertrand();
  criterion_collision_decay();
  criterion_entropy_chain();
  criterion_menu_bound();
  criterion_gap_pair_domination();
  criterion_vector_collisions();
  criterion_tensorization();
  criterion_pair_factor_bound();
  criterion_selberg_cross_validation();
  criterion_multiplicativity();
  criterion_sifted_bound();
  criterion_quantale_identities();
  criterion_baseline_accounting();

  if (g_failures) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all 14 criteria passed\n");
  return 0;
}
