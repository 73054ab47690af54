#include "gaplab/successor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gaplab {

double cost_model(unsigned bit_length, double exponent) {
  if (bit_length < 1) throw std::invalid_argument("cost_model: bit length must be >= 1");
  if (exponent < 1.0) throw std::invalid_argument("cost_model: exponent must be >= 1");
  return std::pow(static_cast<double>(bit_length), exponent);
}

RunTrace run_seq(u64 p, double cost_exponent) {
  if (!is_prime(p)) throw std::invalid_argument("run_seq: input must be prime");
  RunTrace t;
  t.p = p;
  t.bit_length = static_cast<unsigned>(std::bit_width(p));
  u64 m = p;
  for (;;) {
    if (m == ~u64(0)) throw std::overflow_error("run_seq: 64-bit range exhausted");
    ++m;
    ++t.candidates_tested;
    if (is_prime(m)) break;
  }
  t.successor = m;
  t.cost_units = static_cast<double>(t.candidates_tested) *
                 cost_model(t.bit_length, cost_exponent);
  return t;
}

RunTrace run_wheel(u64 p, u64 wheel, double cost_exponent) {
  if (wheel != 2 && wheel != 6 && wheel != 30)
    throw std::invalid_argument("run_wheel: wheel must be 2, 6 or 30");
  if (!is_prime(p)) throw std::invalid_argument("run_wheel: input must be prime");
  // the successor must be coprime to the wheel, so p has to clear the
  // wheel's largest prime factor
  if (p <= wheel_largest_factor(wheel))
    throw std::invalid_argument("run_wheel: p must exceed the wheel's prime factors");
  RunTrace t;
  t.p = p;
  t.bit_length = static_cast<unsigned>(std::bit_width(p));
  u64 m = p;
  for (;;) {
    if (m == ~u64(0)) throw std::overflow_error("run_wheel: 64-bit range exhausted");
    ++m;
    if (std::gcd(m, wheel) != 1) continue;
    ++t.candidates_tested;
    if (is_prime(m)) break;
  }
  t.successor = m;
  t.cost_units = static_cast<double>(t.candidates_tested) *
                 cost_model(t.bit_length, cost_exponent);
  return t;
}

BaselineReport window_baseline_report(const PrimeWindow& w,
                                      double cost_exponent) {
  BaselineReport rep;
  rep.X = w.X;
  rep.pi = w.pi();
  if (w.pi() == 0) return rep;

  // gap aggregates straight from the successor chain
  rep.mean_gap = static_cast<double>(w.overflow_prime - w.primes.front()) /
                 static_cast<double>(w.pi());
  u64 max_gap = 0;
#pragma omp parallel for reduction(max : max_gap) schedule(static)
  for (i64 i = 0; i < static_cast<i64>(w.pi()); ++i) {
    u64 succ = (static_cast<std::size_t>(i) + 1 < w.pi()) ? w.primes[i + 1]
                                                          : w.overflow_prime;
    max_gap = std::max(max_gap, succ - w.primes[i]);
  }
  rep.max_gap = max_gap;

  std::vector<u64> wheels;
  for (u64 wheel : kWheels)
    if (w.X > wheel_largest_factor(wheel)) wheels.push_back(wheel);

  // integer-first accumulation: candidate sums split by input bit length,
  // so the float cost totals are assembled in a fixed order afterwards
  constexpr unsigned kMaxBl = 65;
  const std::size_t nv = 1 + wheels.size();  // variant 0 = seq
  std::vector<std::vector<u64>> cand_by_bl(nv, std::vector<u64>(kMaxBl, 0));
  std::vector<u64> cand_sum(nv, 0), cand_max(nv, 0);

#pragma omp parallel
  {
    std::vector<std::vector<u64>> loc_bl(nv, std::vector<u64>(kMaxBl, 0));
    std::vector<u64> loc_sum(nv, 0), loc_max(nv, 0);
#pragma omp for schedule(dynamic, 512) nowait
    for (i64 i = 0; i < static_cast<i64>(w.pi()); ++i) {
      u64 p = w.primes[i];
      RunTrace t = run_seq(p, cost_exponent);
      loc_bl[0][t.bit_length] += t.candidates_tested;
      loc_sum[0] += t.candidates_tested;
      loc_max[0] = std::max(loc_max[0], t.candidates_tested);
      for (std::size_t v = 0; v < wheels.size(); ++v) {
        RunTrace tw = run_wheel(p, wheels[v], cost_exponent);
        loc_bl[v + 1][tw.bit_length] += tw.candidates_tested;
        loc_sum[v + 1] += tw.candidates_tested;
        loc_max[v + 1] = std::max(loc_max[v + 1], tw.candidates_tested);
      }
    }
#pragma omp critical
    for (std::size_t v = 0; v < nv; ++v) {
      for (unsigned bl = 0; bl < kMaxBl; ++bl) cand_by_bl[v][bl] += loc_bl[v][bl];
      cand_sum[v] += loc_sum[v];
      cand_max[v] = std::max(cand_max[v], loc_max[v]);
    }
  }

  auto cost_total = [&](std::size_t v) {
    double c = 0.0;
    for (unsigned bl = 1; bl < kMaxBl; ++bl)
      if (cand_by_bl[v][bl])
        c += static_cast<double>(cand_by_bl[v][bl]) * cost_model(bl, cost_exponent);
    return c;
  };

  const double n = static_cast<double>(w.pi());
  rep.mean_candidates_seq = static_cast<double>(cand_sum[0]) / n;
  rep.max_candidates_seq = cand_max[0];
  rep.mean_cost_units_seq = cost_total(0) / n;

  for (std::size_t v = 0; v < wheels.size(); ++v) {
    WheelSummary ws;
    ws.wheel = wheels[v];
    ws.mean_candidates = static_cast<double>(cand_sum[v + 1]) / n;
    ws.max_candidates = cand_max[v + 1];
    ws.mean_cost_units = cost_total(v + 1) / n;
    ws.candidate_ratio_vs_seq =
        cand_sum[0] ? static_cast<double>(cand_sum[v + 1]) /
                          static_cast<double>(cand_sum[0])
                    : 0.0;
    rep.wheels.push_back(ws);
  }
  return rep;
}

}  // namespace gaplab
