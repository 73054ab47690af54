#pragma once

#include <vector>

#include "gaplab/primes.hpp"

namespace gaplab {

// One run of a successor search: how many candidates were tested and what
// that costs under the k^d primality cost model.
struct RunTrace {
  u64 p = 0;
  u64 successor = 0;
  u64 candidates_tested = 0;
  unsigned bit_length = 0;  // floor(log2 p) + 1
  double cost_units = 0.0;  // candidates * bit_length^d
};

// k^d abstract cost units per primality test on k-bit inputs.
double cost_model(unsigned bit_length, double exponent = 3.0);

// Tests p+1, p+2, ... until prime; candidate count equals the gap.
RunTrace run_seq(u64 p, double cost_exponent = 3.0);

// Tests only candidates coprime to the wheel modulus (2, 6 or 30).
RunTrace run_wheel(u64 p, u64 wheel, double cost_exponent = 3.0);

struct WheelSummary {
  u64 wheel = 0;
  double mean_candidates = 0.0;
  u64 max_candidates = 0;
  double mean_cost_units = 0.0;
  double candidate_ratio_vs_seq = 0.0;
};

struct BaselineReport {
  u64 X = 0;
  u64 pi = 0;
  double mean_gap = 0.0;
  u64 max_gap = 0;
  double mean_candidates_seq = 0.0;
  u64 max_candidates_seq = 0;
  double mean_cost_units_seq = 0.0;
  std::vector<WheelSummary> wheels;  // wheels 2, 6, 30
};

// Aggregate candidate/cost accounting for Seq and each wheel over a
// window. Aggregation is exact-integer first, so the result does not
// depend on thread count.
BaselineReport window_baseline_report(const PrimeWindow& w,
                                      double cost_exponent = 3.0);

inline constexpr u64 kWheels[] = {2, 6, 30};

// a wheel applies once primes clear its largest prime factor
inline constexpr u64 wheel_largest_factor(u64 wheel) {
  return wheel == 2 ? 2 : wheel == 6 ? 3 : 5;
}

}  // namespace gaplab
