#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "gaplab/primes.hpp"
#include "gaplab/rational.hpp"

namespace gaplab {

// Exact integer-count histogram of successor gaps over a window; the last
// prime's gap runs into the overflow prime.
struct GapDistribution {
  u64 X = 0;
  std::map<u64, u64> counts;  // gap value -> occurrences
  u64 total = 0;              // pi_X
};

// Joint histogram of length-t vectors of consecutive gaps.
struct GapVectorDistribution {
  u64 X = 0;
  unsigned t = 1;
  std::map<std::vector<u64>, u64> counts;
  u64 total = 0;
};

GapDistribution gap_distribution(const PrimeWindow& w);
GapVectorDistribution gap_vector_distribution(const PrimeWindow& w, unsigned t);

template <typename Dist>
Rat atom_max(const Dist& d) {
  if (d.counts.empty()) throw std::invalid_argument("atom_max: empty distribution");
  u64 best = 0;
  for (const auto& [k, c] : d.counts) best = std::max(best, c);
  return Rat(Int(best), Int(d.total));
}

// Sum of squared masses, exact.
template <typename Dist>
Rat collision_probability(const Dist& d) {
  if (d.counts.empty())
    throw std::invalid_argument("collision_probability: empty distribution");
  Int num = 0;
  for (const auto& [k, c] : d.counts) num += Int(c) * c;
  return Rat(num, Int(d.total) * d.total);
}

template <typename Dist>
Rat logical_entropy(const Dist& d) {
  return Rat(1) - collision_probability(d);
}

template <typename Dist>
double shannon_entropy_bits(const Dist& d) {
  if (d.counts.empty())
    throw std::invalid_argument("shannon_entropy_bits: empty distribution");
  double h = 0.0;
  const double total = static_cast<double>(d.total);
  for (const auto& [k, c] : d.counts) {
    double mu = static_cast<double>(c) / total;
    h -= mu * std::log2(mu);
  }
  return h;
}

template <typename Dist>
double renyi2_entropy_bits(const Dist& d) {
  return -std::log2(to_double(collision_probability(d)));
}

// Largest total mass reachable with at most k atoms.
template <typename Dist>
Rat top_k_mass(const Dist& d, u64 k) {
  if (k < 1) throw std::invalid_argument("top_k_mass: k must be >= 1");
  std::vector<u64> cs;
  cs.reserve(d.counts.size());
  for (const auto& [key, c] : d.counts) cs.push_back(c);
  std::sort(cs.begin(), cs.end(), std::greater<>());
  u64 sum = 0;
  for (u64 i = 0; i < std::min<u64>(k, cs.size()); ++i) sum += cs[i];
  return Rat(Int(sum), Int(d.total));
}

// The k largest atoms themselves (ties broken by smaller key first).
std::set<u64> top_k_set(const GapDistribution& d, u64 k);

Rat menu_mass(const GapDistribution& d, const std::set<u64>& menu);
Rat menu_mass(const GapVectorDistribution& d,
              const std::set<std::vector<u64>>& menu);

// k = max(1, floor((log2 X)^c)), the adversary's menu budget.
u64 exceptional_budget(u64 X, double c);

// top_k_mass at the size budget; dominates the mass of every menu of that
// size, so in particular of any low-description set.
Rat exceptional_fraction(const GapDistribution& d, double c);

struct McEstimate {
  double frequency = 0.0;
  double std_error = 0.0;
  u64 hits = 0;
  u64 samples = 0;
};

// Empirical frequency that two independent m-tuples drawn i.i.d. from the
// distribution coincide. Counter-based per-sample streams: the result
// depends only on (d, m, N, seed), not on thread count.
McEstimate mc_tensor_collision(const GapDistribution& d, unsigned m, u64 N,
                               u64 seed);

// Empirical frequency that all m i.i.d. draws land in the menu.
McEstimate mc_menu_repeat(const GapDistribution& d, const std::set<u64>& menu,
                          unsigned m, u64 N, u64 seed);

}  // namespace gaplab
