#pragma once

#include <vector>

#include "gaplab/primes.hpp"
#include "gaplab/rational.hpp"

namespace gaplab {

// F(h): product of (q-1)/(q-2) over odd prime divisors q of h. Exact.
Rat pair_singular_series(u64 h);

// Offsets h_0 = 0 < h_1 < ... < h_m defining a constellation event.
struct OffsetTuple {
  explicit OffsetTuple(std::vector<u64> offs);
  unsigned order() const { return static_cast<unsigned>(offsets.size()) - 1; }
  u64 span() const { return offsets.back(); }
  // false iff the offsets cover every residue class modulo some prime
  bool admissible() const;

  std::vector<u64> offsets;
};

// A_h(X) = #{p in [X,2X] prime : p+h prime}. The one-argument form sieves
// [X, 2X+h] itself; the map form reuses a caller-provided sieve covering
// that range.
u64 pair_count(u64 X, u64 h);
u64 pair_count(const PrimalityMap& pm, u64 X, u64 h);

// #{n in [X,2X] : n+h_j prime for every j}
u64 constellation_count(u64 X, const OffsetTuple& t);
u64 constellation_count(const PrimalityMap& pm, u64 X, const OffsetTuple& t);

inline constexpr u64 kSingularSeriesCutoff = 2'000'000;

struct SingularSeriesValue {
  double value = 0.0;
  u64 cutoff = 0;
  double tail_bound = 0.0;  // relative truncation error bound
};

// Truncated Euler product prod_{p<=cutoff} (1 - nu_p/p)(1 - 1/p)^-(m+1),
// nu_p = #distinct offset residues mod p. Exactly 0 for inadmissible
// tuples.
SingularSeriesValue singular_series(const OffsetTuple& t,
                                    u64 cutoff = kSingularSeriesCutoff);

// A_h(X) * (log X)^2 / (X * F(h)), the tracked pair-count constant.
double pair_constant_estimate(u64 X, u64 h);

namespace ref {
u64 pair_count(u64 X, u64 h);
u64 constellation_count(u64 X, const OffsetTuple& t);
}  // namespace ref

}  // namespace gaplab
