#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gaplab/primes.hpp"
#include "gaplab/rational.hpp"

namespace gaplab {

// Forbidden reduced residue classes per prime p <= z with p not dividing
// the wheel modulus, plus the wheel congruence n = b (mod W0).
struct ObstructionPattern {
  u64 W0 = 1;
  u64 b = 0;
  u64 z = 2;
  std::map<u64, std::set<u64>> forbidden;  // p -> Omega(p)
};

// Throws std::invalid_argument naming the offending field.
void validate_pattern(const ObstructionPattern& pat);

// Plain-text pattern file: header lines "W0=", "b=", "z=", then one line
// per prime "p: r1,r2,...". Parse errors carry file:line.
ObstructionPattern parse_pattern_file(const std::string& path);
ObstructionPattern parse_pattern_text(const std::string& text,
                                      const std::string& origin);

// prod_{p<=z, p∤W0} (1 - omega(p)/(p-1)), exact. At most 64 factors.
Rat local_weakness_exact(const ObstructionPattern& pat);

// Same product; exact-rational path up to 64 factors, floating point past.
double local_weakness(const ObstructionPattern& pat);

// Union of two patterns with identical (W0, b, z) and disjoint supports.
ObstructionPattern combine_patterns(const ObstructionPattern& a,
                                    const ObstructionPattern& b);

struct SelbergSystem {
  ObstructionPattern pattern;
  u64 R = 1;
  std::vector<u64> support;     // squarefree d <= R over supported primes, sorted, includes 1
  std::map<u64, Rat> density;   // g(d) = omega(d)/phi(d)
};

SelbergSystem make_selberg_system(const ObstructionPattern& pat, u64 R);

// min of the quadratic form via 1/G(R), G(R) = sum over the support of
// prod_{p|d} g(p)/(1-g(p)). Exact. Throws std::domain_error when some
// g(p) = 1 (full obstruction).
Rat selberg_weakness_closed_form(const SelbergSystem& sys);

struct QfSolution {
  double minimum = 1.0;
  std::map<u64, double> lambda;  // includes lambda_1 = 1
};

// Direct minimization: eliminate lambda_1 = 1, solve the stationarity
// system of the reduced SPD form. Support capped at 4096.
QfSolution selberg_weakness_qf(const SelbergSystem& sys);

inline constexpr u64 kQfSupportCap = 4096;

// Linear-sieve upper envelope 2 e^gamma / s, defined on 1 <= s <= 3 only.
double sieve_function_F1(double s);

// Exact count of window primes meeting the wheel congruence and avoiding
// every forbidden residue.
u64 sifted_count(const PrimeWindow& w, const ObstructionPattern& pat);

struct SiftedBoundReport {
  u64 count = 0;
  double weakness = 1.0;
  double s = 0.0;
  unsigned max_omega = 0;
  bool f1_defined = false;  // requires max_omega <= 1
  double f1 = 0.0;
  double main_term = 0.0;
  bool ratio_defined = false;
  double ratio = 0.0;
};

// Assembles the upper-bound main term F1(s) * weakness * X/(phi(W0) log X)
// with s = log R / log z, and the observed count/main ratio.
SiftedBoundReport sifted_bound_report(const PrimeWindow& w,
                                      const ObstructionPattern& pat, u64 R);

u64 euler_phi(u64 n);

namespace ref {
u64 sifted_count(const PrimeWindow& w, const ObstructionPattern& pat);
}

}  // namespace gaplab
