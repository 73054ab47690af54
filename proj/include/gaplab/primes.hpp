#pragma once

#include <cstdint>
#include <vector>

namespace gaplab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

// Deterministic Miller-Rabin, exact for every 64-bit input. Fixed witness
// set {2,...,37}, valid on the whole range.
bool is_prime(u64 n) noexcept;

// Least prime strictly greater than p. Throws std::overflow_error if the
// search would leave the 64-bit range.
u64 next_prime(u64 p);

// All primes <= n, plain serial sieve. Used for base primes.
std::vector<u64> primes_upto(u64 n);

// Primality bitmap of [lo, hi], built by a segmented sieve parallelized
// over cache-sized segments. Immutable once built.
class PrimalityMap {
 public:
  PrimalityMap(u64 lo, u64 hi);

  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }

  bool operator[](u64 n) const {
    u64 off = n - base_;
    return (bits_[off >> 6] >> (off & 63)) & 1u;
  }

  // Number of primes in [a, b]; requires lo() <= a <= b <= hi().
  u64 count(u64 a, u64 b) const;

  // All primes of [lo, hi], ascending.
  std::vector<u64> primes() const;

 private:
  u64 lo_ = 0, hi_ = 0, base_ = 0;
  std::vector<u64> bits_;
};

struct PrimeWindow {
  u64 X = 0;
  std::vector<u64> primes;  // all primes in [X, 2X], ascending
  u64 overflow_prime = 0;   // least prime > 2X
  u64 pi() const { return primes.size(); }
};

// Complete window [X, 2X] plus the overflow prime. X in [3, 2^62].
PrimeWindow build_window(u64 X);

// Number of primes in [a, b], 2 <= a <= b.
u64 prime_count(u64 a, u64 b);

namespace ref {

// Serial reference implementations. Kept deliberately naive and separate
// from the parallel code paths; the tests and the benchmark compare
// against them.
bool is_prime(u64 n);
std::vector<u64> primes_in(u64 lo, u64 hi);      // trial division per candidate
std::vector<u64> sieve_primes(u64 lo, u64 hi);   // one flat serial sieve

}  // namespace ref

}  // namespace gaplab
