#include "gaplab/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace gaplab {

namespace {

using u128 = unsigned __int128;

constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// true if a proves n composite; n odd, n-1 = d * 2^r
bool witness_composite(u64 a, u64 d, unsigned r, u64 n) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < r; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Segment length in numbers; one segment's bitmap stays cache resident.
constexpr u64 kSegmentSpan = 1u << 21;

}  // namespace

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  for (u64 p : kWitnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;  // survived division by all primes < 41
  u64 d = n - 1;
  unsigned r = std::countr_zero(d);
  d >>= r;
  for (u64 a : kWitnesses)
    if (witness_composite(a, d, r, n)) return false;
  return true;
}

u64 next_prime(u64 p) {
  if (p < 2) return 2;
  u64 m = p + 1;
  if (m == 0) throw std::overflow_error("next_prime: 64-bit range exhausted");
  if (m % 2 == 0) ++m;  // even m >= 4 is never prime; p >= 2 gives m >= 3
  for (;;) {
    if (is_prime(m)) return m;
    if (m > ~u64(0) - 2) throw std::overflow_error("next_prime: 64-bit range exhausted");
    m += 2;
  }
}

std::vector<u64> primes_upto(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<std::uint8_t> composite(n + 1, 0);
  for (u64 i = 2; i * i <= n; ++i)
    if (!composite[i])
      for (u64 j = i * i; j <= n; j += i) composite[j] = 1;
  for (u64 i = 2; i <= n; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

PrimalityMap::PrimalityMap(u64 lo, u64 hi) : lo_(lo), hi_(hi) {
  if (lo > hi) throw std::invalid_argument("PrimalityMap: lo > hi");
  if (hi >= (u64(1) << 63))
    throw std::overflow_error("PrimalityMap: range above 2^63 unsupported");
  base_ = lo & ~u64(63);
  u64 nbits = hi - base_ + 1;
  bits_.assign((nbits + 63) / 64, ~u64(0));

  u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 1;
  while (root * root > hi) --root;
  const std::vector<u64> base_primes = primes_upto(root);

  const u64 span = hi - base_ + 1;
  const i64 nseg = static_cast<i64>((span + kSegmentSpan - 1) / kSegmentSpan);

#pragma omp parallel for schedule(dynamic)
  for (i64 s = 0; s < nseg; ++s) {
    const u64 seg_lo = base_ + static_cast<u64>(s) * kSegmentSpan;
    const u64 seg_hi = std::min(hi, seg_lo + kSegmentSpan - 1);
    for (u64 p : base_primes) {
      if (p * p > seg_hi) break;
      u64 start = std::max(p * p, ((seg_lo + p - 1) / p) * p);
      for (u64 m = start; m <= seg_hi; m += p)
        bits_[(m - base_) >> 6] &= ~(u64(1) << ((m - base_) & 63));
    }
  }

  // mask everything outside [lo, hi] plus the non-primes 0 and 1
  for (u64 n = base_; n < lo_; ++n)
    bits_[(n - base_) >> 6] &= ~(u64(1) << ((n - base_) & 63));
  for (u64 n = base_; n <= std::min(hi_, u64(1)); ++n)
    bits_[(n - base_) >> 6] &= ~(u64(1) << ((n - base_) & 63));
  u64 last_word = (hi - base_) >> 6;
  unsigned used = static_cast<unsigned>((hi - base_) & 63) + 1;
  if (used < 64) bits_[last_word] &= (u64(1) << used) - 1;
}

u64 PrimalityMap::count(u64 a, u64 b) const {
  if (a < lo_ || b > hi_ || a > b)
    throw std::invalid_argument("PrimalityMap::count: range outside map");
  u64 total = 0;
  u64 wa = (a - base_) >> 6, wb = (b - base_) >> 6;
  for (u64 w = wa; w <= wb; ++w) {
    u64 word = bits_[w];
    if (w == wa) word &= ~u64(0) << ((a - base_) & 63);
    if (w == wb) {
      unsigned used = static_cast<unsigned>((b - base_) & 63) + 1;
      if (used < 64) word &= (u64(1) << used) - 1;
    }
    total += std::popcount(word);
  }
  return total;
}

std::vector<u64> PrimalityMap::primes() const {
  const u64 span = hi_ - base_ + 1;
  const i64 nchunk = static_cast<i64>((span + kSegmentSpan - 1) / kSegmentSpan);
  std::vector<std::vector<u64>> parts(nchunk);

#pragma omp parallel for schedule(dynamic)
  for (i64 c = 0; c < nchunk; ++c) {
    const u64 c_lo = base_ + static_cast<u64>(c) * kSegmentSpan;
    const u64 c_hi = std::min(hi_, c_lo + kSegmentSpan - 1);
    auto& part = parts[c];
    for (u64 w = (c_lo - base_) >> 6; w <= (c_hi - base_) >> 6; ++w) {
      u64 word = bits_[w];
      while (word) {
        unsigned bit = std::countr_zero(word);
        word &= word - 1;
        u64 n = base_ + (w << 6) + bit;
        if (n >= c_lo && n <= c_hi) part.push_back(n);
      }
    }
  }

  std::vector<u64> out;
  u64 n_total = 0;
  for (auto& p : parts) n_total += p.size();
  out.reserve(n_total);
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

PrimeWindow build_window(u64 X) {
  if (X < 3) throw std::invalid_argument("build_window: X must be >= 3");
  if (X > (u64(1) << 62)) throw std::overflow_error("build_window: X above 2^62");
  PrimalityMap map(X, 2 * X);
  PrimeWindow w;
  w.X = X;
  w.primes = map.primes();
  w.overflow_prime = next_prime(2 * X);
  return w;
}

u64 prime_count(u64 a, u64 b) {
  if (a < 2 || a > b) throw std::invalid_argument("prime_count: need 2 <= a <= b");
  PrimalityMap map(a, b);
  return map.count(a, b);
}

namespace ref {

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi && n >= lo; ++n)
    if (ref::is_prime(n)) out.push_back(n);
  return out;
}

std::vector<u64> sieve_primes(u64 lo, u64 hi) {
  std::vector<std::uint8_t> composite(hi + 1, 0);
  for (u64 i = 2; i * i <= hi; ++i)
    if (!composite[i])
      for (u64 j = i * i; j <= hi; j += i) composite[j] = 1;
  std::vector<u64> out;
  for (u64 n = std::max<u64>(2, lo); n <= hi; ++n)
    if (!composite[n]) out.push_back(n);
  return out;
}

}  // namespace ref

}  // namespace gaplab
