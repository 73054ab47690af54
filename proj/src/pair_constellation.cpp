#include "gaplab/pair_constellation.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace gaplab {

namespace {

void check_range(u64 X, u64 span) {
  if (X < 3) throw std::invalid_argument("window base must be >= 3");
  if (X > (u64(1) << 62) || 2 * X + span < 2 * X)
    throw std::overflow_error("window range above the 64-bit budget");
}

const std::vector<u64>& cutoff_primes(u64 cutoff) {
  static std::vector<u64> cached;
  static u64 cached_cutoff = 0;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (cached_cutoff != cutoff) {
    cached = primes_upto(cutoff);
    cached_cutoff = cutoff;
  }
  return cached;
}

// upper estimate of sum_{p > P} 1/p^2 over primes: integral of
// dt/(t^2 log t) on [P, inf), Simpson in log-space plus the cut remainder,
// with a 1.2 density margin.
double prime_inv_square_tail(u64 P) {
  const double lp = std::log(static_cast<double>(P));
  const double xmax = 20.0;  // integrate to P*e^20, remainder handled below
  const int n = 4000;        // even
  const double hstep = xmax / n;
  auto f = [&](double x) { return std::exp(-x) / (x + lp); };
  double s = f(0.0) + f(xmax);
  for (int i = 1; i < n; ++i) s += f(i * hstep) * (i % 2 ? 4.0 : 2.0);
  double integral = s * hstep / 3.0 / static_cast<double>(P);
  double remainder = std::exp(-xmax) / (static_cast<double>(P) * (xmax + lp));
  return 1.2 * (integral + remainder);
}

}  // namespace

Rat pair_singular_series(u64 h) {
  if (h < 1) throw std::invalid_argument("pair_singular_series: h must be >= 1");
  Rat f = 1;
  u64 m = h;
  while (m % 2 == 0) m /= 2;
  for (u64 q = 3; q * q <= m; q += 2) {
    if (m % q == 0) {
      f *= Rat(Int(q - 1), Int(q - 2));
      while (m % q == 0) m /= q;
    }
  }
  if (m > 1) f *= Rat(Int(m - 1), Int(m - 2));
  return f;
}

OffsetTuple::OffsetTuple(std::vector<u64> offs) : offsets(std::move(offs)) {
  if (offsets.empty() || offsets.front() != 0)
    throw std::invalid_argument("OffsetTuple: offsets must start at 0");
  for (std::size_t i = 1; i < offsets.size(); ++i)
    if (offsets[i] <= offsets[i - 1])
      throw std::invalid_argument("OffsetTuple: offsets must strictly increase");
}

bool OffsetTuple::admissible() const {
  // only primes p <= m+1 can be covered by m+1 offsets
  for (u64 p : primes_upto(offsets.size())) {
    std::vector<char> hit(p, 0);
    u64 distinct = 0;
    for (u64 h : offsets) {
      if (!hit[h % p]) {
        hit[h % p] = 1;
        ++distinct;
      }
    }
    if (distinct == p) return false;
  }
  return true;
}

u64 pair_count(u64 X, u64 h) {
  if (h < 1 || h > 2 * X) throw std::invalid_argument("pair_count: need 1 <= h <= 2X");
  check_range(X, h);
  PrimalityMap pm(X, 2 * X + h);
  return pair_count(pm, X, h);
}

u64 pair_count(const PrimalityMap& pm, u64 X, u64 h) {
  if (pm.lo() > X || pm.hi() < 2 * X + h)
    throw std::invalid_argument("pair_count: sieve does not cover [X, 2X+h]");
  u64 count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (i64 n = static_cast<i64>(X); n <= static_cast<i64>(2 * X); ++n) {
    u64 un = static_cast<u64>(n);
    count += (pm[un] && pm[un + h]) ? 1 : 0;
  }
  return count;
}

u64 constellation_count(u64 X, const OffsetTuple& t) {
  if (t.span() > 2 * X)
    throw std::invalid_argument("constellation_count: span exceeds 2X");
  check_range(X, t.span());
  PrimalityMap pm(X, 2 * X + t.span());
  return constellation_count(pm, X, t);
}

u64 constellation_count(const PrimalityMap& pm, u64 X, const OffsetTuple& t) {
  if (pm.lo() > X || pm.hi() < 2 * X + t.span())
    throw std::invalid_argument("constellation_count: sieve too small");
  u64 count = 0;
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (i64 n = static_cast<i64>(X); n <= static_cast<i64>(2 * X); ++n) {
    bool all = true;
    for (u64 h : t.offsets) {
      if (!pm[static_cast<u64>(n) + h]) {
        all = false;
        break;
      }
    }
    count += all ? 1 : 0;
  }
  return count;
}

SingularSeriesValue singular_series(const OffsetTuple& t, u64 cutoff) {
  if (cutoff < 2) throw std::invalid_argument("singular_series: cutoff too small");
  const auto& primes = cutoff_primes(cutoff);
  const unsigned m1 = static_cast<unsigned>(t.offsets.size());  // m+1
  double log_prod = 0.0;
  std::vector<char> hit;
  for (u64 p : primes) {
    unsigned nu;
    if (p > t.span()) {
      nu = m1;  // all offsets distinct mod p beyond the span
    } else {
      hit.assign(p, 0);
      nu = 0;
      for (u64 h : t.offsets) {
        if (!hit[h % p]) {
          hit[h % p] = 1;
          ++nu;
        }
      }
      if (nu == p) return {0.0, cutoff, 0.0};  // inadmissible: exact zero
    }
    double pd = static_cast<double>(p);
    log_prod += std::log1p(-static_cast<double>(nu) / pd) -
                m1 * std::log1p(-1.0 / pd);
  }
  SingularSeriesValue out;
  out.cutoff = cutoff;
  out.value = std::exp(log_prod);
  double coeff = 0.5 * static_cast<double>(m1) * (m1 - 1);  // m(m+1)/2
  out.tail_bound = coeff == 0.0 ? 0.0 : std::expm1(coeff * prime_inv_square_tail(cutoff));
  return out;
}

double pair_constant_estimate(u64 X, u64 h) {
  if (X < 3) throw std::invalid_argument("pair_constant_estimate: X must be >= 3");
  if (h % 2 != 0 || h < 2 || h > 2 * X)
    throw std::invalid_argument("pair_constant_estimate: h must be even in [2, 2X]");
  u64 count = pair_count(X, h);
  double lx = std::log(static_cast<double>(X));
  return static_cast<double>(count) * lx * lx /
         (static_cast<double>(X) * to_double(pair_singular_series(h)));
}

namespace ref {

u64 pair_count(u64 X, u64 h) {
  auto primes = ref::sieve_primes(X, 2 * X + h);
  u64 count = 0;
  for (u64 p : primes) {
    if (p > 2 * X) break;
    if (std::binary_search(primes.begin(), primes.end(), p + h)) ++count;
  }
  return count;
}

u64 constellation_count(u64 X, const OffsetTuple& t) {
  auto primes = ref::sieve_primes(X, 2 * X + t.span());
  u64 count = 0;
  for (u64 n = X; n <= 2 * X; ++n) {
    bool all = true;
    for (u64 h : t.offsets)
      if (!std::binary_search(primes.begin(), primes.end(), n + h)) {
        all = false;
        break;
      }
    count += all ? 1 : 0;
  }
  return count;
}

}  // namespace ref

}  // namespace gaplab
