// Timing comparison of the OpenMP kernels against their serial reference
// implementations. Build target: gaplab_bench.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "gaplab/pair_constellation.hpp"
#include "gaplab/primes.hpp"
#include "gaplab/selberg.hpp"

using namespace gaplab;

namespace {

template <typename F>
double time_ms(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* kernel, u64 X, double serial_ms, double parallel_ms,
         bool agree) {
  std::printf("%-18s X=%-10llu serial %9.2f ms   parallel %9.2f ms   x%.2f   %s\n",
              kernel, static_cast<unsigned long long>(X), serial_ms, parallel_ms,
              serial_ms / parallel_ms, agree ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  u64 X = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 10'000'000ull;
  std::printf("threads: %d\n\n", omp_get_max_threads());

  // window construction: segmented parallel sieve vs flat serial sieve
  std::vector<u64> serial_primes, parallel_primes;
  double s_ms = time_ms([&] { serial_primes = ref::sieve_primes(X, 2 * X); });
  double p_ms = time_ms([&] { parallel_primes = build_window(X).primes; });
  row("window_sieve", X, s_ms, p_ms, serial_primes == parallel_primes);

  // pair counting at a fixed even offset
  u64 h = 6, sc = 0, pc = 0;
  s_ms = time_ms([&] { sc = ref::pair_count(X, h); });
  p_ms = time_ms([&] { pc = pair_count(X, h); });
  row("pair_count", X, s_ms, p_ms, sc == pc);

  // constellation scan
  OffsetTuple triple({0, 2, 6});
  s_ms = time_ms([&] { sc = ref::constellation_count(X, triple); });
  p_ms = time_ms([&] { pc = constellation_count(X, triple); });
  row("constellation", X, s_ms, p_ms, sc == pc);

  // sifted counting over a residue pattern
  PrimeWindow w = build_window(X);
  ObstructionPattern pat;
  pat.W0 = 6;
  pat.b = 1;
  pat.z = 50;
  for (u64 p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull})
    pat.forbidden[p] = {1};
  s_ms = time_ms([&] { sc = ref::sifted_count(w, pat); });
  p_ms = time_ms([&] { pc = sifted_count(w, pat); });
  row("sifted_count", X, s_ms, p_ms, sc == pc);

  return 0;
}
