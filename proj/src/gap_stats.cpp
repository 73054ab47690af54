#include "gaplab/gap_stats.hpp"

namespace gaplab {

namespace {

struct SplitMix64 {
  u64 state;
  explicit SplitMix64(u64 seed) : state(seed) {}
  u64 next() {
    u64 z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
};

inline u64 mix64(u64 z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// one decorrelated stream per sample index
inline u64 stream_seed(u64 seed, u64 i) {
  return mix64(seed ^ mix64(i + 0x9E3779B97F4A7C15ull));
}

// cumulative-count table for drawing atoms proportionally to counts
struct AtomSampler {
  std::vector<u64> cum;  // cum[i] = counts of atoms 0..i
  u64 total = 0;

  explicit AtomSampler(const GapDistribution& d) {
    cum.reserve(d.counts.size());
    u64 run = 0;
    for (const auto& [k, c] : d.counts) {
      run += c;
      cum.push_back(run);
    }
    total = run;
  }

  // index of the atom hit by one uniform draw
  u64 draw(SplitMix64& g) const {
    u64 r = g.next();
    u64 u = static_cast<u64>((static_cast<u128>(r) * total) >> 64);
    return std::upper_bound(cum.begin(), cum.end(), u) - cum.begin();
  }
};

McEstimate finish(u64 hits, u64 N) {
  McEstimate e;
  e.hits = hits;
  e.samples = N;
  e.frequency = static_cast<double>(hits) / static_cast<double>(N);
  e.std_error = std::sqrt(e.frequency * (1.0 - e.frequency) / static_cast<double>(N));
  return e;
}

void check_mc_args(const GapDistribution& d, unsigned m, u64 N) {
  if (d.counts.empty()) throw std::invalid_argument("mc: empty distribution");
  if (m < 1) throw std::invalid_argument("mc: m must be >= 1");
  if (N < 10'000) throw std::invalid_argument("mc: need at least 10^4 samples");
}

}  // namespace

GapDistribution gap_distribution(const PrimeWindow& w) {
  GapDistribution d;
  d.X = w.X;
  d.total = w.pi();
  const auto& ps = w.primes;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    u64 succ = (i + 1 < ps.size()) ? ps[i + 1] : w.overflow_prime;
    ++d.counts[succ - ps[i]];
  }
  return d;
}

GapVectorDistribution gap_vector_distribution(const PrimeWindow& w, unsigned t) {
  if (t < 1) throw std::invalid_argument("gap_vector_distribution: t must be >= 1");
  GapVectorDistribution d;
  d.X = w.X;
  d.t = t;
  d.total = w.pi();

  // successor chain: window primes, the overflow prime, then t-1 more
  std::vector<u64> chain = w.primes;
  chain.push_back(w.overflow_prime);
  for (unsigned j = 1; j < t; ++j) chain.push_back(next_prime(chain.back()));

  std::vector<u64> key(t);
  for (std::size_t i = 0; i < w.pi(); ++i) {
    for (unsigned j = 0; j < t; ++j) key[j] = chain[i + j + 1] - chain[i + j];
    ++d.counts[key];
  }
  return d;
}

std::set<u64> top_k_set(const GapDistribution& d, u64 k) {
  if (k < 1) throw std::invalid_argument("top_k_set: k must be >= 1");
  std::vector<std::pair<u64, u64>> atoms;  // (count, key)
  atoms.reserve(d.counts.size());
  for (const auto& [key, c] : d.counts) atoms.emplace_back(c, key);
  std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::set<u64> out;
  for (u64 i = 0; i < std::min<u64>(k, atoms.size()); ++i)
    out.insert(atoms[i].second);
  return out;
}

Rat menu_mass(const GapDistribution& d, const std::set<u64>& menu) {
  u64 sum = 0;
  for (u64 h : menu) {
    auto it = d.counts.find(h);
    if (it != d.counts.end()) sum += it->second;
  }
  return Rat(Int(sum), Int(d.total));
}

Rat menu_mass(const GapVectorDistribution& d,
              const std::set<std::vector<u64>>& menu) {
  u64 sum = 0;
  for (const auto& v : menu) {
    auto it = d.counts.find(v);
    if (it != d.counts.end()) sum += it->second;
  }
  return Rat(Int(sum), Int(d.total));
}

u64 exceptional_budget(u64 X, double c) {
  if (X < 3) throw std::invalid_argument("exceptional_budget: X must be >= 3");
  if (!(c > 0.0 && c < 1.0))
    throw std::invalid_argument("exceptional_budget: c must lie in (0,1)");
  double k = std::floor(std::pow(std::log2(static_cast<double>(X)), c));
  return std::max<u64>(1, static_cast<u64>(k));
}

Rat exceptional_fraction(const GapDistribution& d, double c) {
  return top_k_mass(d, exceptional_budget(d.X, c));
}

McEstimate mc_tensor_collision(const GapDistribution& d, unsigned m, u64 N,
                               u64 seed) {
  check_mc_args(d, m, N);
  AtomSampler sampler(d);
  u64 hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (i64 i = 0; i < static_cast<i64>(N); ++i) {
    SplitMix64 g(stream_seed(seed, static_cast<u64>(i)));
    bool equal = true;
    for (unsigned j = 0; j < m; ++j) {
      u64 a = sampler.draw(g);
      u64 b = sampler.draw(g);
      if (a != b) {
        equal = false;
        break;
      }
    }
    hits += equal ? 1 : 0;
  }
  return finish(hits, N);
}

McEstimate mc_menu_repeat(const GapDistribution& d, const std::set<u64>& menu,
                          unsigned m, u64 N, u64 seed) {
  check_mc_args(d, m, N);
  AtomSampler sampler(d);
  std::vector<char> in_menu;
  in_menu.reserve(d.counts.size());
  for (const auto& [key, c] : d.counts) in_menu.push_back(menu.count(key) ? 1 : 0);

  u64 hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (i64 i = 0; i < static_cast<i64>(N); ++i) {
    SplitMix64 g(stream_seed(seed, static_cast<u64>(i)));
    bool all_in = true;
    for (unsigned j = 0; j < m; ++j) {
      if (!in_menu[sampler.draw(g)]) {
        all_in = false;
        break;
      }
    }
    hits += all_in ? 1 : 0;
  }
  return finish(hits, N);
}

}  // namespace gaplab
