#include "gaplab/quantale.hpp"

#include <algorithm>
#include <cmath>

namespace gaplab {

Quantale<Rat> probabilistic_quantale() {
  Quantale<Rat> q;
  q.name = "probabilistic";
  q.unit = 1;
  q.bottom = 0;
  q.tensor = [](const Rat& a, const Rat& b) { return a * b; };
  q.join = [](const Rat& a, const Rat& b) {
    Rat s = a + b;
    return s > 1 ? Rat(1) : s;
  };
  q.leq = [](const Rat& a, const Rat& b) { return a <= b; };
  q.join_is_lattice_sup = false;
  return q;
}

Quantale<u64> counting_quantale() {
  Quantale<u64> q;
  q.name = "counting";
  q.unit = 0;
  q.bottom = 0;
  q.tensor = [](const u64& a, const u64& b) {
    if (a == kCountInfinity || b == kCountInfinity) return kCountInfinity;
    u64 s = a + b;
    return s < a ? kCountInfinity : s;  // saturate on wrap
  };
  q.join = [](const u64& a, const u64& b) { return std::max(a, b); };
  q.leq = [](const u64& a, const u64& b) { return a <= b; };
  return q;
}

Quantale<WorldSet> set_quantale(WorldSet universe) {
  Quantale<WorldSet> q;
  q.name = "set";
  q.unit = std::move(universe);
  q.bottom = {};
  q.tensor = [](const WorldSet& a, const WorldSet& b) {
    WorldSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(out, out.begin()));
    return out;
  };
  q.join = [](const WorldSet& a, const WorldSet& b) {
    WorldSet out = a;
    out.insert(b.begin(), b.end());
    return out;
  };
  q.leq = [](const WorldSet& a, const WorldSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  return q;
}

Quantale<Rat> multiplicative_quantale() {
  Quantale<Rat> q;
  q.name = "multiplicative";
  q.unit = 1;
  q.bottom = 0;
  q.tensor = [](const Rat& a, const Rat& b) { return a * b; };
  q.join = [](const Rat& a, const Rat& b) { return std::max(a, b); };
  q.leq = [](const Rat& a, const Rat& b) { return a <= b; };
  return q;
}

Rat gap_collision_via_quantale(const GapDistribution& d) {
  if (d.counts.empty())
    throw std::invalid_argument("gap_collision_via_quantale: empty distribution");
  auto q = probabilistic_quantale();
  WeightedRelation<u64, Rat> rel;
  for (const auto& [h, c] : d.counts) {
    rel.valuation[h] = Rat(Int(c), Int(d.total));
    rel.pairs.emplace_back(h, h);
  }
  return weakness(q, rel);
}

double mdl_bits(u64 n_tokens, u64 undistinguished_pairs) {
  if (n_tokens == 0 || undistinguished_pairs == 0) return 0.0;
  return std::log2(static_cast<double>(n_tokens)) -
         std::log2(static_cast<double>(undistinguished_pairs));
}

}  // namespace gaplab
