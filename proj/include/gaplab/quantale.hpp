#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gaplab/gap_stats.hpp"
#include "gaplab/rational.hpp"

namespace gaplab {

// Commutative quantale carrier: monoidal product, finite join, unit of the
// product, identity of the join, and the order.
template <typename V>
struct Quantale {
  std::string name;
  V unit;    // tensor identity
  V bottom;  // join identity (value of the empty join)
  std::function<V(const V&, const V&)> tensor;
  std::function<V(const V&, const V&)> join;
  std::function<bool(const V&, const V&)> leq;
  // true when join is the lattice supremum (max/union); the truncated-sum
  // join of the probabilistic instance is only sub-distributive
  bool join_is_lattice_sup = true;
};

// Pairs a hypothesis fails to distinguish, over valued tokens.
template <typename TokenT, typename V>
struct WeightedRelation {
  std::map<TokenT, V> valuation;
  std::vector<std::pair<TokenT, TokenT>> pairs;
};

// join over pairs of tensor(mu(u), mu(v)); empty relation gives bottom.
template <typename TokenT, typename V>
V weakness(const Quantale<V>& q, const WeightedRelation<TokenT, V>& rel) {
  V acc = q.bottom;
  for (const auto& [u, v] : rel.pairs)
    acc = q.join(acc, q.tensor(rel.valuation.at(u), rel.valuation.at(v)));
  return acc;
}

// ([0,1], *, truncated +, 1, <=)
Quantale<Rat> probabilistic_quantale();

// (N u {inf}, +, max, 0, <=); infinity as the all-ones sentinel
inline constexpr u64 kCountInfinity = ~u64(0);
Quantale<u64> counting_quantale();

// (P(W), intersection, union, W, subset)
using WorldSet = std::set<u64>;
Quantale<WorldSet> set_quantale(WorldSet universe);

// ((0,1], *, max, 1, <=): the product view behind the local Euler factors
Quantale<Rat> multiplicative_quantale();

// Diagonal same-gap relation valued by the gap masses; equals the
// collision probability exactly.
Rat gap_collision_via_quantale(const GapDistribution& d);

// Number of undistinguished pairs, the sum-aggregated counting view.
template <typename TokenT>
u64 counting_pair_total(const WeightedRelation<TokenT, u64>& rel) {
  return rel.pairs.size();
}

// log2(N) - log2(pair count): the description-length demo figure.
double mdl_bits(u64 n_tokens, u64 undistinguished_pairs);

}  // namespace gaplab
