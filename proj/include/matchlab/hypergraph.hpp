#pragma once

#include <algorithm>
#include <boost/rational.hpp>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "matchlab/combinatorics.hpp"
#include "matchlab/vertex_set.hpp"

namespace matchlab {

using Rational = boost::rational<std::int64_t>;

/// Immutable k-uniform hypergraph on {0..n-1}, n <= 64.
///
/// Edges are kept as masks in lexicographic order of their sorted tuples,
/// together with per-vertex incidence mask lists for degree scans. Values are
/// safe to share across threads.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Validates and canonicalizes; throws InvalidConstruction on a wrong-size
  /// edge, an out-of-range vertex, or a duplicate edge.
  Hypergraph(int n, int k, std::vector<VertexSet> edges);

  static Hypergraph empty(int n, int k);
  static Hypergraph complete(int n, int k);
  /// All k-subsets of {0..n-1} accepted by pred.
  template <class Pred>
  static Hypergraph from_predicate(int n, int k, Pred&& pred);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t edge_count() const { return masks_.size(); }
  std::span<const std::uint64_t> masks() const { return masks_; }
  VertexSet edge(std::size_t i) const { return VertexSet(masks_[i]); }
  std::vector<VertexSet> edges() const;
  bool contains(VertexSet e) const;

  /// Masks of the edges through v, in edge order.
  std::span<const std::uint64_t> incident(int v) const { return incident_[v]; }
  VertexSet vertices() const { return VertexSet::prefix(n_); }

  /// Copy with `add` inserted and `remove` deleted. Adding an existing edge
  /// or removing a missing one is an error.
  Hypergraph modified(std::span<const VertexSet> add,
                      std::span<const VertexSet> remove) const;

  bool operator==(const Hypergraph& o) const {
    return n_ == o.n_ && k_ == o.k_ && masks_ == o.masks_;
  }

 private:
  struct Trusted {};
  Hypergraph(Trusted, int n, int k, std::vector<std::uint64_t> sorted_masks);
  static Hypergraph trusted(int n, int k, std::vector<std::uint64_t> sorted_masks) {
    return Hypergraph(Trusted{}, n, k, std::move(sorted_masks));
  }
  void build_incidence();

  int n_ = 0;
  int k_ = 0;
  std::vector<std::uint64_t> masks_;
  std::vector<std::vector<std::uint64_t>> incident_;

  friend Hypergraph complement(const Hypergraph& h);
  friend std::pair<Hypergraph, std::vector<int>> induced(const Hypergraph& h,
                                                          VertexSet a);
};

/// Guard on C(n, k)-sized enumerations. Overridable for experiments.
inline constexpr double kDefaultEnumerationGuard = 5e7;

/// Number of edges containing s; e(H) for the empty set.
std::uint64_t degree(const Hypergraph& h, VertexSet s);
/// Degrees of all l-subsets, indexed by colex rank.
std::vector<std::uint64_t> degree_table(const Hypergraph& h, int l);
/// Minimum l-degree over all l-subsets of the vertex set, 0 <= l < k.
std::uint64_t min_degree(const Hypergraph& h, int l);
/// An l-set attaining min_degree (the first in colex order).
VertexSet argmin_degree_set(const Hypergraph& h, int l);

/// Evaluates one instance of the degree transfer implication: if
/// delta_{l'} >= x C(n-l', k-l') then delta_l >= x C(n-l, k-l).
bool degree_transfer_check(const Hypergraph& h, int l, int l_prime, Rational x);

Hypergraph complement(const Hypergraph& h);
/// Subhypergraph induced by a, relabelled to 0..|a|-1 in increasing order.
/// The second component maps new labels to old ones.
std::pair<Hypergraph, std::vector<int>> induced(const Hypergraph& h, VertexSet a);
/// Size of the labelled symmetric difference of the edge sets.
std::uint64_t edit_distance(const Hypergraph& h, const Hypergraph& other);
/// Edges of `other` that are missing from h, in edge order.
std::vector<VertexSet> missing_edges(const Hypergraph& h, const Hypergraph& other);

/// Edges of h meeting `side` in exactly r vertices.
std::vector<VertexSet> edges_with_meet(const Hypergraph& h, VertexSet side, int r);

template <class Pred>
Hypergraph Hypergraph::from_predicate(int n, int k, Pred&& pred) {
  if (n < 0 || n > kMaxVertices || k < 1 || k > kMaxVertices) {
    throw InvalidConstruction("hypergraph parameters out of range");
  }
  const double estimate = binom_estimate(n, k);
  if (estimate > kDefaultEnumerationGuard) {
    throw ResourceGuard("k-subset enumeration too large", estimate);
  }
  std::vector<std::uint64_t> masks;
  for_each_subset(VertexSet::prefix(n), k, [&](VertexSet s) {
    if (pred(s)) masks.push_back(s.bits());
  });
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return lex_less(VertexSet(a), VertexSet(b));
  });
  return trusted(n, k, std::move(masks));
}

}  // namespace matchlab
