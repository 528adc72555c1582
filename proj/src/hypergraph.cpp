#include "matchlab/hypergraph.hpp"

#include <bit>
#include <iterator>

#include "matchlab/kernels.hpp"

namespace matchlab {

namespace {

bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  return lex_less(VertexSet(a), VertexSet(b));
}

void check_params(int n, int k) {
  if (n < 0 || n > kMaxVertices) throw InvalidConstruction("n must lie in [0, 64]");
  // k > n is allowed and forces an empty edge set (e.g. small induced parts).
  if (k < 1 || k > kMaxVertices) throw InvalidConstruction("k must lie in [1, 64]");
}

void guard(double estimate, const char* what) {
  if (estimate > kDefaultEnumerationGuard) throw ResourceGuard(what, estimate);
}

}  // namespace

Hypergraph::Hypergraph(int n, int k, std::vector<VertexSet> edges) : n_(n), k_(k) {
  check_params(n, k);
  masks_.reserve(edges.size());
  const VertexSet all = VertexSet::prefix(n);
  for (VertexSet e : edges) {
    if (e.size() != k) throw InvalidConstruction("edge " + e.str() + " does not have k vertices");
    if (!all.contains(e)) throw InvalidConstruction("edge " + e.str() + " has a vertex >= n");
    masks_.push_back(e.bits());
  }
  std::sort(masks_.begin(), masks_.end(), mask_lex_less);
  if (std::adjacent_find(masks_.begin(), masks_.end()) != masks_.end()) {
    throw InvalidConstruction("duplicate edge");
  }
  build_incidence();
}

Hypergraph::Hypergraph(Trusted, int n, int k, std::vector<std::uint64_t> sorted_masks)
    : n_(n), k_(k), masks_(std::move(sorted_masks)) {
  build_incidence();
}

void Hypergraph::build_incidence() {
  incident_.assign(n_, {});
  std::vector<std::size_t> counts(n_, 0);
  for (std::uint64_t m : masks_) {
    for (int v : VertexSet(m)) ++counts[v];
  }
  for (int v = 0; v < n_; ++v) incident_[v].reserve(counts[v]);
  for (std::uint64_t m : masks_) {
    for (int v : VertexSet(m)) incident_[v].push_back(m);
  }
}

Hypergraph Hypergraph::empty(int n, int k) {
  check_params(n, k);
  return trusted(n, k, {});
}

Hypergraph Hypergraph::complete(int n, int k) {
  return from_predicate(n, k, [](VertexSet) { return true; });
}

std::vector<VertexSet> Hypergraph::edges() const {
  std::vector<VertexSet> out;
  out.reserve(masks_.size());
  for (std::uint64_t m : masks_) out.emplace_back(m);
  return out;
}

bool Hypergraph::contains(VertexSet e) const {
  if (e.size() != k_) return false;
  return std::binary_search(masks_.begin(), masks_.end(), e.bits(), mask_lex_less);
}

Hypergraph Hypergraph::modified(std::span<const VertexSet> add,
                                std::span<const VertexSet> remove) const {
  std::vector<std::uint64_t> drop;
  for (VertexSet e : remove) {
    if (!contains(e)) throw InvalidQuery("cannot remove missing edge " + e.str());
    drop.push_back(e.bits());
  }
  std::sort(drop.begin(), drop.end(), mask_lex_less);
  std::vector<std::uint64_t> kept;
  kept.reserve(masks_.size() + add.size());
  std::set_difference(masks_.begin(), masks_.end(), drop.begin(), drop.end(),
                      std::back_inserter(kept), mask_lex_less);
  std::vector<VertexSet> edges;
  edges.reserve(kept.size() + add.size());
  for (std::uint64_t m : kept) edges.emplace_back(m);
  for (VertexSet e : add) {
    if (contains(e) && !std::binary_search(drop.begin(), drop.end(), e.bits(), mask_lex_less)) {
      throw InvalidQuery("cannot add existing edge " + e.str());
    }
    edges.push_back(e);
  }
  return Hypergraph(n_, k_, std::move(edges));
}

std::uint64_t degree(const Hypergraph& h, VertexSet s) {
  if (s.size() > h.k()) throw InvalidQuery("degree: |S| exceeds k");
  if (!h.vertices().contains(s)) throw InvalidQuery("degree: S not inside the vertex set");
  if (s.empty()) return h.edge_count();
  // Scan the shortest incidence list among the members of s.
  int best = s.min();
  for (int v : s) {
    if (h.incident(v).size() < h.incident(best).size()) best = v;
  }
  return kernels::count_supersets(h.incident(best), s.bits());
}

std::vector<std::uint64_t> degree_table(const Hypergraph& h, int l) {
  if (l < 0 || l > h.k()) throw InvalidQuery("degree_table: l out of range");
  const double size = binom_estimate(h.n(), l);
  guard(size, "l-subset degree table too large");
  std::vector<std::uint64_t> table(binom(h.n(), l), 0);
  for (std::uint64_t m : h.masks()) {
    for_each_subset(VertexSet(m), l, [&](VertexSet s) { ++table[colex_rank(s)]; });
  }
  return table;
}

std::uint64_t min_degree(const Hypergraph& h, int l) {
  if (l < 0 || l >= h.k()) throw InvalidQuery("min_degree: l must lie in [0, k-1]");
  if (l == 0) return h.edge_count();
  const auto table = degree_table(h, l);
  return *std::min_element(table.begin(), table.end());
}

VertexSet argmin_degree_set(const Hypergraph& h, int l) {
  if (l < 0 || l >= h.k()) throw InvalidQuery("argmin_degree_set: l must lie in [0, k-1]");
  if (l == 0) return {};
  const auto table = degree_table(h, l);
  const auto it = std::min_element(table.begin(), table.end());
  return colex_unrank(static_cast<std::uint64_t>(it - table.begin()), l);
}

bool degree_transfer_check(const Hypergraph& h, int l, int l_prime, Rational x) {
  if (!(0 <= l && l <= l_prime && l_prime < h.k())) {
    throw InvalidQuery("degree_transfer_check: need 0 <= l <= l' < k");
  }
  if (x < 0 || x > 1) throw InvalidQuery("degree_transfer_check: x must lie in [0, 1]");
  // d >= (p/q) C  <=>  d q >= p C, in 128-bit to stay exact.
  auto at_least = [&](std::uint64_t d, int ell) {
    const __int128 lhs = static_cast<__int128>(d) * x.denominator();
    const __int128 rhs = static_cast<__int128>(x.numerator()) * binom(h.n() - ell, h.k() - ell);
    return lhs >= rhs;
  };
  if (!at_least(min_degree(h, l_prime), l_prime)) return true;
  return at_least(min_degree(h, l), l);
}

Hypergraph complement(const Hypergraph& h) {
  guard(binom_estimate(h.n(), h.k()), "complement enumeration too large");
  std::vector<std::uint64_t> all;
  all.reserve(binom(h.n(), h.k()));
  for_each_subset(h.vertices(), h.k(), [&](VertexSet s) { all.push_back(s.bits()); });
  std::sort(all.begin(), all.end(), mask_lex_less);
  std::vector<std::uint64_t> out;
  out.reserve(all.size() - h.edge_count());
  std::set_difference(all.begin(), all.end(), h.masks().begin(), h.masks().end(),
                      std::back_inserter(out), mask_lex_less);
  return Hypergraph::trusted(h.n(), h.k(), std::move(out));
}

std::pair<Hypergraph, std::vector<int>> induced(const Hypergraph& h, VertexSet a) {
  if (!h.vertices().contains(a)) throw InvalidQuery("induced: A not inside the vertex set");
  std::vector<int> label_map = a.members();
  int relabel[64];
  for (std::size_t i = 0; i < label_map.size(); ++i) relabel[label_map[i]] = static_cast<int>(i);
  std::vector<std::uint64_t> out;
  const int m = a.size();
  for (std::uint64_t e : h.masks()) {
    if ((e & ~a.bits()) != 0) continue;
    std::uint64_t r = 0;
    for (int v : VertexSet(e)) r |= std::uint64_t{1} << relabel[v];
    out.push_back(r);
  }
  // Monotone relabelling preserves lexicographic order.
  return {Hypergraph::trusted(m, h.k(), std::move(out)), label_map};
}

std::uint64_t edit_distance(const Hypergraph& h, const Hypergraph& other) {
  if (h.n() != other.n() || h.k() != other.k()) {
    throw InvalidQuery("edit_distance: hypergraphs differ in n or k");
  }
  const auto a = h.masks();
  const auto b = other.masks();
  std::size_t common = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++common, ++i, ++j;
    } else if (mask_lex_less(a[i], b[j])) {
      ++i;
    } else {
      ++j;
    }
  }
  return a.size() + b.size() - 2 * common;
}

std::vector<VertexSet> missing_edges(const Hypergraph& h, const Hypergraph& other) {
  std::vector<std::uint64_t> diff;
  std::set_difference(other.masks().begin(), other.masks().end(), h.masks().begin(),
                      h.masks().end(), std::back_inserter(diff), mask_lex_less);
  std::vector<VertexSet> out;
  out.reserve(diff.size());
  for (std::uint64_t m : diff) out.emplace_back(m);
  return out;
}

std::vector<VertexSet> edges_with_meet(const Hypergraph& h, VertexSet side, int r) {
  std::vector<VertexSet> out;
  for (std::uint64_t m : h.masks()) {
    if (std::popcount(m & side.bits()) == r) out.emplace_back(m);
  }
  return out;
}

}  // namespace matchlab
