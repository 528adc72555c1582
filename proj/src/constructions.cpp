#include "matchlab/constructions.hpp"

namespace matchlab {

std::string_view variant_name(Variant v) { return v == Variant::b ? "B" : "Bbar"; }

Variant opposite(Variant v) { return v == Variant::b ? Variant::b_bar : Variant::b; }

bool in_extremal_family(int n, int k, Variant variant, int a_size) {
  if (k < 1 || n % k != 0 || a_size <= 0 || a_size >= n) return false;
  const bool a_odd = a_size % 2 == 1;
  if (variant == Variant::b_bar) return a_odd;
  const bool quotient_odd = (n / k) % 2 == 1;
  return quotient_odd ? !a_odd : a_odd;
}

bool ExtremalSpec::in_extremal_family() const {
  return matchlab::in_extremal_family(n, k, variant, a_size);
}

std::string ExtremalSpec::label() const {
  return std::string(variant_name(variant)) + "|A|=" + std::to_string(a_size);
}

ParityClass classify(VertexSet edge, VertexSet a_side) {
  const int i = meet(edge, a_side);
  return {edge, i, (i & 1) ? Parity::odd : Parity::even};
}

Hypergraph build_variant(int n, int k, Variant variant, VertexSet a_side) {
  if (n < 1 || n > kMaxVertices) throw InvalidConstruction("n must lie in [1, 64]");
  if (k < 1 || k > n) throw InvalidConstruction("k must lie in [1, n]");
  const VertexSet all = VertexSet::prefix(n);
  if (!all.contains(a_side)) throw InvalidConstruction("A is not inside the vertex set");
  if (a_side.empty() || a_side == all) {
    throw InvalidConstruction("both parts of the partition must be non-empty");
  }
  const int want = variant == Variant::b ? 1 : 0;
  return Hypergraph::from_predicate(
      n, k, [&](VertexSet s) { return (meet(s, a_side) & 1) == want; });
}

Hypergraph build_b(int n, int k, VertexSet a_side) {
  return build_variant(n, k, Variant::b, a_side);
}

Hypergraph build_b_bar(int n, int k, VertexSet a_side) {
  return build_variant(n, k, Variant::b_bar, a_side);
}

std::pair<Hypergraph, Partition> build_bt(int n, int k, int t, Variant variant) {
  const int a_size = n / 2 + t;
  if (a_size <= 0 || a_size >= n) throw InvalidConstruction("t out of range for n");
  const Partition p = Partition::from_a(n, VertexSet::prefix(a_size));
  return {build_variant(n, k, variant, p.a_side), p};
}

KrResult build_k_r(VertexSet a_side, VertexSet b_side, int k, int r, int n) {
  if (!a_side.disjoint(b_side)) throw InvalidConstruction("K_r: A and B must be disjoint");
  if (r < 0 || r > k) throw InvalidConstruction("K_r: r must lie in [0, k]");
  if (n < 0) n = (a_side | b_side).bound();
  if (!VertexSet::prefix(n).contains(a_side | b_side)) {
    throw InvalidConstruction("K_r: parts exceed the vertex count");
  }
  if (r > a_side.size() || k - r > b_side.size()) {
    return {Hypergraph::empty(n, k), false};
  }
  std::vector<VertexSet> edges;
  edges.reserve(binom(a_side.size(), r) * binom(b_side.size(), k - r));
  for_each_subset(a_side, r, [&](VertexSet x) {
    for_each_subset(b_side, k - r, [&](VertexSet y) { edges.push_back(x | y); });
  });
  return {Hypergraph(n, k, std::move(edges)), true};
}

std::vector<ExtremalSpec> extremal_specs(int n, int k) {
  if (k < 2 || n % k != 0) throw InvalidQuery("extremal family needs k >= 2 dividing n");
  std::vector<ExtremalSpec> out;
  for (Variant v : {Variant::b_bar, Variant::b}) {
    for (int a = 1; a < n; ++a) {
      if (in_extremal_family(n, k, v, a)) out.push_back({n, k, v, a});
    }
  }
  return out;
}

Hypergraph build_spec(const ExtremalSpec& spec) {
  return build_variant(spec.n, spec.k, spec.variant, VertexSet::prefix(spec.a_size));
}

std::vector<std::pair<ExtremalSpec, Hypergraph>> extremal_family(int n, int k) {
  std::vector<std::pair<ExtremalSpec, Hypergraph>> out;
  for (const ExtremalSpec& s : extremal_specs(n, k)) out.emplace_back(s, build_spec(s));
  return out;
}

Hypergraph expanded_cycle_template(int r, int length) {
  if (r < 1) throw InvalidConstruction("template needs r >= 1");
  if (length != 3 && length != 4) throw InvalidConstruction("template length must be 3 or 4");
  if (r * length > kMaxVertices) throw InvalidConstruction("template exceeds 64 vertices");
  std::vector<VertexSet> edges;
  for (int i = 0; i < length; ++i) {
    const int j = (i + 1) % length;
    edges.push_back(VertexSet::range(i * r, (i + 1) * r) | VertexSet::range(j * r, (j + 1) * r));
  }
  return Hypergraph(r * length, 2 * r, std::move(edges));
}

}  // namespace matchlab
