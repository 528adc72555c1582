#pragma once

#include <string>
#include <utility>
#include <vector>

#include "matchlab/hypergraph.hpp"

namespace matchlab {

/// B takes the (A,B)-odd k-sets, B-bar the (A,B)-even ones.
enum class Variant { b, b_bar };

std::string_view variant_name(Variant v);
Variant opposite(Variant v);

/// One member of the parity-obstructed extremal family, with the canonical
/// choice A = {0, .., a_size-1}.
struct ExtremalSpec {
  int n = 0;
  int k = 0;
  Variant variant = Variant::b;
  int a_size = 0;

  Partition partition() const { return Partition::from_a(n, VertexSet::prefix(a_size)); }
  /// Whether the spec satisfies the parity conditions of the extremal family.
  bool in_extremal_family() const;
  /// e.g. "Bbar|A|=17"
  std::string label() const;
  bool operator==(const ExtremalSpec&) const = default;
};

/// Membership test used throughout: k | n, 0 < a_size < n, and
/// B-bar with a_size odd, or B with a_size even (n/k odd) / odd (n/k even).
bool in_extremal_family(int n, int k, Variant variant, int a_size);

enum class Parity { even, odd };

struct ParityClass {
  VertexSet edge;
  int intersection_size = 0;
  Parity parity = Parity::even;
};

ParityClass classify(VertexSet edge, VertexSet a_side);
inline bool is_odd_edge(VertexSet edge, VertexSet a_side) {
  return (meet(edge, a_side) & 1) != 0;
}

/// k-sets meeting A in an odd number of vertices. Throws InvalidConstruction
/// when A or its complement is empty.
Hypergraph build_b(int n, int k, VertexSet a_side);
/// k-sets meeting A in an even number of vertices.
Hypergraph build_b_bar(int n, int k, VertexSet a_side);
Hypergraph build_variant(int n, int k, Variant variant, VertexSet a_side);

/// Variant with |A| = floor(n/2) + t and A = {0, .., |A|-1}.
std::pair<Hypergraph, Partition> build_bt(int n, int k, int t, Variant variant = Variant::b);

struct KrResult {
  Hypergraph hypergraph;
  /// False when r > |A| or k - r > |B|; the hypergraph is then empty.
  bool feasible = true;
};

/// k-sets inside A u B meeting A in exactly r vertices. The vertex count is
/// `n`, or the smallest range covering A u B when n < 0.
KrResult build_k_r(VertexSet a_side, VertexSet b_side, int k, int r, int n = -1);

/// Family specs in order: every B-bar with odd |A|, then every admissible B,
/// each by increasing |A|.
std::vector<ExtremalSpec> extremal_specs(int n, int k);
std::vector<std::pair<ExtremalSpec, Hypergraph>> extremal_family(int n, int k);
Hypergraph build_spec(const ExtremalSpec& spec);

/// Expanded triangle (length 3) or 4-cycle (length 4) on blocks P_i of r
/// consecutive labels, with edges P_i u P_{i+1} cyclically.
Hypergraph expanded_cycle_template(int r, int length);

}  // namespace matchlab
