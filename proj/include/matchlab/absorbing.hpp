#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matchlab/hypergraph.hpp"
#include "matchlab/io.hpp"
#include "matchlab/solver.hpp"

namespace matchlab {

// ---------------------------------------------------------------------------
// Absorbing sets

/// S absorbs Q: H[S] and H[S u Q] both have perfect matchings.
struct AbsorbingCertificate {
  VertexSet q_set;
  VertexSet s_set;
  Matching m_inner;
  Matching m_outer;
};

struct AbsorbingVerdict {
  /// found = absorbing, none = not absorbing, undecided = budget ran out.
  SearchStatus status = SearchStatus::none;
  std::optional<AbsorbingCertificate> certificate;
  /// |S| is neither k nor 2k, the two sizes the constructions produce.
  bool nonstandard_size = false;
};

/// Requires S and Q disjoint with k dividing |S| and |S u Q|.
AbsorbingVerdict is_absorbing(const Hypergraph& h, VertexSet s, VertexSet q,
                              std::uint64_t node_budget = 0);

struct Enumeration {
  std::vector<VertexSet> sets;
  bool truncated = false;
};

/// k-sets x' u y' with x' u y', x u x', y u y' all edges, over every split of
/// the k-set Q into r-sets x, y (k = 2r). Sorted, no repeats.
Enumeration enumerate_absorbing_2r(const Hypergraph& h, VertexSet q);
/// 2k-sets x' u y' u w' u z' with x' u w', y' u z', w' u z', x u x', y u y'
/// all edges. Stops after `limit` distinct sets and flags truncation.
Enumeration enumerate_absorbing_4r(const Hypergraph& h, VertexSet q, std::size_t limit);

// ---------------------------------------------------------------------------
// Absorbing family

struct FamilyOptions {
  /// Validate against every k-set when there are at most this many,
  /// otherwise against `sampled_q` random k-sets.
  std::uint64_t exhaustive_q_limit = 5000;
  std::size_t sampled_q = 500;
  std::uint64_t node_budget = 0;
};

struct FamilyStats {
  double p = 0;
  double expected_size = 0;
  /// xi n / (2k)!, which the expectation stays below.
  double expected_size_bound = 0;
  std::size_t sampled = 0;
  /// |F| <= 2 E|F|
  bool concentration_ok = false;
  std::size_t absorbing = 0;
  std::size_t intersecting_pairs = 0;
  std::size_t kept = 0;
  std::size_t validated_q = 0;
  bool exhaustive_q = false;
  /// |L_Q n F'| per validated Q, in the order of `q_sets`.
  std::vector<VertexSet> q_sets;
  std::vector<std::size_t> hits;
  std::size_t min_hits = 0;
  double size_bound = 0;  // xi n / k
  double hit_bound = 0;   // xi^2 n / k
};

struct AbsorbingFamily {
  std::vector<VertexSet> members;
  /// Perfect matching of H[member], same order as members.
  std::vector<Matching> inner;
  double xi = 0;
  std::uint64_t seed = 0;
  FamilyStats stats;
  /// Both bounds hold on every validated Q.
  bool ok = false;
  std::string failure;

  /// Union of the inner matchings.
  Matching matching() const;
};

/// The deterministic half of the construction: drop candidates absorbing no
/// validated Q, then the later member of every intersecting pair, then check
/// |F'| <= xi n / k and |L_Q n F'| > xi^2 n / k.
AbsorbingFamily validate_family(const Hypergraph& h, const std::vector<VertexSet>& candidates,
                                double xi, std::uint64_t seed, const FamilyOptions& options = {});
/// Samples each 2k-set with probability xi / n^{2k-1} and validates.
AbsorbingFamily build_absorbing_family(const Hypergraph& h, double xi, std::uint64_t seed,
                                       const FamilyOptions& options = {});

struct AbsorbResult {
  bool ok = false;
  Matching matching;
  /// The k-set no unused member could take.
  std::optional<VertexSet> starved;
};

/// Splits W into consecutive k-sets and swaps, for each, the inner matching
/// of an unused member absorbing it for the matching of member u Q. M must
/// cover every family member by its own edges.
AbsorbResult absorb(const Hypergraph& h, const AbsorbingFamily& family, const Matching& m,
                    VertexSet w);

// ---------------------------------------------------------------------------
// Link graph

/// Simple graph on 0..N-1 stored as dense adjacency bit rows.
class DenseGraph {
 public:
  DenseGraph() = default;
  explicit DenseGraph(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t words() const { return words_; }
  void add_edge(std::size_t u, std::size_t v);
  bool adjacent(std::size_t u, std::size_t v) const {
    return (rows_[u * words_ + v / 64] >> (v % 64)) & 1u;
  }
  std::span<const std::uint64_t> row(std::size_t u) const {
    return {rows_.data() + u * words_, words_};
  }
  std::size_t degree(std::size_t u) const;
  std::size_t common_neighbours(std::size_t u, std::size_t v) const;
  std::size_t edge_count() const;
  DenseGraph complement() const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Vertices are the (k/2)-subsets of V(H) in colex order; two are adjacent
/// when they are disjoint and their union is an edge.
struct AuxGraph {
  int n = 0;
  int half = 0;
  std::vector<VertexSet> labels;
  DenseGraph graph;
};

AuxGraph build_aux_graph(const Hypergraph& h);

struct CaseReport {
  double gamma = 0;
  std::size_t size = 0;
  /// Per vertex a: #{b : |N(a) n N(b)| >= gamma N}.
  std::vector<std::size_t> good_counts;
  /// #{a : d(a) >= (1/2 + gamma) N}
  std::size_t heavy = 0;
  bool case_a = false;
  bool case_b = false;
  /// First a with at most (1/2 + gamma) N such b, if any.
  std::optional<std::size_t> witness;
};

CaseReport case_ab_detector(const DenseGraph& g, double gamma);
CaseReport case_ab_detector(const Hypergraph& h, double gamma);

struct ExtractResult {
  bool applicable = false;
  std::string reason;
  std::size_t witness = 0;
  /// "bipartite": close to K_{V1,V2}; "complement": close to two cliques.
  std::string branch;
  std::vector<bool> in_v1;
  std::uint64_t distance = 0;
};

/// Distance from g to K_{V1,V2} (complement = false) or to its complement.
std::uint64_t bipartite_distance(const DenseGraph& g, const std::vector<bool>& in_v1, bool complement);

/// Builds V1 from the neighbourhood of a witnessing vertex as in the
/// structural argument. Without `force`, condition (b) must hold as well.
ExtractResult bipartite_extract(const DenseGraph& g, double gamma, bool force = false);

// ---------------------------------------------------------------------------
// Colouring censuses

struct C3Census {
  std::uint64_t red = 0;
  std::uint64_t blue = 0;
};

/// Monochromatic expanded triangles: unordered triples of disjoint r-sets
/// whose three pairwise unions share a colour.
C3Census c3_census(const TwoColoring& c);

struct C4Census {
  /// 4r-sets with at least one bad expanded 4-cycle.
  std::uint64_t bad_sets = 0;
  /// Bad (partition, cycle) pairs.
  std::uint64_t bad_witnesses = 0;
};

/// Expanded 4-cycles with exactly one union in the minority colour.
C4Census bad_c4_census(const TwoColoring& c);

/// Colouring of the (k/2)-sets with red = the given side (colex-indexed).
TwoColoring encode_h_as_coloring(const Hypergraph& h, const std::vector<bool>& red_side);

struct EncodeCheck {
  std::uint64_t bad_sets = 0;
  /// |E(G) xor E(K_{R,B})|
  std::uint64_t symmetric_difference = 0;
  /// Bad sets none of whose witnesses maps into the symmetric difference.
  std::uint64_t unmapped = 0;
};

/// Each bad 4r-set is the union of a pair in E(G(H)) xor E(K_{R,B}).
EncodeCheck encode_check(const Hypergraph& h, const TwoColoring& c);

}  // namespace matchlab
