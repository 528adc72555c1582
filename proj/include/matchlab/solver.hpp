#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matchlab/constructions.hpp"
#include "matchlab/hypergraph.hpp"

namespace matchlab {

/// Pairwise-disjoint edges of some host hypergraph.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<VertexSet> edges);

  const std::vector<VertexSet>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  VertexSet covered() const { return covered_; }
  /// Throws InvariantViolation if e meets an existing edge.
  void add(VertexSet e);
  void append(const Matching& other);

 private:
  std::vector<VertexSet> edges_;
  VertexSet covered_;
};

struct MatchingCheck {
  bool ok = false;
  std::string reason;
};

/// Independent validity check: every edge belongs to h, edges are pairwise
/// disjoint, and together they cover exactly `target` (all vertices when
/// omitted).
MatchingCheck check_matching(const Hypergraph& h, const Matching& m,
                             std::optional<VertexSet> target = std::nullopt);

// ---------------------------------------------------------------------------
// Exact search

enum class SearchStatus { found, none, undecided };
std::string_view status_name(SearchStatus s);

struct SearchOptions {
  /// Branching nodes before giving up with `undecided`.
  std::uint64_t node_budget = 0;  // 0 = default_node_budget()
  /// Restricts the search to edges accepted by this filter.
  std::function<bool(VertexSet)> edge_filter;
};

/// MATCHLAB_BUDGET from the environment, else 50 million.
std::uint64_t default_node_budget();

struct SearchResult {
  SearchStatus status = SearchStatus::none;
  Matching matching;
  std::uint64_t nodes = 0;
  std::string reason;
};

/// Perfect matching of H by exhaustive backtracking: branch on the uncovered
/// vertex with fewest usable edges (lowest index on ties), trying its edges
/// in lexicographic order; prune at an uncovered vertex with no usable edge
/// and at previously refuted uncovered sets.
SearchResult find_perfect_matching(const Hypergraph& h, const SearchOptions& options = {});
/// Perfect matching of H[target] (edges of H inside target).
SearchResult find_perfect_matching_on(const Hypergraph& h, VertexSet target,
                                      const SearchOptions& options = {});

// ---------------------------------------------------------------------------
// Parity obstruction

struct ParityCertificate {
  Partition partition;
  Parity edge_parity = Parity::even;
  std::string divisibility_reason;
};

/// A certificate iff every edge meets partition.a_side with one parity and
/// the counting obstruction applies: all even with |A| odd, or all odd with
/// |A| even and n/k odd, or with |A| odd and n/k even.
std::optional<ParityCertificate> parity_certificate(const Hypergraph& h, const Partition& p);
/// Re-verifies a certificate against h from scratch.
bool validate_certificate(const Hypergraph& h, const ParityCertificate& c);
/// Tries every A (first in increasing mask order wins); needs n <= 24.
std::optional<ParityCertificate> search_parity_certificate(const Hypergraph& h);

// ---------------------------------------------------------------------------
// Goodness

struct GoodnessReport {
  double alpha = 0;
  /// alpha * m^{k-1}, m the size of the vertex domain.
  double threshold = 0;
  VertexSet domain;
  VertexSet bad_vertices;
  /// Indexed by vertex; d_{ref \ H}(v), zero outside the domain.
  std::vector<std::uint64_t> deficiency;
  /// |E(ref) \ E(H)|
  std::uint64_t missing_edges = 0;
};

/// Deficiency of every vertex of H with respect to a reference hypergraph on
/// the same vertex set.
GoodnessReport goodness(const Hypergraph& h, const Hypergraph& reference, double alpha);
/// Goodness inside H[domain] against the reference k-subsets of `domain`
/// accepted by `in_reference`, measured at scale |domain|.
GoodnessReport goodness_within(const Hypergraph& h, VertexSet domain,
                               const std::function<bool(VertexSet)>& in_reference,
                               double alpha);

/// First edge (lexicographic) containing v, disjoint from u, and accepted by
/// the filter.
std::optional<VertexSet> claim_edge_avoiding(const Hypergraph& h, int v, VertexSet u,
                                             const std::function<bool(VertexSet)>& filter = {});

// ---------------------------------------------------------------------------
// Structured matchings

/// 1 / (k (2k(k-1))^{k-1})
double lemma_alpha_bound(int k);

struct GreedyOptions {
  /// Check t >= 2(k-1), alpha below lemma_alpha_bound(k) and goodness of
  /// every vertex, throwing PreconditionError when one fails. With checks
  /// on, a stall is an InvariantViolation; with checks off it is reported.
  bool enforce_bounds = true;
  /// After a stall with checks off, search H[A u B] exactly for a perfect
  /// matching of A^r B^{k-r} edges and flag the result.
  bool exact_fallback = false;
  std::uint64_t node_budget = 0;
};

struct GreedyResult {
  bool success = false;
  Matching matching;
  int exchanges = 0;
  bool exact_fallback = false;
  std::string failure;
};

/// Perfect matching of H[A u B] by A^r B^{k-r} edges: grow a maximal such
/// matching, and while it is not perfect trade k-1 matched edges that are
/// feasible for a fixed uncovered k-set S for k new edges.
GreedyResult greedy_structured_matching(const Hypergraph& h, VertexSet a, VertexSet b, int r,
                                        double alpha, const GreedyOptions& options = {});

struct CorollaryResult {
  bool success = false;
  Matching matching;
  /// 'a': split into r = 1 and r = k-1 halves; 'b': r = k/2 directly.
  char branch = 'a';
  bool exact_fallback = false;
  std::string failure;
};

/// Perfect matching of H[A u B] for |A| = |B| whose vertices are good with
/// respect to the odd k-sets. Branch 'b' is used whenever k/2 is odd.
CorollaryResult corollary_good_matcher(const Hypergraph& h, const Partition& p, double alpha,
                                       const GreedyOptions& options = {});

// ---------------------------------------------------------------------------
// Near-extremal matcher

struct MatcherConfig {
  double epsilon = 1e-3;
  /// Defaults sqrt(k) eps^{2/3} and sqrt(k) eps^{1/3}.
  std::optional<double> eps1;
  std::optional<double> eps2;
  /// Exact search on the pattern edges when the greedy finish stalls.
  bool exact_fallback = true;
  std::uint64_t node_budget = 0;
};

struct MatcherReport {
  bool success = false;
  Matching matching;
  /// On failure: step id ("step2", ...), the edge pattern sought, and the
  /// live set sizes at that point.
  std::string failed_step;
  std::string sought_pattern;
  std::map<std::string, long long> sizes;
  std::vector<std::string> trace;

  double eps1 = 0;
  double eps2 = 0;
  std::uint64_t missing_reference_edges = 0;
  bool eps_contained = false;
  /// |V0| <= eps1 n, the counting consequence of containment.
  bool bad_count_within_bound = false;
  VertexSet v0;
  Partition relocated;
  bool parity_breaker_needed = false;
  std::optional<VertexSet> e0;
  bool exact_fallback_used = false;
};

/// Steps 1-6 of the constructive argument for H close to the given variant
/// on partition p. Never throws for a failed existence step; such failures
/// come back in the report.
MatcherReport extremal_case_matcher(const Hypergraph& h, Variant variant, const Partition& p,
                                    const MatcherConfig& config = {});

}  // namespace matchlab
