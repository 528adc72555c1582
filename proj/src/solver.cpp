#include "matchlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <unordered_set>

#include "matchlab/kernels.hpp"

namespace matchlab {

Matching::Matching(std::vector<VertexSet> edges) {
  for (auto e : edges) add(e);
}

void Matching::add(VertexSet e) {
  if (!covered_.disjoint(e)) {
    throw InvariantViolation("matching edge " + e.str() + " meets covered vertices");
  }
  edges_.push_back(e);
  covered_ |= e;
}

void Matching::append(const Matching& other) {
  for (auto e : other.edges()) add(e);
}

MatchingCheck check_matching(const Hypergraph& h, const Matching& m,
                             std::optional<VertexSet> target) {
  const VertexSet want = target.value_or(h.vertices());
  VertexSet seen;
  for (auto e : m.edges()) {
    if (!h.contains(e)) return {false, "edge " + e.str() + " is not in the host"};
    if (!seen.disjoint(e)) return {false, "edge " + e.str() + " overlaps an earlier edge"};
    seen |= e;
  }
  if (seen != want) {
    return {false, "covered " + seen.str() + " instead of " + want.str()};
  }
  return {true, {}};
}

// ---------------------------------------------------------------------------

std::string_view status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    case SearchStatus::undecided: return "undecided";
  }
  return "?";
}

std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("MATCHLAB_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 50'000'000;
}

namespace {

struct BudgetExceeded {};

class ExactSearch {
 public:
  ExactSearch(std::vector<std::uint64_t> pool, std::uint64_t budget) : budget_(budget) {
    for (auto m : pool) {
      for (int v : VertexSet(m)) incident_[v].push_back(m);
    }
  }

  bool solve(std::uint64_t uncovered, std::vector<VertexSet>& chosen) {
    if (uncovered == 0) return true;
    if (++nodes_ > budget_) throw BudgetExceeded{};
    if (refuted_.count(uncovered)) return false;
    const std::uint64_t avoid = ~uncovered;
    int best = -1;
    std::size_t best_count = SIZE_MAX;
    for (int v : VertexSet(uncovered)) {
      const std::size_t c = kernels::count_masks(incident_[v], 0, avoid);
      if (c == 0) {
        remember(uncovered);
        return false;
      }
      if (c < best_count) {
        best_count = c;
        best = v;
      }
    }
    std::vector<std::uint32_t> idx;
    kernels::filter_masks(incident_[best], 0, avoid, idx);
    for (auto i : idx) {
      const std::uint64_t m = incident_[best][i];
      chosen.push_back(VertexSet(m));
      if (solve(uncovered & ~m, chosen)) return true;
      chosen.pop_back();
    }
    remember(uncovered);
    return false;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void remember(std::uint64_t s) {
    if (refuted_.size() < kMemoCap) refuted_.insert(s);
  }

  static constexpr std::size_t kMemoCap = 1u << 22;
  std::vector<std::uint64_t> incident_[kMaxVertices];
  std::unordered_set<std::uint64_t> refuted_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SearchResult find_perfect_matching_on(const Hypergraph& h, VertexSet target,
                                      const SearchOptions& options) {
  SearchResult out;
  if (!h.vertices().contains(target)) throw InvalidQuery("target outside the vertex set");
  if (target.size() % h.k() != 0) {
    out.status = SearchStatus::none;
    out.reason = "k does not divide the number of vertices";
    return out;
  }
  std::vector<std::uint64_t> pool;
  for (auto m : h.masks()) {
    if ((m & ~target.bits()) != 0) continue;
    if (options.edge_filter && !options.edge_filter(VertexSet(m))) continue;
    pool.push_back(m);
  }
  ExactSearch search(std::move(pool),
                     options.node_budget ? options.node_budget : default_node_budget());
  std::vector<VertexSet> chosen;
  try {
    if (search.solve(target.bits(), chosen)) {
      out.status = SearchStatus::found;
      out.matching = Matching(chosen);
    } else {
      out.status = SearchStatus::none;
      out.reason = "exhaustive search found no perfect matching";
    }
  } catch (const BudgetExceeded&) {
    out.status = SearchStatus::undecided;
    out.reason = "node budget exceeded";
  }
  out.nodes = search.nodes();
  return out;
}

SearchResult find_perfect_matching(const Hypergraph& h, const SearchOptions& options) {
  return find_perfect_matching_on(h, h.vertices(), options);
}

// ---------------------------------------------------------------------------

std::optional<ParityCertificate> parity_certificate(const Hypergraph& h, const Partition& p) {
  if (h.n() % h.k() != 0) throw InvalidQuery("parity certificate needs k | n");
  if (!p.valid_for(h.n())) throw InvalidQuery("partition does not split the vertex set");
  bool any_odd = false, any_even = false;
  for (auto m : h.masks()) {
    (is_odd_edge(VertexSet(m), p.a_side) ? any_odd : any_even) = true;
    if (any_odd && any_even) return std::nullopt;
  }
  const int a = p.a_side.size();
  const int parts = h.n() / h.k();
  std::ostringstream why;
  if (!any_odd && a % 2 == 1) {
    why << "every edge meets A evenly, so a perfect matching covers an even number of A-vertices, but |A| = "
        << a << " is odd";
    return ParityCertificate{p, Parity::even, why.str()};
  }
  if (!any_even && (a % 2) != (parts % 2)) {
    why << "every edge meets A oddly, so a perfect matching of n/k = " << parts
        << " edges covers " << (parts % 2 ? "an odd" : "an even") << " number of A-vertices, but |A| = "
        << a << " is " << (a % 2 ? "odd" : "even");
    return ParityCertificate{p, Parity::odd, why.str()};
  }
  return std::nullopt;
}

bool validate_certificate(const Hypergraph& h, const ParityCertificate& c) {
  if (h.n() % h.k() != 0 || !c.partition.valid_for(h.n())) return false;
  const bool want_odd = c.edge_parity == Parity::odd;
  for (auto e : h.edges()) {
    if (is_odd_edge(e, c.partition.a_side) != want_odd) return false;
  }
  const int a = c.partition.a_side.size();
  const int parts = h.n() / h.k();
  return want_odd ? (a % 2) != (parts % 2) : a % 2 == 1;
}

std::optional<ParityCertificate> search_parity_certificate(const Hypergraph& h) {
  if (h.n() > 24) throw ResourceGuard("partition search needs n <= 24", std::ldexp(1.0, h.n()));
  if (h.n() % h.k() != 0) throw InvalidQuery("parity certificate needs k | n");
  const std::uint64_t limit = std::uint64_t{1} << h.n();
  for (std::uint64_t a = 1; a + 1 < limit; ++a) {
    if (auto c = parity_certificate(h, Partition::from_a(h.n(), VertexSet(a)))) return c;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

double scale_threshold(double alpha, int m, int k) {
  return alpha * std::pow(static_cast<double>(m), k - 1);
}

void classify_bad(GoodnessReport& r) {
  for (int v : r.domain) {
    if (static_cast<double>(r.deficiency[v]) > r.threshold) r.bad_vertices.insert(v);
  }
}

}  // namespace

GoodnessReport goodness(const Hypergraph& h, const Hypergraph& reference, double alpha) {
  if (h.n() != reference.n() || h.k() != reference.k()) {
    throw InvalidQuery("goodness needs the same vertex set and uniformity");
  }
  GoodnessReport r;
  r.alpha = alpha;
  r.domain = h.vertices();
  r.threshold = scale_threshold(alpha, h.n(), h.k());
  r.deficiency.assign(h.n(), 0);
  for (auto e : missing_edges(h, reference)) {
    ++r.missing_edges;
    for (int v : e) ++r.deficiency[v];
  }
  classify_bad(r);
  return r;
}

GoodnessReport goodness_within(const Hypergraph& h, VertexSet domain,
                               const std::function<bool(VertexSet)>& in_reference, double alpha) {
  if (!h.vertices().contains(domain)) throw InvalidQuery("domain outside the vertex set");
  const double estimate = binom_estimate(domain.size(), h.k());
  if (estimate > kDefaultEnumerationGuard) throw ResourceGuard("goodness enumeration too large", estimate);
  GoodnessReport r;
  r.alpha = alpha;
  r.domain = domain;
  r.threshold = scale_threshold(alpha, domain.size(), h.k());
  r.deficiency.assign(h.n(), 0);
  for_each_subset(domain, h.k(), [&](VertexSet e) {
    if (!in_reference(e) || h.contains(e)) return;
    ++r.missing_edges;
    for (int v : e) ++r.deficiency[v];
  });
  classify_bad(r);
  return r;
}

std::optional<VertexSet> claim_edge_avoiding(const Hypergraph& h, int v, VertexSet u,
                                             const std::function<bool(VertexSet)>& filter) {
  if (v < 0 || v >= h.n()) throw InvalidQuery("vertex out of range");
  if (u.contains(v)) throw InvalidQuery("the avoided set contains the vertex");
  const auto inc = h.incident(v);
  std::vector<std::uint32_t> idx;
  kernels::filter_masks(inc, 0, u.bits(), idx);
  for (auto i : idx) {
    const VertexSet e(inc[i]);
    if (!filter || filter(e)) return e;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

double lemma_alpha_bound(int k) {
  return 1.0 / (k * std::pow(2.0 * k * (k - 1), k - 1));
}

namespace {

std::string pattern_name(int r, int k) {
  return "A^" + std::to_string(r) + " B^" + std::to_string(k - r);
}

// Every k-set taking v and one vertex from each tuple edge, with exactly r
// vertices in A, is an edge of h.
bool feasible_for(const Hypergraph& h, VertexSet a, int r, int v,
                  const std::vector<VertexSet>& tuple) {
  const int k = h.k();
  const int need = r - (a.contains(v) ? 1 : 0);
  bool ok = true;
  VertexSet chosen{v};
  auto rec = [&](auto&& self, std::size_t i, int a_count) -> void {
    if (!ok) return;
    const int left = static_cast<int>(tuple.size() - i);
    if (a_count > need || a_count + left < need) return;
    if (i == tuple.size()) {
      if (!h.contains(chosen)) ok = false;
      return;
    }
    for (int x : tuple[i]) {
      chosen.insert(x);
      self(self, i + 1, a_count + (a.contains(x) ? 1 : 0));
      chosen.erase(x);
      if (!ok) return;
    }
  };
  if (need < 0 || need > k - 1) return true;  // no such k-set
  rec(rec, 0, 0);
  return ok;
}

// Lists A-vertices first, then B-vertices.
std::vector<int> a_first(VertexSet s, VertexSet a) {
  std::vector<int> out;
  for (int v : s & a) out.push_back(v);
  for (int v : s - a) out.push_back(v);
  return out;
}

}  // namespace

GreedyResult greedy_structured_matching(const Hypergraph& h, VertexSet a, VertexSet b, int r,
                                        double alpha, const GreedyOptions& options) {
  const int k = h.k();
  if (!a.disjoint(b) || !h.vertices().contains(a | b)) {
    throw InvalidQuery("A and B must be disjoint subsets of the vertex set");
  }
  if (r < 0 || r > k) throw InvalidQuery("r must lie in [0, k]");
  const VertexSet u = a | b;
  if (u.size() % k != 0) throw PreconditionError("k does not divide |A| + |B|");
  const int t = u.size() / k;
  if (a.size() != t * r || b.size() != t * (k - r)) {
    throw PreconditionError("sizes are not |A| = t r, |B| = t (k - r)");
  }
  auto is_pattern = [&](VertexSet e) { return meet(e, a) == r; };

  if (options.enforce_bounds) {
    if (t < 2 * (k - 1)) {
      throw PreconditionError("t = " + std::to_string(t) + " is below 2(k-1) = " + std::to_string(2 * (k - 1)));
    }
    if (!(alpha < lemma_alpha_bound(k))) {
      throw PreconditionError("alpha is not below 1/(k (2k(k-1))^(k-1))");
    }
    const auto g = goodness_within(h, u, is_pattern, alpha);
    if (!g.bad_vertices.empty()) {
      throw PreconditionError("vertices " + g.bad_vertices.str() + " are not alpha-good for " +
                              pattern_name(r, k));
    }
  }

  std::vector<std::uint64_t> pool;
  for (auto m : h.masks()) {
    if ((m & ~u.bits()) == 0 && is_pattern(VertexSet(m))) pool.push_back(m);
  }

  GreedyResult out;
  std::vector<VertexSet> m;
  VertexSet covered;
  auto extend = [&] {
    for (auto e : pool) {
      if ((e & covered.bits()) == 0) {
        m.push_back(VertexSet(e));
        covered |= VertexSet(e);
      }
    }
  };

  for (int round = 0; round <= t; ++round) {
    extend();
    if (covered == u) {
      out.success = true;
      out.matching = Matching(m);
      return out;
    }
    // The stuck k-set: r uncovered A-vertices and k - r uncovered B-vertices.
    const auto a0 = (a - covered).members();
    const auto b0 = (b - covered).members();
    if (static_cast<int>(a0.size()) < r || static_cast<int>(b0.size()) < k - r) {
      throw InvariantViolation("uncovered part does not fit the pattern");
    }
    VertexSet s;
    for (int i = 0; i < r; ++i) s.insert(a0[i]);
    for (int i = 0; i < k - r; ++i) s.insert(b0[i]);

    // (k-1)-tuples of matched edges, in lexicographic order of indices.
    const int msize = static_cast<int>(m.size());
    std::vector<int> idx(k - 1);
    bool found = false;
    if (msize >= k - 1) {
      for (int i = 0; i < k - 1; ++i) idx[i] = i;
      while (true) {
        std::vector<VertexSet> tuple;
        for (int i : idx) tuple.push_back(m[i]);
        bool all = true;
        for (int v : s) {
          if (!feasible_for(h, a, r, v, tuple)) {
            all = false;
            break;
          }
        }
        if (all) {
          found = true;
          break;
        }
        int i = k - 2;
        while (i >= 0 && idx[i] == msize - (k - 1) + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k - 1; ++j) idx[j] = idx[j - 1] + 1;
      }
    }

    if (!found) {
      const std::string why = "no (k-1)-tuple of matched edges is feasible for S = " + s.str() +
                              " at |M| = " + std::to_string(m.size()) + " of " + std::to_string(t);
      if (options.enforce_bounds) throw InvariantViolation(why);
      if (options.exact_fallback) {
        SearchOptions so;
        so.node_budget = options.node_budget;
        so.edge_filter = is_pattern;
        auto exact = find_perfect_matching_on(h, u, so);
        if (exact.status == SearchStatus::found) {
          out.success = true;
          out.exact_fallback = true;
          out.matching = std::move(exact.matching);
          return out;
        }
        out.failure = why + "; exact search: " + std::string(status_name(exact.status));
        return out;
      }
      out.failure = why;
      return out;
    }

    // Circulant exchange. Column 0 is S, column c the c-th tuple edge, each
    // listed A-first; row j takes an A-vertex from column c exactly when
    // (j + c) mod k < r, so every row is an A^r B^{k-r} set.
    std::vector<std::vector<int>> cols;
    cols.push_back(a_first(s, a));
    for (int i : idx) cols.push_back(a_first(m[i], a));
    std::vector<VertexSet> rows(k);
    for (int c = 0; c < k; ++c) {
      int next_a = 0, next_b = r;
      for (int j = 0; j < k; ++j) {
        const bool take_a = (j + c) % k < r;
        rows[j].insert(cols[c][take_a ? next_a++ : next_b++]);
      }
    }
    const std::size_t before = m.size();
    std::vector<VertexSet> kept;
    for (int i = 0; i < msize; ++i) {
      if (std::find(idx.begin(), idx.end(), i) == idx.end()) kept.push_back(m[i]);
    }
    for (auto row : rows) {
      if (!h.contains(row) || !is_pattern(row)) {
        throw InvariantViolation("exchange produced a non-edge " + row.str());
      }
      kept.push_back(row);
    }
    m = std::move(kept);
    covered |= s;
    if (m.size() != before + 1) throw InvariantViolation("exchange did not grow the matching by one");
    ++out.exchanges;
  }
  throw InvariantViolation("greedy matching exceeded t rounds");
}

CorollaryResult corollary_good_matcher(const Hypergraph& h, const Partition& p, double alpha,
                                       const GreedyOptions& options) {
  const int k = h.k();
  if (k % 2 != 0) throw PreconditionError("the balanced splitter needs k even");
  if (!p.a_side.disjoint(p.b_side) || !h.vertices().contains(p.a_side | p.b_side)) {
    throw InvalidQuery("partition sides must be disjoint subsets of the vertex set");
  }
  if (p.a_side.size() != p.b_side.size()) throw PreconditionError("needs |A| = |B|");
  const int m = p.n();
  const bool half_odd = (k / 2) % 2 == 1;
  if (m % (half_odd ? k : 2 * k) != 0) {
    throw PreconditionError(half_odd ? "needs k | |A u B|" : "needs 2k | |A u B|");
  }
  if (options.enforce_bounds) {
    const auto g = goodness_within(
        h, p.a_side | p.b_side, [&](VertexSet e) { return is_odd_edge(e, p.a_side); }, alpha);
    if (!g.bad_vertices.empty()) {
      throw PreconditionError("vertices " + g.bad_vertices.str() + " are not alpha-good for the odd sets");
    }
  }

  CorollaryResult out;
  auto take = [&](const GreedyResult& g) {
    out.exact_fallback = out.exact_fallback || g.exact_fallback;
    if (!g.success) {
      out.failure = g.failure;
      return false;
    }
    out.matching.append(g.matching);
    return true;
  };

  if (half_odd) {
    out.branch = 'b';
    out.success = take(greedy_structured_matching(h, p.a_side, p.b_side, k / 2, alpha, options));
    return out;
  }
  out.branch = 'a';
  const auto av = p.a_side.members();
  const auto bv = p.b_side.members();
  const std::size_t a1_size = av.size() / k;
  const std::size_t b1_size = bv.size() / k * (k - 1);
  VertexSet a1, b1;
  for (std::size_t i = 0; i < a1_size; ++i) a1.insert(av[i]);
  for (std::size_t i = 0; i < b1_size; ++i) b1.insert(bv[i]);
  const VertexSet a2 = p.a_side - a1, b2 = p.b_side - b1;
  const double alpha2 = std::ldexp(alpha, k - 1);
  out.success = take(greedy_structured_matching(h, a1, b1, 1, alpha2, options)) &&
                take(greedy_structured_matching(h, a2, b2, k - 1, alpha2, options));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct StepFailure {
  std::string step;
  std::string pattern;
  std::string detail;
};

class ExtremalRun {
 public:
  ExtremalRun(const Hypergraph& h, const MatcherConfig& cfg, MatcherReport& rep)
      : h_(h), cfg_(cfg), rep_(rep), n_(h.n()), k_(h.k()) {}

  void run(Variant variant, const Partition& p);

 private:
  void size(const std::string& name, long long v) { rep_.sizes[name] = v; }
  void log(const std::string& line) { rep_.trace.push_back(line); }

  void check(bool cond, const std::string& what) {
    if (!cond) throw InvariantViolation("matcher bookkeeping: " + what);
  }

  // First edge (lexicographic) inside `allowed` accepted by pred.
  std::optional<VertexSet> find_edge(VertexSet allowed, const std::function<bool(VertexSet)>& pred) {
    std::vector<std::uint32_t> idx;
    kernels::filter_masks(h_.masks(), 0, ~allowed.bits(), idx);
    for (auto i : idx) {
      const VertexSet e = h_.edge(i);
      if (pred(e)) return e;
    }
    return std::nullopt;
  }

  VertexSet require_edge(VertexSet allowed, const std::function<bool(VertexSet)>& pred,
                         const std::string& step, const std::string& pattern) {
    if (auto e = find_edge(allowed, pred)) return *e;
    throw StepFailure{step, pattern, "no edge of this kind inside the live vertex set"};
  }

  void take(VertexSet e, const std::string& why) {
    m_.add(e);
    log(why + " " + e.str());
  }

  // Step 3: cover each bad vertex v outside e0 by an edge of the given side
  // parity avoiding the other bad vertices, earlier picks and e0.
  void cover_bad_vertices(VertexSet a1, bool odd) {
    const VertexSet e0 = rep_.e0.value_or(VertexSet{});
    for (int v : rep_.v0 - e0) {
      if (m_.covered().contains(v)) continue;
      const VertexSet u = ((rep_.v0 - VertexSet{v}) | m_.covered() | e0);
      auto e = claim_edge_avoiding(h_, v, u - VertexSet{v},
                                   [&](VertexSet x) { return is_odd_edge(x, a1) == odd; });
      if (!e) {
        throw StepFailure{"step3", std::string(odd ? "(A1,B1)-odd" : "(A1,B1)-even") +
                                       " edge through " + std::to_string(v) + " avoiding " + u.str(),
                          "no edge found"};
      }
      take(*e, "step3 cover " + std::to_string(v));
    }
  }

  // Step 5: each bad vertex of an unused e0 gets an odd edge e, balanced by
  // an edge with the opposite counts.
  void pair_e0_bad_vertices(VertexSet& a, VertexSet& b) {
    if (!rep_.e0 || e0_used_) return;
    const VertexSet e0 = *rep_.e0;
    for (int v : e0 & rep_.v0) {
      const VertexSet live = (a | b) - m_.covered();
      const VertexSet avoid = (e0 - VertexSet{v}) | m_.covered();
      auto e = claim_edge_avoiding(h_, v, avoid, [&](VertexSet x) {
        return live.contains(x) && is_odd_edge(x, a);
      });
      if (!e) throw StepFailure{"step5", "odd edge through " + std::to_string(v), "no edge found"};
      take(*e, "step5 cover " + std::to_string(v));
      const int r = meet(*e, a);
      const auto f = require_edge(live - e0 - *e, [&](VertexSet x) { return meet(x, a) == k_ - r; },
                                  "step5", pattern_name(k_ - r, k_));
      take(f, "step5 balance");
      a -= *e | f;
      b -= *e | f;
    }
  }

  double sub_alpha(VertexSet domain) const {
    if (domain.empty()) return rep_.eps2;
    return rep_.eps2 * std::pow(static_cast<double>(n_) / domain.size(), k_ - 1);
  }

  GreedyOptions finish_options() const {
    GreedyOptions o;
    o.enforce_bounds = false;
    o.exact_fallback = cfg_.exact_fallback;
    o.node_budget = cfg_.node_budget;
    return o;
  }

  void finish_lemma(VertexSet a, VertexSet b, int r) {
    if ((a | b).empty()) return;
    const auto g = greedy_structured_matching(h_, a, b, r, sub_alpha(a | b), finish_options());
    rep_.exact_fallback_used = rep_.exact_fallback_used || g.exact_fallback;
    if (!g.success) throw StepFailure{"step6", pattern_name(r, k_), g.failure};
    log("step6 " + pattern_name(r, k_) + " on " + std::to_string((a | b).size()) + " vertices, " +
        std::to_string(g.exchanges) + " exchanges" + (g.exact_fallback ? ", exact fallback" : ""));
    m_.append(g.matching);
  }

  void finish_corollary(VertexSet a, VertexSet b) {
    if ((a | b).empty()) return;
    const auto c = corollary_good_matcher(h_, {a, b}, sub_alpha(a | b), finish_options());
    rep_.exact_fallback_used = rep_.exact_fallback_used || c.exact_fallback;
    if (!c.success) {
      throw StepFailure{"step6", c.branch == 'b' ? pattern_name(k_ / 2, k_) : "A^1 B^" + std::to_string(k_ - 1) + " / " + pattern_name(k_ - 1, k_), c.failure};
    }
    log(std::string("step6 balanced split, branch ") + c.branch +
        (c.exact_fallback ? ", exact fallback" : ""));
    m_.append(c.matching);
  }

  void even_k_complement_case(VertexSet a1, VertexSet b1);
  void even_k_odd_case(VertexSet a1, VertexSet b1, bool in_ext);
  void odd_k_case(VertexSet a1, VertexSet b1);

  const Hypergraph& h_;
  const MatcherConfig& cfg_;
  MatcherReport& rep_;
  int n_, k_;
  Matching m_;
  bool e0_used_ = false;

 public:
  const Matching& matching() const { return m_; }
};

void ExtremalRun::run(Variant variant, const Partition& p) {
  // For odd k the odd sets of (A,B) are the even sets of (B,A), so every
  // odd-k instance is handled on the even-intersection side.
  Partition work = p;
  Variant kind = variant;
  if (k_ % 2 == 1 && variant == Variant::b) {
    work = p.swapped();
    kind = Variant::b_bar;
  }
  const Hypergraph reference = build_variant(n_, k_, variant, p.a_side);
  const auto g = goodness(h_, reference, rep_.eps2);
  rep_.missing_reference_edges = g.missing_edges;
  rep_.eps_contained = static_cast<double>(g.missing_edges) <= cfg_.epsilon * std::pow(n_, k_);
  rep_.v0 = g.bad_vertices;
  rep_.bad_count_within_bound = rep_.v0.size() <= rep_.eps1 * n_;

  // Step 1: move every bad vertex to the other side.
  const VertexSet a0 = rep_.v0 & work.a_side, b0 = rep_.v0 & work.b_side;
  const VertexSet a1 = (work.a_side - a0) | b0;
  const VertexSet b1 = h_.vertices() - a1;
  rep_.relocated = {a1, b1};
  size("|V0|", rep_.v0.size());
  size("|A1|", a1.size());
  size("|B1|", b1.size());
  log("step1 |V0|=" + std::to_string(rep_.v0.size()) + " |A1|=" + std::to_string(a1.size()) +
      " |B1|=" + std::to_string(b1.size()));

  if (k_ % 2 == 1) {
    odd_k_case(a1, b1);
  } else if (kind == Variant::b_bar) {
    even_k_complement_case(a1, b1);
  } else {
    even_k_odd_case(a1, b1, in_extremal_family(n_, k_, Variant::b, a1.size()));
  }
}

void ExtremalRun::even_k_complement_case(VertexSet a1, VertexSet b1) {
  // Step 2: with |A1| odd the even sets alone cannot match, so one odd edge
  // is taken first.
  if (a1.size() % 2 == 1) {
    rep_.parity_breaker_needed = true;
    rep_.e0 = require_edge(h_.vertices(), [&](VertexSet e) { return is_odd_edge(e, a1); },
                           "step2", "(A1,B1)-odd edge");
    take(*rep_.e0, "step2 parity breaker");
    e0_used_ = true;
  }
  cover_bad_vertices(a1, false);
  VertexSet a2 = a1 - m_.covered(), b2 = b1 - m_.covered();
  size("|A2|", a2.size());
  size("|B2|", b2.size());
  const int s = a2.size() % k_;
  check(s % 2 == 0, "|A2| mod k is even");
  // Step 4
  if (s != 0) {
    const auto e2 = require_edge(a2 | b2, [&](VertexSet e) { return meet(e, a2) == s; }, "step4",
                                 pattern_name(s, k_));
    take(e2, "step4 remainder");
    a2 -= e2;
    b2 -= e2;
  }
  size("|A3|", a2.size());
  size("|B3|", b2.size());
  check(a2.size() % k_ == 0 && b2.size() % k_ == 0, "|A3| and |B3| divisible by k");
  finish_lemma(a2, VertexSet{}, k_);
  finish_lemma(b2, VertexSet{}, k_);
}

void ExtremalRun::even_k_odd_case(VertexSet a1, VertexSet b1, bool in_ext) {
  // Step 2: an even edge breaks the parity of an odd-only host.
  if (in_ext) {
    rep_.parity_breaker_needed = true;
    rep_.e0 = require_edge(h_.vertices(), [&](VertexSet e) { return !is_odd_edge(e, a1); },
                           "step2", "(A1,B1)-even edge");
    log("step2 parity breaker " + rep_.e0->str());
  }
  cover_bad_vertices(a1, true);
  if (!in_ext) {
    while (m_.size() % 4 != 0) {
      const auto e = require_edge(h_.vertices() - rep_.v0 - m_.covered(),
                                  [&](VertexSet x) { return is_odd_edge(x, a1); }, "step3",
                                  "(A1,B1)-odd padding edge");
      take(e, "step3 padding");
    }
  }
  VertexSet a = a1 - m_.covered(), b = b1 - m_.covered();
  if (a.size() < b.size()) std::swap(a, b);
  const VertexSet e0 = rep_.e0.value_or(VertexSet{});
  size("|A2|", a.size());
  size("|B2|", b.size());
  int d = a.size() - b.size();
  check(d % 2 == 0, "|A2| - |B2| is even");
  const int h2 = k_ / 2;

  auto remove_balancing = [&](int count, int r, const std::string& step) {
    for (int i = 0; i < count; ++i) {
      const VertexSet live = (a | b) - (e0_used_ ? VertexSet{} : e0);
      const auto e = require_edge(live, [&](VertexSet x) { return meet(x, a) == r; }, step,
                                  pattern_name(r, k_));
      take(e, step + " balancing");
      a -= e;
      b -= e;
    }
  };

  if (h2 % 2 == 0) {
    remove_balancing(d / 2, h2 + 1, "step4");
    check(a.size() == b.size(), "|A3| = |B3|");
    const int s = a.size() % k_;
    check(s == 0 || s == h2, "|A3| mod k is 0 or k/2");
    size("|A3|", a.size());
    size("|B3|", b.size());
    if (s == 0) {
      pair_e0_bad_vertices(a, b);  // Case 1a
    } else {
      // Case 1b: e0 joins the matching together with |k/2 - r0| edges that
      // restore |A| = |B|.
      check(rep_.e0.has_value(), "Case 1b has a parity breaker");
      const int r0 = meet(e0, a);
      take(e0, "step4 parity breaker");
      e0_used_ = true;
      a -= e0;
      b -= e0;
      if (r0 <= h2) {
        remove_balancing(h2 - r0, h2 + 1, "step4");
      } else {
        remove_balancing(r0 - h2, h2 - 1, "step4");
      }
    }
    size("|A4|", a.size());
    size("|B4|", b.size());
    check(a.size() == b.size() && a.size() % k_ == 0, "|A4| = |B4| divisible by k");
    finish_corollary(a, b);
    return;
  }

  if (d % 4 == 2) {
    // Case 2b
    check(rep_.e0.has_value(), "Case 2b has a parity breaker");
    take(e0, "step4 parity breaker");
    e0_used_ = true;
    a -= e0;
    b -= e0;
    if (a.size() < b.size()) std::swap(a, b);
    d = a.size() - b.size();
  }
  check(d % 4 == 0, "|A2| - |B2| divisible by 4");
  remove_balancing(d / 4, h2 + 2, "step4");
  check(a.size() == b.size(), "|A3| = |B3|");
  size("|A3|", a.size());
  size("|B3|", b.size());
  pair_e0_bad_vertices(a, b);
  check(a.size() == b.size() && (a.size() + b.size()) % k_ == 0, "|A4| = |B4|, k | |A4 u B4|");
  finish_corollary(a, b);
}

void ExtremalRun::odd_k_case(VertexSet a1, VertexSet b1) {
  if (a1.size() % (k_ - 1) % 2 == 1) {
    rep_.parity_breaker_needed = true;
    rep_.e0 = require_edge(h_.vertices(), [&](VertexSet e) { return is_odd_edge(e, a1); },
                           "step2", "(A1,B1)-odd edge");
    log("step2 parity breaker " + rep_.e0->str());
  }
  cover_bad_vertices(a1, false);
  VertexSet a = a1 - m_.covered(), b = b1 - m_.covered();
  size("|A2|", a.size());
  size("|B2|", b.size());
  int s = a.size() % (k_ - 1);
  if (s % 2 == 1) {
    check(rep_.e0.has_value(), "odd remainder has a parity breaker");
    take(*rep_.e0, "step4 parity breaker");
    e0_used_ = true;
    a -= *rep_.e0;
    b -= *rep_.e0;
    s = a.size() % (k_ - 1);
  }
  check(s % 2 == 0, "remainder mod k-1 is even");
  const auto e2 = require_edge(a | b, [&](VertexSet e) { return meet(e, a) == s; }, "step4",
                               pattern_name(s, k_));
  take(e2, "step4 remainder");
  a -= e2;
  b -= e2;
  size("|A3|", a.size());
  size("|B3|", b.size());
  check(a.size() % (k_ - 1) == 0, "|A3| divisible by k-1");
  const int b31 = a.size() / (k_ - 1);
  if (b31 > b.size()) {
    throw StepFailure{"step6", pattern_name(k_ - 1, k_),
                      "B3 has fewer than |A3|/(k-1) vertices"};
  }
  const auto bv = b.members();
  VertexSet b_first;
  for (int i = 0; i < b31; ++i) b_first.insert(bv[i]);
  const VertexSet b_rest = b - b_first;
  check(b_rest.size() % k_ == 0, "|B3 \\ B3'| divisible by k");
  finish_lemma(a, b_first, k_ - 1);
  finish_lemma(b_rest, VertexSet{}, k_);
}

}  // namespace

MatcherReport extremal_case_matcher(const Hypergraph& h, Variant variant, const Partition& p,
                                    const MatcherConfig& config) {
  if (h.k() < 3) throw InvalidQuery("the near-extremal matcher needs k >= 3");
  if (h.n() % h.k() != 0) throw InvalidQuery("the near-extremal matcher needs k | n");
  if (!p.valid_for(h.n()) || p.a_side.empty() || p.b_side.empty()) {
    throw InvalidQuery("partition must split the vertex set into two nonempty sides");
  }
  MatcherReport rep;
  const double rk = std::sqrt(static_cast<double>(h.k()));
  rep.eps1 = config.eps1.value_or(rk * std::pow(config.epsilon, 2.0 / 3.0));
  rep.eps2 = config.eps2.value_or(rk * std::pow(config.epsilon, 1.0 / 3.0));
  ExtremalRun run(h, config, rep);
  try {
    run.run(variant, p);
  } catch (const StepFailure& f) {
    rep.success = false;
    rep.failed_step = f.step;
    rep.sought_pattern = f.pattern;
    rep.trace.push_back(f.step + " failed: " + f.pattern + " (" + f.detail + ")");
    rep.matching = run.matching();
    return rep;
  }
  rep.matching = run.matching();
  const auto verdict = check_matching(h, rep.matching);
  if (!verdict.ok) throw InvariantViolation("assembled matching is invalid: " + verdict.reason);
  rep.success = true;
  return rep;
}

}  // namespace matchlab
