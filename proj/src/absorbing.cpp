#include "matchlab/absorbing.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "matchlab/kernels.hpp"
#include "matchlab/parallel.hpp"
#include "matchlab/rng.hpp"

namespace matchlab {

namespace {

constexpr double kCensusGuard = 2e8;

void require_even_k(const Hypergraph& h) {
  if (h.k() % 2 != 0) throw InvalidQuery("needs even uniformity");
}

// r-sets z disjoint from x (and from `avoid`) with x u z an edge.
std::vector<VertexSet> link(const Hypergraph& h, VertexSet x, int r, VertexSet avoid) {
  std::vector<VertexSet> out;
  for_each_subset(h.vertices() - x - avoid, r, [&](VertexSet z) {
    if (h.contains(x | z)) out.push_back(z);
  });
  return out;
}

// Splits of q into r-sets {x, y}, each unordered split once.
template <class Fn>
void for_each_split(VertexSet q, int r, Fn&& fn) {
  const int lo = q.min();
  for_each_subset(q - VertexSet{lo}, r - 1, [&](VertexSet rest) {
    const VertexSet x = rest | VertexSet{lo};
    fn(x, q - x);
  });
}

std::vector<VertexSet> sorted_lex(const std::set<std::uint64_t>& masks) {
  std::vector<VertexSet> out;
  for (auto m : masks) out.push_back(VertexSet(m));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

}  // namespace

AbsorbingVerdict is_absorbing(const Hypergraph& h, VertexSet s, VertexSet q,
                              std::uint64_t node_budget) {
  const int k = h.k();
  if (!s.disjoint(q)) throw InvalidQuery("S and Q must be disjoint");
  if (!h.vertices().contains(s | q)) throw InvalidQuery("S or Q outside the vertex set");
  if (s.size() % k != 0 || (s | q).size() % k != 0) {
    throw InvalidQuery("k must divide |S| and |S u Q|");
  }
  AbsorbingVerdict v;
  v.nonstandard_size = s.size() != k && s.size() != 2 * k;
  SearchOptions so;
  so.node_budget = node_budget;
  auto inner = find_perfect_matching_on(h, s, so);
  if (inner.status == SearchStatus::none) {
    v.status = SearchStatus::none;
    return v;
  }
  auto outer = find_perfect_matching_on(h, s | q, so);
  if (outer.status == SearchStatus::none) {
    v.status = SearchStatus::none;
  } else if (inner.status == SearchStatus::undecided || outer.status == SearchStatus::undecided) {
    v.status = SearchStatus::undecided;
  } else {
    v.status = SearchStatus::found;
    v.certificate = AbsorbingCertificate{q, s, std::move(inner.matching), std::move(outer.matching)};
  }
  return v;
}

Enumeration enumerate_absorbing_2r(const Hypergraph& h, VertexSet q) {
  require_even_k(h);
  const int r = h.k() / 2;
  if (q.size() != h.k()) throw InvalidQuery("Q must be a k-set");
  std::set<std::uint64_t> found;
  for_each_split(q, r, [&](VertexSet x, VertexSet y) {
    for (auto xp : link(h, x, r, q)) {
      for (auto yp : link(h, y, r, q | xp)) {
        if (h.contains(xp | yp)) found.insert((xp | yp).bits());
      }
    }
  });
  return {sorted_lex(found), false};
}

Enumeration enumerate_absorbing_4r(const Hypergraph& h, VertexSet q, std::size_t limit) {
  require_even_k(h);
  const int r = h.k() / 2;
  if (q.size() != h.k()) throw InvalidQuery("Q must be a k-set");
  std::set<std::uint64_t> found;
  bool truncated = false;
  for_each_split(q, r, [&](VertexSet x, VertexSet y) {
    if (truncated) return;
    for (auto xp : link(h, x, r, q)) {
      for (auto yp : link(h, y, r, q | xp)) {
        for (auto wp : link(h, xp, r, q | yp)) {
          const VertexSet used = q | xp | yp | wp;
          for (auto zp : link(h, yp, r, used)) {
            if (!h.contains(wp | zp)) continue;
            if (found.size() >= limit) {
              if (!found.count((used | zp).bits())) {
                truncated = true;
                return;
              }
              continue;
            }
            found.insert((xp | yp | wp | zp).bits());
          }
        }
      }
    }
  });
  return {sorted_lex(found), truncated};
}

// ---------------------------------------------------------------------------

Matching AbsorbingFamily::matching() const {
  Matching m;
  for (const auto& part : inner) m.append(part);
  return m;
}

AbsorbingFamily validate_family(const Hypergraph& h, const std::vector<VertexSet>& candidates,
                                double xi, std::uint64_t seed, const FamilyOptions& options) {
  const int n = h.n(), k = h.k();
  if (n % k != 0) throw InvalidQuery("absorbing family needs k | n");
  AbsorbingFamily fam;
  fam.xi = xi;
  fam.seed = seed;
  auto& st = fam.stats;
  st.sampled = candidates.size();
  st.size_bound = xi * n / k;
  st.hit_bound = xi * xi * n / k;

  // Q sets to validate against.
  const std::uint64_t total_q = binom(n, k);
  if (total_q <= options.exhaustive_q_limit) {
    st.exhaustive_q = true;
    for_each_subset(h.vertices(), k, [&](VertexSet q) { st.q_sets.push_back(q); });
  } else {
    Rng rng = Rng(seed).split(1);
    std::set<std::uint64_t> picked;
    while (picked.size() < std::min<std::uint64_t>(options.sampled_q, total_q)) {
      picked.insert(colex_unrank(rng.below(total_q), k).bits());
    }
    for (auto m : picked) st.q_sets.push_back(VertexSet(m));
  }
  st.validated_q = st.q_sets.size();

  // absorbs[i][j]: candidate i absorbs Q j.
  std::vector<std::vector<bool>> absorbs(candidates.size());
  std::vector<std::optional<Matching>> inner(candidates.size());
  SearchOptions so;
  so.node_budget = options.node_budget;
  parallel_for(candidates.size(), [&](std::size_t i) {
    const VertexSet s = candidates[i];
    absorbs[i].assign(st.q_sets.size(), false);
    auto in = find_perfect_matching_on(h, s, so);
    if (in.status != SearchStatus::found) return;
    inner[i] = std::move(in.matching);
    for (std::size_t j = 0; j < st.q_sets.size(); ++j) {
      const VertexSet q = st.q_sets[j];
      if (!q.disjoint(s)) continue;
      absorbs[i][j] = find_perfect_matching_on(h, s | q, so).status == SearchStatus::found;
    }
  });

  std::vector<std::size_t> absorbing;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (inner[i] && std::find(absorbs[i].begin(), absorbs[i].end(), true) != absorbs[i].end()) {
      absorbing.push_back(i);
    }
  }
  st.absorbing = absorbing.size();
  for (std::size_t x = 0; x < absorbing.size(); ++x) {
    for (std::size_t y = x + 1; y < absorbing.size(); ++y) {
      st.intersecting_pairs += !candidates[absorbing[x]].disjoint(candidates[absorbing[y]]);
    }
  }
  std::vector<std::size_t> kept;
  VertexSet used;
  for (auto i : absorbing) {
    if (!used.disjoint(candidates[i])) continue;
    used |= candidates[i];
    kept.push_back(i);
    fam.members.push_back(candidates[i]);
    fam.inner.push_back(*inner[i]);
  }
  st.kept = kept.size();

  st.hits.assign(st.q_sets.size(), 0);
  for (std::size_t j = 0; j < st.q_sets.size(); ++j) {
    for (auto i : kept) st.hits[j] += absorbs[i][j];
  }
  st.min_hits = st.hits.empty() ? 0 : *std::min_element(st.hits.begin(), st.hits.end());

  fam.ok = true;
  if (static_cast<double>(st.kept) > st.size_bound) {
    fam.ok = false;
    fam.failure = "|F'| = " + std::to_string(st.kept) + " exceeds xi n / k";
  } else if (!(static_cast<double>(st.min_hits) > st.hit_bound)) {
    fam.ok = false;
    fam.failure = "some Q is absorbed by " + std::to_string(st.min_hits) +
                  " members, not more than xi^2 n / k";
  }
  return fam;
}

AbsorbingFamily build_absorbing_family(const Hypergraph& h, double xi, std::uint64_t seed,
                                       const FamilyOptions& options) {
  const int n = h.n(), k = h.k();
  if (n % k != 0) throw InvalidQuery("absorbing family needs k | n");
  if (xi < 0) throw InvalidQuery("xi must be nonnegative");
  const std::uint64_t pool = binom(n, 2 * k);
  const double p = xi / std::pow(static_cast<double>(n), 2 * k - 1);
  Rng rng(seed);
  std::uint64_t count = 0;
  if (pool > 0 && p > 0) {
    std::binomial_distribution<std::uint64_t> dist(pool, std::min(1.0, p));
    count = dist(rng);
  }
  std::set<std::uint64_t> ranks;
  while (ranks.size() < count) ranks.insert(rng.below(pool));
  std::vector<VertexSet> candidates;
  for (auto rank : ranks) candidates.push_back(colex_unrank(rank, 2 * k));
  std::sort(candidates.begin(), candidates.end(), lex_less);

  auto fam = validate_family(h, candidates, xi, seed, options);
  auto& st = fam.stats;
  st.p = p;
  st.expected_size = p * static_cast<double>(pool);
  st.expected_size_bound = xi * n / std::tgamma(2 * k + 1);
  st.concentration_ok = static_cast<double>(st.sampled) <= 2 * st.expected_size;
  return fam;
}

AbsorbResult absorb(const Hypergraph& h, const AbsorbingFamily& family, const Matching& m,
                    VertexSet w) {
  const int k = h.k();
  if (w.size() % k != 0) throw PreconditionError("k must divide |W|");
  if (static_cast<double>(w.size()) > family.xi * family.xi * h.n()) {
    throw PreconditionError("|W| exceeds xi^2 n");
  }
  if (!w.disjoint(m.covered())) throw InvalidQuery("W meets the matching");
  for (auto s : family.members) {
    VertexSet inside;
    for (auto e : m.edges()) {
      if (s.contains(e)) inside |= e;
    }
    if (inside != s) throw InvalidQuery("matching does not cover family member " + s.str() + " by its own edges");
  }

  AbsorbResult out;
  std::vector<bool> used(family.members.size(), false);
  std::vector<Matching> replacements;
  const auto wv = w.members();
  for (std::size_t at = 0; at < wv.size(); at += k) {
    VertexSet q;
    for (int i = 0; i < k; ++i) q.insert(wv[at + i]);
    bool placed = false;
    for (std::size_t i = 0; i < family.members.size() && !placed; ++i) {
      if (used[i]) continue;
      auto v = is_absorbing(h, family.members[i], q);
      if (v.status != SearchStatus::found) continue;
      used[i] = true;
      replacements.push_back(std::move(v.certificate->m_outer));
      placed = true;
    }
    if (!placed) {
      out.starved = q;
      return out;
    }
  }
  VertexSet swapped;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (used[i]) swapped |= family.members[i];
  }
  for (auto e : m.edges()) {
    if (!swapped.contains(e)) out.matching.add(e);
  }
  for (const auto& r : replacements) out.matching.append(r);
  const auto verdict = check_matching(h, out.matching, m.covered() | w);
  if (!verdict.ok) throw InvariantViolation("absorbed matching is invalid: " + verdict.reason);
  out.ok = true;
  return out;
}

// ---------------------------------------------------------------------------

DenseGraph::DenseGraph(std::size_t n) : n_(n), words_((n + 63) / 64), rows_(n * words_, 0) {}

void DenseGraph::add_edge(std::size_t u, std::size_t v) {
  if (u == v || u >= n_ || v >= n_) throw InvalidQuery("bad graph edge");
  rows_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  rows_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
}

std::size_t DenseGraph::degree(std::size_t u) const {
  std::size_t d = 0;
  for (auto word : row(u)) d += std::popcount(word);
  return d;
}

std::size_t DenseGraph::common_neighbours(std::size_t u, std::size_t v) const {
  return kernels::and_popcount(row(u), row(v));
}

std::size_t DenseGraph::edge_count() const {
  std::size_t total = 0;
  for (std::size_t u = 0; u < n_; ++u) total += degree(u);
  return total / 2;
}

DenseGraph DenseGraph::complement() const {
  DenseGraph c(n_);
  for (std::size_t u = 0; u < n_; ++u) {
    for (std::size_t v = u + 1; v < n_; ++v) {
      if (!adjacent(u, v)) c.add_edge(u, v);
    }
  }
  return c;
}

AuxGraph build_aux_graph(const Hypergraph& h) {
  require_even_k(h);
  AuxGraph g;
  g.n = h.n();
  g.half = h.k() / 2;
  const double size = binom_estimate(h.n(), g.half);
  if (size > 30000) throw ResourceGuard("link graph too large", size);
  const std::size_t count = binom(h.n(), g.half);
  g.labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) g.labels.push_back(colex_unrank(i, g.half));
  g.graph = DenseGraph(count);
  for (auto m : h.masks()) {
    const VertexSet e(m);
    const int lo = e.min();
    for_each_subset(e - VertexSet{lo}, g.half - 1, [&](VertexSet rest) {
      const VertexSet x = rest | VertexSet{lo};
      g.graph.add_edge(colex_rank(x), colex_rank(e - x));
    });
  }
  return g;
}

CaseReport case_ab_detector(const DenseGraph& g, double gamma) {
  CaseReport rep;
  rep.gamma = gamma;
  const std::size_t n = g.size();
  rep.size = n;
  const double common_min = gamma * n;
  const double many = (0.5 + gamma) * n;
  rep.good_counts.assign(n, 0);
  parallel_for(n, [&](std::size_t a) {
    std::size_t c = 0;
    for (std::size_t b = 0; b < n; ++b) {
      c += static_cast<double>(g.common_neighbours(a, b)) >= common_min;
    }
    rep.good_counts[a] = c;
  });
  rep.case_a = n > 0;
  for (std::size_t a = 0; a < n; ++a) {
    rep.heavy += static_cast<double>(g.degree(a)) >= many;
    if (static_cast<double>(rep.good_counts[a]) < many) rep.case_a = false;
    if (!rep.witness && static_cast<double>(rep.good_counts[a]) <= many) rep.witness = a;
  }
  rep.case_b = static_cast<double>(rep.heavy) >= 2 * gamma * n;
  return rep;
}

CaseReport case_ab_detector(const Hypergraph& h, double gamma) {
  return case_ab_detector(build_aux_graph(h).graph, gamma);
}

std::uint64_t bipartite_distance(const DenseGraph& g, const std::vector<bool>& in_v1, bool complement) {
  const std::size_t n = g.size();
  if (in_v1.size() != n) throw InvalidQuery("side vector has the wrong length");
  std::vector<std::uint64_t> v1(g.words(), 0);
  std::uint64_t s1 = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (in_v1[v]) {
      v1[v / 64] |= std::uint64_t{1} << (v % 64);
      ++s1;
    }
  }
  const std::uint64_t s2 = n - s1;
  std::uint64_t twice_e1 = 0, twice_e2 = 0, cross = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const std::uint64_t to_v1 = kernels::and_popcount(g.row(u), v1);
    const std::uint64_t to_v2 = g.degree(u) - to_v1;
    if (in_v1[u]) {
      twice_e1 += to_v1;
      cross += to_v2;
    } else {
      twice_e2 += to_v2;
    }
  }
  const std::uint64_t e1 = twice_e1 / 2, e2 = twice_e2 / 2;
  if (!complement) return e1 + e2 + (s1 * s2 - cross);
  return cross + (s1 * (s1 - 1) / 2 - e1) + (s2 * (s2 - 1) / 2 - e2);
}

ExtractResult bipartite_extract(const DenseGraph& g, double gamma, bool force) {
  ExtractResult out;
  const std::size_t n = g.size();
  if (n % 2 != 0) throw InvalidQuery("needs an even number of vertices");
  const auto rep = case_ab_detector(g, gamma);
  if (!rep.witness) {
    out.reason = "no vertex a has at most (1/2 + gamma) N vertices b with |N(a) n N(b)| >= gamma N";
    return out;
  }
  if (!force && rep.case_b) {
    out.reason = "at least 2 gamma N vertices have degree >= (1/2 + gamma) N";
    return out;
  }
  out.applicable = true;
  const std::size_t a = *rep.witness;
  out.witness = a;
  std::vector<bool> in_a(n), in_b(n);
  std::vector<std::uint64_t> a_mask(g.words(), 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (g.adjacent(a, v)) {
      in_a[v] = true;
      a_mask[v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }
  std::size_t outside = 0;
  for (std::size_t v = 0; v < n; ++v) {
    in_b[v] = static_cast<double>(kernels::and_popcount(g.row(v), a_mask)) < gamma * n;
    outside += !in_a[v] && !in_b[v];
  }

  // Vertices in order of preference for V1.
  auto pick = [&](std::initializer_list<std::function<bool(std::size_t)>> tiers) {
    std::vector<bool> v1(n, false);
    std::size_t taken = 0;
    for (const auto& tier : tiers) {
      for (std::size_t v = 0; v < n && taken < n / 2; ++v) {
        if (!v1[v] && tier(v)) {
          v1[v] = true;
          ++taken;
        }
      }
    }
    return v1;
  };
  auto a_only = [&](std::size_t v) { return in_a[v] && !in_b[v]; };
  auto a_and_b = [&](std::size_t v) { return in_a[v] && in_b[v]; };
  auto b_only = [&](std::size_t v) { return !in_a[v] && in_b[v]; };
  auto neither = [&](std::size_t v) { return !in_a[v] && !in_b[v]; };

  if (static_cast<double>(outside) <= std::pow(gamma, 0.25) * n) {
    // A and B nearly cover V: G is close to two cliques on V1 ~ A and V2 ~ B.
    out.branch = "complement";
    out.in_v1 = pick({a_only, a_and_b, neither, b_only});
  } else {
    // B nearly equals A: G is close to K_{V1,V2} with V1 ~ A.
    out.branch = "bipartite";
    out.in_v1 = pick({a_only, a_and_b, b_only, neither});
  }
  out.distance = bipartite_distance(g, out.in_v1, out.branch == "complement");
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_coloring(const TwoColoring& c) {
  if (c.r < 1 || c.n < 0 || c.n > kMaxVertices) throw InvalidQuery("colouring parameters out of range");
  if (c.red.size() != binom(c.n, 2 * c.r)) throw InvalidQuery("colouring does not cover every 2r-set");
}

std::vector<VertexSet> subsets(int n, int size, double guard_factor) {
  const double estimate = binom_estimate(n, size) * guard_factor;
  if (estimate > kCensusGuard) throw ResourceGuard("census enumeration too large", estimate);
  std::vector<VertexSet> out;
  for_each_subset(VertexSet::prefix(n), size, [&](VertexSet s) { out.push_back(s); });
  return out;
}

// Blocks P containing min(s) with |P| = r.
template <class Fn>
void for_each_anchored(VertexSet s, int r, Fn&& fn) {
  const int lo = s.min();
  for_each_subset(s - VertexSet{lo}, r - 1, [&](VertexSet rest) { fn(rest | VertexSet{lo}); });
}

// Calls fn(p1, p2, p3, p4) for every expanded 4-cycle on s, once each.
template <class Fn>
void for_each_cycle(VertexSet s, int r, Fn&& fn) {
  for_each_anchored(s, r, [&](VertexSet p1) {
    const VertexSet r1 = s - p1;
    for_each_anchored(r1, r, [&](VertexSet x) {
      const VertexSet r2 = r1 - x;
      for_each_anchored(r2, r, [&](VertexSet y) {
        const VertexSet z = r2 - y;
        fn(p1, y, x, z);  // x opposite p1
        fn(p1, x, y, z);  // y opposite p1
        fn(p1, x, z, y);  // z opposite p1
      });
    });
  });
}

}  // namespace

C3Census c3_census(const TwoColoring& c) {
  check_coloring(c);
  const int r = c.r;
  const auto sets = subsets(c.n, 3 * r, static_cast<double>(binom(3 * r, r)) * binom(2 * r, r));
  std::vector<C3Census> part(sets.size());
  parallel_for(sets.size(), [&](std::size_t i) {
    const VertexSet t = sets[i];
    for_each_anchored(t, r, [&](VertexSet a) {
      const VertexSet rest = t - a;
      for_each_anchored(rest, r, [&](VertexSet b) {
        const VertexSet cc = rest - b;
        const int reds = c.is_red(a | b) + c.is_red(b | cc) + c.is_red(a | cc);
        if (reds == 3) ++part[i].red;
        if (reds == 0) ++part[i].blue;
      });
    });
  });
  C3Census total;
  for (const auto& p : part) {
    total.red += p.red;
    total.blue += p.blue;
  }
  return total;
}

C4Census bad_c4_census(const TwoColoring& c) {
  check_coloring(c);
  const int r = c.r;
  const double per_set = static_cast<double>(binom(4 * r, r)) * binom(3 * r, r) * binom(2 * r, r);
  const auto sets = subsets(c.n, 4 * r, per_set);
  std::vector<C4Census> part(sets.size());
  parallel_for(sets.size(), [&](std::size_t i) {
    for_each_cycle(sets[i], r, [&](VertexSet p1, VertexSet p2, VertexSet p3, VertexSet p4) {
      const int reds = c.is_red(p1 | p2) + c.is_red(p2 | p3) + c.is_red(p3 | p4) + c.is_red(p4 | p1);
      if (reds == 1 || reds == 3) ++part[i].bad_witnesses;
    });
    part[i].bad_sets = part[i].bad_witnesses > 0;
  });
  C4Census total;
  for (const auto& p : part) {
    total.bad_sets += p.bad_sets;
    total.bad_witnesses += p.bad_witnesses;
  }
  return total;
}

TwoColoring encode_h_as_coloring(const Hypergraph& h, const std::vector<bool>& red_side) {
  if (h.k() % 4 != 0) throw InvalidQuery("encoding needs k divisible by 4");
  if (red_side.size() != binom(h.n(), h.k() / 2)) {
    throw InvalidQuery("the side vector must cover every (k/2)-set");
  }
  return TwoColoring{h.n(), h.k() / 4, red_side};
}

EncodeCheck encode_check(const Hypergraph& h, const TwoColoring& c) {
  check_coloring(c);
  if (c.n != h.n() || 4 * c.r != h.k()) throw InvalidQuery("colouring does not match the hypergraph");
  const auto aux = build_aux_graph(h);
  const auto& g = aux.graph;
  const std::size_t count = g.size();

  EncodeCheck out;
  std::vector<std::uint64_t> red_mask(g.words(), 0);
  std::uint64_t reds = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (c.red[i]) {
      red_mask[i / 64] |= std::uint64_t{1} << (i % 64);
      ++reds;
    }
  }
  std::uint64_t twice_rr = 0, twice_bb = 0, rb = 0;
  for (std::size_t u = 0; u < count; ++u) {
    const std::uint64_t to_red = kernels::and_popcount(g.row(u), red_mask);
    if (c.red[u]) {
      twice_rr += to_red;
      rb += g.degree(u) - to_red;
    } else {
      twice_bb += g.degree(u) - to_red;
    }
  }
  out.symmetric_difference = reds * (count - reds) - rb + twice_rr / 2 + twice_bb / 2;

  auto in_diff = [&](VertexSet p, VertexSet q) {
    const bool edge = g.adjacent(colex_rank(p), colex_rank(q));
    return edge != (c.is_red(p) != c.is_red(q));
  };
  const int r = c.r;
  const double per_set = static_cast<double>(binom(4 * r, r)) * binom(3 * r, r) * binom(2 * r, r);
  const auto sets = subsets(c.n, 4 * r, per_set);
  std::vector<std::uint8_t> bad(sets.size(), 0), mapped(sets.size(), 0);
  parallel_for(sets.size(), [&](std::size_t i) {
    for_each_cycle(sets[i], r, [&](VertexSet p1, VertexSet p2, VertexSet p3, VertexSet p4) {
      const VertexSet u12 = p1 | p2, u23 = p2 | p3, u34 = p3 | p4, u41 = p4 | p1;
      const int red = c.is_red(u12) + c.is_red(u23) + c.is_red(u34) + c.is_red(u41);
      if (red != 1 && red != 3) return;
      bad[i] = 1;
      if (in_diff(u12, u34) || in_diff(u23, u41)) mapped[i] = 1;
    });
  });
  for (std::size_t i = 0; i < sets.size(); ++i) {
    out.bad_sets += bad[i];
    out.unmapped += bad[i] && !mapped[i];
  }
  return out;
}

}  // namespace matchlab
