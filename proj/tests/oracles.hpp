#pragma once

// Independent slow reference implementations used by the tests. They work on
// sorted vectors of vertices rather than masks so they share no code paths
// with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <iterator>
#include <set>
#include <vector>

#include "matchlab/hypergraph.hpp"
#include "matchlab/io.hpp"
#include "matchlab/rng.hpp"

namespace oracle {

using Tuple = std::vector<int>;

inline std::vector<Tuple> tuples(const matchlab::Hypergraph& h) {
  std::vector<Tuple> out;
  for (auto e : h.edges()) out.push_back(e.members());
  return out;
}

/// All r-subsets of `ground` (sorted), lexicographic order.
inline std::vector<Tuple> combinations(const Tuple& ground, int r) {
  std::vector<Tuple> out;
  if (r < 0 || r > static_cast<int>(ground.size())) return out;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  const int m = static_cast<int>(ground.size());
  while (true) {
    Tuple t;
    for (int i : idx) t.push_back(ground[i]);
    out.push_back(t);
    int i = r - 1;
    while (i >= 0 && idx[i] == m - r + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline Tuple iota(int n) {
  Tuple t(n);
  for (int i = 0; i < n; ++i) t[i] = i;
  return t;
}

inline bool subset_of(const Tuple& s, const Tuple& e) {
  return std::includes(e.begin(), e.end(), s.begin(), s.end());
}

inline std::uint64_t degree(const std::vector<Tuple>& edges, const Tuple& s) {
  std::uint64_t d = 0;
  for (const auto& e : edges) d += subset_of(s, e);
  return d;
}

inline std::uint64_t min_degree(const matchlab::Hypergraph& h, int l) {
  const auto edges = tuples(h);
  std::uint64_t best = UINT64_MAX;
  for (const auto& s : combinations(iota(h.n()), l)) best = std::min(best, degree(edges, s));
  return best;
}

inline int meet(const Tuple& e, const std::set<int>& a) {
  int c = 0;
  for (int v : e) c += a.count(v);
  return c;
}

/// Plain recursive perfect-matching existence check.
inline bool has_perfect_matching(int n, int k, const std::vector<Tuple>& edges) {
  if (n % k != 0) return false;
  std::vector<bool> used(n, false);
  std::function<bool()> rec = [&]() -> bool {
    int v = 0;
    while (v < n && used[v]) ++v;
    if (v == n) return true;
    for (const auto& e : edges) {
      if (e[0] != v) continue;  // the smallest uncovered vertex must be covered by e[0]
      bool ok = true;
      for (int u : e) ok = ok && !used[u];
      if (!ok) continue;
      for (int u : e) used[u] = true;
      if (rec()) return true;
      for (int u : e) used[u] = false;
    }
    return false;
  };
  return rec();
}

inline matchlab::Hypergraph random_hypergraph(int n, int k, double p, matchlab::Rng& rng) {
  std::vector<matchlab::VertexSet> edges;
  matchlab::for_each_subset(matchlab::VertexSet::prefix(n), k, [&](matchlab::VertexSet s) {
    if (rng.bernoulli(p)) edges.push_back(s);
  });
  return matchlab::Hypergraph(n, k, std::move(edges));
}

inline matchlab::VertexSet random_subset(int n, int size, matchlab::Rng& rng) {
  std::vector<int> v = iota(n);
  for (int i = n - 1; i > 0; --i) std::swap(v[i], v[rng.below(i + 1)]);
  matchlab::VertexSet s;
  for (int i = 0; i < size; ++i) s.insert(v[i]);
  return s;
}

/// m is a set of host edges covering each of 0..n-1 exactly once.
inline bool is_perfect_matching(int n, const std::vector<Tuple>& host, const std::vector<Tuple>& m) {
  const std::set<Tuple> edges(host.begin(), host.end());
  std::vector<int> hits(n, 0);
  for (const auto& e : m) {
    if (!edges.count(e)) return false;
    for (int v : e) {
      if (v < 0 || v >= n) return false;
      ++hits[v];
    }
  }
  return std::all_of(hits.begin(), hits.end(), [](int c) { return c == 1; });
}

/// Toggles `count` distinct uniformly random k-sets.
inline matchlab::Hypergraph flip_random(const matchlab::Hypergraph& h, int count, matchlab::Rng& rng) {
  std::set<std::uint64_t> picked;
  while (static_cast<int>(picked.size()) < count) {
    picked.insert(random_subset(h.n(), h.k(), rng).bits());
  }
  std::vector<matchlab::VertexSet> add, remove;
  for (auto m : picked) {
    const matchlab::VertexSet e(m);
    (h.contains(e) ? remove : add).push_back(e);
  }
  return h.modified(add, remove);
}

inline Tuple minus(const Tuple& a, const Tuple& b) {
  Tuple out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Tuple unite(const Tuple& a, const Tuple& b) {
  Tuple out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Ordered sequences of `count` pairwise disjoint r-subsets of 0..n-1.
inline void for_each_sequence(int n, int r, int count,
                              const std::function<void(const std::vector<Tuple>&)>& fn) {
  std::vector<Tuple> seq;
  std::function<void(const Tuple&)> rec = [&](const Tuple& left) {
    if (static_cast<int>(seq.size()) == count) {
      fn(seq);
      return;
    }
    for (const auto& p : combinations(left, r)) {
      seq.push_back(p);
      rec(minus(left, p));
      seq.pop_back();
    }
  };
  rec(iota(n));
}

inline bool red_union(const matchlab::TwoColoring& c, const Tuple& a, const Tuple& b) {
  const Tuple u = unite(a, b);
  // Colex rank computed directly: sum of C(v_i, i + 1).
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto v = static_cast<std::uint64_t>(u[i]);
    if (v <= i) continue;
    std::uint64_t binom = 1;
    for (std::uint64_t j = 0; j <= i; ++j) binom = binom * (v - j) / (j + 1);
    rank += binom;
  }
  return c.red[rank];
}

struct Census {
  std::uint64_t red_triangles = 0;
  std::uint64_t blue_triangles = 0;
  std::uint64_t bad_sets = 0;
  std::uint64_t bad_witnesses = 0;
};

/// Monochromatic expanded triangles and bad expanded 4-cycles, counted over
/// ordered sequences and divided by their symmetries.
inline Census census(const matchlab::TwoColoring& c) {
  Census out;
  for_each_sequence(c.n, c.r, 3, [&](const std::vector<Tuple>& s) {
    const int red = red_union(c, s[0], s[1]) + red_union(c, s[1], s[2]) + red_union(c, s[0], s[2]);
    out.red_triangles += red == 3;
    out.blue_triangles += red == 0;
  });
  out.red_triangles /= 6;
  out.blue_triangles /= 6;
  std::set<Tuple> bad;
  for_each_sequence(c.n, c.r, 4, [&](const std::vector<Tuple>& s) {
    const int red = red_union(c, s[0], s[1]) + red_union(c, s[1], s[2]) + red_union(c, s[2], s[3]) +
                    red_union(c, s[3], s[0]);
    if (red != 1 && red != 3) return;
    ++out.bad_witnesses;
    bad.insert(unite(unite(s[0], s[1]), unite(s[2], s[3])));
  });
  out.bad_witnesses /= 8;  // rotations and reflections
  out.bad_sets = bad.size();
  return out;
}

}  // namespace oracle
