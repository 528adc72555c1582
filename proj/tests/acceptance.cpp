// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --criterion N   run criterion N only
//
// Exit status is nonzero when any selected criterion fails.

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "matchlab/absorbing.hpp"
#include "matchlab/constructions.hpp"
#include "matchlab/degrees.hpp"
#include "matchlab/solver.hpp"
#include "oracles.hpp"

using namespace matchlab;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  void (*run)(Verdict&);
};

std::vector<oracle::Tuple> edge_tuples(const Matching& m) {
  std::vector<oracle::Tuple> out;
  for (auto e : m.edges()) out.push_back(e.members());
  return out;
}

bool oracle_perfect(const Hypergraph& h, const Matching& m) {
  return oracle::is_perfect_matching(h.n(), oracle::tuples(h), edge_tuples(m));
}

std::string describe(const MatcherReport& rep) {
  std::ostringstream s;
  s << "failed at " << rep.failed_step << " seeking " << rep.sought_pattern << " with";
  for (const auto& [name, size] : rep.sizes) s << " " << name << "=" << size;
  return s.str();
}

// ---------------------------------------------------------------------------

// Pair degrees of the two constructions against their closed forms.
void c1(Verdict& v) {
  std::uint64_t pairs = 0, instances = 0;
  for (int n = 12; n <= 28; n += 4) {
    for (int t = -(n / 2 - 1); t <= n / 2 - 1; ++t) {
      const auto f = b4_pair_degrees(n, t);
      for (Variant var : {Variant::b, Variant::b_bar}) {
        const auto [h, p] = build_bt(n, 4, t, var);
        ++instances;
        // Count pair degrees straight from the edge list.
        std::map<std::pair<int, int>, std::int64_t> deg;
        for (auto e : h.edges()) {
          const auto vs = e.members();
          for (std::size_t i = 0; i < vs.size(); ++i) {
            for (std::size_t j = i + 1; j < vs.size(); ++j) ++deg[{vs[i], vs[j]}];
          }
        }
        for (int x = 0; x < n; ++x) {
          for (int y = x + 1; y < n; ++y) {
            const int in_a = p.a_side.contains(x) + p.a_side.contains(y);
            std::int64_t want;
            if (var == Variant::b) {
              want = in_a == 2 ? f.b_aa : in_a == 0 ? f.b_bb : f.b_ab;
            } else {
              want = in_a == 2 ? f.bbar_aa : in_a == 0 ? f.bbar_bb : f.bbar_ab;
            }
            ++pairs;
            if (deg[{x, y}] != want) {
              v.fail("n=" + std::to_string(n) + " t=" + std::to_string(t) + " " +
                     std::string(variant_name(var)) + " pair {" + std::to_string(x) + "," + std::to_string(y) +
                     "}: counted " + std::to_string(deg[{x, y}]) + ", formula " + std::to_string(want));
              return;
            }
          }
        }
      }
    }
  }
  v.detail << instances << " constructions, " << pairs << " pairs, all equal to the closed forms";
}

// Threshold at n = 28 and the closed-form bound below it.
void c2(Verdict& v) {
  const auto rep = delta_threshold_bruteforce(28, 4, 2);
  const auto [h, p] = build_bt(28, 4, 3, Variant::b_bar);
  const auto direct = min_degree(h, 2);
  const auto bound = delta_n42_closed_form(28);
  v.detail << "n=28: brute force " << rep.value << " (" << rep.argmax.label() << "), min pair degree of Bbar(3) "
           << direct << ", closed form floor " << bound.floor << (bound.exact ? " exact" : " inexact");
  if (rep.value != 160 || direct != 160 || bound.floor != 160 || !bound.exact) v.fail(v.detail.str());
  for (int n : {12, 16, 20, 24}) {
    const auto r = delta_threshold_bruteforce(n, 4, 2);
    const auto b = delta_n42_closed_form(n);
    v.detail << "; n=" << n << ": " << r.value << " <= " << b.floor;
    if (static_cast<std::int64_t>(r.value) > b.floor) {
      v.fail("n=" + std::to_string(n) + ": brute force " + std::to_string(r.value) + " exceeds bound " +
             std::to_string(b.floor));
    }
  }
}

// Codegree formula against brute force over the family.
void c3(Verdict& v) {
  const std::vector<std::pair<int, int>> cases{{8, 4}, {12, 4}, {16, 4}, {12, 3}, {15, 3}, {12, 6}};
  for (auto [n, k] : cases) {
    const auto formula = codegree_threshold(n, k);
    const auto brute = delta_threshold_bruteforce(n, k, k - 1).value;
    v.detail << (v.detail.tellp() > 0 ? ", " : "") << "(" << n << "," << k << "): " << brute;
    if (formula != Rational(static_cast<std::int64_t>(brute))) {
      std::ostringstream s;
      s << "(" << n << "," << k << "): formula " << formula << " vs brute force " << brute;
      v.fail(s.str());
    }
  }
}

// Every family member is certified and exhaustively unmatchable.
void c4(Verdict& v) {
  int members = 0;
  std::uint64_t nodes = 0;
  for (int n : {8, 12}) {
    for (const auto& [spec, h] : extremal_family(n, 4)) {
      ++members;
      const auto cert = parity_certificate(h, spec.partition());
      if (!cert || !validate_certificate(h, *cert)) v.fail(spec.label() + " at n=" + std::to_string(n) + ": no valid certificate");
      SearchOptions so;
      so.node_budget = 2'000'000'000;
      const auto res = find_perfect_matching(h, so);
      nodes += res.nodes;
      if (res.status != SearchStatus::none) {
        v.fail(spec.label() + " at n=" + std::to_string(n) + ": search returned " + std::string(status_name(res.status)));
      }
    }
  }
  if (v.pass) v.detail << members << " members certified, exhaustive search found none (" << nodes << " nodes)";
}

std::vector<VertexSet> edges_through(int n, int k, int v, const std::function<bool(VertexSet)>& pred) {
  std::vector<VertexSet> out;
  for_each_subset(VertexSet::prefix(n), k, [&](VertexSet e) {
    if (e.contains(v) && pred(e)) out.push_back(e);
  });
  return out;
}

Hypergraph with_edges(const Hypergraph& h, const std::vector<VertexSet>& extra) {
  std::vector<VertexSet> add;
  for (auto e : extra) {
    if (!h.contains(e)) add.push_back(e);
  }
  return h.modified(add, {});
}

// Constructive matcher on exact, repaired and perturbed instances.
void c5(Verdict& v) {
  auto run = [&](const std::string& name, const Hypergraph& h, Variant var, const Partition& p,
                 const MatcherConfig& cfg) {
    const auto rep = extremal_case_matcher(h, var, p, cfg);
    if (!rep.success) {
      v.fail(name + ": " + describe(rep));
      return false;
    }
    if (!check_matching(h, rep.matching).ok || !oracle_perfect(h, rep.matching)) {
      v.fail(name + ": output is not a perfect matching");
      return false;
    }
    return true;
  };

  const auto [exact, p16] = build_bt(16, 4, 0, Variant::b_bar);
  run("exact Bbar(16,4) |A|=8", exact, Variant::b_bar, p16, {});

  const VertexSet a = VertexSet::prefix(5);
  const auto breaker = with_edges(build_b_bar(12, 4, a),
                                  edges_through(12, 4, 0, [&](VertexSet e) { return is_odd_edge(e, a); }));
  run("Bbar(12,4) |A|=5 with odd edges", breaker, Variant::b_bar, Partition::from_a(12, a), {});

  // 10 and 11 act as A-vertices, so Step 1 has to relocate them.
  const VertexSet a1 = a | VertexSet{10, 11};
  const auto repair = with_edges(build_b_bar(12, 4, a1), edges_through(12, 4, 0, [&](VertexSet e) {
                                   return is_odd_edge(e, a1) && e.disjoint(VertexSet{10, 11});
                                 }));
  MatcherConfig relocating;
  relocating.eps2 = 50.0 / 1728;
  const auto rep = extremal_case_matcher(repair, Variant::b_bar, Partition::from_a(12, a), relocating);
  if (rep.v0 != VertexSet{10, 11}) v.fail("repair instance: expected V0 = {10, 11}");
  run("Bbar(12,4) |A|=5 with V0 repair", repair, Variant::b_bar, Partition::from_a(12, a), relocating);

  // eps n^k = 65.5 flips for eps = 1e-3.
  const int flips = static_cast<int>(1e-3 * std::pow(16.0, 4));
  int perturbed = 0;
  for (Variant var : {Variant::b, Variant::b_bar}) {
    const auto [base, p] = build_bt(16, 4, 0, var);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rng rng(seed * 2 + (var == Variant::b ? 0 : 1));
      const auto h = oracle::flip_random(base, flips, rng);
      perturbed += run(std::string(variant_name(var)) + " perturbation seed " + std::to_string(seed), h, var, p, {});
    }
  }
  if (v.pass) v.detail << "3 structured instances and " << perturbed << " perturbations (" << flips << " flips each) matched";
}

// Greedy structured matching on alpha-good instances.
void c6(Verdict& v) {
  const int n = 32, k = 4, t = 8;
  const double alpha = 1.0 / 60000;
  if (!(alpha < lemma_alpha_bound(k))) v.fail("alpha is not below the lemma bound");
  int solved = 0, deletions = 0;
  for (int r : {1, 2}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      Rng rng(1000 * r + seed);
      const VertexSet a = oracle::random_subset(n, r * t, rng);
      const VertexSet b = VertexSet::prefix(n) - a;
      const auto pattern = build_k_r(a, b, k, r, n).hypergraph;

      // Delete pattern edges while every vertex stays alpha-good.
      const double threshold = alpha * std::pow(n, k - 1);
      std::vector<int> deficiency(n, 0);
      std::vector<VertexSet> removed;
      for (int attempt = 0; attempt < 200; ++attempt) {
        const VertexSet e = pattern.edge(rng.below(pattern.edge_count()));
        bool ok = true;
        for (int x : e) ok = ok && deficiency[x] + 1 <= threshold;
        if (!ok) continue;
        for (int x : e) ++deficiency[x];
        removed.push_back(e);
      }
      // Edges outside the pattern do not affect goodness.
      std::vector<VertexSet> noise;
      for (int i = 0; i < 300; ++i) {
        const VertexSet e = oracle::random_subset(n, k, rng);
        if ((e & a).size() != r && !pattern.contains(e)) noise.push_back(e);
      }
      std::sort(noise.begin(), noise.end(), lex_less);
      noise.erase(std::unique(noise.begin(), noise.end()), noise.end());
      std::sort(removed.begin(), removed.end(), lex_less);
      removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
      deletions += static_cast<int>(removed.size());
      const auto h = pattern.modified(noise, removed);

      const auto res = greedy_structured_matching(h, a, b, r, alpha);
      const std::string name = "r=" + std::to_string(r) + " seed " + std::to_string(seed);
      if (!res.success) {
        v.fail(name + ": " + res.failure);
        continue;
      }
      bool patterned = true;
      for (auto e : res.matching.edges()) patterned = patterned && (e & a).size() == r;
      if (!patterned || !check_matching(h, res.matching).ok || !oracle_perfect(h, res.matching)) {
        v.fail(name + ": output is not a perfect pattern matching");
        continue;
      }
      ++solved;
    }
  }
  if (v.pass) {
    v.detail << solved << "/100 instances matched; alpha n^3 = " << alpha * std::pow(n, k - 1)
             << " < 1 admits " << deletions << " pattern deletions, so noise edges outside the pattern were added";
  }
}

// Pattern soundness, the random family, and absorption.
void c7(Verdict& v) {
  const int n = 12, k = 4;
  std::size_t checked = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng(500 + i);
    const auto h = oracle::random_hypergraph(n, k, 0.6, rng);
    const VertexSet q = oracle::random_subset(n, k, rng);
    auto sets = enumerate_absorbing_2r(h, q).sets;
    const auto big = enumerate_absorbing_4r(h, q, 1000);
    sets.insert(sets.end(), big.sets.begin(), big.sets.end());
    for (auto s : sets) {
      ++checked;
      if (is_absorbing(h, s, q).status != SearchStatus::found) {
        v.fail("Q=" + q.str() + ": enumerated set " + s.str() + " does not absorb");
      }
    }
  }
  v.detail << checked << " enumerated sets absorb";

  const auto kn = Hypergraph::complete(16, k);
  const double xi = 0.1;
  int family_ok = 0;
  std::string first_failure;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto fam = build_absorbing_family(kn, xi, seed);
    if (fam.ok) {
      ++family_ok;
    } else if (first_failure.empty()) {
      std::ostringstream s;
      s << "seed " << seed << ": |F| = " << fam.stats.sampled << " (E|F| = " << fam.stats.expected_size
        << "), |F'| = " << fam.stats.kept << " <= " << fam.stats.size_bound << ", min hits " << fam.stats.min_hits
        << " not > " << fam.stats.hit_bound;
      first_failure = s.str();
    }
    const auto m = fam.matching();
    const int budget = static_cast<int>(xi * xi * kn.n()) / k * k;
    VertexSet w;
    for (int x : kn.vertices() - m.covered()) {
      if (w.size() < budget) w.insert(x);
    }
    const auto res = absorb(kn, fam, m, w);
    if (!res.ok || !check_matching(kn, res.matching, m.covered() | w).ok) {
      v.fail("seed " + std::to_string(seed) + ": absorption output fails the checker");
    }
  }
  v.detail << "; family bounds held for " << family_ok << "/10 seeds";
  if (family_ok != 10) v.fail(v.detail.str() + "; " + first_failure);
}

TwoColoring random_coloring(int n, int r, Rng& rng) {
  TwoColoring c{n, r, std::vector<bool>(binom(n, 2 * r))};
  for (std::size_t i = 0; i < c.red.size(); ++i) c.red[i] = rng.bernoulli(rng.uniform());
  return c;
}

// Link graph counts, parity structure, censuses and extraction.
void c8(Verdict& v) {
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const int n = 8 + static_cast<int>(rng.below(5));
    const auto h = oracle::random_hypergraph(n, 4, rng.uniform(), rng);
    const auto g = build_aux_graph(h);
    // Count disjoint label pairs whose union is an edge, independently.
    std::uint64_t pairs = 0;
    for (std::size_t x = 0; x < g.labels.size(); ++x) {
      for (std::size_t y = x + 1; y < g.labels.size(); ++y) {
        pairs += g.labels[x].disjoint(g.labels[y]) && h.contains(g.labels[x] | g.labels[y]);
      }
    }
    if (g.graph.edge_count() != 3 * h.edge_count() || pairs != 3 * h.edge_count()) {
      v.fail("n=" + std::to_string(n) + ": |E(G)| = " + std::to_string(g.graph.edge_count()) + ", 3e(H) = " +
             std::to_string(3 * h.edge_count()));
    }
  }

  const VertexSet a = VertexSet::prefix(4);
  const auto gb = build_aux_graph(build_b(8, 4, a));
  for (std::size_t x = 0; x < gb.labels.size(); ++x) {
    for (std::size_t y = 0; y < gb.labels.size(); ++y) {
      const bool cross = (gb.labels[x] & a).size() % 2 != (gb.labels[y] & a).size() % 2;
      if (gb.graph.adjacent(x, y) != (cross && gb.labels[x].disjoint(gb.labels[y]))) {
        v.fail("G(B_{8,4}) breaks the parity bipartition");
      }
    }
  }

  std::vector<TwoColoring> colorings;
  for (int i = 0; i < 200; ++i) {
    const bool big = i % 4 == 0;
    colorings.push_back(big ? random_coloring(8, 2, rng) : random_coloring(4 + static_cast<int>(rng.below(5)), 1, rng));
  }
  colorings.push_back(TwoColoring{8, 1, std::vector<bool>(28, true)});
  colorings.push_back(TwoColoring{8, 2, std::vector<bool>(70, false)});
  TwoColoring parity{8, 1, std::vector<bool>(28)};
  for (std::size_t i = 0; i < 28; ++i) parity.red[i] = (colex_unrank(i, 2) & a).size() == 1;
  colorings.push_back(parity);
  TwoColoring parity2{8, 2, std::vector<bool>(70)};
  for (std::size_t i = 0; i < 70; ++i) parity2.red[i] = (colex_unrank(i, 4) & a).size() % 2 == 1;
  colorings.push_back(parity2);
  TwoColoring single{6, 1, std::vector<bool>(15)};
  single.red[colex_rank(VertexSet{0, 1})] = true;
  colorings.push_back(single);
  for (const auto& c : colorings) {
    const auto want = oracle::census(c);
    const auto t = c3_census(c);
    const auto q = bad_c4_census(c);
    if (t.red != want.red_triangles || t.blue != want.blue_triangles || q.bad_sets != want.bad_sets ||
        q.bad_witnesses != want.bad_witnesses) {
      v.fail("census mismatch at n=" + std::to_string(c.n) + " r=" + std::to_string(c.r));
    }
  }

  for (std::size_t size : {20u, 28u}) {
    std::vector<bool> side(size, false);
    for (std::size_t x = 0; x < size / 2; ++x) side[x] = true;
    DenseGraph kb(size);
    for (std::size_t x = 0; x < size; ++x) {
      for (std::size_t y = x + 1; y < size; ++y) {
        if (side[x] != side[y]) kb.add_edge(x, y);
      }
    }
    const auto rb = bipartite_extract(kb, 1e-3);
    const auto rc = bipartite_extract(kb.complement(), 1e-3);
    if (!rb.applicable || rb.distance != 0 || !rc.applicable || rc.distance != 0) {
      v.fail("extraction misses an exact structure at N=" + std::to_string(size));
    }
  }
  if (v.pass) v.detail << "50 link graphs, parity structure, " << colorings.size() << " colourings and 4 exact extractions agree";
}

const std::vector<Criterion> kCriteria{
    {1, "pair degree closed forms", 60, c1},
    {2, "threshold tightness", 300, c2},
    {3, "codegree cross-check", 120, c3},
    {4, "non-matchability", 600, c4},
    {5, "constructive matcher", 600, c5},
    {6, "greedy structured matching", 300, c6},
    {7, "absorbing soundness", 600, c7},
    {8, "structure machinery", 600, c8},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run one criterion (1-8)")->check(CLI::Range(1, 8));
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (const auto& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(v);
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.limit_seconds) v.fail("took " + std::to_string(seconds) + " s");
    all_pass = all_pass && v.pass;
    std::printf("criterion %d %s %s: %s [%.2f s, limit %.0f s]\n", c.id, v.pass ? "PASS" : "FAIL", c.name.c_str(),
                v.detail.str().c_str(), seconds, c.limit_seconds);
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
