#include "matchlab/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "matchlab/absorbing.hpp"
#include "matchlab/constructions.hpp"
#include "matchlab/degrees.hpp"
#include "matchlab/io.hpp"
#include "matchlab/parallel.hpp"
#include "matchlab/rng.hpp"
#include "matchlab/solver.hpp"

namespace matchlab::cli {

namespace {

using json = nlohmann::json;

// A command outcome: the report plus the exit status it implies.
struct Outcome {
  json report;
  int code = kOk;
  // Plain lines printed instead of the flattened report in text mode.
  std::optional<std::string> text;
};

class VerificationFailure : public Error {
 public:
  using Error::Error;
};

json to_json(VertexSet s) { return s.members(); }

json to_json(const Matching& m) {
  json a = json::array();
  for (auto e : m.edges()) a.push_back(to_json(e));
  return a;
}

json to_json(const Rational& q) {
  std::ostringstream s;
  s << q.numerator();
  if (q.denominator() != 1) s << "/" << q.denominator();
  return s.str();
}

json to_json(const ExtremalSpec& spec) {
  return {{"variant", variant_name(spec.variant)}, {"a_size", spec.a_size}, {"label", spec.label()}};
}

json to_json(const QuadraticSurd& q) {
  return {{"floor", q.floor}, {"exact", q.exact}, {"value", q.value()}};
}

json to_json(const ParityCertificate& c) {
  return {{"a_side", to_json(c.partition.a_side)},
          {"edge_parity", c.edge_parity == Parity::odd ? "odd" : "even"},
          {"reason", c.divisibility_reason}};
}

void flatten(const json& j, const std::string& path, std::ostream& out) {
  auto scalar = [](const json& v) { return !v.is_structured(); };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array() && !std::all_of(j.begin(), j.end(), [&](const json& v) {
               return scalar(v) || (v.is_array() && std::all_of(v.begin(), v.end(), scalar));
             })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i), out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

Hypergraph load(const std::string& path) {
  if (path == "-") return read_hypergraph(std::cin);
  return read_hypergraph_file(path);
}

VertexSet load_partition(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw InvalidQuery("cannot open " + path);
  return read_partition_side(in, n);
}

TwoColoring load_coloring(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidQuery("cannot open " + path);
  return read_coloring(in);
}

Variant parse_variant(const std::string& s) {
  if (s == "b" || s == "B") return Variant::b;
  if (s == "bbar" || s == "Bbar") return Variant::b_bar;
  throw InvalidQuery("unknown variant " + s + " (expected b or bbar)");
}

void write_or_print(const std::string& path, const Hypergraph& h, Outcome& o) {
  if (path.empty() || path == "-") {
    o.text = to_text(h);
    o.report = {{"hypergraph", o.text.value()}};
  } else {
    write_hypergraph_file(path, h);
    o.report = {{"written", json::array({path})}, {"edges", h.edge_count()}};
  }
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string family;
  int n = 0, k = 0, a = -1, t = 0, r = 1;
  double p = 0.5;
  std::optional<std::uint64_t> seed;
  std::string variant = "b";
  std::string out;
};

Outcome gen(const GenArgs& g) {
  Outcome o;
  if (g.family == "ext") {
    if (g.out.empty()) throw InvalidQuery("--family ext needs --out DIR");
    std::filesystem::create_directories(g.out);
    json written = json::array();
    for (const auto& [spec, h] : extremal_family(g.n, g.k)) {
      const std::string file = (std::filesystem::path(g.out) /
                                ("n" + std::to_string(g.n) + "_k" + std::to_string(g.k) + "_" +
                                 std::string(variant_name(spec.variant)) + "_a" +
                                 std::to_string(spec.a_size) + ".txt"))
                                   .string();
      write_hypergraph_file(file, h);
      written.push_back(file);
    }
    o.report = {{"written", written}};
    return o;
  }
  const int a_size = g.a >= 0 ? g.a : g.n / 2;
  const VertexSet a = VertexSet::prefix(a_size);
  Hypergraph h;
  if (g.family == "b") {
    h = build_b(g.n, g.k, a);
  } else if (g.family == "bbar") {
    h = build_b_bar(g.n, g.k, a);
  } else if (g.family == "bt") {
    h = build_bt(g.n, g.k, g.t, parse_variant(g.variant)).first;
  } else if (g.family == "kr") {
    h = build_k_r(a, VertexSet::prefix(g.n) - a, g.k, g.r, g.n).hypergraph;
  } else if (g.family == "complete") {
    h = Hypergraph::complete(g.n, g.k);
  } else if (g.family == "empty") {
    h = Hypergraph::empty(g.n, g.k);
  } else if (g.family == "random") {
    if (!g.seed) throw InvalidQuery("--family random needs --seed");
    if (!(g.p >= 0 && g.p <= 1)) throw InvalidQuery("--p must lie in [0, 1]");
    Rng rng(*g.seed);
    h = Hypergraph::from_predicate(g.n, g.k, [&](VertexSet) { return rng.bernoulli(g.p); });
  } else {
    throw InvalidQuery("unknown family " + g.family);
  }
  write_or_print(g.out, h, o);
  return o;
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string in;
  std::optional<int> l;
  std::string partition;
  std::string variant;
  double alpha = 1e-3;
};

Outcome analyze(const AnalyzeArgs& a) {
  const auto h = load(a.in);
  Outcome o;
  o.report["n"] = h.n();
  o.report["k"] = h.k();
  o.report["edges"] = h.edge_count();
  if (a.l && (*a.l < 0 || *a.l >= h.k())) throw InvalidQuery("--l must lie in [0, k)");
  json degrees = json::object();
  for (int l = 0; l < h.k(); ++l) {
    if (a.l && *a.l != l) continue;
    degrees[std::to_string(l)] = {{"min", min_degree(h, l)}, {"argmin", to_json(argmin_degree_set(h, l))}};
  }
  o.report["min_degree"] = degrees;
  if (!a.partition.empty()) {
    const auto p = Partition::from_a(h.n(), load_partition(a.partition, h.n()));
    const auto cert = parity_certificate(h, p);
    o.report["parity_certificate"] = cert ? to_json(*cert) : json(nullptr);
    if (!a.variant.empty()) {
      const auto ref = build_variant(h.n(), h.k(), parse_variant(a.variant), p.a_side);
      const auto g = goodness(h, ref, a.alpha);
      o.report["goodness"] = {{"alpha", g.alpha},
                              {"threshold", g.threshold},
                              {"bad_vertices", to_json(g.bad_vertices)},
                              {"deficiency", g.deficiency},
                              {"missing_edges", g.missing_edges},
                              {"edit_distance", edit_distance(h, ref)}};
    }
  } else if (!a.variant.empty()) {
    throw InvalidQuery("--variant needs --partition");
  }
  return o;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string in;
  std::string partition;
  std::string variant;
  std::uint64_t budget = 0;
  double epsilon = 1e-3;
};

Outcome solve(const SolveArgs& s) {
  const auto h = load(s.in);
  Outcome o;
  auto found = [&](const Matching& m, const std::string& method) {
    const auto chk = check_matching(h, m);
    if (!chk.ok) throw VerificationFailure("output matching fails the checker: " + chk.reason);
    o.report = {{"status", "found"}, {"method", method}, {"matching", to_json(m)}};
    std::string lines;
    for (auto e : m.edges()) {
      std::string line;
      for (int v : e) line += (line.empty() ? "" : " ") + std::to_string(v);
      lines += line + "\n";
    }
    o.text = lines;
  };

  std::optional<Partition> part;
  if (!s.partition.empty()) {
    part = Partition::from_a(h.n(), load_partition(s.partition, h.n()));
    if (h.n() % h.k() == 0) {
      if (auto cert = parity_certificate(h, *part)) {
        o.report = {{"status", "none"}, {"method", "parity"}, {"certificate", to_json(*cert)}};
        return o;
      }
    }
  }
  if (!s.variant.empty()) {
    if (!part) throw InvalidQuery("--variant needs --partition");
    MatcherConfig cfg;
    cfg.epsilon = s.epsilon;
    cfg.node_budget = s.budget;
    const auto rep = extremal_case_matcher(h, parse_variant(s.variant), *part, cfg);
    if (rep.success) {
      found(rep.matching, rep.exact_fallback_used ? "extremal+exact" : "extremal");
      o.report["trace"] = rep.trace;
      return o;
    }
    o.report = {{"status", "failed"},
                {"method", "extremal"},
                {"failed_step", rep.failed_step},
                {"sought_pattern", rep.sought_pattern},
                {"sizes", rep.sizes},
                {"trace", rep.trace}};
    o.code = kVerificationFailed;
    return o;
  }
  SearchOptions so;
  so.node_budget = s.budget;
  const auto res = find_perfect_matching(h, so);
  if (res.status == SearchStatus::found) {
    found(res.matching, "exact");
    o.report["nodes"] = res.nodes;
    return o;
  }
  o.report = {{"status", status_name(res.status)}, {"method", "exact"}, {"nodes", res.nodes}, {"reason", res.reason}};
  if (res.status == SearchStatus::undecided) {
    o.code = kUndecided;
  } else if (h.n() <= 24 && h.n() % h.k() == 0) {
    const auto cert = search_parity_certificate(h);
    o.report["certificate"] = cert ? to_json(*cert) : json(nullptr);
  }
  return o;
}

// ---------------------------------------------------------------------------

json threshold_row(int n, int k, int l, double guard) {
  json row;
  row["n"] = n;
  const auto rep = delta_threshold_bruteforce(n, k, l, guard);
  row["value"] = rep.value;
  row["argmax"] = to_json(rep.argmax);
  json per = json::array();
  for (const auto& sd : rep.per_spec) {
    per.push_back({{"spec", sd.spec.label()}, {"min_degree", sd.min_degree}});
  }
  row["per_spec"] = per;
  if (l == k - 1 && n % k == 0) {
    const auto c = codegree_threshold(n, k);
    row["codegree_threshold"] = to_json(c);
    row["codegree_agrees"] = c == Rational(static_cast<std::int64_t>(rep.value));
  }
  if (k == 4 && l == 2 && n % 4 == 0 && n >= 12) {
    const auto bound = delta_n42_closed_form(n);
    row["closed_form"] = to_json(bound);
    row["bound_holds"] = static_cast<std::int64_t>(rep.value) <= bound.floor;
  }
  return row;
}

void check_row(const json& row) {
  if (row.contains("codegree_agrees") && !row["codegree_agrees"].get<bool>()) {
    throw VerificationFailure("codegree threshold disagrees with brute force at n=" + row["n"].dump());
  }
  if (row.contains("bound_holds") && !row["bound_holds"].get<bool>()) {
    throw VerificationFailure("brute force exceeds the closed-form bound at n=" + row["n"].dump());
  }
}

struct ThresholdArgs {
  int n = 0, k = 0, l = 0;
  double guard = kDefaultEnumerationGuard;
};

Outcome thresholds(const ThresholdArgs& t) {
  Outcome o;
  o.report = threshold_row(t.n, t.k, t.l, t.guard);
  o.report["k"] = t.k;
  o.report["l"] = t.l;
  check_row(o.report);
  return o;
}

struct ScanArgs {
  int k = 4, l = 2, n_min = 8, n_max = 16, step = 0;
  double guard = kDefaultEnumerationGuard;
};

Outcome scan(const ScanArgs& s) {
  const int step = s.step > 0 ? s.step : s.k;
  if (s.n_min < 1 || s.n_max < s.n_min || s.n_max > kMaxVertices) throw InvalidQuery("bad --n-min/--n-max range");
  std::vector<int> ns;
  for (int n = s.n_min; n <= s.n_max; n += step) ns.push_back(n);
  std::vector<json> rows(ns.size());
  parallel_for(ns.size(), [&](std::size_t i) {
    const int n = ns[i];
    try {
      rows[i] = threshold_row(n, s.k, s.l, s.guard);
    } catch (const ResourceGuard& g) {
      rows[i] = {{"n", n}, {"refused", g.what()}, {"estimate", g.estimate()}};
    }
    if (s.k == 4 && n % 4 == 0) {
      json per_t = json::array();
      for (int t = 0; t < n / 2; ++t) {
        const auto f = b4_pair_degrees(n, t);
        per_t.push_back({{"t", t}, {"min_b", f.min_b()}, {"min_bbar", f.min_bbar()}});
      }
      rows[i]["closed_form_by_t"] = per_t;
    }
  });
  Outcome o;
  o.report = {{"k", s.k}, {"l", s.l}, {"rows", rows}};
  for (const auto& row : rows) check_row(row);
  return o;
}

// ---------------------------------------------------------------------------

struct AbsorbArgs {
  std::string in;
  int n = 0, k = 0;
  double xi = 0.1;
  std::optional<std::uint64_t> seed;
  std::uint64_t q_limit = 5000;
  std::size_t q_samples = 500;
};

Outcome absorb_cmd(const AbsorbArgs& a) {
  if (!a.seed) throw InvalidQuery("absorb needs --seed");
  if (!(a.xi >= 0)) throw InvalidQuery("--xi must be nonnegative");
  const auto h = a.in.empty() ? Hypergraph::complete(a.n, a.k) : load(a.in);
  FamilyOptions fo;
  fo.exhaustive_q_limit = a.q_limit;
  fo.sampled_q = a.q_samples;
  const auto fam = build_absorbing_family(h, a.xi, *a.seed, fo);
  const auto& st = fam.stats;
  Outcome o;
  o.report["family"] = {{"p", st.p},
                        {"expected_size", st.expected_size},
                        {"expected_size_bound", st.expected_size_bound},
                        {"sampled", st.sampled},
                        {"concentration_ok", st.concentration_ok},
                        {"absorbing", st.absorbing},
                        {"intersecting_pairs", st.intersecting_pairs},
                        {"kept", st.kept},
                        {"members", [&] {
                           json m = json::array();
                           for (auto s : fam.members) m.push_back(to_json(s));
                           return m;
                         }()},
                        {"validated_q", st.validated_q},
                        {"exhaustive_q", st.exhaustive_q},
                        {"min_hits", st.min_hits},
                        {"size_bound", st.size_bound},
                        {"hit_bound", st.hit_bound},
                        {"ok", fam.ok},
                        {"failure", fam.failure}};

  // Absorb as many leftover k-sets as the family is allowed to take.
  const Matching m = fam.matching();
  const auto budget = static_cast<int>(a.xi * a.xi * h.n()) / h.k() * h.k();
  VertexSet w;
  for (int v : h.vertices() - m.covered()) {
    if (w.size() < budget) w.insert(v);
  }
  while (w.size() % h.k() != 0) w.erase(w.bound() - 1);
  const auto res = absorb(h, fam, m, w);
  o.report["absorb"] = {{"w", to_json(w)},
                        {"ok", res.ok},
                        {"matching", to_json(res.matching)},
                        {"starved", res.starved ? to_json(*res.starved) : json(nullptr)}};
  if (!fam.ok || !res.ok) o.code = kVerificationFailed;
  return o;
}

// ---------------------------------------------------------------------------

struct StructureArgs {
  std::string in;
  std::string coloring;
  double gamma = 1e-3;
  bool force = false;
};

Outcome structure(const StructureArgs& s) {
  if (s.in.empty() && s.coloring.empty()) throw InvalidQuery("structure needs --in and/or --coloring");
  Outcome o;
  std::optional<Hypergraph> h;
  if (!s.in.empty()) {
    h = load(s.in);
    const auto aux = build_aux_graph(*h);
    const auto rep = case_ab_detector(aux.graph, s.gamma);
    o.report["aux"] = {{"vertices", aux.graph.size()}, {"edges", aux.graph.edge_count()}, {"half", aux.half}};
    o.report["cases"] = {{"gamma", rep.gamma},
                         {"case_a", rep.case_a},
                         {"case_b", rep.case_b},
                         {"heavy", rep.heavy},
                         {"witness", rep.witness ? json(*rep.witness) : json(nullptr)}};
    if (aux.graph.size() % 2 == 0) {
      const auto ex = bipartite_extract(aux.graph, s.gamma, s.force);
      json side = json::array();
      for (std::size_t v = 0; v < ex.in_v1.size(); ++v) {
        if (ex.in_v1[v]) side.push_back(to_json(aux.labels[v]));
      }
      o.report["extract"] = {{"applicable", ex.applicable},
                             {"reason", ex.reason},
                             {"branch", ex.branch},
                             {"distance", ex.distance},
                             {"v1", side}};
    }
  }
  if (!s.coloring.empty()) {
    const auto c = load_coloring(s.coloring);
    const auto c3 = c3_census(c);
    const auto c4 = bad_c4_census(c);
    o.report["census"] = {{"n", c.n},
                          {"r", c.r},
                          {"red", c.red_count()},
                          {"c3_red", c3.red},
                          {"c3_blue", c3.blue},
                          {"bad_c4_sets", c4.bad_sets},
                          {"bad_c4_witnesses", c4.bad_witnesses}};
    if (h) {
      const auto chk = encode_check(*h, c);
      o.report["encode"] = {{"bad_sets", chk.bad_sets},
                            {"symmetric_difference", chk.symmetric_difference},
                            {"unmapped", chk.unmapped}};
      if (chk.unmapped != 0 || chk.bad_sets > chk.symmetric_difference) o.code = kVerificationFailed;
    }
  }
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect matchings and extremal constructions in k-uniform hypergraphs", "matchlab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  GenArgs ga;
  auto* g = app.add_subcommand("gen", "write a construction in the text format");
  g->add_option("--family", ga.family, "b, bbar, bt, kr, ext, complete, empty, random")->required();
  g->add_option("--n", ga.n)->required();
  g->add_option("--k", ga.k)->required();
  g->add_option("--a", ga.a, "|A| with A = {0..|A|-1}; default n/2");
  g->add_option("--t", ga.t, "offset for bt: |A| = floor(n/2) + t");
  g->add_option("--r", ga.r, "A-vertices per edge for kr");
  g->add_option("--p", ga.p, "edge probability for random");
  g->add_option("--seed", ga.seed);
  g->add_option("--variant", ga.variant, "b or bbar (bt)");
  g->add_option("--out", ga.out, "output file, or directory for ext");

  AnalyzeArgs aa;
  auto* an = app.add_subcommand("analyze", "degree tables, parity and goodness");
  an->add_option("--in", aa.in)->required();
  an->add_option("--l", aa.l);
  an->add_option("--partition", aa.partition, "file listing the vertices of A");
  an->add_option("--variant", aa.variant, "reference construction for goodness");
  an->add_option("--alpha", aa.alpha);

  SolveArgs sa;
  auto* so = app.add_subcommand("solve", "perfect matching or non-existence certificate");
  so->add_option("--in", sa.in)->required();
  so->add_option("--partition", sa.partition);
  so->add_option("--variant", sa.variant, "run the near-extremal matcher against this variant");
  so->add_option("--budget", sa.budget, "search nodes; default MATCHLAB_BUDGET or 50000000");
  so->add_option("--epsilon", sa.epsilon);

  ThresholdArgs ta;
  auto* th = app.add_subcommand("thresholds", "extremal family threshold report");
  th->add_option("--n", ta.n)->required();
  th->add_option("--k", ta.k)->required();
  th->add_option("--l", ta.l)->required();
  th->add_option("--guard", ta.guard);

  AbsorbArgs ab;
  auto* abc = app.add_subcommand("absorb", "absorbing family and absorption demo");
  abc->add_option("--in", ab.in, "hypergraph file; default the complete graph on --n, --k");
  abc->add_option("--n", ab.n);
  abc->add_option("--k", ab.k);
  abc->add_option("--xi", ab.xi);
  abc->add_option("--seed", ab.seed);
  abc->add_option("--q-limit", ab.q_limit, "validate every k-set when there are at most this many");
  abc->add_option("--q-samples", ab.q_samples);

  StructureArgs st;
  auto* stc = app.add_subcommand("structure", "link graph cases, extraction and colouring censuses");
  stc->add_option("--in", st.in);
  stc->add_option("--coloring", st.coloring);
  stc->add_option("--gamma", st.gamma);
  stc->add_flag("--force", st.force, "extract even when condition (b) fails");

  ScanArgs sc;
  auto* scc = app.add_subcommand("scan", "threshold table over a range of n");
  scc->add_option("--k", sc.k);
  scc->add_option("--l", sc.l);
  scc->add_option("--n-min", sc.n_min);
  scc->add_option("--n-max", sc.n_max);
  scc->add_option("--step", sc.step, "default k");
  scc->add_option("--guard", sc.guard);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kInvalidInput;
  }

  try {
    Outcome o;
    if (*g) o = gen(ga);
    if (*an) o = analyze(aa);
    if (*so) o = solve(sa);
    if (*th) o = thresholds(ta);
    if (*abc) o = absorb_cmd(ab);
    if (*stc) o = structure(st);
    if (*scc) o = scan(sc);
    if (format == "json") {
      out << o.report.dump(2) << "\n";
    } else if (o.text) {
      out << *o.text;
    } else {
      flatten(o.report, "", out);
    }
    return o.code;
  } catch (const ResourceGuard& e) {
    err << "refused: " << e.what() << " (estimate " << e.estimate() << ")\n";
    return kResourceGuard;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const InvariantViolation& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace matchlab::cli
