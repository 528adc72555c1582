#include "matchlab/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace matchlab {

namespace {

// Next line that is neither blank nor a comment; false at end of input.
bool next_data_line(std::istream& in, std::string& line, int& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void parse_error(int line_no, const std::string& what) {
  throw InvalidQuery("line " + std::to_string(line_no) + ": " + what);
}

VertexSet parse_vertices(std::istringstream& fields, int count, int n, int line_no) {
  VertexSet s;
  int prev = -1;
  for (int i = 0; i < count; ++i) {
    long long v;
    if (!(fields >> v)) parse_error(line_no, "expected " + std::to_string(count) + " vertices");
    if (v < 0 || v >= n) parse_error(line_no, "vertex " + std::to_string(v) + " out of range");
    if (v <= prev) parse_error(line_no, "vertices must be strictly increasing");
    prev = static_cast<int>(v);
    s.insert(prev);
  }
  return s;
}

}  // namespace

Hypergraph read_hypergraph(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_data_line(in, line, line_no)) throw InvalidQuery("empty hypergraph file");
  std::istringstream header(line);
  long long n, k, m;
  if (!(header >> n >> k >> m)) parse_error(line_no, "header must be \"n k m\"");
  if (n < 0 || n > kMaxVertices) parse_error(line_no, "n must lie in [0, 64]");
  if (k < 1 || k > kMaxVertices) parse_error(line_no, "k must lie in [1, 64]");
  if (m < 0) parse_error(line_no, "m must be non-negative");
  std::vector<VertexSet> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_data_line(in, line, line_no)) {
      throw InvalidQuery("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    }
    std::istringstream fields(line);
    edges.push_back(parse_vertices(fields, static_cast<int>(k), static_cast<int>(n), line_no));
    std::string extra;
    if (fields >> extra) parse_error(line_no, "trailing data after edge");
  }
  if (next_data_line(in, line, line_no)) parse_error(line_no, "data after the last edge");
  try {
    return Hypergraph(static_cast<int>(n), static_cast<int>(k), std::move(edges));
  } catch (const InvalidConstruction& e) {
    throw InvalidQuery(e.what());
  }
}

void write_hypergraph(std::ostream& out, const Hypergraph& h) {
  out << h.n() << ' ' << h.k() << ' ' << h.edge_count() << '\n';
  for (std::uint64_t m : h.masks()) {
    bool first = true;
    for (int v : VertexSet(m)) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    out << '\n';
  }
}

std::string to_text(const Hypergraph& h) {
  std::ostringstream out;
  write_hypergraph(out, h);
  return out.str();
}

Hypergraph read_hypergraph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidQuery("cannot open " + path);
  return read_hypergraph(in);
}

void write_hypergraph_file(const std::string& path, const Hypergraph& h) {
  std::ofstream out(path);
  if (!out) throw InvalidQuery("cannot write " + path);
  write_hypergraph(out, h);
}

VertexSet read_partition_side(std::istream& in, int n) {
  std::string line;
  int line_no = 0;
  if (!next_data_line(in, line, line_no)) throw InvalidQuery("empty partition file");
  std::istringstream fields(line);
  VertexSet a;
  long long v;
  while (fields >> v) {
    if (v < 0 || v >= n) parse_error(line_no, "vertex " + std::to_string(v) + " out of range");
    if (a.contains(static_cast<int>(v))) parse_error(line_no, "repeated vertex");
    a.insert(static_cast<int>(v));
  }
  if (!fields.eof()) parse_error(line_no, "non-numeric token");
  return a;
}

bool TwoColoring::is_red(VertexSet s) const { return red[colex_rank(s)]; }

std::size_t TwoColoring::red_count() const {
  return static_cast<std::size_t>(std::count(red.begin(), red.end(), true));
}

TwoColoring read_coloring(std::istream& in) {
  std::string line;
  int line_no = 0;
  if (!next_data_line(in, line, line_no)) throw InvalidQuery("empty colouring file");
  std::istringstream header(line);
  long long n, r;
  if (!(header >> n >> r)) parse_error(line_no, "header must be \"n r\"");
  if (n < 0 || n > kMaxVertices || r < 1 || 2 * r > n) parse_error(line_no, "bad n or r");
  TwoColoring c{static_cast<int>(n), static_cast<int>(r), {}};
  const std::uint64_t total = binom(c.n, 2 * c.r);
  if (total > 50'000'000) throw ResourceGuard("colouring too large", static_cast<double>(total));
  c.red.assign(total, false);
  std::vector<bool> seen(total, false);
  std::uint64_t count = 0;
  while (next_data_line(in, line, line_no)) {
    std::istringstream fields(line);
    const VertexSet s = parse_vertices(fields, 2 * c.r, c.n, line_no);
    std::string tag;
    if (!(fields >> tag) || (tag != "R" && tag != "B")) parse_error(line_no, "expected tag R or B");
    const std::uint64_t rank = colex_rank(s);
    if (seen[rank]) parse_error(line_no, "subset listed twice");
    seen[rank] = true;
    c.red[rank] = tag == "R";
    ++count;
  }
  if (count != total) {
    throw InvalidQuery("colouring lists " + std::to_string(count) + " of " +
                       std::to_string(total) + " subsets");
  }
  return c;
}

void write_coloring(std::ostream& out, const TwoColoring& c) {
  out << c.n << ' ' << c.r << '\n';
  for (VertexSet s : all_subsets_lex(c.n, 2 * c.r)) {
    for (int v : s) out << v << ' ';
    out << (c.is_red(s) ? 'R' : 'B') << '\n';
  }
}

}  // namespace matchlab
