#include "matchlab/combinatorics.hpp"

#include <ostream>

#include <algorithm>
#include <array>
#include <cmath>

namespace matchlab {

namespace {

struct BinomTable {
  std::array<std::array<std::uint64_t, 65>, 65> c{};
  BinomTable() {
    for (int n = 0; n <= 64; ++n) {
      c[n][0] = 1;
      for (int r = 1; r <= n; ++r) c[n][r] = c[n - 1][r - 1] + (r < n ? c[n - 1][r] : 0);
    }
  }
};

const BinomTable& table() {
  static const BinomTable t;
  return t;
}

}  // namespace

std::uint64_t binom(int n, int r) {
  if (n < 0 || n > 64) throw InvalidQuery("binom: n out of range");
  if (r < 0 || r > n) return 0;
  return table().c[n][r];
}

double binom_estimate(double n, double r) {
  if (r < 0 || r > n) return 0.0;
  return std::exp(std::lgamma(n + 1) - std::lgamma(r + 1) - std::lgamma(n - r + 1));
}

std::uint64_t colex_rank(VertexSet s) {
  std::uint64_t rank = 0;
  int i = 1;
  for (int v : s) rank += binom(v, i++);
  return rank;
}

VertexSet colex_unrank(std::uint64_t rank, int r) {
  VertexSet s;
  for (int i = r; i >= 1; --i) {
    int v = i - 1;
    while (v + 1 <= 64 && binom(v + 1, i) <= rank) ++v;
    rank -= binom(v, i);
    s.insert(v);
  }
  return s;
}

std::vector<VertexSet> all_subsets_lex(int n, int r) {
  std::vector<VertexSet> out;
  for_each_subset(VertexSet::prefix(n), r, [&](VertexSet s) { out.push_back(s); });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::ostream& operator<<(std::ostream& out, VertexSet s) { return out << s.str(); }

std::string VertexSet::str() const {
  std::string out = "{";
  bool first = true;
  for (int v : *this) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

}  // namespace matchlab
