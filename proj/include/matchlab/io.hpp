#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "matchlab/hypergraph.hpp"

namespace matchlab {

/// Text format: header "n k m", then m lines of k increasing 0-based
/// vertices. Lines starting with '#' and blank lines are ignored.
Hypergraph read_hypergraph(std::istream& in);
/// Writes edges in lexicographic order; output is canonical.
void write_hypergraph(std::ostream& out, const Hypergraph& h);
std::string to_text(const Hypergraph& h);
Hypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph_file(const std::string& path, const Hypergraph& h);

/// Partition file: one line listing the vertices of A.
VertexSet read_partition_side(std::istream& in, int n);

/// A red/blue colouring of all 2r-subsets of {0..n-1}.
struct TwoColoring {
  int n = 0;
  int r = 0;
  /// Indexed by colex rank of the 2r-set; true = red.
  std::vector<bool> red;

  bool is_red(VertexSet s) const;
  std::size_t red_count() const;
};

/// Colouring file: header "n r", then one 2r-subset per line followed by
/// R or B. Every 2r-subset must appear exactly once.
TwoColoring read_coloring(std::istream& in);
void write_coloring(std::ostream& out, const TwoColoring& c);

}  // namespace matchlab
