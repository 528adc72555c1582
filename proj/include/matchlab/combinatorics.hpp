#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "matchlab/vertex_set.hpp"

namespace matchlab {

/// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
/// A query whose arguments violate the operation's domain.
class InvalidQuery : public Error {
 public:
  using Error::Error;
};
class InvalidConstruction : public Error {
 public:
  using Error::Error;
};
/// Refusal to run an enumeration whose estimated size exceeds a guard.
class ResourceGuard : public Error {
 public:
  ResourceGuard(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};
/// A quantitative hypothesis of a procedure does not hold on the input.
class PreconditionError : public Error {
 public:
  using Error::Error;
};
/// A state the procedure's own argument rules out; treated as a bug signal.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Exact C(n, r) for 0 <= n <= 64; 0 when r < 0 or r > n.
std::uint64_t binom(int n, int r);
/// C(n, r) as a double, for size estimates beyond 64-bit range.
double binom_estimate(double n, double r);

/// Colex rank of a set among all sets of its size: sum over the i-th
/// smallest member c_i of C(c_i, i+1). Ranks of r-subsets of {0..n-1} fill
/// [0, C(n, r)).
std::uint64_t colex_rank(VertexSet s);
/// Inverse of colex_rank for sets of size r.
VertexSet colex_unrank(std::uint64_t rank, int r);

/// Next mask with the same popcount in increasing integer order (Gosper).
/// Enumerating from prefix(r) while the result stays below 2^n visits all
/// r-subsets of {0..n-1} in colex order.
inline std::uint64_t next_same_popcount(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

/// Calls fn(VertexSet) on every r-subset of `ground`, in colex order of the
/// positions within `ground`.
template <class Fn>
void for_each_subset(VertexSet ground, int r, Fn&& fn) {
  const int m = ground.size();
  if (r < 0 || r > m) return;
  if (r == 0) {
    fn(VertexSet{});
    return;
  }
  int pos[64];
  int i = 0;
  for (int v : ground) pos[i++] = v;
  const std::uint64_t limit = m >= 64 ? 0 : (std::uint64_t{1} << m);
  std::uint64_t x = (r >= 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
  while (true) {
    std::uint64_t out = 0;
    for (std::uint64_t y = x; y; y &= y - 1) {
      out |= std::uint64_t{1} << pos[__builtin_ctzll(y)];
    }
    fn(VertexSet(out));
    if (r == m) return;
    const std::uint64_t nx = next_same_popcount(x);
    if (limit != 0 && nx >= limit) return;
    if (nx < x) return;  // wrapped at m == 64
    x = nx;
  }
}

/// All r-subsets of {0..n-1} as a vector, in lexicographic order.
std::vector<VertexSet> all_subsets_lex(int n, int r);

}  // namespace matchlab
