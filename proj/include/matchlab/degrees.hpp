#pragma once

#include <cstdint>
#include <vector>

#include "matchlab/constructions.hpp"
#include "matchlab/hypergraph.hpp"

namespace matchlab {

/// Exact codegree threshold delta(n, k, k-1) for k | n (half-integers for odd k).
Rational codegree_threshold(int n, int k);

/// Closed-form pair degrees of B_{n,4}(t) and its complement, for the
/// pair classes inside A, inside B, and across.
struct PairDegreeFormulas {
  int n = 0;
  int t = 0;
  std::int64_t b_aa = 0;
  std::int64_t b_bb = 0;
  std::int64_t b_ab = 0;
  std::int64_t bbar_aa = 0;
  std::int64_t bbar_bb = 0;
  std::int64_t bbar_ab = 0;

  std::int64_t min_b() const;
  std::int64_t min_bbar() const;
};

PairDegreeFormulas b4_pair_degrees(int n, int t);

/// q0 + q1 * sqrt(radicand), with the exact floor.
struct QuadraticSurd {
  Rational rational_part;
  Rational sqrt_coefficient;
  std::int64_t radicand = 0;
  /// True when radicand is a perfect square, so value() is rational.
  bool exact = false;
  std::int64_t floor = 0;

  double value() const;
};

/// n^2/4 - 5n/4 - sqrt(n-3)/2 + 3/2 for n >= 12 with 4 | n.
QuadraticSurd delta_n42_closed_form(int n);

struct OptimalT {
  Variant variant = Variant::b;
  /// (-1 + sqrt(n-3))/2 for B, (1 + sqrt(n-3))/2 for B-bar.
  QuadraticSurd t;
  bool integral = false;
  bool odd = false;
};

OptimalT optimal_t(int n, Variant variant);

struct TightInstance {
  int n = 0;
  int t = 0;
  int m = 0;
  int s = 0;
  /// min pair degree of B-bar_{n,4}(t) from the closed forms.
  std::int64_t closed_form_degree = 0;
  /// Brute force on the constructed hypergraph, when n <= 64 and affordable.
  bool brute_forced = false;
  std::int64_t brute_force_degree = 0;
};

/// Every n <= limit of the form (4m+1)^{2s} + 3 (m, s >= 1), each with its
/// checks performed; throws InvariantViolation if a check fails. Values of n
/// reachable from several (m, s) appear once, with the smallest s.
std::vector<TightInstance> tight_instances(int limit, bool brute_force = true);

struct SpecDegree {
  ExtremalSpec spec;
  std::uint64_t min_degree = 0;
};

struct ThresholdReport {
  int n = 0;
  int k = 0;
  int l = 0;
  std::uint64_t value = 0;
  ExtremalSpec argmax;
  std::vector<SpecDegree> per_spec;
};

/// Maximum over the extremal family of the minimum l-degree, by building
/// every member. Ties prefer B-bar, then the larger |A|. Members are scanned
/// concurrently; the result does not depend on scheduling.
ThresholdReport delta_threshold_bruteforce(int n, int k, int l,
                                           double guard = kDefaultEnumerationGuard);

/// Integer square root, floor.
std::int64_t isqrt(std::int64_t x);
/// Floor division for a possibly negative numerator and positive divisor.
std::int64_t floor_div(std::int64_t a, std::int64_t b);

}  // namespace matchlab
