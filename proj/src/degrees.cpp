#include "matchlab/degrees.hpp"

#include <cmath>

#include "matchlab/parallel.hpp"

namespace matchlab {

std::int64_t isqrt(std::int64_t x) {
  if (x < 0) throw InvalidQuery("isqrt of a negative number");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Rational codegree_threshold(int n, int k) {
  if (k < 2 || n % k != 0) throw InvalidQuery("codegree_threshold needs k >= 2 dividing n");
  const Rational half_n(n, 2);
  if (k % 4 == 0 && (n / k) % 2 == 1) return half_n - k + 2;
  if (k % 2 == 1 && n % 2 == 1) {
    // (n-1)/2 is an integer only for odd n.
    if (((n - 1) / 2) % 2 == 1) return half_n - k + Rational(3, 2);
    return half_n - k + Rational(1, 2);
  }
  return half_n - k + 1;
}

std::int64_t PairDegreeFormulas::min_b() const { return std::min({b_aa, b_bb, b_ab}); }
std::int64_t PairDegreeFormulas::min_bbar() const {
  return std::min({bbar_aa, bbar_bb, bbar_ab});
}

PairDegreeFormulas b4_pair_degrees(int n, int t) {
  if (n <= 0 || n % 4 != 0) throw InvalidQuery("b4_pair_degrees needs 4 | n");
  if (!(-n / 2 < t && t < n / 2)) throw InvalidQuery("b4_pair_degrees: t out of range");
  const std::int64_t q = static_cast<std::int64_t>(n) * n / 4;
  const std::int64_t tt = static_cast<std::int64_t>(t) * t;
  PairDegreeFormulas f;
  f.n = n;
  f.t = t;
  f.b_aa = q - n - tt + 2 * t;
  f.b_bb = q - n - tt - 2 * t;
  f.b_ab = q - 3 * n / 2 + tt + 2;
  f.bbar_aa = q - 3 * n / 2 + tt - 2 * t + 3;
  f.bbar_bb = q - 3 * n / 2 + tt + 2 * t + 3;
  f.bbar_ab = q - n - tt + 1;
  return f;
}

double QuadraticSurd::value() const {
  return boost::rational_cast<double>(rational_part) +
         boost::rational_cast<double>(sqrt_coefficient) * std::sqrt(static_cast<double>(radicand));
}

namespace {

// floor(p/q + c*sqrt(m)) with c = +-1/2 folded into an integer problem:
// returns floor((num + sign*sqrt(4m)) / den) for den > 0.
std::int64_t floor_with_root(std::int64_t num, int sign, std::int64_t m, std::int64_t den) {
  const std::int64_t s = isqrt(4 * m);
  if (s * s == 4 * m) return floor_div(num + sign * s, den);
  // sqrt(4m) lies strictly inside (s, s+1).
  if (sign < 0) return floor_div(num - s - 1, den);
  return floor_div(num + s, den);
}

QuadraticSurd make_surd(Rational rational_part, Rational coefficient, std::int64_t radicand) {
  QuadraticSurd q;
  q.rational_part = rational_part;
  q.sqrt_coefficient = coefficient;
  q.radicand = radicand;
  const std::int64_t root = isqrt(radicand);
  q.exact = root * root == radicand;
  return q;
}

}  // namespace

QuadraticSurd delta_n42_closed_form(int n) {
  if (n < 12 || n % 4 != 0) throw InvalidQuery("closed form needs n >= 12 with 4 | n");
  const std::int64_t nn = n;
  QuadraticSurd q = make_surd(Rational(nn * nn - 5 * nn + 6, 4), Rational(-1, 2), nn - 3);
  // 4 * value = (n^2 - 5n + 6) - sqrt(4(n-3)).
  q.floor = floor_with_root(nn * nn - 5 * nn + 6, -1, nn - 3, 4);
  return q;
}

OptimalT optimal_t(int n, Variant variant) {
  if (n < 12 || n % 4 != 0) throw InvalidQuery("optimal_t needs n >= 12 with 4 | n");
  const int shift = variant == Variant::b ? -1 : 1;
  OptimalT out;
  out.variant = variant;
  out.t = make_surd(Rational(shift, 2), Rational(1, 2), n - 3);
  // 2t = shift + sqrt(n-3); floor(t) = floor((2 shift + sqrt(4(n-3))) / 4).
  out.t.floor = floor_with_root(2 * shift, 1, n - 3, 4);
  if (out.t.exact) {
    const std::int64_t twice = shift + isqrt(n - 3);
    out.integral = twice % 2 == 0;
    out.odd = out.integral && ((twice / 2) % 2 != 0);
  }
  return out;
}

std::vector<TightInstance> tight_instances(int limit, bool brute_force) {
  std::vector<TightInstance> out;
  for (int s = 1;; ++s) {
    bool any = false;
    for (int m = 1;; ++m) {
      // (4m+1)^{2s} + 3 with overflow-safe growth checks.
      std::int64_t p = 1;
      bool over = false;
      for (int i = 0; i < 2 * s && !over; ++i) {
        p *= 4 * m + 1;
        over = p > limit;
      }
      if (over || p + 3 > limit) break;
      any = true;
      const int n = static_cast<int>(p + 3);
      if (std::any_of(out.begin(), out.end(), [&](const TightInstance& x) { return x.n == n; })) {
        continue;
      }
      TightInstance ti;
      ti.n = n;
      ti.m = m;
      ti.s = s;
      const OptimalT opt = optimal_t(n, Variant::b_bar);
      if (n % 4 != 0 || !opt.integral || !opt.odd) {
        throw InvariantViolation("tight instance n=" + std::to_string(n) + " fails divisibility or parity");
      }
      ti.t = static_cast<int>(opt.t.floor);
      const QuadraticSurd bound = delta_n42_closed_form(n);
      ti.closed_form_degree = b4_pair_degrees(n, ti.t).min_bbar();
      if (!bound.exact || ti.closed_form_degree != bound.floor) {
        throw InvariantViolation("tight instance n=" + std::to_string(n) + " misses the bound");
      }
      if (brute_force && n <= kMaxVertices && binom_estimate(n, 4) <= 1e6) {
        const auto [h, part] = build_bt(n, 4, ti.t, Variant::b_bar);
        ti.brute_forced = true;
        ti.brute_force_degree = static_cast<std::int64_t>(min_degree(h, 2));
        if (ti.brute_force_degree != ti.closed_form_degree) {
          throw InvariantViolation("tight instance n=" + std::to_string(n) +
                                   " brute force disagrees with the closed forms");
        }
      }
      out.push_back(ti);
    }
    if (!any) break;
  }
  std::sort(out.begin(), out.end(),
            [](const TightInstance& a, const TightInstance& b) { return a.n < b.n; });
  return out;
}

ThresholdReport delta_threshold_bruteforce(int n, int k, int l, double guard) {
  if (l < 1 || l > k - 1) throw InvalidQuery("delta_threshold_bruteforce needs 1 <= l <= k-1");
  const auto specs = extremal_specs(n, k);
  const double estimate = static_cast<double>(specs.size()) * binom_estimate(n, k);
  if (estimate > guard) {
    throw ResourceGuard("extremal family scan too large", estimate);
  }
  ThresholdReport report;
  report.n = n;
  report.k = k;
  report.l = l;
  report.per_spec.resize(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    report.per_spec[i] = {specs[i], min_degree(build_spec(specs[i]), l)};
  });
  const SpecDegree* best = nullptr;
  auto better = [](const SpecDegree& a, const SpecDegree& b) {
    if (a.min_degree != b.min_degree) return a.min_degree > b.min_degree;
    if (a.spec.variant != b.spec.variant) return a.spec.variant == Variant::b_bar;
    return a.spec.a_size > b.spec.a_size;
  };
  for (const SpecDegree& sd : report.per_spec) {
    if (!best || better(sd, *best)) best = &sd;
  }
  report.value = best->min_degree;
  report.argmax = best->spec;
  return report;
}

}  // namespace matchlab
