#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "paucity/polyalg.hpp"

namespace paucity {

/// The plane curve a P(y) = b P(x) restricted to the box [N]^2.
struct CurveSpec {
  std::uint64_t a = 1;
  std::uint64_t b = 1;
  IntPoly p;
  std::uint64_t n = 0;

  int r() const { return p.degree(); }
};

using CurvePoint = std::pair<std::uint64_t, std::uint64_t>;

/// All (x, y) in [N]^2 with a P(y) = b P(x), ordered by x then y.
std::vector<CurvePoint> curve_points(const CurveSpec& spec);

struct LinearFactorVerdict {
  bool found = false;
  /// Candidate factor f x + g y + h (g normalized to -1) when found.
  std::complex<double> f, g, h;
  /// Smallest relative coefficient residual over all candidates.
  double best_residual = 0.0;
};

/// Searches for a degree-1 factor of a P(y) - b P(x) in C[x, y].
///
/// A factor must involve y, so it can be written y = f x + h; then
/// a P(f x + h) = b P(x) identically, forcing f^d = b/a. For each of the d
/// roots f (in increasing angle) h is solved from the x^(d-1) coefficient,
/// and the candidate is accepted when every coefficient residual, relative
/// to the largest coefficient magnitude, is at most tol.
LinearFactorVerdict linear_factor_detect(const CurveSpec& spec, double tol = 1e-9);

struct BombieriPilaBound {
  double value = 0.0;
  double log_value = 0.0;
  /// N >= exp(r^6), the range where the bound is a theorem.
  bool in_validity_range = false;
};

/// N^(1/r) exp(12 sqrt(r log N log log N)).
BombieriPilaBound bp_bound(std::uint64_t n, int r);

/// Sum over y in [N] of G_{P,lambda}([N], P(y)), i.e. the number of (x, y, a, b)
/// with a P(y) = b P(x) and 1 <= a < b <= lambda.
std::uint64_t gcd_sum_aggregate(const IntPoly& p, std::uint64_t n, std::uint64_t lambda);

struct AggregateTrend {
  std::vector<std::uint64_t> n;
  std::vector<std::uint64_t> lambda;
  std::vector<std::uint64_t> sums;
  /// Least-squares slope of log(sum) against log(N) over the nonzero sums;
  /// NaN with fewer than two usable points.
  double slope = 0.0;
};

/// gcd_sum_aggregate over a grid with lambda = floor(N^(1/6)) unless a fixed lambda is given.
AggregateTrend gcd_sum_trend(const IntPoly& p, const std::vector<std::uint64_t>& grid,
                             std::uint64_t fixed_lambda = 0);

/// Least-squares slope of log(y) against log(x), skipping points with y == 0.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace paucity
