#include "paucity/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "paucity/counting.hpp"
#include "paucity/errors.hpp"

namespace paucity {

namespace {

using cplx = std::complex<double>;

std::map<BigInt, std::vector<std::uint64_t>> preimages(const IntPoly& p, std::uint64_t n) {
  std::map<BigInt, std::vector<std::uint64_t>> idx;
  for (std::uint64_t y = 1; y <= n; ++y) idx[p(from_u64(y))].push_back(y);
  return idx;
}

template <class OnPoint>
void scan_curve(const std::map<BigInt, std::vector<std::uint64_t>>& idx, const std::vector<BigInt>& px,
                std::uint64_t a, std::uint64_t b, OnPoint&& on_point) {
  BigInt t, v;
  for (std::size_t i = 0; i < px.size(); ++i) {
    t = px[i] * from_u64(b);
    if (!mpz_divisible_ui_p(t.get_mpz_t(), a)) continue;
    mpz_divexact_ui(v.get_mpz_t(), t.get_mpz_t(), a);
    auto it = idx.find(v);
    if (it == idx.end()) continue;
    for (std::uint64_t y : it->second) on_point(static_cast<std::uint64_t>(i + 1), y);
  }
}

std::vector<BigInt> values_upto(const IntPoly& p, std::uint64_t n) {
  std::vector<BigInt> out;
  out.reserve(n);
  for (std::uint64_t x = 1; x <= n; ++x) out.push_back(p(from_u64(x)));
  return out;
}

// Coefficients of P(f x + h), ascending.
std::vector<cplx> compose_linear(const std::vector<double>& c, cplx f, cplx h) {
  std::vector<cplx> acc{cplx(c.back())};
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    std::vector<cplx> next(acc.size() + 1, cplx(0));
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j] += acc[j] * h;
      next[j + 1] += acc[j] * f;
    }
    next[0] += c[i];
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

std::vector<CurvePoint> curve_points(const CurveSpec& spec) {
  if (spec.a == 0 || spec.b == 0) throw DomainError("curve_points: a and b must be positive");
  std::vector<CurvePoint> pts;
  scan_curve(preimages(spec.p, spec.n), values_upto(spec.p, spec.n), spec.a, spec.b,
             [&](std::uint64_t x, std::uint64_t y) { pts.emplace_back(x, y); });
  return pts;
}

LinearFactorVerdict linear_factor_detect(const CurveSpec& spec, double tol) {
  if (spec.a == spec.b) throw PreconditionError("linear_factor_detect: requires a != b");
  if (spec.a == 0 || spec.b == 0) throw DomainError("linear_factor_detect: a and b must be positive");
  const int d = spec.p.degree();
  if (d < 2) throw PreconditionError("linear_factor_detect: degree must be at least 2");

  std::vector<double> c;
  for (const auto& x : spec.p.coeffs()) c.push_back(x.get_d());
  const double a = static_cast<double>(spec.a);
  const double b = static_cast<double>(spec.b);
  const double modulus = std::pow(b / a, 1.0 / d);

  LinearFactorVerdict verdict;
  verdict.best_residual = std::numeric_limits<double>::infinity();
  for (int j = 0; j < d; ++j) {
    const cplx f = std::polar(modulus, 2.0 * std::numbers::pi * j / d);
    const cplx fd1 = std::pow(f, d - 1);
    // a (c_d d f^(d-1) h + c_(d-1) f^(d-1)) = b c_(d-1)
    const cplx h = (b * c[d - 1] / a - c[d - 1] * fd1) / (c[d] * static_cast<double>(d) * fd1);
    const auto lhs = compose_linear(c, f, h);
    double scale = 1.0;
    double worst = 0.0;
    for (int i = 0; i <= d; ++i) {
      scale = std::max({scale, std::abs(a * lhs[i]), std::abs(b * c[i])});
      worst = std::max(worst, std::abs(a * lhs[i] - b * c[i]));
    }
    const double residual = worst / scale;
    if (residual < verdict.best_residual) verdict.best_residual = residual;
    if (residual <= tol && !verdict.found) {
      verdict.found = true;
      verdict.f = f;
      verdict.g = -1.0;
      verdict.h = h;
    }
  }
  return verdict;
}

BombieriPilaBound bp_bound(std::uint64_t n, int r) {
  if (n < 3) throw DomainError("bp_bound: N must be at least 3");
  if (r < 2) throw DomainError("bp_bound: r must be at least 2");
  const double log_n = std::log(static_cast<double>(n));
  BombieriPilaBound out;
  out.log_value = log_n / r + 12.0 * std::sqrt(r * log_n * std::log(log_n));
  out.value = std::exp(out.log_value);
  out.in_validity_range = log_n >= std::pow(static_cast<double>(r), 6);
  return out;
}

std::uint64_t gcd_sum_aggregate(const IntPoly& p, std::uint64_t n, std::uint64_t lambda) {
  if (lambda == 0) throw DomainError("gcd_sum_aggregate: lambda must be positive");
  const auto idx = preimages(p, n);
  const auto px = values_upto(p, n);
  std::uint64_t total = 0;
  for (std::uint64_t b = 2; b <= lambda; ++b)
    for (std::uint64_t a = 1; a < b; ++a) scan_curve(idx, px, a, b, [&](std::uint64_t, std::uint64_t) { ++total; });
  return total;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (y[i] <= 0 || x[i] <= 0) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  if (lx.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxy / sxx;
}

AggregateTrend gcd_sum_trend(const IntPoly& p, const std::vector<std::uint64_t>& grid, std::uint64_t fixed_lambda) {
  AggregateTrend t;
  std::vector<double> xs, ys;
  for (std::uint64_t n : grid) {
    const std::uint64_t lambda = fixed_lambda ? fixed_lambda : default_lambda(n);
    const std::uint64_t s = gcd_sum_aggregate(p, n, lambda);
    t.n.push_back(n);
    t.lambda.push_back(lambda);
    t.sums.push_back(s);
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(s));
  }
  t.slope = loglog_slope(xs, ys);
  return t;
}

}  // namespace paucity
