#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "paucity/bigint.hpp"
#include "paucity/counting.hpp"
#include "paucity/intfactor.hpp"
#include "paucity/polyalg.hpp"

namespace paucity {

using Complex = std::complex<long double>;

/// Steinhaus random multiplicative function with counter-based randomness.
///
/// theta_p is a 64-bit fixed-point fraction of a turn, a pure function of
/// (seed, p); f(p) = exp(2 pi i theta_p). Phases of f(n) are summed modulo
/// 2^64 in integer arithmetic, so f(n) is bitwise reproducible no matter
/// which thread or in which order it is evaluated.
class SteinhausSampler {
 public:
  explicit SteinhausSampler(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t phase(const BigInt& p) const;
  std::uint64_t phase(const Factorization& n) const;
  Complex f_prime(const BigInt& p) const;
  Complex f_value(const BigInt& n) const;
  Complex f_value(const Factorization& n) const;

 private:
  std::uint64_t seed_;
};

/// Unit complex number exp(2 pi i phase / 2^64).
Complex unit_from_phase(std::uint64_t phase);

/// Seed of trial `trial` in a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

/// P(n) for n0 < n <= N, factorized once and shared by every trial.
class PartialSumPlan {
 public:
  PartialSumPlan(const IntPoly& p, std::uint64_t n0, std::uint64_t n);

  std::uint64_t n0() const { return n0_; }
  std::uint64_t n() const { return n_; }
  bool certified() const { return certified_; }
  Complex evaluate(const SteinhausSampler& f) const;

 private:
  struct Term {
    std::vector<std::pair<std::uint32_t, unsigned>> factors;  // (index into primes_, exponent)
  };
  std::vector<BigInt> primes_;
  std::vector<Term> terms_;
  std::uint64_t n0_;
  std::uint64_t n_;
  bool certified_ = true;
};

/// sum_{n0 < n <= N} f(P(n)), using the profile's n0.
Complex partial_sum(const SteinhausSampler& f, const PolyProfile& profile, std::uint64_t n);

struct MomentEstimate {
  unsigned k = 0;
  long double normalized_estimate = 0;  ///< mean of |S|^(2k) / N^k
  long double std_error = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::uint64_t n0_used = 0;
  BigInt exact_numerator;      ///< A_{P,2k} over the box (n0, N]
  long double exact_target = 0;  ///< exact_numerator / N^k
};

struct MeanEstimate {
  Complex mean;
  long double std_error = 0;  ///< sqrt(sample variance of S / trials)
};

/// One partial sum per trial, trial t seeded by trial_seed(seed, t).
std::vector<Complex> sample_partial_sums(const PolyProfile& profile, std::uint64_t n, std::uint64_t trials,
                                         std::uint64_t seed, unsigned threads = 1);

/// Moment estimate from precomputed samples, with the exact target from the counting engine.
MomentEstimate moment_from_samples(const PolyProfile& profile, std::uint64_t n, unsigned k,
                                   const std::vector<Complex>& samples, std::uint64_t seed,
                                   const CountOptions& opts = {});

MomentEstimate moment_estimate(const PolyProfile& profile, std::uint64_t n, unsigned k, std::uint64_t trials,
                               std::uint64_t seed, unsigned threads = 1);

MeanEstimate mean_from_samples(const std::vector<Complex>& samples);

/// Fixed-shape pairwise summation; the result depends only on the input order.
long double pairwise_sum(const std::vector<long double>& v);

/// #{(x_1..x_a, y_1..y_b) in [N]^(a+b) : prod P(x_i) = prod P(y_j)}, the empty product being 1.
BigInt mixed_moment_exact(const PolyProfile& profile, std::uint64_t n, unsigned a, unsigned b,
                          const CountOptions& opts = {});

}  // namespace paucity
