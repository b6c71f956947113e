#include "paucity/rmf.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <thread>

#include "paucity/errors.hpp"

namespace paucity {

namespace {

constexpr std::uint64_t kMinTrials = 100;

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_big(const BigInt& v) {
  if (fits_u64(v)) return splitmix(to_u64(v));
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  const std::size_t limbs = mpz_size(v.get_mpz_t());
  for (std::size_t i = 0; i < limbs; ++i) h = splitmix(h ^ mpz_getlimbn(v.get_mpz_t(), i));
  return h;
}

}  // namespace

std::uint64_t SteinhausSampler::phase(const BigInt& p) const { return splitmix(splitmix(seed_) ^ hash_big(p)); }

std::uint64_t SteinhausSampler::phase(const Factorization& n) const {
  std::uint64_t total = 0;
  for (const auto& pp : n.pairs) total += phase(pp.prime) * pp.exponent;  // wraps mod 2^64
  return total;
}

Complex unit_from_phase(std::uint64_t phase) {
  const long double turn = std::ldexp(static_cast<long double>(phase), -64);
  const long double angle = 2.0L * std::numbers::pi_v<long double> * turn;
  return {std::cos(angle), std::sin(angle)};
}

Complex SteinhausSampler::f_prime(const BigInt& p) const { return unit_from_phase(phase(p)); }

Complex SteinhausSampler::f_value(const Factorization& n) const { return unit_from_phase(phase(n)); }

Complex SteinhausSampler::f_value(const BigInt& n) const { return f_value(factorize(n)); }

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return splitmix(splitmix(seed) + trial); }

PartialSumPlan::PartialSumPlan(const IntPoly& p, std::uint64_t n0, std::uint64_t n) : n0_(n0), n_(n) {
  if (n <= n0) throw PreconditionError("partial_sum: need N > n0");
  std::map<BigInt, std::uint32_t> index;
  for (std::uint64_t x = n0 + 1; x <= n; ++x) {
    BigInt v = p(from_u64(x));
    if (sgn(v) <= 0) throw PreconditionError("partial_sum: P(" + std::to_string(x) + ") is not positive");
    Factorization f = factorize(v);
    certified_ = certified_ && f.certified;
    Term t;
    for (const auto& pp : f.pairs) {
      auto [it, inserted] = index.emplace(pp.prime, static_cast<std::uint32_t>(primes_.size()));
      if (inserted) primes_.push_back(pp.prime);
      t.factors.emplace_back(it->second, pp.exponent);
    }
    terms_.push_back(std::move(t));
  }
}

Complex PartialSumPlan::evaluate(const SteinhausSampler& f) const {
  std::vector<std::uint64_t> phases(primes_.size());
  for (std::size_t i = 0; i < primes_.size(); ++i) phases[i] = f.phase(primes_[i]);
  Complex s = 0;
  for (const auto& t : terms_) {
    std::uint64_t ph = 0;
    for (const auto& [idx, e] : t.factors) ph += phases[idx] * e;
    s += unit_from_phase(ph);
  }
  return s;
}

Complex partial_sum(const SteinhausSampler& f, const PolyProfile& profile, std::uint64_t n) {
  return PartialSumPlan(profile.p, profile.n0, n).evaluate(f);
}

std::vector<Complex> sample_partial_sums(const PolyProfile& profile, std::uint64_t n, std::uint64_t trials,
                                         std::uint64_t seed, unsigned threads) {
  const PartialSumPlan plan(profile.p, profile.n0, n);
  std::vector<Complex> out(trials);
  threads = std::max(1u, threads);
  auto worker = [&](unsigned t) {
    for (std::uint64_t i = t; i < trials; i += threads) out[i] = plan.evaluate(SteinhausSampler(trial_seed(seed, i)));
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

long double pairwise_sum(const std::vector<long double>& v) {
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> long double {
    if (hi - lo <= 8) {
      long double s = 0;
      for (std::size_t i = lo; i < hi; ++i) s += v[i];
      return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return self(self, lo, mid) + self(self, mid, hi);
  };
  return v.empty() ? 0.0L : rec(rec, 0, v.size());
}

MomentEstimate moment_from_samples(const PolyProfile& profile, std::uint64_t n, unsigned k,
                                   const std::vector<Complex>& samples, std::uint64_t seed, const CountOptions& opts) {
  if (k == 0) throw DomainError("moment_estimate: k must be at least 1");
  if (samples.size() < kMinTrials) throw PreconditionError("moment_estimate: at least 100 trials required");
  const long double norm = std::pow(static_cast<long double>(n), static_cast<long double>(k));
  std::vector<long double> vals(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) vals[i] = std::pow(std::norm(samples[i]), k) / norm;
  const long double trials = static_cast<long double>(samples.size());
  const long double mean = pairwise_sum(vals) / trials;
  std::vector<long double> dev(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) dev[i] = (vals[i] - mean) * (vals[i] - mean);
  const long double var = pairwise_sum(dev) / (trials - 1);

  MomentEstimate m;
  m.k = k;
  m.normalized_estimate = mean;
  m.std_error = std::sqrt(var / trials);
  m.trials = samples.size();
  m.seed = seed;
  m.n = n;
  m.n0_used = profile.n0;
  m.exact_numerator = count_A(profile.p, Box{profile.n0 + 1, n}, k, opts);
  m.exact_target = static_cast<long double>(m.exact_numerator.get_d()) / norm;
  return m;
}

MomentEstimate moment_estimate(const PolyProfile& profile, std::uint64_t n, unsigned k, std::uint64_t trials,
                               std::uint64_t seed, unsigned threads) {
  if (k == 0) throw DomainError("moment_estimate: k must be at least 1");
  if (trials < kMinTrials) throw PreconditionError("moment_estimate: at least 100 trials required");
  return moment_from_samples(profile, n, k, sample_partial_sums(profile, n, trials, seed, threads), seed,
                             CountOptions{threads});
}

MeanEstimate mean_from_samples(const std::vector<Complex>& samples) {
  if (samples.size() < 2) throw PreconditionError("mean_from_samples: need at least two samples");
  std::vector<long double> re(samples.size()), im(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    re[i] = samples[i].real();
    im[i] = samples[i].imag();
  }
  const long double t = static_cast<long double>(samples.size());
  const Complex mean(pairwise_sum(re) / t, pairwise_sum(im) / t);
  std::vector<long double> dev(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) dev[i] = std::norm(samples[i] - mean);
  return {mean, std::sqrt(pairwise_sum(dev) / (t - 1) / t)};
}

BigInt mixed_moment_exact(const PolyProfile& profile, std::uint64_t n, unsigned a, unsigned b,
                          const CountOptions& opts) {
  if (a + b == 0) throw DomainError("mixed_moment_exact: a + b must be at least 1");
  auto side = [&](unsigned m) {
    if (m == 0) return std::map<BigInt, std::uint64_t>{{BigInt(1), 1}};
    return product_multiset(profile.p, Box::upto(n), m, opts).counts;
  };
  const auto ma = side(a);
  const auto mb = side(b);
  const auto& small = ma.size() <= mb.size() ? ma : mb;
  const auto& large = ma.size() <= mb.size() ? mb : ma;
  BigInt total = 0;
  for (const auto& [v, c] : small) {
    auto it = large.find(v);
    if (it != large.end()) total += from_u128(static_cast<u128>(c) * it->second);
  }
  return total;
}

}  // namespace paucity
