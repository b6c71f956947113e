#include "paucity/intfactor.hpp"

#include <algorithm>
#include <map>

#include "paucity/errors.hpp"

namespace paucity {

namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;
constexpr unsigned long kRhoIterations = 20'000'000;

// Deterministic for n < 3317044064679887385961981 with the first 13 primes.
const BigInt& deterministic_mr_limit() {
  static const BigInt limit("3317044064679887385961981");
  return limit;
}

bool miller_rabin(const BigInt& n, unsigned long witness) {
  BigInt n1 = n - 1;
  BigInt d = n1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  d >>= s;
  BigInt a = witness;
  a %= n;
  if (sgn(a) == 0) return true;
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == n1) return true;
    if (x == 1) return false;
  }
  return false;
}

BigInt pollard_brent(const BigInt& n, unsigned long seed) {
  BigInt y = seed % n, c = (seed * 7 + 1) % n, m = 128;
  BigInt g = 1, r = 1, q = 1, x, ys;
  unsigned long iterations = 0;
  auto f = [&](const BigInt& v) -> BigInt { return (v * v + c) % n; };
  while (g == 1) {
    x = y;
    for (BigInt i = 0; i < r; ++i) y = f(y);
    BigInt k = 0;
    while (k < r && g == 1) {
      ys = y;
      BigInt lim = std::min(m, BigInt(r - k));
      for (BigInt i = 0; i < lim; ++i) {
        y = f(y);
        q = q * abs(BigInt(x - y)) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      iterations += to_u64(lim);
      if (iterations > kRhoIterations) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = f(ys);
      BigInt diff = abs(BigInt(x - ys));
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g;
}

void split_large(const BigInt& n, std::map<BigInt, unsigned>& out, bool& certified) {
  if (n == 1) return;
  bool cert = true;
  if (is_prime(n, &cert)) {
    out[n] += 1;
    certified = certified && cert;
    return;
  }
  // Rho cycles poorly on perfect powers; peel them off first.
  for (unsigned long e = bit_length(n); e >= 2; --e) {
    BigInt root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) {
      std::map<BigInt, unsigned> inner;
      split_large(root, inner, certified);
      for (auto& [p, a] : inner) out[p] += a * static_cast<unsigned>(e);
      return;
    }
  }
  for (unsigned long seed = 2; seed < 40; ++seed) {
    BigInt g = pollard_brent(n, seed);
    if (g == 0) break;
    if (g != 1 && g != n) {
      split_large(g, out, certified);
      split_large(n / g, out, certified);
      return;
    }
  }
  throw ResourceError("factorize: could not split cofactor " + n.get_str() + " within budget");
}

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool is_prime(const BigInt& n, bool* certified) {
  if (certified) *certified = true;
  if (n < 2) return false;
  static constexpr unsigned long kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned long p : kWitnesses) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < deterministic_mr_limit()) {
    for (unsigned long w : kWitnesses)
      if (!miller_rabin(n, w)) return false;
    return true;
  }
  if (certified) *certified = false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

BigInt Factorization::value() const {
  BigInt v = 1;
  for (const auto& pp : pairs) v *= pow(pp.prime, pp.exponent);
  return v;
}

Factorization factorize(std::uint64_t n) { return factorize(from_u64(n)); }

Factorization factorize(const BigInt& n) {
  if (sgn(n) <= 0) throw DomainError("factorize: n must be positive, got " + n.get_str());
  Factorization f;
  BigInt rest = n;
  const auto& primes = small_primes();
  std::size_t i = 0;
  for (; i < primes.size() && !fits_u64(rest); ++i) {
    const std::uint32_t p = primes[i];
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    f.pairs.push_back({BigInt(p), e});
  }
  if (fits_u64(rest)) {
    std::uint64_t r = to_u64(rest);
    for (; i < primes.size(); ++i) {
      const std::uint32_t p = primes[i];
      if (std::uint64_t{p} * p > r) break;
      if (r % p != 0) continue;
      unsigned e = 0;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      f.pairs.push_back({BigInt(p), e});
    }
    rest = from_u64(r);
  }
  if (rest == 1) return f;
  // No prime factor <= 10^6 remains, so anything below 10^12 is prime.
  if (rest < BigInt(kTrialLimit) * kTrialLimit) {
    f.pairs.push_back({rest, 1});
    return f;
  }
  std::map<BigInt, unsigned> large;
  split_large(rest, large, f.certified);
  for (auto& [p, e] : large) f.pairs.push_back({p, e});
  std::sort(f.pairs.begin(), f.pairs.end(), [](const auto& a, const auto& b) { return a.prime < b.prime; });
  return f;
}

unsigned omega(const BigInt& n) { return static_cast<unsigned>(factorize(n).pairs.size()); }

BigInt tau_k(const Factorization& f, unsigned k) {
  if (k == 0) throw DomainError("tau_k: k must be positive");
  BigInt t = 1;
  for (const auto& pp : f.pairs) {
    BigInt c;
    mpz_bin_uiui(c.get_mpz_t(), pp.exponent + k - 1, k - 1);
    t *= c;
  }
  return t;
}

BigInt tau_k(const BigInt& n, unsigned k) { return tau_k(factorize(n), k); }

BigInt min_root_cover(const BigInt& z, unsigned e) {
  if (e == 0) throw DomainError("min_root_cover: e must be positive");
  Factorization f = factorize(z);
  BigInt l = 1;
  for (const auto& pp : f.pairs) l *= pow(pp.prime, (pp.exponent + e - 1) / e);
  return l;
}

std::vector<BigInt> divisors(const Factorization& f, std::size_t limit) {
  std::vector<BigInt> out{BigInt(1)};
  for (const auto& pp : f.pairs) {
    const std::size_t base = out.size();
    if (base * (pp.exponent + 1) > limit)
      throw ResourceError("divisors: more than " + std::to_string(limit) + " divisors");
    BigInt pk = 1;
    for (unsigned i = 1; i <= pp.exponent; ++i) {
      pk *= pp.prime;
      for (std::size_t j = 0; j < base; ++j) out.push_back(out[j] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace paucity
