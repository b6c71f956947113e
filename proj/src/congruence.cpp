#include "paucity/congruence.hpp"

#include <algorithm>

#include "paucity/detail/certified.hpp"
#include "paucity/errors.hpp"
#include "paucity/intfactor.hpp"

namespace paucity {

namespace {

constexpr std::uint64_t kPrimeScanLimit = 10'000'000;
constexpr std::uint64_t kModulusLimit = std::uint64_t{1} << 62;

std::vector<std::uint64_t> reduced_coeffs(const IntPoly& q, std::uint64_t m) {
  std::vector<std::uint64_t> out;
  out.reserve(q.coeffs().size());
  for (const auto& c : q.coeffs()) out.push_back(mpz_fdiv_ui(c.get_mpz_t(), m));
  return out;
}

std::uint64_t eval_mod(const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t m) {
  u128 acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = (acc * x + c[i]) % m;
  return static_cast<std::uint64_t>(acc % m);
}

std::vector<std::uint64_t> roots_mod_prime_power(const IntPoly& q, std::uint64_t p, unsigned e) {
  if (p > kPrimeScanLimit)
    throw ResourceError("roots_mod: prime factor " + std::to_string(p) + " above scan limit");
  std::vector<std::uint64_t> roots;
  {
    auto c = reduced_coeffs(q, p);
    for (std::uint64_t r = 0; r < p; ++r)
      if (eval_mod(c, r, p) == 0) roots.push_back(r);
  }
  std::uint64_t pj = p;
  for (unsigned j = 2; j <= e && !roots.empty(); ++j) {
    const std::uint64_t next = pj * p;
    auto c = reduced_coeffs(q, next);
    std::vector<std::uint64_t> lifted;
    for (std::uint64_t r : roots)
      for (std::uint64_t t = 0; t < p; ++t) {
        std::uint64_t cand = r + t * pj;
        if (eval_mod(c, cand, next) == 0) lifted.push_back(cand);
      }
    roots = std::move(lifted);
    pj = next;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  BigInt r;
  BigInt am = from_u64(a), mm = from_u64(m);
  if (mpz_invert(r.get_mpz_t(), am.get_mpz_t(), mm.get_mpz_t()) == 0)
    throw InconsistencyError("roots_mod: CRT moduli not coprime");
  return to_u64(r);
}

std::string str(std::uint64_t v) { return std::to_string(v); }

}  // namespace

const std::string* BoundReport::input(const std::string& name) const {
  for (const auto& [k, v] : inputs)
    if (k == name) return &v;
  return nullptr;
}

std::vector<std::uint64_t> roots_mod(const IntPoly& q, std::uint64_t modulus) {
  if (modulus == 0) throw DomainError("roots_mod: modulus must be positive");
  if (modulus > kModulusLimit) throw ResourceError("roots_mod: modulus above 2^62");
  std::vector<std::uint64_t> acc{0};
  std::uint64_t acc_mod = 1;
  for (const auto& pp : factorize(modulus).pairs) {
    const std::uint64_t p = to_u64(pp.prime);
    auto local = roots_mod_prime_power(q, p, pp.exponent);
    std::uint64_t m = 1;
    for (unsigned i = 0; i < pp.exponent; ++i) m *= p;
    // x = a + acc_mod * ((b - a) * acc_mod^-1 mod m)
    const std::uint64_t inv = inverse_mod(acc_mod % m, m);
    std::vector<std::uint64_t> combined;
    combined.reserve(acc.size() * local.size());
    for (std::uint64_t a : acc)
      for (std::uint64_t b : local) {
        u128 diff = (b + m - a % m) % m;
        u128 t = diff * inv % m;
        combined.push_back(static_cast<std::uint64_t>(a + acc_mod * t));
      }
    acc = std::move(combined);
    acc_mod *= m;
    if (acc.empty()) break;
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

BoundReport huxley_check(const PolyProfile& profile, std::uint64_t l) {
  if (!profile.eligible) throw PreconditionError("huxley_check: ineligible polynomial (" + profile.reason + ")");
  const Factorization f = factorize(l);
  const unsigned w = static_cast<unsigned>(f.pairs.size());
  const BigInt dw = pow(BigInt(profile.d), w);
  const BigInt abs_disc = abs(profile.disc_q);

  BoundReport r;
  r.quantity = "root_count_mod_l";
  r.exact = static_cast<unsigned long>(roots_mod(profile.q, l).size());
  // exact <= d^w sqrt|D|  <=>  exact^2 <= d^(2w) |D|
  r.holds = r.exact * r.exact <= dw * dw * abs_disc;
  detail::Interval b = detail::point(BigRational(dw)) * detail::radical(BigRational(abs_disc), 2, 64);
  r.bound = detail::approx(b);
  if (b.exact()) r.bound_exact = b.lo;
  r.certified = f.certified;
  r.inputs = {{"l", str(l)}, {"d", std::to_string(profile.d)}, {"omega", std::to_string(w)},
              {"disc_q", profile.disc_q.get_str()}};
  return r;
}

std::uint64_t divisibility_count(const IntPoly& p, const BigInt& z, std::uint64_t n) {
  if (sgn(z) <= 0) throw DomainError("divisibility_count: z must be positive");
  if (z <= from_u64(n)) {
    const std::uint64_t m = to_u64(z);
    std::uint64_t count = 0;
    for (std::uint64_t r : roots_mod(p, m)) {
      // members of [1, n] congruent to r mod m
      if (r == 0)
        count += n / m;
      else if (r <= n)
        count += (n - r) / m + 1;
    }
    return count;
  }
  std::uint64_t count = 0;
  for (std::uint64_t x = 1; x <= n; ++x) {
    BigInt v = p(from_u64(x));
    if (mpz_divisible_p(v.get_mpz_t(), z.get_mpz_t())) ++count;
  }
  return count;
}

BoundReport prop22_check(const PolyProfile& profile, const BigInt& z, std::uint64_t n) {
  if (!profile.eligible) throw PreconditionError("prop22_check: ineligible polynomial (" + profile.reason + ")");
  const Factorization f = factorize(z);
  const unsigned w = static_cast<unsigned>(f.pairs.size());
  const unsigned e = profile.e_p;
  const BigInt dw = pow(BigInt(profile.d), w);
  const BigInt abs_disc = abs(profile.disc_q);

  BoundReport r;
  r.quantity = "divisibility_count";
  r.exact = static_cast<unsigned long>(divisibility_count(profile.p, z, n));
  // d^w sqrt|D| (1 + N z^(-1/e)) = d^w sqrt|D| + d^w N (|D|^e / z^2)^(1/(2e))
  const BigRational tail_radicand(pow(abs_disc, e), z * z);
  auto refine = [&](unsigned bits) {
    return detail::point(BigRational(dw)) * detail::radical(BigRational(abs_disc), 2, bits) +
           detail::point(BigRational(dw * from_u64(n))) * detail::radical(tail_radicand, 2 * e, bits);
  };
  r.holds = detail::certified_leq(BigRational(r.exact), refine);
  detail::Interval b = refine(64);
  r.bound = detail::approx(b);
  if (b.exact()) r.bound_exact = b.lo;
  r.certified = f.certified;
  r.inputs = {{"z", z.get_str()},           {"N", str(n)},
              {"d", std::to_string(profile.d)}, {"e_p", std::to_string(e)},
              {"omega", std::to_string(w)},  {"disc_q", profile.disc_q.get_str()}};
  return r;
}

}  // namespace paucity
