#include "paucity/polyalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "paucity/errors.hpp"
#include "paucity/intfactor.hpp"

namespace paucity {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::monomial(const BigInt& c, std::size_t degree) {
  std::vector<BigInt> v(degree + 1, BigInt(0));
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (coeffs_.size() > 1 && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
  if (coeffs_.empty()) coeffs_.emplace_back(0);
}

BigInt IntPoly::operator()(const BigInt& x) const {
  BigInt acc = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
    acc *= x;
    acc += coeffs_[i];
  }
  return acc;
}

BigInt eval(const IntPoly& p, const BigInt& n) { return p(n); }

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> v(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a) {
  std::vector<BigInt> v(a.coeffs().begin(), a.coeffs().end());
  for (auto& c : v) c = -c;
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  auto ac = a.coeffs();
  auto bc = b.coeffs();
  std::vector<BigInt> v(ac.size() + bc.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (sgn(ac[i]) == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) v[i + j] += ac[i] * bc[j];
  }
  return IntPoly(std::move(v));
}

IntPoly operator*(const BigInt& c, const IntPoly& a) {
  std::vector<BigInt> v(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : v) x *= c;
  return IntPoly(std::move(v));
}

IntPoly pow(const IntPoly& p, unsigned e) {
  IntPoly result = IntPoly::constant(1);
  IntPoly base = p;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

IntPoly derivative(const IntPoly& p) {
  auto c = p.coeffs();
  if (c.size() <= 1) return IntPoly();
  std::vector<BigInt> v(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) v[i - 1] = c[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(v));
}

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  BigInt g = content(p);
  if (sgn(p.leading()) < 0) g = -g;
  std::vector<BigInt> v(p.coeffs().begin(), p.coeffs().end());
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

IntPoly shift(const IntPoly& p, const BigInt& s) {
  // Horner in the ring Z[x]: acc = acc * (x + s) + c_i.
  const IntPoly lin(std::vector<BigInt>{s, BigInt(1)});
  auto c = p.coeffs();
  IntPoly acc = IntPoly::constant(c.back());
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * lin + IntPoly::constant(c[i]);
  return acc;
}

PseudoDivision pseudo_divide(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("pseudo_divide: division by the zero polynomial");
  const int db = b.degree();
  if (a.degree() < db) return {IntPoly(), a};
  int remaining = a.degree() - db + 1;
  const BigInt& lc = b.leading();
  IntPoly q;
  IntPoly r = a;
  while (!r.is_zero() && r.degree() >= db) {
    IntPoly s = IntPoly::monomial(r.leading(), static_cast<std::size_t>(r.degree() - db));
    q = lc * q + s;
    r = lc * r - s * b;
    --remaining;
  }
  if (remaining > 0) {
    BigInt scale = pow(lc, static_cast<unsigned long>(remaining));
    q = scale * q;
    r = scale * r;
  }
  return {q, r};
}

bool divides(const IntPoly& b, const IntPoly& a) {
  if (b.is_zero()) return a.is_zero();
  return pseudo_divide(a, b).remainder.is_zero();
}

bool divides_over_z(const IntPoly& b, const IntPoly& a) {
  if (b.is_zero()) return a.is_zero();
  const int db = b.degree();
  IntPoly r = a;
  while (!r.is_zero() && r.degree() >= db) {
    if (!mpz_divisible_p(r.leading().get_mpz_t(), b.leading().get_mpz_t())) return false;
    BigInt t = r.leading() / b.leading();
    r = r - IntPoly::monomial(t, static_cast<std::size_t>(r.degree() - db)) * b;
  }
  return r.is_zero();
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  IntPoly u = primitive_part(a);
  IntPoly v = primitive_part(b);
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    IntPoly r = pseudo_divide(u, v).remainder;
    u = std::move(v);
    v = r.is_zero() ? r : primitive_part(r);
  }
  return primitive_part(u);
}

namespace {

// Bareiss fraction-free determinant; exact over Z.
BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && sgn(m[swap_row][k]) == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  BigInt det = m[n - 1][n - 1];
  return sign < 0 ? BigInt(-det) : det;
}

}  // namespace

BigInt resultant(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int m = a.degree();
  const int n = b.degree();
  if (m == 0) return pow(a.leading(), static_cast<unsigned long>(n));
  if (n == 0) return pow(b.leading(), static_cast<unsigned long>(m));
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<BigInt>> syl(size, std::vector<BigInt>(size, BigInt(0)));
  for (int row = 0; row < n; ++row)
    for (int i = 0; i <= m; ++i) syl[row][row + i] = a.coeff(static_cast<std::size_t>(m - i));
  for (int row = 0; row < m; ++row)
    for (int i = 0; i <= n; ++i) syl[n + row][row + i] = b.coeff(static_cast<std::size_t>(n - i));
  return determinant(std::move(syl));
}

std::string to_string(const IntPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    BigInt c = p.coeff(static_cast<std::size_t>(i));
    if (sgn(c) == 0) continue;
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    BigInt mag = abs(c);
    if (mag != 1 || i == 0) os << mag;
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
    first = false;
  }
  return os.str();
}

std::string to_coeff_string(const IntPoly& p) {
  std::string out;
  for (const auto& c : p.coeffs()) {
    if (!out.empty()) out += ',';
    out += c.get_str();
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_nonconstant(const IntPoly& p, const char* what) {
  if (p.degree() < 1) throw DegenerateInput(std::string(what) + ": zero or constant polynomial");
}

IntPoly radical_part(const IntPoly& p) {
  IntPoly g = gcd(p, derivative(p));
  return primitive_part(pseudo_divide(p, g).quotient);
}

unsigned multiplicity_against(const IntPoly& p, const IntPoly& radical) {
  const IntPoly target = primitive_part(p);
  IntPoly power = radical;
  for (unsigned e = 1; e <= static_cast<unsigned>(p.degree()); ++e) {
    if (divides(target, power)) return e;
    power = power * radical;
  }
  throw InconsistencyError("max_multiplicity: p does not divide any power of its radical up to deg p");
}

// Cauchy bound 1 + ceil(max_{i<d} |c_i| / |lc|); every complex root has modulus below it.
BigInt cauchy_bound(const IntPoly& p) {
  BigInt m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, BigInt(abs(p.coeff(static_cast<std::size_t>(i)))));
  BigInt lc = abs(p.leading());
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), m.get_mpz_t(), lc.get_mpz_t());
  return q + 1;
}

constexpr std::uint64_t kScanLimit = 100'000'000;

std::uint64_t checked_scan_bound(const BigInt& b, const char* what) {
  if (!fits_u64(b) || to_u64(b) > kScanLimit)
    throw ResourceError(std::string(what) + ": scan horizon " + b.get_str() + " exceeds limit");
  return to_u64(b);
}

}  // namespace

unsigned max_multiplicity(const IntPoly& p) {
  require_nonconstant(p, "max_multiplicity");
  return multiplicity_against(p, radical_part(p));
}

IntPoly squarefree_kernel(const IntPoly& p) {
  require_nonconstant(p, "squarefree_kernel");
  const IntPoly radical = radical_part(p);
  const unsigned e = multiplicity_against(p, radical);
  const BigInt c = min_root_cover(content(p), e);
  IntPoly q = c * radical;
  if (!divides_over_z(q, p) || !divides_over_z(p, pow(q, e)))
    throw InconsistencyError("squarefree_kernel: Q | P | Q^e fails for " + to_string(p));
  return q;
}

BigInt discriminant(const IntPoly& q) {
  require_nonconstant(q, "discriminant");
  const int n = q.degree();
  BigInt res = resultant(q, derivative(q));
  BigInt disc;
  mpz_divexact(disc.get_mpz_t(), res.get_mpz_t(), q.leading().get_mpz_t());
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 != 0) disc = -disc;
  if (sgn(disc) == 0) throw InconsistencyError("discriminant: repeated root in " + to_string(q));
  return disc;
}

Eligibility eligibility(const IntPoly& p) {
  if (p.is_zero()) return {false, "zero polynomial"};
  if (p.degree() == 0) return {false, "constant polynomial"};
  if (radical_part(p).degree() >= 2) return {true, ""};
  if (p.degree() == 1) return {false, "linear polynomial: of the form c(ax-r)^m with m=1"};
  return {false, "single distinct complex root: of the form c(ax-r)^m"};
}

std::uint64_t positivity_threshold(const IntPoly& p) {
  if (p.is_zero() || sgn(p.leading()) <= 0)
    throw PreconditionError("positivity_threshold: leading coefficient must be positive");
  if (p.degree() == 0) return 0;
  const std::uint64_t bound = checked_scan_bound(cauchy_bound(p), "positivity_threshold");
  for (std::uint64_t n = bound; n-- > 1;) {
    if (sgn(p(from_u64(n))) <= 0) return n;
  }
  return 0;
}

Normalized normalize(const IntPoly& p) {
  Eligibility el = eligibility(p);
  if (!el.eligible) throw PreconditionError("normalize: ineligible polynomial (" + el.reason + ")");
  IntPoly signed_p = sgn(p.leading()) < 0 ? -p : p;
  const std::uint64_t n0 = positivity_threshold(signed_p);
  return {shift(signed_p, from_u64(n0)), n0};
}

std::uint64_t growth_threshold(const IntPoly& p) {
  if (p.degree() < 2) throw PreconditionError("growth_threshold: degree must be at least 2");
  if (sgn(p.leading()) <= 0) throw PreconditionError("growth_threshold: leading coefficient must be positive");
  const int d = p.degree();

  BigInt abs_sum = 0;
  for (const auto& c : p.coeffs()) abs_sum += abs(c);
  // ceil(S / (lc - 1/2)) = ceil(2S / (2 lc - 1))
  BigInt half_horizon;
  BigInt num = 2 * abs_sum;
  BigInt den = 2 * p.leading() - 1;
  mpz_cdiv_q(half_horizon.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  BigInt horizon = std::max(half_horizon, BigInt(1 + cauchy_bound(derivative(p)))) + 1;
  const std::uint64_t h = checked_scan_bound(horizon, "growth_threshold");

  // Past h, p is increasing and above n^d/2, so the first n >= h where the
  // running-max condition holds ends the scan.
  BigInt running_max = p(BigInt(0));
  std::uint64_t last_failure = 0;
  for (std::uint64_t n = 1;; ++n) {
    BigInt v = p(from_u64(n));
    bool ok = v > running_max && 2 * v >= pow(from_u64(n), static_cast<unsigned long>(d));
    if (!ok) last_failure = n;
    if (v > running_max) running_max = v;
    if (n >= h && ok) break;
    if (n > kScanLimit) throw ResourceError("growth_threshold: scan exceeded limit");
  }
  return last_failure + 1;
}

PolyProfile make_profile(const IntPoly& p) {
  require_nonconstant(p, "make_profile");
  PolyProfile prof;
  prof.p = sgn(p.leading()) < 0 ? -p : p;
  prof.d = prof.p.degree();
  prof.leading = prof.p.leading();
  Eligibility el = eligibility(prof.p);
  prof.eligible = el.eligible;
  prof.reason = el.reason;
  prof.e_p = max_multiplicity(prof.p);
  prof.q = squarefree_kernel(prof.p);
  prof.disc_q = discriminant(prof.q);
  prof.n0 = positivity_threshold(prof.p);
  if (prof.d >= 2) prof.m_p = growth_threshold(prof.p);
  return prof;
}

}  // namespace paucity
