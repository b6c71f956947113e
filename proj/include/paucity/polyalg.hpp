#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "paucity/bigint.hpp"

namespace paucity {

/// Dense univariate polynomial over Z, coefficients in ascending degree order.
///
/// The zero polynomial is stored as the single coefficient 0 and reports
/// degree -1; every other value has a nonzero top coefficient.
class IntPoly {
 public:
  IntPoly() : coeffs_{BigInt(0)} {}
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }
  static IntPoly monomial(const BigInt& c, std::size_t degree);
  /// The polynomial x.
  static IntPoly x() { return IntPoly{0, 1}; }

  int degree() const { return is_zero() ? -1 : static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && sgn(coeffs_[0]) == 0; }
  const BigInt& leading() const { return coeffs_.back(); }
  std::span<const BigInt> coeffs() const { return coeffs_; }

  /// Coefficient of x^i; zero past the degree.
  BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

  BigInt operator()(const BigInt& x) const;
  BigInt operator()(std::int64_t x) const { return (*this)(from_i64(x)); }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

IntPoly operator+(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a, const IntPoly& b);
IntPoly operator-(const IntPoly& a);
IntPoly operator*(const IntPoly& a, const IntPoly& b);
IntPoly operator*(const BigInt& c, const IntPoly& a);
IntPoly pow(const IntPoly& p, unsigned e);

BigInt eval(const IntPoly& p, const BigInt& n);
IntPoly derivative(const IntPoly& p);
/// gcd of the coefficients, always >= 0.
BigInt content(const IntPoly& p);
/// p / content(p) with the sign chosen so the leading coefficient is positive.
IntPoly primitive_part(const IntPoly& p);
/// p(x + s).
IntPoly shift(const IntPoly& p, const BigInt& s);

struct PseudoDivision {
  IntPoly quotient;
  IntPoly remainder;
};
/// lc(b)^(deg a - deg b + 1) * a = quotient * b + remainder.
PseudoDivision pseudo_divide(const IntPoly& a, const IntPoly& b);

/// b | a in Q[x].
bool divides(const IntPoly& b, const IntPoly& a);
/// b | a in Z[x].
bool divides_over_z(const IntPoly& b, const IntPoly& a);

/// Primitive gcd with positive leading coefficient (primitive remainder sequence).
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// Resultant via the Sylvester determinant (fraction-free Bareiss elimination).
BigInt resultant(const IntPoly& a, const IntPoly& b);

std::string to_string(const IntPoly& p);
/// Comma-separated ascending coefficients, the CLI text format.
std::string to_coeff_string(const IntPoly& p);

/// Accepts either "c0,c1,...,cd" or an expression in x using + - * ^ and parentheses.
IntPoly parse_poly(std::string_view text);

// ---------------------------------------------------------------------------
// Invariants of P used by the bounds.

/// Squarefree kernel Q with Q | P | Q^e in Z[x], positive leading coefficient.
///
/// The polynomial part is pp(P / gcd(P, P')); the content is the smallest c
/// with c | content(P) | c^e, which is 1 for primitive P.
IntPoly squarefree_kernel(const IntPoly& p);

/// Maximum complex root multiplicity e_P: the least e with P | Q^e over Q.
unsigned max_multiplicity(const IntPoly& p);

/// Discriminant of a squarefree polynomial; throws InconsistencyError on a repeated root.
BigInt discriminant(const IntPoly& q);

struct Eligibility {
  bool eligible = false;
  std::string reason;
};

/// True iff P has at least two distinct complex roots.
Eligibility eligibility(const IntPoly& p);

/// Smallest n0 >= 0 with p(n) > 0 for every integer n > n0. Requires a positive leading coefficient.
std::uint64_t positivity_threshold(const IntPoly& p);

struct Normalized {
  IntPoly poly;
  std::uint64_t shift = 0;
};

/// Sign-corrects P and shifts it by n0 so that the result is positive on every n >= 1.
Normalized normalize(const IntPoly& p);

/// Smallest M >= 1 such that for all n >= M, p(n) > max(p(0), ..., p(n-1)) and p(n) >= n^d / 2.
std::uint64_t growth_threshold(const IntPoly& p);

struct PolyProfile {
  IntPoly p;  ///< Input polynomial with its sign flipped if the leading coefficient was negative.
  int d = 0;
  BigInt leading;
  bool eligible = false;
  std::string reason;
  unsigned e_p = 0;
  IntPoly q;
  BigInt disc_q;
  std::uint64_t n0 = 0;
  std::optional<std::uint64_t> m_p;  ///< Absent for degree < 2.
};

/// Computes every invariant at once. Throws DegenerateInput for constant polynomials.
PolyProfile make_profile(const IntPoly& p);

}  // namespace paucity
