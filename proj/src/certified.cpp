#include "paucity/detail/certified.hpp"

#include "paucity/errors.hpp"

namespace paucity::detail {

Interval point(const BigRational& v) { return {v, v}; }

Interval radical(const BigRational& v, unsigned index, unsigned bits) {
  if (sgn(v) < 0) throw DomainError("radical: negative radicand");
  if (index == 1 || sgn(v) == 0) return point(v);
  const BigInt& num = v.get_num();
  const BigInt& den = v.get_den();
  // v^(1/r) = (num * den^(r-1))^(1/r) / den
  BigInt w = num * pow(den, index - 1);
  w <<= static_cast<mp_bitcnt_t>(index) * bits;
  BigInt root;
  const bool is_exact = mpz_root(root.get_mpz_t(), w.get_mpz_t(), index) != 0;
  BigInt scale = den;
  scale <<= bits;
  BigRational lo(root, scale);
  lo.canonicalize();
  if (is_exact) return point(lo);
  BigRational hi(root + 1, scale);
  hi.canonicalize();
  return {lo, hi};
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval operator*(const Interval& a, const Interval& b) { return {a.lo * b.lo, a.hi * b.hi}; }

double approx(const Interval& v) {
  BigRational mid = (v.lo + v.hi) / 2;
  return mid.get_d();
}

bool certified_leq(const BigRational& lhs, const std::function<Interval(unsigned bits)>& refine) {
  for (unsigned bits = 64; bits <= (1u << 15); bits *= 2) {
    Interval x = refine(bits);
    if (lhs <= x.lo) return true;
    if (lhs > x.hi) return false;
  }
  throw InconsistencyError("certified_leq: comparison undecided at maximum precision");
}

}  // namespace paucity::detail
