#pragma once

#include <functional>

#include "paucity/bigint.hpp"

namespace paucity::detail {

/// Closed rational interval [lo, hi] of nonnegative reals; lo == hi when the value is known exactly.
struct Interval {
  BigRational lo;
  BigRational hi;

  bool exact() const { return lo == hi; }
};

Interval point(const BigRational& v);

/// v^(1/index) for v >= 0, bracketed with width at most 1 / (den(v) * 2^bits).
/// Degenerates to a point when v is a perfect index-th power of a rational.
Interval radical(const BigRational& v, unsigned index, unsigned bits);

Interval operator+(const Interval& a, const Interval& b);
/// Product of two nonnegative intervals.
Interval operator*(const Interval& a, const Interval& b);

double approx(const Interval& v);

/// Decides lhs <= x where `refine(bits)` brackets x ever more tightly as bits grows.
/// Terminates whenever x is irrational or its bracket collapses to a point;
/// throws InconsistencyError if still undecided at the precision cap.
bool certified_leq(const BigRational& lhs, const std::function<Interval(unsigned bits)>& refine);

}  // namespace paucity::detail
