#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paucity/bigint.hpp"
#include "paucity/congruence.hpp"
#include "paucity/polyalg.hpp"

namespace paucity {

/// Closed integer interval [lo, hi]; empty when hi < lo.
struct Box {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;

  static Box upto(std::uint64_t n) { return {1, n}; }
  std::uint64_t size() const { return hi < lo ? 0 : hi - lo + 1; }
  friend bool operator==(const Box&, const Box&) = default;
};

struct CountOptions {
  unsigned threads = 1;
  std::size_t memory_budget = std::size_t{2} << 30;
};

/// Values p(lo), ..., p(hi). Throws PreconditionError if any value is <= 0:
/// zero products are never silently dropped, the caller normalizes instead.
std::vector<BigInt> box_values(const IntPoly& p, Box box);

/// Multiplicity of each product p(x_1) ... p(x_k) over ordered tuples.
struct ProductMultiset {
  std::map<BigInt, std::uint64_t> counts;
  Box box;
  unsigned k = 0;
  std::string poly_id;

  BigInt mass() const;
  /// Sum of squared multiplicities.
  BigInt sum_of_squares() const;
  /// Pointwise sum; both sides must describe the same polynomial, box and k.
  void merge(const ProductMultiset& other);

  friend bool operator==(const ProductMultiset&, const ProductMultiset&) = default;
};

/// Full multiset over box^k, by k-1 successive multiplicative convolutions.
ProductMultiset product_multiset(const IntPoly& p, Box box, unsigned k, const CountOptions& opts = {});
ProductMultiset product_multiset(const PolyProfile& profile, std::uint64_t n, unsigned k,
                                 const CountOptions& opts = {});
/// Same, restricted to tuples whose first coordinate lies in `outer`, a sub-interval of `box`.
ProductMultiset product_multiset_partial(const IntPoly& p, Box box, unsigned k, Box outer,
                                         const CountOptions& opts = {});

struct CountStats {
  BigInt a;
  std::uint64_t distinct_keys = 0;
  unsigned passes = 0;
  std::string key_width;  ///< "u64", "u128" or "mpz"
};

/// A_{P,2k} over box: sum over product values of multiplicity squared.
///
/// Enumerates multisets {x_1 <= ... <= x_k} with weight k!/prod(run!) and
/// fixed-width keys when the largest product fits. Keys are hash-partitioned
/// into passes so that each worker's buffer stays within its share of the
/// memory budget. The result does not depend on the thread count.
CountStats count_A_stats(const IntPoly& p, Box box, unsigned k, const CountOptions& opts = {});
BigInt count_A(const IntPoly& p, Box box, unsigned k, const CountOptions& opts = {});
BigInt count_A(const PolyProfile& profile, std::uint64_t n, unsigned k, const CountOptions& opts = {});

/// Ordered pairs of k-tuples over [N] that are rearrangements of each other.
BigInt trivial_count(std::uint64_t n, unsigned k);

struct SolutionTally {
  BigInt a_count;
  BigInt trivial;
  BigInt nontrivial;
  std::optional<BigInt> r_count;       ///< y_k = max(y) = max(x) = x_k
  std::optional<BigInt> nprime_count;  ///< y_k = max(y) > max(x)
  std::uint64_t n = 0;
  unsigned k = 0;
};

struct TallyOptions {
  CountOptions count;
  /// The R / N' split enumerates all N^k tuples; skipped above this.
  std::uint64_t enumeration_limit = 4'000'000;
};

/// Core counts always; R and N' when N^k is within the enumeration limit, in
/// which case nontrivial <= k^2 R + 2k N' is checked (InconsistencyError otherwise).
SolutionTally tally(const PolyProfile& profile, std::uint64_t n, unsigned k, const TallyOptions& opts = {});

/// Multiplicity of each value p(x), x in [1, N].
class ValueIndex {
 public:
  ValueIndex(const IntPoly& p, std::uint64_t n);
  std::uint64_t count(const BigInt& v) const;
  std::uint64_t n() const { return n_; }

 private:
  std::map<BigInt, std::uint64_t> counts_;
  std::uint64_t n_;
};

/// G_{P,lambda}([N], z) = #{(x, a, b) in [N] x [lambda]^2 : a z = b p(x), a < b}.
std::uint64_t g_count(const ValueIndex& index, const BigInt& z, std::uint64_t lambda);
std::uint64_t g_count(const IntPoly& p, std::uint64_t n, const BigInt& z, std::uint64_t lambda);

/// T = #{x in [N]^k : z | p(x_1)...p(x_k), every p(x_i) < z}, by dynamic
/// programming over the divisor lattice of z on the state gcd(z, running product).
BigInt t_count(const IntPoly& p, std::uint64_t n, unsigned k, const BigInt& z);

/// T against k G N^(k-1) + tau_k(z) (C d^omega(z))^k |Delta_Q|^(k/2)
///   (N^k / z^(1/e) + N^(k-1) / lambda^(1/e) + N^(k-2)).
/// Always advisory: C stands in for an implicit constant.
BoundReport cor24_report(const PolyProfile& profile, std::uint64_t n, unsigned k, const BigInt& z,
                         std::uint64_t lambda, const BigRational& c);

/// floor(N^(1/6)) and floor(M(P) N^(1/4)), the parameter choices of the main argument.
std::uint64_t default_lambda(std::uint64_t n);
std::uint64_t default_m(std::uint64_t m_p, std::uint64_t n);

}  // namespace paucity
