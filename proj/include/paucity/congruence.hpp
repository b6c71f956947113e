#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paucity/bigint.hpp"
#include "paucity/polyalg.hpp"

namespace paucity {

/// One exact-vs-bound comparison.
///
/// `holds` is decided exactly: rational comparison when the bound is
/// rational, otherwise certified interval refinement of the radicals. The
/// `bound` double is for display only. `advisory` marks bounds whose
/// constant is implicit in the source statement; `holds` then refers to the
/// constant recorded under inputs["C"].
struct BoundReport {
  std::string quantity;
  BigInt exact;
  double bound = 0.0;
  std::optional<BigRational> bound_exact;
  bool holds = false;
  bool advisory = false;
  /// False when some factorization behind omega/tau was only a probable-prime result.
  bool certified = true;
  std::vector<std::pair<std::string, std::string>> inputs;

  const std::string* input(const std::string& name) const;
};

/// Residues r in [0, modulus) with q(r) = 0 mod modulus, ascending.
///
/// Per prime power: roots mod p by scanning all residues, then every lift
/// r + t p^j (t < p) is tested when going from p^j to p^(j+1); this is exact
/// at singular roots. Prime powers are combined by CRT.
std::vector<std::uint64_t> roots_mod(const IntPoly& q, std::uint64_t modulus);

/// #{x mod l : Q(x) = 0 mod l} against d^omega(l) |Delta_Q|^(1/2), with d = deg P.
BoundReport huxley_check(const PolyProfile& profile, std::uint64_t l);

/// #{x in [N] : z | p(x)}.
std::uint64_t divisibility_count(const IntPoly& p, const BigInt& z, std::uint64_t n);

/// divisibility_count against d^omega(z) |Delta_Q|^(1/2) (1 + N / z^(1/e_P)).
BoundReport prop22_check(const PolyProfile& profile, const BigInt& z, std::uint64_t n);

}  // namespace paucity
