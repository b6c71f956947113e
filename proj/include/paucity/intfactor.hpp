#pragma once

#include <cstdint>
#include <vector>

#include "paucity/bigint.hpp"

namespace paucity {

struct PrimePower {
  BigInt prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization with primes strictly increasing.
///
/// `certified` is false when some prime factor is above the deterministic
/// Miller-Rabin range and was only accepted as a probable prime.
struct Factorization {
  std::vector<PrimePower> pairs;
  bool certified = true;

  BigInt value() const;
};

/// Trial division to 10^6, then Pollard-Brent splitting with an iteration budget.
///
/// Throws DomainError for n <= 0 and ResourceError naming the cofactor that
/// could not be split within budget.
Factorization factorize(const BigInt& n);
Factorization factorize(std::uint64_t n);

/// Miller-Rabin with the first 13 primes as witnesses: deterministic below
/// 3.317e24. Above that, GMP's probabilistic test (error well below 2^-64).
bool is_prime(const BigInt& n, bool* certified = nullptr);

/// omega(n): number of distinct prime factors.
unsigned omega(const BigInt& n);

/// tau_k(n): ordered factorizations of n into k positive factors.
BigInt tau_k(const BigInt& n, unsigned k);
BigInt tau_k(const Factorization& f, unsigned k);

/// Smallest l >= 1 with z | l^e, i.e. prod p^ceil(a_p / e).
BigInt min_root_cover(const BigInt& z, unsigned e);

/// All positive divisors in increasing order. ResourceError past `limit` divisors.
std::vector<BigInt> divisors(const Factorization& f, std::size_t limit = 1u << 22);

/// Primes up to 10^6, computed once.
const std::vector<std::uint32_t>& small_primes();

}  // namespace paucity
