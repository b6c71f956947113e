#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace paucity {

using BigInt = mpz_class;
using BigRational = mpq_class;
using u128 = unsigned __int128;

inline bool fits_u64(const BigInt& v) { return sgn(v) >= 0 && mpz_fits_ulong_p(v.get_mpz_t()); }

inline std::uint64_t to_u64(const BigInt& v) { return mpz_get_ui(v.get_mpz_t()); }

inline BigInt from_u64(std::uint64_t v) {
  BigInt r;
  mpz_set_ui(r.get_mpz_t(), v);
  return r;
}

inline BigInt from_u128(u128 v) {
  BigInt r = from_u64(static_cast<std::uint64_t>(v >> 64));
  r <<= 64;
  r += from_u64(static_cast<std::uint64_t>(v));
  return r;
}

inline BigInt from_i64(std::int64_t v) {
  BigInt r;
  mpz_set_si(r.get_mpz_t(), v);
  return r;
}

inline std::size_t bit_length(const BigInt& v) {
  return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

inline BigInt pow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

}  // namespace paucity
