// Arbitrary-precision integer aliases and small helpers shared by every module.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace gapk {

// Non-negative arbitrary-precision integer. Arithmetic is exact; values with
// thousands of decimal digits are routine in tail scans and Mersenne starts.
using Natural = mpz_class;

// Signed companion for differences d, which may be negative in verification mode.
using Integer = mpz_class;

// Exact number of base-10 digits (0 counts as 1 digit).
std::size_t digits10(const Integer& n);

// base^exp, exact.
Natural pow_natural(const Natural& base, unsigned long exp);

bool fits_u64(const Integer& n);
std::uint64_t to_u64(const Integer& n);

inline bool is_even(const Integer& n) { return mpz_even_p(n.get_mpz_t()) != 0; }
inline bool is_odd(const Integer& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

// n mod m for small m, n >= 0.
std::uint32_t mod_u32(const Natural& n, std::uint32_t m);

}  // namespace gapk
