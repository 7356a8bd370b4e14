#ifndef TRUNCDIST_NUMERIC_HPP
#define TRUNCDIST_NUMERIC_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace truncdist {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

/// High-precision real for bound evaluation (~166-bit mantissa).
/// All bound formulas are transcendental; regime preconditions are checked
/// in exact integer arithmetic instead, never through this type.
using Real = boost::multiprecision::cpp_bin_float_50;

Int pow2_int(unsigned e);
Int factorial(std::uint64_t n);
Int binomial(std::uint64_t n, std::uint64_t k);
Int binomial(const Int& n, std::uint64_t k);

/// x * (x-1) * ... * (x-k+1); returns 1 for k = 0, and 0 once a factor
/// crosses zero for integer x >= 0.
Int falling_factorial(const Int& x, std::uint64_t k);

Real real_from_rat(const Rat& r);

/// Exact dyadic rational equal to the given float value.
Rat rat_from_real(const Real& x);
Rat rat_from_double(double x);

/// Smallest integer >= r.
Int ceil_rat(const Rat& r);

/// 2^e for real (possibly negative, possibly fractional) exponents.
Real pow2_real(const Real& e);

/// Normalized scientific decimal with `digits` significant digits,
/// round half up, e.g. "1.66666666666666666666666666667e-1".
std::string decimal_string(const Rat& r, unsigned digits = 30);

/// "p/q" (or just "p" for integers).
std::string rat_string(const Rat& r);

/// Deterministic shortest-style formatting with `digits` significant digits.
std::string real_string(const Real& x, unsigned digits = 15);

}  // namespace truncdist

#endif
