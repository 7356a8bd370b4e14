#include "truncdist/numeric.hpp"

#include <gmp.h>

#include <sstream>
#include <stdexcept>

namespace truncdist {

Int pow2_int(unsigned e) { return Int(1) << e; }

Int factorial(std::uint64_t n) {
    Int r;
    mpz_fac_ui(r.backend().data(), static_cast<unsigned long>(n));
    return r;
}

Int binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    Int r;
    mpz_bin_uiui(r.backend().data(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

Int binomial(const Int& n, std::uint64_t k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (n < Int(k)) return 0;
    Int num = 1;
    for (std::uint64_t i = 0; i < k; ++i) num *= n - Int(i);
    return num / factorial(k);
}

Int falling_factorial(const Int& x, std::uint64_t k) {
    Int r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        Int f = x - Int(i);
        if (f <= 0) return 0;
        r *= f;
    }
    return r;
}

Real real_from_rat(const Rat& r) {
    return Real(numerator(r)) / Real(denominator(r));
}

Rat rat_from_real(const Real& x) {
    return Rat(x);  // cpp_bin_float values are dyadic; conversion is exact
}

Rat rat_from_double(double x) { return Rat(x); }

Int ceil_rat(const Rat& r) {
    Int n = numerator(r), d = denominator(r);  // d > 0 canonical
    Int q = n / d, rem = n % d;
    if (rem > 0) ++q;
    return q;
}

Real pow2_real(const Real& e) { return pow(Real(2), e); }

std::string rat_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string decimal_string(const Rat& r, unsigned digits) {
    if (digits == 0) digits = 1;
    if (r == 0) return "0";
    const bool neg = r < 0;
    Int a = abs(numerator(r)), b = denominator(r);

    // Initial decimal-exponent guess from digit counts, then correct by
    // rescaling until the rounded mantissa has exactly `digits` digits.
    long e = static_cast<long>(a.str().size()) - static_cast<long>(b.str().size());
    Int lo = pow(Int(10), digits - 1), hi = lo * 10;
    Int mant;
    for (;;) {
        long s = static_cast<long>(digits) - 1 - e;
        Int num = a, den = b;
        if (s >= 0)
            num *= pow(Int(10), static_cast<unsigned>(s));
        else
            den *= pow(Int(10), static_cast<unsigned>(-s));
        mant = (2 * num + den) / (2 * den);  // round half up
        if (mant >= hi) {
            ++e;
            continue;
        }
        if (mant < lo) {
            --e;
            continue;
        }
        break;
    }
    std::string ds = mant.str();
    std::string out = neg ? "-" : "";
    out += ds.substr(0, 1);
    if (digits > 1) out += "." + ds.substr(1);
    out += "e" + std::to_string(e);
    return out;
}

std::string real_string(const Real& x, unsigned digits) {
    return x.str(digits);
}

}  // namespace truncdist
