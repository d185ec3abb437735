#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace kthstop {

// All probabilities in this library are exact rationals: equality checks in
// the verification suites are decidable, never tolerance-based. Backed by
// Boost.Multiprecision (header-only), which keeps values canonical
// (denominator > 0, gcd(num, den) = 1) after every operation.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace detail {

inline BigInt pow10(unsigned e) {
    BigInt p = 1;
    for (unsigned i = 0; i < e; ++i) p *= 10;
    return p;
}

}  // namespace detail

// Decimal rendering with `sig` significant digits, round half away from zero.
// Fixed notation while the exponent is moderate, scientific otherwise.
// The rendering is for humans; serialized values always carry num/den.
inline std::string decimal_string(const Rational& r, int sig = 15) {
    if (sig < 1) throw std::invalid_argument("decimal_string: sig must be >= 1");
    if (r == 0) return "0";

    BigInt p = numerator(r);
    const BigInt q = denominator(r);
    const bool neg = p < 0;
    if (neg) p = -p;

    // exponent e with 10^e <= p/q < 10^(e+1)
    int e = static_cast<int>(p.str().size()) - static_cast<int>(q.str().size());
    {
        BigInt lhs = p, rhs = q;
        if (e >= 0) rhs *= detail::pow10(static_cast<unsigned>(e));
        else        lhs *= detail::pow10(static_cast<unsigned>(-e));
        if (lhs < rhs) --e;
    }

    const int shift = sig - 1 - e;
    BigInt num = p, den = q;
    if (shift >= 0) num *= detail::pow10(static_cast<unsigned>(shift));
    else            den *= detail::pow10(static_cast<unsigned>(-shift));
    BigInt d = num / den;
    const BigInt rem = num - d * den;
    if (2 * rem >= den) ++d;

    std::string digits = d.str();
    if (static_cast<int>(digits.size()) > sig) {  // rounding carried into a new digit
        digits.pop_back();
        ++e;
    }

    std::string out;
    if (e >= -4 && e < sig) {
        if (e >= 0) {
            out = digits.substr(0, e + 1);
            if (e + 1 < sig) out += "." + digits.substr(e + 1);
        } else {
            out = "0." + std::string(-e - 1, '0') + digits;
        }
    } else {
        out = digits.substr(0, 1);
        if (sig > 1) out += "." + digits.substr(1);
        out += "e" + std::string(e < 0 ? "-" : "+") + std::to_string(e < 0 ? -e : e);
    }
    return neg ? "-" + out : out;
}

}  // namespace kthstop
