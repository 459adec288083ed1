#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace hjq {

// Exact arbitrary-precision rational coefficients. The symbolic path never
// touches floating point; doubles appear only in the numeric flow verifier
// and in the probabilistic zero probe.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string rational_to_string(const Rational& r) {
    BigInt num = numerator(r);
    BigInt den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline BigInt gcd_int(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline BigInt lcm_int(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    BigInt g = gcd_int(a, b);
    BigInt l = (a / g) * b;
    return l < 0 ? -l : l;
}

} // namespace hjq
