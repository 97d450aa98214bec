#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace tdq {

// Exact arithmetic used throughout the linear layer. No floating point anywhere.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// Accepts "p", "-p", "p/q"; denominator must be nonzero.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt p(s.substr(0, slash));
        BigInt q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator");
        return Rational(p, q);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

// Always emits "p/q" with q > 0 and gcd(p, q) = 1.
inline std::string rational_to_string(const Rational& r) {
    return rat_num(r).str() + "/" + rat_den(r).str();
}

} // namespace tdq
