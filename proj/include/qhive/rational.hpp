/**
 * @file rational.hpp
 * Exact rationals (GMP-backed) and small helpers around them.
 */
#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace qhive {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "p", "p/q" or a finite decimal such as "0.125".
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return Rational(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational(BigInt(s));
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    BigInt num = BigInt(whole) * den + (frac.empty() ? BigInt(0) : BigInt(frac));
    Rational r(num, den);
    return neg ? Rational(-r) : r;
}

/// Comma separated list of rationals, e.g. "13/23,6/23,2/23".
inline std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        auto comma = s.find(',', start);
        auto piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!piece.empty()) out.push_back(parse_rational(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

}  // namespace qhive
