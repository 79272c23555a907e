#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace centrolab {

// Compare only against Rational values: under C++20 the rewritten
// comparison candidates make boost 1.74 recurse on rational == int.
using Rational = boost::rational<std::int64_t>;

/// Parses "7/5", "-2", "1.4" or "0.125" exactly. Decimal input is read as a
/// finite decimal fraction, so "1.4" is 7/5 rather than the nearest double.
Rational parse_rational(std::string_view text);

/// Best rational approximation with denominator <= max_den, accepted only
/// if it reproduces x within tol.
std::optional<Rational> approximate_rational(double x, std::int64_t max_den = 1'000'000,
                                             double tol = 1e-12);

double to_double(const Rational& r);
std::string to_string(const Rational& r);

/// Rational number or the point at infinity of the projective line.
struct ExtendedRational {
    bool infinite = false;
    Rational value{0};

    static ExtendedRational inf() { return {true, Rational{0}}; }
    static ExtendedRational of(Rational r) { return {false, r}; }

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
        return a.infinite == b.infinite && (a.infinite || a.value == b.value);
    }
    friend bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
        if (a.infinite != b.infinite) return b.infinite;
        return !a.infinite && a.value < b.value;
    }
};

std::string to_string(const ExtendedRational& r);

/// x / y on the projective line; 0/0 is rejected.
ExtendedRational divide(const ExtendedRational& x, const ExtendedRational& y);

}  // namespace centrolab
