#include "centrolab/rational.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

#include "centrolab/error.hpp"

namespace centrolab {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_input: return "invalid input";
        case ErrorKind::domain: return "domain error";
        case ErrorKind::not_closed: return "curve not closed";
        case ErrorKind::not_star_shaped: return "not star-shaped";
        case ErrorKind::wrong_orientation: return "negatively oriented";
        case ErrorKind::convexity_violation: return "symplectic convexity violated";
        case ErrorKind::normalization: return "centroaffine normalization violated";
        case ErrorKind::conic_degenerate: return "degenerate: extremals are conics, p constant";
        case ErrorKind::no_orbit: return "no orbit";
        case ErrorKind::bracketing: return "bracketing failure";
        case ErrorKind::unreachable: return "target unreachable";
        case ErrorKind::closure_defect: return "closure defect";
        case ErrorKind::not_critical: return "not a critical profile";
        case ErrorKind::pole: return "pole";
        case ErrorKind::off_spectrum: return "off spectrum";
        case ErrorKind::branch_unavailable: return "branch unavailable";
        case ErrorKind::non_liftable: return "non-liftable";
        case ErrorKind::margin: return "sign margin failure";
        case ErrorKind::integration_failure: return "integration failure";
    }
    return "unknown";
}

Rational parse_rational(std::string_view text) {
    auto fail = [&] {
        return LabError(ErrorKind::invalid_input, "cannot parse rational '" + std::string(text) + "'");
    };
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.empty()) throw fail();

    auto parse_decimal = [&](std::string_view s) -> Rational {
        s = trim(s);
        bool negative = false;
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
            negative = s.front() == '-';
            s.remove_prefix(1);
        }
        if (s.empty()) throw fail();
        std::int64_t num = 0;
        std::int64_t den = 1;
        bool seen_point = false;
        bool seen_digit = false;
        for (char ch : s) {
            if (ch == '.') {
                if (seen_point) throw fail();
                seen_point = true;
                continue;
            }
            if (!std::isdigit(static_cast<unsigned char>(ch))) throw fail();
            seen_digit = true;
            if (num > (INT64_MAX - 9) / 10) throw fail();
            num = num * 10 + (ch - '0');
            if (seen_point) {
                if (den > INT64_MAX / 10) throw fail();
                den *= 10;
            }
        }
        if (!seen_digit) throw fail();
        return Rational(negative ? -num : num, den);
    };

    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_decimal(text);
    const Rational num = parse_decimal(text.substr(0, slash));
    const Rational den = parse_decimal(text.substr(slash + 1));
    if (den == Rational(0)) throw LabError(ErrorKind::invalid_input, "zero denominator in '" + std::string(text) + "'");
    return num / den;
}

std::optional<Rational> approximate_rational(double x, std::int64_t max_den, double tol) {
    if (!std::isfinite(x)) return std::nullopt;
    // continued-fraction convergents
    std::int64_t h_prev = 1, h = static_cast<std::int64_t>(std::floor(x));
    std::int64_t k_prev = 0, k = 1;
    double frac = x - std::floor(x);
    for (int iter = 0; iter < 64; ++iter) {
        if (std::abs(static_cast<double>(h) / static_cast<double>(k) - x) <= tol) return Rational(h, k);
        if (frac < 1e-300) break;
        const double inv = 1.0 / frac;
        const double a_real = std::floor(inv);
        if (a_real > 1e15) break;
        const auto a = static_cast<std::int64_t>(a_real);
        frac = inv - a_real;
        const std::int64_t h_next = a * h + h_prev;
        const std::int64_t k_next = a * k + k_prev;
        if (k_next > max_den) break;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    if (std::abs(static_cast<double>(h) / static_cast<double>(k) - x) <= tol) return Rational(h, k);
    return std::nullopt;
}

double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(const ExtendedRational& r) {
    return r.infinite ? std::string("inf") : to_string(r.value);
}

ExtendedRational divide(const ExtendedRational& x, const ExtendedRational& y) {
    if (x.infinite && y.infinite) throw LabError(ErrorKind::domain, "inf/inf is undefined");
    if (x.infinite) return ExtendedRational::inf();
    if (y.infinite) return ExtendedRational::of(Rational{0});
    if (y.value == Rational(0)) {
        if (x.value == Rational(0)) throw LabError(ErrorKind::domain, "0/0 is undefined");
        return ExtendedRational::inf();
    }
    return ExtendedRational::of(x.value / y.value);
}

}  // namespace centrolab
