#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include <boost/math/tools/toms748_solve.hpp>

namespace centrolab {

/// Bracketed root of f on [lo, hi] via TOMS 748; none if f does not change sign.
template <class F>
std::optional<double> bracketed_root(F&& f, double lo, double hi, double xtol = 1e-14,
                                     std::uintmax_t max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!(std::signbit(flo) != std::signbit(fhi))) return std::nullopt;
    auto tol = [xtol](double a, double b) { return std::abs(b - a) <= xtol * std::max(1.0, std::abs(a)); };
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
    return 0.5 * (r.first + r.second);
}

}  // namespace centrolab
