#pragma once

#include "lgbqpc/interval_set.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lgbqpc {

/// Coefficients in ascending powers: c[0] + c[1] x + c[2] x^2 + c[3] x^3.
using Cubic = std::array<double, 4>;

inline double evaluate(const Cubic& c, double x) noexcept { return ((c[3] * x + c[2]) * x + c[1]) * x + c[0]; }

inline int degree(const Cubic& c) noexcept {
    for (int d = 3; d >= 0; --d)
        if (c[d] != 0.0) return d;
    return -1;
}

/// (a0 + a1 x) * (b0 + b1 x) * ... for up to three linear factors.
inline Cubic product_of_linear(std::initializer_list<std::array<double, 2>> factors) {
    Cubic out{1.0, 0.0, 0.0, 0.0};
    int deg = 0;
    for (const auto& f : factors) {
        if (deg == 3) throw std::invalid_argument("product exceeds degree 3");
        Cubic next{};
        for (int i = 0; i <= deg; ++i) {
            next[i] += out[i] * f[0];
            next[i + 1] += out[i] * f[1];
        }
        out = next;
        ++deg;
    }
    return out;
}

namespace detail {

// Real roots of a x^2 + b x + c with the cancellation-free formula.
inline std::vector<double> quadratic_roots(double a, double b, double c) {
    if (a == 0.0) {
        if (b == 0.0) return {};
        return {-c / b};
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return {};
    if (disc == 0.0) return {-b / (2.0 * a)};
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    std::vector<double> r{q / a};
    if (q != 0.0) r.push_back(c / q);
    else r.push_back(0.0);
    std::sort(r.begin(), r.end());
    return r;
}

// Bisection on a bracket with p(lo), p(hi) of opposite strict signs; runs until the
// bracket collapses to adjacent doubles.
inline double bisect(const Cubic& c, double lo, double hi) {
    const bool lo_positive = evaluate(c, lo) > 0.0;
    for (int it = 0; it < 2200; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double v = evaluate(c, mid);
        if (v == 0.0) return mid;
        if ((v > 0.0) == lo_positive) lo = mid;
        else hi = mid;
    }
    return lo + 0.5 * (hi - lo);
}

}  // namespace detail

/// Real roots of the polynomial lying in [0, +inf) where its sign changes, plus exact
/// zeros found at segment endpoints. The half-line is cut at the derivative's roots into
/// monotone pieces (bounded above by the Cauchy root bound) and each sign-changing
/// piece is bisected to double precision.
inline std::vector<double> nonnegative_roots(const Cubic& c) {
    const int deg = degree(c);
    if (deg <= 0) return {};

    double bound = 0.0;
    for (int i = 0; i < deg; ++i) bound = std::max(bound, std::abs(c[i] / c[deg]));
    bound += 1.0;

    std::vector<double> cuts{0.0};
    for (const double x : detail::quadratic_roots(3.0 * c[3], 2.0 * c[2], c[1]))
        if (x > 0.0 && x < bound) cuts.push_back(x);
    cuts.push_back(bound);
    std::sort(cuts.begin(), cuts.end());

    std::vector<double> roots;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double lo = cuts[s];
        const double hi = cuts[s + 1];
        const double vlo = evaluate(c, lo);
        const double vhi = evaluate(c, hi);
        if (vlo == 0.0) roots.push_back(lo);
        if ((vlo < 0.0 && vhi > 0.0) || (vlo > 0.0 && vhi < 0.0)) roots.push_back(detail::bisect(c, lo, hi));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

/// Region of [0, +inf) where the polynomial is strictly positive. Breakpoints are the
/// nonnegative roots; each piece is classified by its midpoint (the unbounded tail by
/// the point one past the largest root). Root endpoints are open; 0 is closed when the
/// polynomial is positive there.
inline IntervalSet solve_sign_region(const Cubic& c) {
    for (const double x : c)
        if (!std::isfinite(x)) throw std::invalid_argument("polynomial coefficients must be finite");
    if (degree(c) < 0) return {};

    const auto roots = nonnegative_roots(c);
    std::vector<double> breaks{0.0};
    for (const double r : roots)
        if (r > 0.0) breaks.push_back(r);

    std::vector<Interval> parts;
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        const double lo = breaks[i];
        const bool last = i + 1 == breaks.size();
        const double hi = last ? kInf : breaks[i + 1];
        const double probe = last ? lo + 1.0 : lo + 0.5 * (hi - lo);
        if (evaluate(c, probe) > 0.0) {
            const bool closed_at_zero = i == 0 && evaluate(c, 0.0) > 0.0;
            parts.push_back(Interval{lo, hi, closed_at_zero, false});
        }
    }
    return IntervalSet{std::move(parts)};
}

}  // namespace lgbqpc
