#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "g2m/errors.hpp"

namespace g2m {

/// Polynomial with ascending coefficients: p(t) = sum c[k] t^k.
using Poly = std::vector<double>;

inline double poly_eval(const Poly& p, double t) {
    double v = 0.0;
    for (std::size_t k = p.size(); k-- > 0;) v = v * t + p[k];
    return v;
}

inline Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
    return d;
}

inline int poly_degree(const Poly& p) {
    for (std::size_t k = p.size(); k-- > 0;)
        if (p[k] != 0.0) return static_cast<int>(k);
    return -1;  // zero polynomial
}

namespace detail {

inline double bisect_root(const Poly& p, double lo, double hi) {
    double flo = poly_eval(p, lo);
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = poly_eval(p, mid);
        if (fmid == 0.0) return mid;
        if ((flo < 0.0) != (fmid < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

/// Real roots of p in the closed interval [lo, hi], ascending. Critical
/// points are found recursively through the derivative, so every monotonic
/// stretch is bracketed before bisection.
inline std::vector<double> poly_real_roots(const Poly& p, double lo, double hi) {
    if (!(hi >= lo)) throw InputError("poly_real_roots: need lo <= hi");
    const int deg = poly_degree(p);
    std::vector<double> roots;
    if (deg <= 0) return roots;  // constants (including zero) contribute no isolated roots
    if (deg == 1) {
        const double r = -p[0] / p[1];
        if (r >= lo && r <= hi) roots.push_back(r);
        return roots;
    }
    std::vector<double> breaks = poly_real_roots(poly_derivative(p), lo, hi);
    breaks.insert(breaks.begin(), lo);
    breaks.push_back(hi);
    const double span_tol = 1e-13 * std::max(1.0, std::abs(hi) + std::abs(lo));
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        if (b - a <= span_tol) continue;
        const double fa = poly_eval(p, a), fb = poly_eval(p, b);
        if (fa == 0.0) roots.push_back(a);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0))
            roots.push_back(detail::bisect_root(p, a, b));
    }
    if (poly_eval(p, hi) == 0.0) roots.push_back(hi);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [&](double a, double b) { return std::abs(a - b) <= span_tol; }),
                roots.end());
    return roots;
}

/// Total variation of p on [lo, hi]: sum of |p(x_{k+1}) - p(x_k)| over the
/// partition at the critical points. Equals the integral of |p'|.
inline double poly_total_variation(const Poly& p, double lo, double hi) {
    std::vector<double> breaks = poly_real_roots(poly_derivative(p), lo, hi);
    breaks.insert(breaks.begin(), lo);
    breaks.push_back(hi);
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        tv += std::abs(poly_eval(p, breaks[i + 1]) - poly_eval(p, breaks[i]));
    return tv;
}

/// max |p| over [lo, hi]: attained at an endpoint or a critical point.
inline double poly_sup_abs(const Poly& p, double lo, double hi) {
    double m = std::max(std::abs(poly_eval(p, lo)), std::abs(poly_eval(p, hi)));
    for (double r : poly_real_roots(poly_derivative(p), lo, hi))
        m = std::max(m, std::abs(poly_eval(p, r)));
    return m;
}

}  // namespace g2m
