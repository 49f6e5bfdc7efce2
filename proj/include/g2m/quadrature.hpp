#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "g2m/errors.hpp"

namespace g2m {

/// Composite Gauss-Legendre quadrature controls. Segments subdivide the
/// interval geometrically toward the lower endpoint, where the model paths
/// have their t^2 / t^3 coefficient behaviour.
struct QuadratureSpec {
    int nodes_per_segment = 16;
    int segments = 64;
    double target_rel_tol = 1e-8;
    int max_doublings = 6;
};

struct GaussRule {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
    if (n < 1) throw InputError("gauss_legendre: need at least one node");
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess
        double x = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

/// Segment breakpoints on [a, b], geometric toward a when the interval spans
/// enough dynamic range for that to matter, uniform otherwise.
inline std::vector<double> segment_breakpoints(double a, double b, int segments) {
    if (!(b > a)) throw InputError("segment_breakpoints: need a < b");
    if (segments < 1) throw InputError("segment_breakpoints: need at least one segment");
    std::vector<double> x(static_cast<std::size_t>(segments) + 1);
    x.front() = a;
    x.back() = b;
    if (a > 0.0 && b / a > 4.0) {
        const double ratio = std::pow(b / a, 1.0 / segments);
        double v = a;
        for (int j = 1; j < segments; ++j) {
            v *= ratio;
            x[static_cast<std::size_t>(j)] = v;
        }
    } else {
        const double h = (b - a) / segments;
        for (int j = 1; j < segments; ++j) x[static_cast<std::size_t>(j)] = a + h * j;
    }
    return x;
}

inline double composite_pass(const std::function<double(double)>& f, double a, double b,
                             int segments, int nodes) {
    const GaussRule rule = gauss_legendre(nodes);
    const std::vector<double> bp = segment_breakpoints(a, b, segments);
    double sum = 0.0;
    for (int s = 0; s < segments; ++s) {
        const double lo = bp[static_cast<std::size_t>(s)], hi = bp[static_cast<std::size_t>(s) + 1];
        const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double seg = 0.0;
        for (int i = 0; i < nodes; ++i)
            seg += rule.weights[static_cast<std::size_t>(i)] * f(mid + half * rule.nodes[static_cast<std::size_t>(i)]);
        sum += half * seg;
    }
    return sum;
}

/// Composite Gauss-Legendre with node doubling until two successive passes
/// agree to the target relative tolerance.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        const QuadratureSpec& spec, double* achieved_rel_tol = nullptr) {
    if (!(b > a)) {
        if (b == a) {
            if (achieved_rel_tol) *achieved_rel_tol = 0.0;
            return 0.0;
        }
        throw InputError("integrate: need a <= b");
    }
    int nodes = spec.nodes_per_segment;
    double prev = composite_pass(f, a, b, spec.segments, nodes);
    for (int d = 0; d < spec.max_doublings; ++d) {
        nodes *= 2;
        const double next = composite_pass(f, a, b, spec.segments, nodes);
        const double rel = std::abs(next - prev) / std::max(1.0, std::abs(next));
        if (rel <= spec.target_rel_tol) {
            if (achieved_rel_tol) *achieved_rel_tol = rel;
            return next;
        }
        prev = next;
    }
    const double last = prev;
    const double check = composite_pass(f, a, b, spec.segments, nodes * 2);
    const double rel = std::abs(check - last) / std::max(1.0, std::abs(check));
    throw NumericError("integrate: quadrature did not converge to relative tolerance " +
                       std::to_string(spec.target_rel_tol) + "; achieved " + std::to_string(rel));
}

/// Limit of a tail quantity Q(tau) over tau_k = T 2^{-k}, k <= kmax, with
/// Cauchy detection. On divergence, reports the observed growth exponent p
/// in Q ~ tau^{-p} (p -> 0 indicates logarithmic growth).
struct ImproperResult {
    bool converged = false;
    double value = 0.0;          // limit when converged, last sample otherwise
    double growth_exponent = 0.0;
    int steps = 0;
    std::vector<std::pair<double, double>> sequence;  // (tau_k, Q(tau_k))
};

inline ImproperResult improper_limit(const std::function<double(double)>& q_of_tau, double T,
                                     double rel_tol = 1e-9, int kmax = 40) {
    ImproperResult out;
    double prev = 0.0;
    int agree = 0;
    for (int k = 1; k <= kmax; ++k) {
        const double tau = T * std::ldexp(1.0, -k);
        const double v = q_of_tau(tau);
        out.sequence.emplace_back(tau, v);
        out.steps = k;
        out.value = v;
        if (k > 1) {
            const double rel = std::abs(v - prev) / std::max(1.0, std::abs(v));
            agree = rel <= rel_tol ? agree + 1 : 0;
            if (agree >= 2) {
                out.converged = true;
                return out;
            }
        }
        prev = v;
    }
    const std::size_t n = out.sequence.size();
    if (n >= 2) {
        const double q1 = std::abs(out.sequence[n - 2].second);
        const double q0 = std::abs(out.sequence[n - 1].second);
        if (q1 > 0.0 && q0 > 0.0)
            out.growth_exponent = std::log2(q0 / q1);  // per halving of tau
    }
    return out;
}

}  // namespace g2m
