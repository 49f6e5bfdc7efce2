#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "g2m/errors.hpp"
#include "g2m/poly.hpp"
#include "g2m/quadrature.hpp"

namespace g2m {

/// Fully symmetric n-linear intersection form on an r-dimensional class
/// space, stored dense (r <= 8, n in {2, 3} keeps contraction exhaustive).
class IntersectionForm {
public:
    IntersectionForm(int rank, int n) : rank_(rank), n_(n) {
        if (rank < 1 || rank > 8) throw InputError("IntersectionForm: rank must be in 1..8");
        if (n < 2 || n > 3) throw InputError("IntersectionForm: total degree must be 2 or 3");
        std::size_t size = 1;
        for (int k = 0; k < n; ++k) size *= static_cast<std::size_t>(rank);
        tensor_.assign(size, 0.0);
    }

    int rank() const { return rank_; }
    int degree() const { return n_; }

    /// Sets the coefficient on every permutation of the index tuple.
    void set_symmetric(std::span<const int> indices, double value) {
        if (static_cast<int>(indices.size()) != n_)
            throw InputError("IntersectionForm: index tuple length must equal the degree");
        for (int i : indices)
            if (i < 0 || i >= rank_) throw InputError("IntersectionForm: index out of range");
        std::vector<int> perm(indices.begin(), indices.end());
        std::sort(perm.begin(), perm.end());
        do {
            tensor_[flat(perm)] = value;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    double entry(std::span<const int> indices) const { return tensor_[flat(indices)]; }

    /// Q(v_1, ..., v_n)
    double contract(std::span<const std::vector<double>> args) const {
        if (static_cast<int>(args.size()) != n_)
            throw InputError("IntersectionForm: contraction needs one vector per slot");
        for (const auto& v : args)
            if (static_cast<int>(v.size()) != rank_)
                throw InputError("IntersectionForm: class vector has wrong dimension");
        double sum = 0.0;
        if (n_ == 2) {
            for (int i = 0; i < rank_; ++i)
                for (int j = 0; j < rank_; ++j)
                    sum += tensor_[static_cast<std::size_t>(i * rank_ + j)] * args[0][static_cast<std::size_t>(i)] *
                           args[1][static_cast<std::size_t>(j)];
        } else {
            for (int i = 0; i < rank_; ++i)
                for (int j = 0; j < rank_; ++j)
                    for (int k = 0; k < rank_; ++k)
                        sum += tensor_[static_cast<std::size_t>((i * rank_ + j) * rank_ + k)] *
                               args[0][static_cast<std::size_t>(i)] * args[1][static_cast<std::size_t>(j)] *
                               args[2][static_cast<std::size_t>(k)];
        }
        return sum;
    }

    /// Q(a, b, ..., b) with a once and b in the remaining n-1 slots
    double contract_1(const std::vector<double>& a, const std::vector<double>& b) const {
        std::vector<std::vector<double>> args{a};
        for (int k = 1; k < n_; ++k) args.push_back(b);
        return contract(args);
    }

    /// Q(a, a, b, ..., b) with a twice
    double contract_2(const std::vector<double>& a, const std::vector<double>& b) const {
        std::vector<std::vector<double>> args{a, a};
        for (int k = 2; k < n_; ++k) args.push_back(b);
        return contract(args);
    }

    double full(const std::vector<double>& w) const {
        std::vector<std::vector<double>> args(static_cast<std::size_t>(n_), w);
        return contract(args);
    }

private:
    std::size_t flat(std::span<const int> idx) const {
        std::size_t f = 0;
        for (int i : idx) f = f * static_cast<std::size_t>(rank_) + static_cast<std::size_t>(i);
        return f;
    }

    int rank_, n_;
    std::vector<double> tensor_;
};

using ConeClass = std::vector<double>;

/// Vol(w) = Q(w, ..., w) / n!
inline double volume(const ConeClass& w, const IntersectionForm& q) {
    double fact = 1.0;
    for (int k = 2; k <= q.degree(); ++k) fact *= k;
    return q.full(w) / fact;
}

namespace detail {

/// Vol(alpha + t omega) as a polynomial in t (degree <= n), by binomial
/// expansion of the n-fold contraction.
inline Poly segment_volume_poly(const ConeClass& alpha, const ConeClass& omega,
                                const IntersectionForm& q) {
    const int n = q.degree();
    double fact = 1.0;
    for (int k = 2; k <= n; ++k) fact *= k;
    Poly p(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        std::vector<std::vector<double>> args;
        for (int s = 0; s < n - k; ++s) args.push_back(alpha);
        for (int s = 0; s < k; ++s) args.push_back(omega);
        double binom = 1.0;
        for (int s = 0; s < k; ++s) binom = binom * (n - s) / (s + 1);
        p[static_cast<std::size_t>(k)] = binom * q.contract(args) / fact;
    }
    return p;
}

/// Exact minimum of a polynomial over [lo, hi]: endpoints plus critical
/// points. Returns (min value, arg min).
inline std::pair<double, double> poly_min_on(const Poly& p, double lo, double hi) {
    double best = poly_eval(p, lo), arg = lo;
    const double at_hi = poly_eval(p, hi);
    if (at_hi < best) {
        best = at_hi;
        arg = hi;
    }
    for (double r : poly_real_roots(poly_derivative(p), lo, hi)) {
        const double v = poly_eval(p, r);
        if (v < best) {
            best = v;
            arg = r;
        }
    }
    return {best, arg};
}

}  // namespace detail

/// Toy positive component: w belongs iff its volume is positive and the
/// volume stays positive along the straight segment to the reference. The
/// segment volume is a polynomial of degree <= 3, so its minimum over the
/// segment is located exactly rather than sampled; even-order zeros on the
/// way to the opposite component cannot slip through.
inline bool in_cone(const ConeClass& w, const IntersectionForm& q, const ConeClass& reference) {
    if (!(volume(reference, q) > 0.0))
        throw InputError("in_cone: reference class must have positive volume");
    if (volume(w, q) <= 0.0) return false;
    ConeClass dir(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) dir[i] = w[i] - reference[i];
    const Poly p = detail::segment_volume_poly(reference, dir, q);
    double scale = 0.0;
    for (double c : p) scale = std::max(scale, std::abs(c));
    return detail::poly_min_on(p, 0.0, 1.0).first > 1e-12 * scale;
}

enum class BoundaryDistance { finite, infinite };

inline const char* boundary_distance_name(BoundaryDistance d) {
    return d == BoundaryDistance::finite ? "finite" : "infinite";
}

/// Volume dichotomy for a boundary class: zero volume marks an
/// infinite-distance limit, positive volume a finite-distance one.
inline BoundaryDistance classify_boundary(const ConeClass& alpha, const IntersectionForm& q) {
    const double v = volume(alpha, q);
    if (v < -1e-12)
        throw InputError("classify_boundary: class has negative volume, not a boundary limit "
                         "of the positive component");
    return std::abs(v) <= 1e-12 ? BoundaryDistance::infinite : BoundaryDistance::finite;
}

namespace detail {

inline ConeClass segment_point(const ConeClass& alpha, const ConeClass& omega, double t) {
    ConeClass w(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) w[i] = alpha[i] + t * omega[i];
    return w;
}

inline void require_segment_in_cone(const ConeClass& alpha, const ConeClass& omega,
                                    const IntersectionForm& q, double tau) {
    const Poly p = segment_volume_poly(alpha, omega, q);
    double scale = 0.0;
    for (double c : p) scale = std::max(scale, std::abs(c));
    const auto [min_vol, arg] = poly_min_on(p, tau, 1.0);
    if (!(min_vol > 1e-14 * scale))
        throw InputError("segment exits the positive cone at t=" + std::to_string(arg));
}

/// second derivative of -log Vol along t -> alpha + t omega
inline double segment_hessian(const ConeClass& alpha, const ConeClass& omega,
                              const IntersectionForm& q, double t) {
    const ConeClass wt = segment_point(alpha, omega, t);
    const int n = q.degree();
    const double qv = q.full(wt);
    const double qp = n * q.contract_1(omega, wt);
    const double qpp = n > 1 ? n * (n - 1) * q.contract_2(omega, wt) : 0.0;
    return -qpp / qv + (qp / qv) * (qp / qv);
}

}  // namespace detail

/// Energy of the affine segment {alpha + t omega, t in [tau, 1]} for the
/// -log Vol Hessian metric, in closed form:
///   E = n Q(omega, w_tau^{n-1}) / Q(w_tau^n) - n Q(omega, w_1^{n-1}) / Q(w_1^n).
inline double segment_energy(const ConeClass& alpha, const ConeClass& omega,
                             const IntersectionForm& q, double tau) {
    if (alpha.size() != omega.size() || static_cast<int>(alpha.size()) != q.rank())
        throw InputError("segment_energy: class dimensions must match the form rank");
    if (!(tau >= 0.0 && tau <= 1.0)) throw InputError("segment_energy: need 0 <= tau <= 1");
    if (tau == 1.0) return 0.0;
    detail::require_segment_in_cone(alpha, omega, q, tau);
    const int n = q.degree();
    auto minus_dlog = [&](double t) {
        const ConeClass wt = detail::segment_point(alpha, omega, t);
        return n * q.contract_1(omega, wt) / q.full(wt);
    };
    return minus_dlog(tau) - minus_dlog(1.0);
}

/// Same energy by direct quadrature of the Hessian along the segment; the
/// independent route the closed form is checked against.
inline double segment_energy_quadrature(const ConeClass& alpha, const ConeClass& omega,
                                        const IntersectionForm& q, double tau,
                                        const QuadratureSpec& spec = {}) {
    if (tau == 1.0) return 0.0;
    detail::require_segment_in_cone(alpha, omega, q, tau);
    return integrate([&](double t) { return detail::segment_hessian(alpha, omega, q, t); }, tau,
                     1.0, spec);
}

/// Length of the segment: quadrature of the square root of the Hessian.
inline double segment_length(const ConeClass& alpha, const ConeClass& omega,
                             const IntersectionForm& q, double tau,
                             const QuadratureSpec& spec = {}) {
    if (alpha.size() != omega.size() || static_cast<int>(alpha.size()) != q.rank())
        throw InputError("segment_length: class dimensions must match the form rank");
    if (!(tau >= 0.0 && tau <= 1.0)) throw InputError("segment_length: need 0 <= tau <= 1");
    if (tau == 1.0) return 0.0;
    detail::require_segment_in_cone(alpha, omega, q, tau);
    return integrate(
        [&](double t) { return std::sqrt(std::max(detail::segment_hessian(alpha, omega, q, t), 0.0)); },
        tau, 1.0, spec);
}

/// Scan toward the boundary along tau_k = 2^{-k}: energies and lengths of
/// the truncated segments, the volume classification of alpha, and whether
/// the energy stabilizes, realizing the dichotomy numerically.
struct BoundaryScanRow {
    double tau = 0.0;
    double energy = 0.0;
    double length = 0.0;
};

struct BoundaryScan {
    std::vector<BoundaryScanRow> rows;
    BoundaryDistance classification = BoundaryDistance::finite;
    double volume_alpha = 0.0;
    bool energy_converged = false;
    double energy_limit = 0.0;      // last value when not converged
    double energy_growth_exponent = 0.0;  // energy ~ tau^{-p} when diverging
};

inline BoundaryScan boundary_scan(const ConeClass& alpha, const ConeClass& omega,
                                  const IntersectionForm& q, int kmax = 30,
                                  double rel_tol = 1e-9) {
    BoundaryScan scan;
    scan.volume_alpha = volume(alpha, q);
    scan.classification = classify_boundary(alpha, q);
    ImproperResult lim = improper_limit(
        [&](double tau) { return segment_energy(alpha, omega, q, tau); }, 1.0, rel_tol, kmax);
    scan.energy_converged = lim.converged;
    scan.energy_limit = lim.value;
    scan.energy_growth_exponent = lim.growth_exponent;
    for (const auto& [tau, energy] : lim.sequence) {
        BoundaryScanRow row;
        row.tau = tau;
        row.energy = energy;
        row.length = segment_length(alpha, omega, q, tau);
        scan.rows.push_back(row);
    }
    return scan;
}

/// Hyperbolic rank-2 surface form Q((x,y),(x',y')) = x y' + x' y.
inline IntersectionForm hyperbolic_form() {
    IntersectionForm q(2, 2);
    const int idx[2] = {0, 1};
    q.set_symmetric(idx, 1.0);
    return q;
}

}  // namespace g2m
