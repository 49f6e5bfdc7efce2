#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "g2m/forms.hpp"
#include "g2m/g2point.hpp"
#include "g2m/linalg.hpp"

namespace g2m {

/// Full-rank lattice in R^7; columns of the basis matrix span it.
class Lattice {
public:
    static Lattice cubic(double side = 1.0) {
        Mat b = Mat::identity(7);
        for (double& v : b.data()) v *= side;
        return from_basis(b);
    }

    static Lattice from_basis(const Mat& basis) {
        if (basis.rows() != 7 || basis.cols() != 7)
            throw InputError("Lattice: basis must be 7x7");
        const double det = determinant(basis);
        if (!(std::abs(det) > 1e-14))
            throw InputError("Lattice: basis determinant is zero");
        Lattice l;
        l.basis_ = basis;
        l.covolume_ = std::abs(det);
        return l;
    }

    const Mat& basis() const { return basis_; }
    double covolume() const { return covolume_; }

    /// Real vector of the integer combination sum m_j (basis column j).
    Vector7 vector_of(std::span<const long> m) const {
        if (m.size() != 7) throw InputError("Lattice: integer vector must have 7 entries");
        Vector7 v;
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j)
                v[i] += basis_(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                        static_cast<double>(m[static_cast<std::size_t>(j)]);
        return v;
    }

private:
    Mat basis_ = Mat::identity(7);
    double covolume_ = 1.0;
};

/// A flat-torus moduli point: lattice plus constant-coefficient positive
/// 3-form in the standard coordinates.
struct TorusModuliPoint {
    Lattice lattice;
    Form phi{3};

    static TorusModuliPoint make(Lattice lattice, Form phi) {
        if (phi.degree() != 3) throw InputError("TorusModuliPoint: phi must have degree 3");
        if (!phi.finite()) throw InputError("TorusModuliPoint: phi has non-finite entries");
        if (!is_positive(phi)) throw InputError("TorusModuliPoint: phi is not a positive 3-form");
        return TorusModuliPoint{std::move(lattice), std::move(phi)};
    }
};

/// Everything evaluated repeatedly at a single moduli point: the pointwise
/// G2 data plus the integrated pairings. Integrals of constant 7-forms over
/// the torus reduce to covolume times the top coefficient.
class ModuliPointOps {
public:
    explicit ModuliPointOps(const TorusModuliPoint& pt)
        : lattice_(pt.lattice), g2_(G2PointData::analyze(pt.phi)) {
        volume_ = lattice_.covolume() * g2_.density();
    }

    const Lattice& lattice() const { return lattice_; }
    const G2PointData& g2() const { return g2_; }
    double volume() const { return volume_; }
    double potential() const { return -3.0 * std::log(volume_); }

    /// integral of eta ^ theta(phi) over the torus
    double theta_pairing(const Form& eta) const {
        return lattice_.covolume() * top_coefficient(wedge(eta, g2_.theta()));
    }

    /// integral of a ^ star(b) over the torus
    double star_pairing(const Form& a, const Form& b) const {
        return lattice_.covolume() * top_coefficient(wedge(a, hodge_star(b, g2_.ops())));
    }

    /// differential of the potential: dF(eta) = -(1/Vol) integral eta ^ theta
    double dF(const Form& eta) const {
        if (eta.degree() != 3) throw InputError("dF: direction must have degree 3");
        return -theta_pairing(eta) / volume_;
    }

    /// volume-normalised L2 pairing (1/Vol) integral a ^ star(b)
    double l2(const Form& a, const Form& b) const {
        if (a.degree() != 3 || b.degree() != 3)
            throw InputError("l2_pairing: forms must have degree 3");
        return star_pairing(a, b) / volume_;
    }

    /// Hessian of the potential as a bilinear form on constant 3-forms:
    ///   D2F(a,b) = (1/(3 Vol^2)) (int a^theta)(int b^theta)
    ///            - (1/Vol) int a ^ Dtheta(b).
    double hessian_form(const Form& a, const Form& b) const {
        if (a.degree() != 3 || b.degree() != 3)
            throw InputError("hessian_form: forms must have degree 3");
        const double pa = theta_pairing(a);
        const double pb = theta_pairing(b);
        const double cross = lattice_.covolume() * top_coefficient(wedge(a, d_theta(g2_, b)));
        return pa * pb / (3.0 * volume_ * volume_) - cross / volume_;
    }

private:
    Lattice lattice_;
    G2PointData g2_;
    double volume_;
};

inline double total_volume(const TorusModuliPoint& pt) {
    if (!is_positive(pt.phi)) throw InputError("total_volume: phi is not a positive 3-form");
    return pt.lattice.covolume() * density_of(pt.phi);
}

/// Volume potential F = -3 log Vol.
inline double potential_F(const TorusModuliPoint& pt) { return -3.0 * std::log(total_volume(pt)); }

inline double dF(const TorusModuliPoint& pt, const Form& eta) {
    return ModuliPointOps(pt).dF(eta);
}

inline double l2_pairing(const TorusModuliPoint& pt, const Form& a, const Form& b) {
    return ModuliPointOps(pt).l2(a, b);
}

struct Signature {
    int positives = 0;
    int negatives = 0;
    int zeros = 0;
};

/// Finite-difference Hessian of the potential in the 35 coefficient
/// coordinates, with its eigen data. The signature comes from the raw
/// symmetric matrix; the negative directions come from the generalized
/// problem H v = lambda G v against the L2 Gram matrix G, which is the
/// metric-aware reading under which they span the type-7 component.
struct HessianReport {
    Mat matrix;                      // 35x35
    std::vector<double> eigenvalues;  // ascending, of the raw matrix
    Signature signature;
    std::vector<double> pencil_eigenvalues;  // of (H, L2 gram)
    Mat negative_directions;                 // 35 x negatives, pencil vectors
    double zero_tolerance = 0.0;
    double fd_step = 0.0;
};

namespace detail {

inline Form form_from_coeffs(std::span<const double> x) {
    Form f(3);
    for (int i = 0; i < 35; ++i) f[i] = x[static_cast<std::size_t>(i)];
    return f;
}

}  // namespace detail

/// L2 Gram matrix of the coefficient basis at a point.
inline Mat l2_gram(const TorusModuliPoint& pt) {
    ModuliPointOps ops(pt);
    Mat g(35, 35);
    for (int i = 0; i < 35; ++i) {
        Form bi(3);
        bi[i] = 1.0;
        for (int j = i; j < 35; ++j) {
            Form bj(3);
            bj[j] = 1.0;
            const double v = ops.l2(bi, bj);
            g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
            g(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
        }
    }
    return g;
}

/// Closed-form Hessian matrix via the linearized dual 4-form; used to
/// cross-check the finite-difference route and to evaluate path speeds.
inline Mat hessian_closed_form(const TorusModuliPoint& pt) {
    ModuliPointOps ops(pt);
    std::array<double, 35> pair{};
    std::array<Form, 35> dth;
    for (int i = 0; i < 35; ++i) {
        Form bi(3);
        bi[i] = 1.0;
        pair[static_cast<std::size_t>(i)] = ops.theta_pairing(bi);
        dth[static_cast<std::size_t>(i)] = d_theta(ops.g2(), bi);
    }
    const double vol = ops.volume();
    const double covol = ops.lattice().covolume();
    Mat h(35, 35);
    for (int i = 0; i < 35; ++i) {
        Form bi(3);
        bi[i] = 1.0;
        for (int j = i; j < 35; ++j) {
            const double cross = covol * top_coefficient(wedge(bi, dth[static_cast<std::size_t>(j)]));
            const double v = pair[static_cast<std::size_t>(i)] * pair[static_cast<std::size_t>(j)] /
                                 (3.0 * vol * vol) -
                             cross / vol;
            h(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
            h(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
        }
    }
    return h;
}

/// Central finite differences with one Richardson level,
/// step h = step_scale (1 + |phi|).
inline HessianReport hessian_F(const TorusModuliPoint& pt, double step_scale = 1e-4) {
    if (!(step_scale >= 1e-7 && step_scale <= 1e-2))
        throw NumericError("hessian_F: step scale " + std::to_string(step_scale) +
                           " outside the conditioned range [1e-7, 1e-2]");
    if (!is_positive(pt.phi)) throw InputError("hessian_F: phi is not a positive 3-form");

    const double covol = pt.lattice.covolume();
    auto F = [&](const Form& f) { return -3.0 * std::log(covol * density_of(f)); };

    const double h = step_scale * (1.0 + pt.phi.coeff_norm());
    auto second_at = [&](int i, int j, double step) {
        if (i == j) {
            Form p = pt.phi, m = pt.phi;
            p[i] += step;
            m[i] -= step;
            return (F(p) - 2.0 * F(pt.phi) + F(m)) / (step * step);
        }
        Form pp = pt.phi, pm = pt.phi, mp = pt.phi, mm = pt.phi;
        pp[i] += step; pp[j] += step;
        pm[i] += step; pm[j] -= step;
        mp[i] -= step; mp[j] += step;
        mm[i] -= step; mm[j] -= step;
        return (F(pp) - F(pm) - F(mp) + F(mm)) / (4.0 * step * step);
    };

    HessianReport report;
    report.fd_step = h;
    report.matrix = Mat(35, 35);
    for (int i = 0; i < 35; ++i)
        for (int j = i; j < 35; ++j) {
            const double coarse = second_at(i, j, h);
            const double fine = second_at(i, j, 0.5 * h);
            const double v = (4.0 * fine - coarse) / 3.0;
            report.matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
            report.matrix(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
        }

    SymEig eig = jacobi_eigensym(report.matrix);
    report.eigenvalues = eig.values;
    const double top = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    report.zero_tolerance = 1e-7 * top;
    for (double v : eig.values) {
        if (v > report.zero_tolerance)
            ++report.signature.positives;
        else if (v < -report.zero_tolerance)
            ++report.signature.negatives;
        else
            ++report.signature.zeros;
    }

    SymEig pencil = generalized_eigensym(report.matrix, l2_gram(pt));
    report.pencil_eigenvalues = pencil.values;
    int negatives = 0;
    for (double v : pencil.values)
        if (v < -report.zero_tolerance) ++negatives;
    report.negative_directions = Mat(35, static_cast<std::size_t>(negatives));
    for (int j = 0; j < negatives; ++j)
        for (int i = 0; i < 35; ++i)
            report.negative_directions(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                pencil.vectors(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return report;
}

}  // namespace g2m
