#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>

#include "g2m/forms.hpp"
#include "g2m/linalg.hpp"
#include "g2m/rng.hpp"

namespace g2m {

/// Positivity threshold: smallest eigenvalue of the associated bilinear form
/// must exceed this fraction of its largest. Borderline forms are rejected
/// because the fractional powers downstream are ill-conditioned there.
inline constexpr double kPositivityTol = 1e-10;

/// Reference positive 3-form
///   e^{123} + e^{145} + e^{167} + e^{246} - e^{257} - e^{347} - e^{356}
/// (1-based axis labels). Its induced metric is the identity.
inline Form reference_phi() {
    Form phi = Form::basis({0, 1, 2});
    phi += Form::basis({0, 3, 4});
    phi += Form::basis({0, 5, 6});
    phi += Form::basis({1, 3, 5});
    phi -= Form::basis({1, 4, 6});
    phi -= Form::basis({2, 3, 6});
    phi -= Form::basis({2, 4, 5});
    return phi;
}

/// B(u,v) = coefficient of e^{0...6} in (u -| phi) ^ (v -| phi) ^ phi.
/// Symmetric in u and v, cubic in phi. Positive-definite exactly when phi is
/// a positive 3-form for the fixed orientation.
inline Mat g2_bilinear(const Form& phi) {
    if (phi.degree() != 3) throw InputError("g2_bilinear: form must have degree 3");
    std::array<Form, 7> contractions;
    for (int i = 0; i < kDim; ++i) contractions[static_cast<std::size_t>(i)] = interior(Vector7::axis(i), phi);
    Mat b(7, 7);
    for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j) {
            const double v = top_coefficient(
                wedge(wedge(contractions[static_cast<std::size_t>(i)], contractions[static_cast<std::size_t>(j)]), phi));
            b(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
            b(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
        }
    return b;
}

namespace detail {

/// smallest / largest eigenvalue screen on B; positive iff lambda_min clears
/// the relative threshold
inline bool positive_from_eigs(const SymEig& eig) {
    const double top = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    return eig.values.front() > kPositivityTol * top;
}

}  // namespace detail

inline bool is_positive(const Form& phi) {
    return detail::positive_from_eigs(jacobi_eigensym(g2_bilinear(phi)));
}

struct MetricDensity {
    Metric7 metric;
    double density = 0.0;  // Vol_phi = density e^{0...6}
};

namespace detail {

/// density and metric from B, skipping the eigenvalue screen; Cholesky
/// failure doubles as the positivity gate on hot paths. The determinant is
/// assembled in log space so degenerating scales (densities far below
/// double underflow when raised to the 9th power) stay finite.
inline std::optional<MetricDensity> metric_density_fast(const Form& phi) {
    Mat b6 = g2_bilinear(phi);
    for (double& v : b6.data()) v /= 6.0;
    auto chol = cholesky(b6);
    if (!chol) return std::nullopt;
    double log_det = 0.0;
    for (int i = 0; i < kDim; ++i)
        log_det += 2.0 * std::log((*chol)(static_cast<std::size_t>(i), static_cast<std::size_t>(i)));
    const double density = std::exp(log_det / 9.0);
    MetricDensity out;
    out.density = density;
    for (int i = 0; i < kDim; ++i)
        for (int j = i; j < kDim; ++j)
            out.metric.set(i, j, b6(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) / density);
    return out;
}

}  // namespace detail

/// The nonlinear map phi -> (g_phi, Vol_phi density). Normalized so that the
/// reference form induces the identity metric: g * density = B/6 and
/// density = det(B/6)^{1/9}.
inline MetricDensity metric_and_density(const Form& phi) {
    if (phi.degree() != 3) throw InputError("metric_and_density: form must have degree 3");
    if (!is_positive(phi)) throw InputError("metric_and_density: form is not a positive 3-form");
    auto md = detail::metric_density_fast(phi);
    if (!md) throw InputError("metric_and_density: form is not a positive 3-form");
    return *md;
}

/// Pointwise volume density of a positive 3-form.
inline double density_of(const Form& phi) {
    if (phi.degree() != 3) throw InputError("density_of: form must have degree 3");
    auto md = detail::metric_density_fast(phi);
    if (!md) throw InputError("density_of: form is not a positive 3-form");
    return md->density;
}

/// A positive 3-form together with everything derived from it: the induced
/// metric, the volume density, the dual 4-form theta = star(phi), and the
/// frame e_i -| theta spanning the 7-dimensional type component.
class G2PointData {
public:
    static G2PointData analyze(const Form& phi) {
        if (phi.degree() != 3) throw InputError("G2PointData: form must have degree 3");
        Mat b = g2_bilinear(phi);
        SymEig eig = jacobi_eigensym(b);
        if (!detail::positive_from_eigs(eig))
            throw InputError("G2PointData: form is not a positive 3-form");
        double log_det6 = 0.0;
        for (double v : eig.values) log_det6 += std::log(v / 6.0);
        const double density = std::exp(log_det6 / 9.0);
        Metric7 metric;
        for (int i = 0; i < kDim; ++i)
            for (int j = i; j < kDim; ++j)
                metric.set(i, j, b(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) / (6.0 * density));
        return G2PointData(phi, metric, density);
    }

    const Form& phi() const { return phi_; }
    const Metric7& metric() const { return metric_; }
    double density() const { return density_; }
    const Form& theta() const { return theta_; }
    const MetricOps& ops() const { return ops_; }

    /// |phi|_g^2, equal to 7 for every positive form
    double phi_norm_sq() const { return phi_norm_sq_; }

    const std::array<Form, 7>& type7_frame() const { return frame_; }

private:
    G2PointData(const Form& phi, const Metric7& metric, double density)
        : phi_(phi), metric_(metric), density_(density), ops_(metric) {
        theta_ = hodge_star(phi_, ops_);
        phi_norm_sq_ = top_coefficient(wedge(phi_, theta_)) / density_;
        for (int i = 0; i < kDim; ++i) frame_[static_cast<std::size_t>(i)] = interior(Vector7::axis(i), theta_);
    }

    Form phi_;
    Metric7 metric_;
    double density_;
    MetricOps ops_;
    Form theta_{4};
    double phi_norm_sq_ = 0.0;
    std::array<Form, 7> frame_;
};

/// Dual 4-form theta(phi) = star_phi(phi).
inline Form theta(const Form& phi) { return G2PointData::analyze(phi).theta(); }

/// Decomposition of a 3-form into the irreducible pieces of dimensions
/// 1, 7 and 27, orthogonal for the induced metric.
struct TypeSplit {
    Form pi1{3};
    Form pi7{3};
    Form pi27{3};
};

/// Orthogonal projection onto span{e_i -| theta} and its complements.
/// The projection coefficients use two exact identities of the induced
/// metric: <eta, phi> = [eta ^ theta] / density, and for the frame
/// w_i = e_i -| theta both <w_i, w_j> = 4 g_ij and <w_i, eta> =
/// sum_j g_ij [e^j ^ eta ^ phi] / density, which collapse the least-squares
/// solve to reading wedge coefficients.
inline TypeSplit type_decompose(const Form& eta, const G2PointData& at) {
    if (eta.degree() != 3) throw InputError("type_decompose: form must have degree 3");
    const auto& t = detail::tables();
    TypeSplit s;
    const double ip_phi = top_coefficient(wedge(eta, at.theta())) / at.density();
    s.pi1 = (ip_phi / 7.0) * at.phi();
    const Form zeta = wedge(eta, at.phi());  // 6-form
    s.pi7 = Form(3);
    for (int i = 0; i < kDim; ++i) {
        const unsigned mi = 1u << i;
        const unsigned mz = ~mi & 0x7fu;
        const double m = detail::merge_sign(mi, mz) * zeta[t.rank_of_mask[6][mz]];
        s.pi7 += (m / (4.0 * at.density())) * at.type7_frame()[static_cast<std::size_t>(i)];
    }
    s.pi27 = eta - s.pi1 - s.pi7;
    return s;
}

/// Linearization of theta at phi:
///   D theta(eta) = (4/3) star(pi1 eta) + star(pi7 eta) - star(pi27 eta)
///                = star(eta + (1/3) pi1 eta - 2 pi27 eta).
/// The coefficients are pinned by a central finite-difference gate in the
/// test suite; the finite difference is authoritative if they ever disagree.
inline Form d_theta(const G2PointData& at, const Form& eta) {
    TypeSplit s = type_decompose(eta, at);
    return hodge_star(eta + (1.0 / 3.0) * s.pi1 - 2.0 * s.pi27, at.ops());
}

/// Maximum of theta over sampled g-orthonormal 4-frames. Frames are drawn
/// from a counter-based stream, so the result depends only on (trials, seed)
/// and trials could be sharded without changing the outcome.
inline double comass_sample(const G2PointData& at, int trials, std::uint64_t seed) {
    if (trials < 1) throw InputError("comass_sample: trials must be >= 1");
    const Metric7& g = at.metric();
    auto dot = [&g](const Vector7& a, const Vector7& b) {
        double s = 0.0;
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j) s += a[i] * g(i, j) * b[j];
        return s;
    };
    double best = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng(seed, static_cast<std::uint64_t>(trial));
        std::array<Vector7, 4> frame;
        bool ok = true;
        for (int v = 0; v < 4 && ok; ++v) {
            Vector7 u;
            for (int i = 0; i < kDim; ++i) u[i] = rng.normal();
            for (int w = 0; w < v; ++w) {
                const double c = dot(u, frame[static_cast<std::size_t>(w)]);
                for (int i = 0; i < kDim; ++i) u[i] -= c * frame[static_cast<std::size_t>(w)][i];
            }
            const double n = std::sqrt(dot(u, u));
            if (n < 1e-8) {
                ok = false;  // astronomically unlikely; drop the trial
                break;
            }
            for (int i = 0; i < kDim; ++i) u[i] /= n;
            frame[static_cast<std::size_t>(v)] = u;
        }
        if (!ok) continue;
        best = std::max(best, evaluate(at.theta(), frame));
    }
    return best;
}

}  // namespace g2m
