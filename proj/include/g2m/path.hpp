#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "g2m/forms.hpp"
#include "g2m/g2point.hpp"
#include "g2m/quadrature.hpp"
#include "g2m/torus.hpp"

namespace g2m {

/// Which quadratic form a path energy integrates.
enum class FormKind { hessian, l2 };

inline const char* form_kind_name(FormKind k) {
    return k == FormKind::hessian ? "hessian-form" : "l2-pairing";
}

/// Parameter interval (t_low, t_high]. t_low = 0 is allowed for families
/// that extend continuously to 0 (the scaling ray); genuinely degenerating
/// paths keep t_low > 0 and are integrated from tau > 0.
struct Domain {
    double t_low = 0.0;
    double t_high = 1.0;
};

/// One-parameter family of torus moduli points with caller-supplied exact
/// derivatives. Construction spot-checks positivity and the consistency of
/// the derivative callables against finite differences of phi_of.
class ModuliPath {
public:
    using FormFn = std::function<Form(double)>;

    ModuliPath(Lattice lattice, Domain domain, FormFn phi, FormFn dphi, FormFn ddphi)
        : lattice_(std::move(lattice)),
          domain_(domain),
          phi_(std::move(phi)),
          dphi_(std::move(dphi)),
          ddphi_(std::move(ddphi)) {
        if (!(domain_.t_low >= 0.0 && domain_.t_high > domain_.t_low))
            throw InputError("ModuliPath: domain must satisfy 0 <= t_low < t_high");
        validate();
    }

    const Lattice& lattice() const { return lattice_; }
    Domain domain() const { return domain_; }

    Form phi(double t) const { return phi_(t); }
    Form dphi(double t) const { return dphi_(t); }
    Form ddphi(double t) const { return ddphi_(t); }

    ModuliPointOps point_ops(double t) const {
        return ModuliPointOps(TorusModuliPoint{lattice_, phi_(t)});
    }

    void require_in_domain(double t) const {
        if (!(t >= domain_.t_low && t <= domain_.t_high))
            throw InputError("path parameter t=" + std::to_string(t) + " outside domain (" +
                             std::to_string(domain_.t_low) + ", " + std::to_string(domain_.t_high) + "]");
    }

private:
    void validate() const {
        const double span = domain_.t_high - domain_.t_low;
        const double h = 1e-4 * span;
        constexpr int kSamples = 9;
        for (int s = 0; s < kSamples; ++s) {
            // geometric sweep toward t_low, staying 2h inside the interval
            const double frac = std::pow(0.5, s);
            double t = domain_.t_low + span * frac;
            t = std::min(std::max(t, domain_.t_low + 2.0 * h), domain_.t_high - 2.0 * h);
            const Form p = phi_(t);
            if (!is_positive(p))
                throw InputError("ModuliPath: phi(t) is not positive at t=" + std::to_string(t));
            const Form fd1 = (1.0 / (2.0 * h)) * (phi_(t + h) - phi_(t - h));
            const Form d1 = dphi_(t);
            if ((fd1 - d1).max_abs() > 1e-5 * std::max(1.0, d1.max_abs()))
                throw InputError("ModuliPath: first derivative disagrees with finite differences at t=" +
                                 std::to_string(t));
            const Form fd2 = (1.0 / (2.0 * h)) * (dphi_(t + h) - dphi_(t - h));
            const Form d2 = ddphi_(t);
            if ((fd2 - d2).max_abs() > 1e-5 * std::max(1.0, std::max(d2.max_abs(), d1.max_abs())))
                throw InputError("ModuliPath: second derivative disagrees with finite differences at t=" +
                                 std::to_string(t));
        }
    }

    Lattice lattice_;
    Domain domain_;
    FormFn phi_, dphi_, ddphi_;
};

/// phi_t = base + t dir
inline ModuliPath make_affine_path(Lattice lattice, Form base, Form dir, Domain domain) {
    Form zero(3);
    return ModuliPath(
        std::move(lattice), domain, [base, dir](double t) { return base + t * dir; },
        [dir](double) { return dir; }, [zero](double) { return zero; });
}

/// phi_t = exp(rate t) base
inline ModuliPath make_scaling_path(Lattice lattice, Form base, double rate, Domain domain) {
    return ModuliPath(
        std::move(lattice), domain,
        [base, rate](double t) { return std::exp(rate * t) * base; },
        [base, rate](double t) { return rate * std::exp(rate * t) * base; },
        [base, rate](double t) { return rate * rate * std::exp(rate * t) * base; });
}

/// phi_t = sum_k t^k coeffs[k]
inline ModuliPath make_polynomial_path(Lattice lattice, std::vector<Form> coeffs, Domain domain) {
    if (coeffs.empty()) throw InputError("polynomial path needs at least one coefficient form");
    for (const Form& c : coeffs)
        if (c.degree() != 3) throw InputError("polynomial path coefficients must be 3-forms");
    auto horner = [coeffs](double t, int deriv) {
        Form acc(3);
        for (int k = static_cast<int>(coeffs.size()) - 1; k >= deriv; --k) {
            double f = 1.0;
            for (int d = 0; d < deriv; ++d) f *= static_cast<double>(k - d);
            acc = t * acc + f * coeffs[static_cast<std::size_t>(k)];
        }
        return acc;
    };
    return ModuliPath(
        std::move(lattice), domain, [horner](double t) { return horner(t, 0); },
        [horner](double t) { return horner(t, 1); }, [horner](double t) { return horner(t, 2); });
}

/// h(t) = (1/Vol) integral of dphi/dt ^ theta(phi_t): the volume-normalised
/// pairing of the velocity class with the dual 4-form class. Along any path
/// h(t) = -dF(dphi/dt).
inline double velocity_pairing(const ModuliPath& path, double t) {
    path.require_in_domain(t);
    ModuliPointOps ops = path.point_ops(t);
    return ops.theta_pairing(path.dphi(t)) / ops.volume();
}

/// Squared speed of the path at t for the chosen quadratic form.
inline double speed_squared(const ModuliPath& path, double t, FormKind kind) {
    ModuliPointOps ops = path.point_ops(t);
    const Form v = path.dphi(t);
    return kind == FormKind::hessian ? ops.hessian_form(v, v) : ops.l2(v, v);
}

/// Energy of the path over [a, b] by direct quadrature of the squared speed.
inline double energy_direct(const ModuliPath& path, double a, double b, FormKind kind,
                            const QuadratureSpec& spec = {}, double* achieved_rel_tol = nullptr) {
    path.require_in_domain(a);
    path.require_in_domain(b);
    if (!(a <= b)) throw InputError("energy_direct: need a <= b");
    return integrate([&](double t) { return speed_squared(path, t, kind); }, a, b, spec,
                     achieved_rel_tol);
}

/// Length over [a, b]; meaningful when the form stays nonnegative along the
/// path. Small negative speeds within tolerance are clamped; genuinely
/// negative ones invalidate the length, which the caller sees via the report.
inline double path_length(const ModuliPath& path, double a, double b, FormKind kind,
                          const QuadratureSpec& spec = {}, bool* form_nonnegative = nullptr) {
    path.require_in_domain(a);
    path.require_in_domain(b);
    if (form_nonnegative) *form_nonnegative = true;
    return integrate(
        [&](double t) {
            const double q = speed_squared(path, t, kind);
            if (q < -1e-9 && form_nonnegative) *form_nonnegative = false;
            return std::sqrt(std::max(q, 0.0));
        },
        a, b, spec);
}

struct PathReport {
    double energy_direct = 0.0;
    double energy_by_parts = 0.0;
    double boundary_term_low = 0.0;   // h(a)
    double boundary_term_high = 0.0;  // -h(b)
    double integral_term = 0.0;
    double residual = 0.0;
    double length = 0.0;
    bool length_valid = true;
    double achieved_rel_tol = 0.0;
    FormKind form_used = FormKind::hessian;
};

/// Energy via the integration-by-parts identity for the Hessian form:
///   E_a^b = h(a) - h(b) + integral (1/Vol) <ddphi ^ theta> dt.
/// The report carries the direct quadrature as well; their residual is the
/// module's central oracle equivalence.
inline PathReport energy_by_parts(const ModuliPath& path, double a, double b,
                                  const QuadratureSpec& spec = {}) {
    path.require_in_domain(a);
    path.require_in_domain(b);
    if (!(a <= b)) throw InputError("energy_by_parts: need a <= b");
    PathReport report;
    report.form_used = FormKind::hessian;
    report.boundary_term_low = velocity_pairing(path, a);
    report.boundary_term_high = -velocity_pairing(path, b);
    report.integral_term = integrate(
        [&](double t) {
            ModuliPointOps ops = path.point_ops(t);
            return ops.theta_pairing(path.ddphi(t)) / ops.volume();
        },
        a, b, spec);
    report.energy_by_parts =
        report.boundary_term_low + report.boundary_term_high + report.integral_term;
    report.energy_direct = energy_direct(path, a, b, FormKind::hessian, spec, &report.achieved_rel_tol);
    report.residual = std::abs(report.energy_direct - report.energy_by_parts);
    report.length = path_length(path, a, b, FormKind::hessian, spec, &report.length_valid);
    return report;
}

/// length^2 <= interval_length * energy + 1e-9 (Cauchy-Schwarz).
inline bool cauchy_schwarz_ok(const PathReport& report, double interval_length) {
    return report.length * report.length <= interval_length * report.energy_direct + 1e-9;
}

/// Energy over the full half-open domain (t_low, t_high], as the limit of
/// truncations tau_k = t_high 2^{-k}. Divergence comes back with the
/// observed growth exponent instead of a value.
inline ImproperResult improper_energy(const ModuliPath& path, FormKind kind,
                                      const QuadratureSpec& spec = {}, int kmax = 40) {
    const double T = path.domain().t_high;
    const double lo = path.domain().t_low;
    return improper_limit(
        [&](double tau) { return energy_direct(path, std::max(tau, lo), T, kind, spec); }, T,
        spec.target_rel_tol, kmax);
}

/// Sample-based finiteness certificate: checks the two hypothesis
/// inequalities at geometrically spaced samples and, when they hold, emits
///   energy <= 2C + integral A,   length <= sqrt(T * energy bound).
/// A(t) is taken to be the measured |<ddphi ^ theta>| / Vol; its integral is
/// estimated by quadrature and compared against the supplied cap.
struct FinitenessVerdict {
    bool hypotheses_hold = false;
    double energy_bound = 0.0;
    double length_bound = 0.0;
    double measured_sup_h = 0.0;
    double measured_A_integral = 0.0;
    std::optional<double> witness_t;
    std::string failure;
};

inline FinitenessVerdict finite_energy_check(const ModuliPath& path, double C, double A_integral,
                                             int samples = 1024) {
    if (samples < 2) throw InputError("finite_energy_check: need at least 2 samples");
    const Domain dom = path.domain();
    const double T = dom.t_high;
    const double lo = dom.t_low > 0.0 ? dom.t_low : T * 1e-9;
    FinitenessVerdict verdict;
    const double ratio = std::pow(T / lo, 1.0 / (samples - 1));
    double t = T;
    for (int s = 0; s < samples; ++s, t /= ratio) {
        ModuliPointOps ops = path.point_ops(t);
        const double vol = ops.volume();
        const double first = std::abs(ops.theta_pairing(path.dphi(t)));
        verdict.measured_sup_h = std::max(verdict.measured_sup_h, first / vol);
        if (first > C * vol * (1.0 + 1e-9)) {
            verdict.witness_t = t;
            verdict.failure = "first-derivative pairing exceeds C Vol at t=" + std::to_string(t);
            return verdict;
        }
    }
    QuadratureSpec quad;
    quad.target_rel_tol = 1e-6;  // |.| integrand has kinks; modest target
    double a_measured = 0.0;
    try {
        a_measured = integrate(
            [&](double u) {
                ModuliPointOps ops = path.point_ops(u);
                return std::abs(ops.theta_pairing(path.ddphi(u))) / ops.volume();
            },
            lo, T, quad);
    } catch (const NumericError&) {
        a_measured = composite_pass(
            [&](double u) {
                ModuliPointOps ops = path.point_ops(u);
                return std::abs(ops.theta_pairing(path.ddphi(u))) / ops.volume();
            },
            lo, T, quad.segments, 256);
    }
    verdict.measured_A_integral = a_measured;
    if (a_measured > A_integral + 1e-9 * std::max(1.0, A_integral)) {
        verdict.failure = "measured integral of |second-derivative pairing|/Vol exceeds the claimed cap";
        return verdict;
    }
    verdict.hypotheses_hold = true;
    verdict.energy_bound = 2.0 * C + A_integral;
    verdict.length_bound = std::sqrt(T * verdict.energy_bound);
    return verdict;
}

/// Flat 4-cycle spanned by four integer combinations of the lattice basis.
struct FlatCycle4 {
    std::array<std::array<long, 7>, 4> coeffs{};
};

struct FluxVolume {
    double flux = 0.0;    // theta evaluated on the spanning 4-vector
    double volume = 0.0;  // sqrt Gram determinant in g_phi
};

/// Flux of the dual 4-form through the cycle and the cycle's Riemannian
/// volume. The calibration inequality |flux| <= volume holds pointwise.
inline FluxVolume cycle_flux_and_volume(const FlatCycle4& cycle, const TorusModuliPoint& at) {
    G2PointData g2 = G2PointData::analyze(at.phi);
    std::array<Vector7, 4> v;
    for (int i = 0; i < 4; ++i)
        v[static_cast<std::size_t>(i)] = at.lattice.vector_of(cycle.coeffs[static_cast<std::size_t>(i)]);
    Mat gram(4, 4);
    const Metric7& g = g2.metric();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int a = 0; a < kDim; ++a)
                for (int b = 0; b < kDim; ++b)
                    s += v[static_cast<std::size_t>(i)][a] * g(a, b) * v[static_cast<std::size_t>(j)][b];
            gram(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = s;
        }
    const double det = determinant(gram);
    if (!(det > 1e-18))
        throw InputError("cycle_flux_and_volume: spanning vectors are linearly dependent");
    FluxVolume out;
    out.flux = evaluate(g2.theta(), v);
    out.volume = std::sqrt(det);
    return out;
}

/// Monitor for the Poincare-dual flux lower bound along an affine-class
/// path: rows of (t, |flux|, |flux|/Vol, Vol). Flags the infinite-distance
/// necessary condition when the flux bound grows as t -> t_low while the
/// volume stays bounded below.
struct FluxMonitorRow {
    double t = 0.0;
    double flux_lower_bound = 0.0;
    double flux_over_volume = 0.0;
    double volume = 0.0;
};

struct FluxMonitorSeries {
    std::vector<FluxMonitorRow> rows;  // t descending toward t_low
    bool volume_shrinks = false;
    bool flux_diverges = false;
    bool infinite_distance_condition = false;
    double flux_growth_exponent = 0.0;  // flux ~ t^{-p}
};

inline FluxMonitorSeries pd_flux_monitor(const ModuliPath& path, const Form& direction_class,
                                         int t_samples = 33) {
    if (direction_class.degree() != 3)
        throw InputError("pd_flux_monitor: direction class must have degree 3");
    if (t_samples < 2) throw InputError("pd_flux_monitor: need at least 2 samples");
    const Domain dom = path.domain();
    const double T = dom.t_high;
    const double lo = dom.t_low > 0.0 ? dom.t_low : T * 1e-6;
    const double scale = std::max(1.0, direction_class.max_abs());
    // affine class: dphi must equal the supplied class at all samples
    FluxMonitorSeries series;
    const double ratio = std::pow(T / lo, 1.0 / (t_samples - 1));
    double t = T;
    for (int s = 0; s < t_samples; ++s, t /= ratio) {
        if ((path.dphi(t) - direction_class).max_abs() > 1e-8 * scale)
            throw InputError("pd_flux_monitor: path velocity class is not the constant supplied class");
        ModuliPointOps ops = path.point_ops(t);
        FluxMonitorRow row;
        row.t = t;
        row.volume = ops.volume();
        row.flux_lower_bound = std::abs(ops.theta_pairing(direction_class));
        row.flux_over_volume = row.flux_lower_bound / row.volume;
        series.rows.push_back(row);
    }
    const FluxMonitorRow& first = series.rows.front();  // largest t
    const FluxMonitorRow& last = series.rows.back();    // smallest t
    double vol_max = 0.0;
    for (const auto& r : series.rows) vol_max = std::max(vol_max, r.volume);
    series.volume_shrinks = last.volume < 1e-2 * vol_max;
    if (last.flux_lower_bound > 1e-300 && series.rows.size() >= 2) {
        const FluxMonitorRow& prev = series.rows[series.rows.size() - 2];
        if (prev.flux_lower_bound > 1e-300)
            series.flux_growth_exponent =
                std::log(last.flux_lower_bound / prev.flux_lower_bound) / std::log(prev.t / last.t);
    }
    series.flux_diverges = series.flux_growth_exponent > 0.05 &&
                           last.flux_lower_bound > 10.0 * (first.flux_lower_bound + 1e-12);
    series.infinite_distance_condition = series.flux_diverges && !series.volume_shrinks;
    return series;
}

}  // namespace g2m
