#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "g2m/linalg.hpp"
#include "g2m/poly.hpp"
#include "g2m/quadrature.hpp"

namespace g2m {

/// Period coefficient family along a degenerating gluing parameter.
/// Type I components contribute f(t) = a + b t^2, type II components
/// f(t) = a t^2 + b t^3; arbitrary polynomials are accepted for experiments.
class CoeffFunction {
public:
    enum class Kind { type_i, type_ii, polynomial };

    static CoeffFunction type_i(double a, double b) {
        CoeffFunction f;
        f.kind_ = Kind::type_i;
        f.a_ = a;
        f.b_ = b;
        f.set_poly({a, 0.0, b});
        return f;
    }

    static CoeffFunction type_ii(double a, double b) {
        CoeffFunction f;
        f.kind_ = Kind::type_ii;
        f.a_ = a;
        f.b_ = b;
        f.set_poly({0.0, 0.0, a, b});
        return f;
    }

    static CoeffFunction polynomial(Poly coeffs) {
        if (coeffs.empty()) throw InputError("CoeffFunction: empty coefficient list");
        CoeffFunction f;
        f.kind_ = Kind::polynomial;
        f.set_poly(std::move(coeffs));
        return f;
    }

    Kind kind() const { return kind_; }
    double a() const { return a_; }
    double b() const { return b_; }
    const Poly& poly() const { return poly_; }

    struct Jet {
        double f = 0.0, df = 0.0, ddf = 0.0;
    };

    Jet eval(double t) const {
        return Jet{poly_eval(poly_, t), poly_eval(dpoly_, t), poly_eval(ddpoly_, t)};
    }

    double derivative_at(double t) const { return poly_eval(dpoly_, t); }

    /// sup over [0, T] of |f'|
    double sup_abs_derivative(double T) const { return poly_sup_abs(dpoly_, 0.0, T); }

    /// exact integral of |f''| over [0, T], by root-splitting of f''
    double integral_abs_second(double T) const { return poly_total_variation(dpoly_, 0.0, T); }

private:
    void set_poly(Poly p) {
        poly_ = std::move(p);
        dpoly_ = poly_derivative(poly_);
        ddpoly_ = poly_derivative(dpoly_);
    }

    Kind kind_ = Kind::polynomial;
    double a_ = 0.0, b_ = 0.0;
    Poly poly_, dpoly_, ddpoly_;
};

inline const char* coeff_kind_name(CoeffFunction::Kind k) {
    switch (k) {
        case CoeffFunction::Kind::type_i: return "typeI";
        case CoeffFunction::Kind::type_ii: return "typeII";
        default: return "polynomial";
    }
}

enum class SingularityType { type_i, type_ii };

struct ClassEntry {
    std::string id;
    CoeffFunction coeff = CoeffFunction::type_i(0.0, 0.0);
    double calib_volume_bound = 0.0;  // calibrated volume cap Vol(D, g_i) for the dual 4-cycle
};

struct GluingComponent {
    std::string name;
    SingularityType singularity_type = SingularityType::type_i;
    bool delta_trivial = false;    // input assertion: the boundary map vanishes
    bool metric_dominated = false; // input assertion: g_{phi_t} <= g_i on the component
    std::vector<ClassEntry> classes;
};

/// Dimension-4 volume inflation factor of an L-Lipschitz metric equivalence:
/// L^{dim/2} with the default L = 2, giving 4.
inline double metric_equivalence_factor(double lipschitz = 2.0, int dim = 4) {
    return std::pow(lipschitz, dim / 2.0);
}

struct KummerModel {
    double T = 1.0;   // gluing parameter range (0, T]
    double V0 = 1.0;  // uniform lower volume bound, supplied as input
    double metric_equivalence_dim4_factor = 4.0;
    bool b1_zero = false;  // input assertion
    std::vector<GluingComponent> components;
    /// Cup pairing over all class ids in declaration order; empty means the
    /// dual-basis normalisation (identity).
    Mat pairing;
};

/// Dual basis for a nondegenerate pairing: the inverse transpose. Columns of
/// the result pair to the identity against the input.
inline Mat dual_basis(const Mat& pairing) {
    if (pairing.rows() != pairing.cols() || pairing.rows() == 0)
        throw InputError("dual_basis: pairing must be square and nonempty");
    const double cond = condition_estimate(pairing);
    if (!(cond < 1e12))
        throw NumericError("dual_basis: pairing is singular or ill-conditioned (condition estimate " +
                           std::to_string(cond) + ")");
    return transpose(inverse(pairing));
}

struct ClassBounds {
    std::string id;
    double g_cap = 0.0;             // 4 Vol(D, g_i) style cap on the dual period
    double sup_abs_fprime = 0.0;    // over (0, T]
    double abs_fprime_at_T = 0.0;
    double integral_abs_fsecond = 0.0;  // over (0, T]
};

struct HypothesesReport {
    bool b1_zero = false;
    bool all_delta_trivial = false;
    bool all_metric_dominated = false;
    bool derivative_bounds_finite = false;
    bool pairing_nondegenerate = false;
    double pairing_condition = 0.0;
    std::vector<ClassBounds> classes;
    std::vector<std::string> failures;

    bool all_hold() const { return failures.empty(); }
};

inline std::size_t model_class_count(const KummerModel& model) {
    std::size_t n = 0;
    for (const auto& c : model.components) n += c.classes.size();
    return n;
}

/// Cap on the dual-period coefficient of one class: the metric-equivalence
/// factor times the calibrated volume bound.
inline double g_bound(const GluingComponent& component, const std::string& class_id,
                      double equivalence_factor) {
    for (const auto& entry : component.classes)
        if (entry.id == class_id) return equivalence_factor * entry.calib_volume_bound;
    throw InputError("g_bound: class '" + class_id + "' not found in component '" +
                     component.name + "'");
}

/// Evaluates the three hypothesis groups. The topological flags are echoed
/// as assumptions, never inferred; the derivative bounds are computed
/// exactly for the polynomial coefficient families.
inline HypothesesReport check_hypotheses(const KummerModel& model) {
    HypothesesReport report;
    if (!(model.T > 0.0)) throw InputError("KummerModel: T must be positive");
    if (!(model.V0 > 0.0)) throw InputError("KummerModel: V0 must be positive");
    if (!(model.metric_equivalence_dim4_factor > 0.0))
        throw InputError("KummerModel: metric equivalence factor must be positive");

    report.b1_zero = model.b1_zero;
    if (!model.b1_zero) report.failures.push_back("b1_zero flag is false");
    report.all_delta_trivial = true;
    report.all_metric_dominated = true;
    for (const auto& comp : model.components) {
        if (!comp.delta_trivial) {
            report.all_delta_trivial = false;
            report.failures.push_back("component '" + comp.name + "' has a nontrivial boundary map");
        }
        if (!comp.metric_dominated) {
            report.all_metric_dominated = false;
            report.failures.push_back("component '" + comp.name + "' lacks a dominating metric");
        }
        for (const auto& entry : comp.classes) {
            if (!(entry.calib_volume_bound >= 0.0))
                throw InputError("class '" + entry.id + "': calibrated volume bound must be >= 0");
            ClassBounds cb;
            cb.id = entry.id;
            cb.g_cap = model.metric_equivalence_dim4_factor * entry.calib_volume_bound;
            cb.sup_abs_fprime = entry.coeff.sup_abs_derivative(model.T);
            cb.abs_fprime_at_T = std::abs(entry.coeff.derivative_at(model.T));
            cb.integral_abs_fsecond = entry.coeff.integral_abs_second(model.T);
            report.classes.push_back(std::move(cb));
        }
    }
    report.derivative_bounds_finite = true;
    for (const auto& cb : report.classes)
        if (!std::isfinite(cb.sup_abs_fprime) || !std::isfinite(cb.integral_abs_fsecond))
            report.derivative_bounds_finite = false;
    if (!report.derivative_bounds_finite)
        report.failures.push_back("derivative bounds are not finite");

    const std::size_t n = model_class_count(model);
    if (model.pairing.empty()) {
        report.pairing_nondegenerate = true;
        report.pairing_condition = 1.0;
    } else {
        if (model.pairing.rows() != n || model.pairing.cols() != n)
            throw InputError("KummerModel: pairing must be square over all class ids");
        report.pairing_condition = condition_estimate(model.pairing);
        report.pairing_nondegenerate = report.pairing_condition < 1e12;
        if (!report.pairing_nondegenerate)
            report.failures.push_back("cup pairing is singular or ill-conditioned");
    }
    return report;
}

/// Machine-checkable certificate: when the hypotheses hold, the energy over
/// every truncation [tau, T] of (0, T] is bounded by
///   (1/V0) sum_{c,d} |P_cd| G_d (sup|f'_c| + |f'_c(T)| + int |f''_c|),
/// with P the cup pairing (identity under the dual-basis normalisation) and
/// G_d the per-class caps. Using sup|f'| for the tau boundary term makes one
/// certificate cover all truncations simultaneously.
struct Certificate {
    HypothesesReport hypotheses;
    double C_bound = 0.0;      // sup_t |<dphi/dt cup theta>| / V0 cap
    double A_integral = 0.0;   // int |<d2phi/dt2 cup theta>| / V0 cap
    double energy_bound = 0.0;
    double length_bound = 0.0;
    bool valid = false;
};

inline Certificate energy_upper_bound(const KummerModel& model) {
    Certificate cert;
    cert.hypotheses = check_hypotheses(model);
    if (!cert.hypotheses.all_hold()) return cert;

    const std::size_t n = model_class_count(model);
    const auto& classes = cert.hypotheses.classes;
    auto pairing_weight = [&](std::size_t c, std::size_t d) {
        if (model.pairing.empty()) return c == d ? 1.0 : 0.0;
        return std::abs(model.pairing(c, d));
    };
    double energy = 0.0, c_num = 0.0, a_num = 0.0;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
            const double w = pairing_weight(c, d);
            if (w == 0.0) continue;
            energy += w * classes[d].g_cap *
                      (classes[c].sup_abs_fprime + classes[c].abs_fprime_at_T +
                       classes[c].integral_abs_fsecond);
            c_num += w * classes[d].g_cap * classes[c].sup_abs_fprime;
            a_num += w * classes[d].g_cap * classes[c].integral_abs_fsecond;
        }
    cert.energy_bound = energy / model.V0;
    cert.C_bound = c_num / model.V0;
    cert.A_integral = a_num / model.V0;
    cert.length_bound = std::sqrt(model.T * cert.energy_bound);
    cert.valid = true;
    return cert;
}

/// Numerical cross-check of the certificate: evaluates the boundary-term
/// energy expression with caller-supplied bounded dual-period profiles
/// g_c(t) (one per class, |g_c| <= G_c enforced on samples) and the floor
/// volume V0, over a grid of truncations [tau, T]. The certificate must
/// dominate every value.
struct CrossCheckResult {
    double max_energy = 0.0;
    double energy_bound = 0.0;
    double margin = 0.0;  // energy_bound - max_energy
    bool dominated = false;
};

inline CrossCheckResult cross_check_with_path_geometry(
    const KummerModel& model, const std::vector<std::function<double(double)>>& synthetic_g,
    int tau_samples = 24, int cap_samples = 512) {
    Certificate cert = energy_upper_bound(model);
    if (!cert.valid)
        throw InputError("cross_check_with_path_geometry: certificate hypotheses fail");
    const std::size_t n = model_class_count(model);
    if (synthetic_g.size() != n)
        throw InputError("cross_check_with_path_geometry: need one synthetic g per class");

    std::vector<const ClassEntry*> entries;
    for (const auto& comp : model.components)
        for (const auto& entry : comp.classes) entries.push_back(&entry);

    // enforce the caps on a geometric sample grid
    const double lo = model.T * 1e-9;
    const double ratio = std::pow(model.T / lo, 1.0 / (cap_samples - 1));
    for (std::size_t c = 0; c < n; ++c) {
        const double cap = model.metric_equivalence_dim4_factor * entries[c]->calib_volume_bound;
        double t = model.T;
        for (int s = 0; s < cap_samples; ++s, t /= ratio) {
            const double v = synthetic_g[c](t);
            if (std::abs(v) > cap + 1e-12 * std::max(1.0, cap))
                throw InputError("synthetic g for class '" + entries[c]->id +
                                 "' violates its cap at t=" + std::to_string(t));
        }
    }

    auto pairing_weight = [&](std::size_t c, std::size_t d) {
        if (model.pairing.empty()) return c == d ? 1.0 : 0.0;
        return model.pairing(c, d);
    };
    auto velocity_pairing = [&](double t) {
        double s = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            const double fp = entries[c]->coeff.derivative_at(t);
            if (fp == 0.0) continue;
            for (std::size_t d = 0; d < n; ++d) {
                const double w = pairing_weight(c, d);
                if (w != 0.0) s += fp * w * synthetic_g[d](t);
            }
        }
        return s / model.V0;
    };
    auto accel_pairing = [&](double t) {
        double s = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            const double fpp = entries[c]->coeff.eval(t).ddf;
            if (fpp == 0.0) continue;
            for (std::size_t d = 0; d < n; ++d) {
                const double w = pairing_weight(c, d);
                if (w != 0.0) s += fpp * w * synthetic_g[d](t);
            }
        }
        return s / model.V0;
    };

    CrossCheckResult result;
    result.max_energy = std::numeric_limits<double>::lowest();
    result.energy_bound = cert.energy_bound;
    QuadratureSpec quad;
    quad.target_rel_tol = 1e-7;
    for (int k = 0; k < tau_samples; ++k) {
        const double tau = model.T * std::pow(0.5, k + 1);
        double integral = 0.0;
        try {
            integral = integrate(accel_pairing, tau, model.T, quad);
        } catch (const NumericError&) {
            integral = composite_pass(accel_pairing, tau, model.T, quad.segments, 128);
        }
        const double energy = velocity_pairing(tau) - velocity_pairing(model.T) + integral;
        result.max_energy = std::max(result.max_energy, energy);
    }
    result.margin = result.energy_bound - result.max_energy;
    result.dominated = result.margin >= -1e-9;
    return result;
}

}  // namespace g2m
