#pragma once

#include <string>
#include <vector>

#include "g2m/forms.hpp"
#include "g2m/g2point.hpp"
#include "g2m/json_util.hpp"
#include "g2m/kahler.hpp"
#include "g2m/kummer.hpp"
#include "g2m/path.hpp"
#include "g2m/torus.hpp"

namespace g2m {

// Forms travel as {degree, coefficients} with lexicographic coefficient
// order; metrics and lattice bases as row-major 49-entry arrays.

inline void write_form(JsonWriter& w, const Form& f) {
    w.begin_object();
    w.key("degree").value(f.degree());
    w.key("coefficients").begin_array();
    for (int i = 0; i < f.size(); ++i) w.value(f[i]);
    w.end_array();
    w.end_object();
}

inline Form parse_form(const Json& j, const std::string& path) {
    const std::int64_t degree = as_integer(require_field(j, path, "degree"), path + ".degree");
    if (degree < 0 || degree > 7) throw InputError(path + ".degree: must be an integer in 0..7");
    const std::size_t count = static_cast<std::size_t>(kBasisCount[static_cast<std::size_t>(degree)]);
    std::vector<double> coeffs =
        as_number_array(require_field(j, path, "coefficients"), path + ".coefficients", count);
    Form f(static_cast<int>(degree));
    for (std::size_t i = 0; i < count; ++i) f[static_cast<int>(i)] = coeffs[i];
    if (!f.finite()) throw InputError(path + ".coefficients: entries must be finite");
    return f;
}

inline void write_metric(JsonWriter& w, const Metric7& g) {
    w.begin_array();
    for (double v : g.row_major()) w.value(v);
    w.end_array();
}

inline Mat parse_square_matrix(const Json& j, const std::string& path, std::size_t n) {
    std::vector<double> entries = as_number_array(j, path, n * n);
    Mat m(n, n);
    m.data() = entries;
    return m;
}

inline Lattice parse_lattice_basis(const Json& j, const std::string& path) {
    return Lattice::from_basis(parse_square_matrix(j, path, 7));
}

inline void write_lattice(JsonWriter& w, const Lattice& l) {
    w.begin_array();
    for (double v : l.basis().data()) w.value(v);
    w.end_array();
}

inline void write_g2_point(JsonWriter& w, const G2PointData& p) {
    w.begin_object();
    w.key("phi");
    write_form(w, p.phi());
    w.key("metric");
    write_metric(w, p.metric());
    w.key("density").value(p.density());
    w.key("theta");
    write_form(w, p.theta());
    w.end_object();
}

inline void write_path_report(JsonWriter& w, const PathReport& r) {
    w.begin_object();
    w.key("form_used").value(form_kind_name(r.form_used));
    w.key("energy_direct").value(r.energy_direct);
    w.key("energy_by_parts").value(r.energy_by_parts);
    w.key("boundary_term_low").value(r.boundary_term_low);
    w.key("boundary_term_high").value(r.boundary_term_high);
    w.key("integral_term").value(r.integral_term);
    w.key("residual").value(r.residual);
    w.key("length").value(r.length);
    w.key("length_valid").value(r.length_valid);
    w.key("achieved_rel_tol").value(r.achieved_rel_tol);
    w.end_object();
}

// ---- Kummer model and certificate ----

inline CoeffFunction parse_coeff_function(const Json& j, const std::string& path) {
    const std::string kind = field_string(j, path, "kind");
    if (kind == "typeI")
        return CoeffFunction::type_i(field_number(j, path, "a"), field_number(j, path, "b"));
    if (kind == "typeII")
        return CoeffFunction::type_ii(field_number(j, path, "a"), field_number(j, path, "b"));
    if (kind == "polynomial")
        return CoeffFunction::polynomial(
            as_number_array(require_field(j, path, "coefficients"), path + ".coefficients"));
    throw InputError(path + ".kind: must be one of typeI, typeII, polynomial");
}

inline void write_coeff_function(JsonWriter& w, const CoeffFunction& f) {
    w.begin_object();
    w.key("kind").value(coeff_kind_name(f.kind()));
    if (f.kind() == CoeffFunction::Kind::polynomial) {
        w.key("coefficients").begin_array();
        for (double c : f.poly()) w.value(c);
        w.end_array();
    } else {
        w.key("a").value(f.a());
        w.key("b").value(f.b());
    }
    w.end_object();
}

inline KummerModel parse_kummer_model(const Json& j, const std::string& path) {
    KummerModel model;
    model.T = field_number(j, path, "T");
    model.V0 = field_number(j, path, "V0");
    model.metric_equivalence_dim4_factor =
        optional_number(j, path, "metric_equivalence_dim4_factor", 4.0);
    model.b1_zero = field_bool(j, path, "b1_zero");
    if (!(model.T > 0.0)) throw InputError(path + ".T: must be positive");
    if (!(model.V0 > 0.0)) throw InputError(path + ".V0: must be positive");
    const Json& comps = as_array(require_field(j, path, "components"), path + ".components");
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const std::string cpath = path + ".components[" + std::to_string(c) + "]";
        const Json& jc = comps[c];
        GluingComponent comp;
        comp.name = optional_string(jc, cpath, "name", "component-" + std::to_string(c));
        const std::string st = field_string(jc, cpath, "singularity_type");
        if (st == "I")
            comp.singularity_type = SingularityType::type_i;
        else if (st == "II")
            comp.singularity_type = SingularityType::type_ii;
        else
            throw InputError(cpath + ".singularity_type: must be \"I\" or \"II\"");
        comp.delta_trivial = field_bool(jc, cpath, "delta_trivial");
        comp.metric_dominated = field_bool(jc, cpath, "metric_dominated");
        const Json& classes = as_array(require_field(jc, cpath, "classes"), cpath + ".classes");
        for (std::size_t k = 0; k < classes.size(); ++k) {
            const std::string kpath = cpath + ".classes[" + std::to_string(k) + "]";
            ClassEntry entry;
            entry.id = field_string(classes[k], kpath, "id");
            entry.coeff = parse_coeff_function(require_field(classes[k], kpath, "coeff"),
                                               kpath + ".coeff");
            entry.calib_volume_bound = field_number(classes[k], kpath, "calib_volume_bound");
            if (!(entry.calib_volume_bound >= 0.0))
                throw InputError(kpath + ".calib_volume_bound: must be >= 0");
            comp.classes.push_back(std::move(entry));
        }
        model.components.push_back(std::move(comp));
    }
    if (j.contains("pairing")) {
        const Json& jp = as_array(j.at("pairing"), path + ".pairing");
        const std::size_t n = model_class_count(model);
        if (jp.size() != n)
            throw InputError(path + ".pairing: must be a " + std::to_string(n) + "x" +
                             std::to_string(n) + " array over all class ids");
        Mat pairing(n, n);
        for (std::size_t r = 0; r < n; ++r) {
            std::vector<double> row =
                as_number_array(jp[r], path + ".pairing[" + std::to_string(r) + "]", n);
            for (std::size_t c = 0; c < n; ++c) pairing(r, c) = row[c];
        }
        model.pairing = pairing;
    }
    return model;
}

inline void write_certificate(JsonWriter& w, const Certificate& cert) {
    w.begin_object();
    w.key("hypotheses").begin_object();
    w.key("b1_zero").value(cert.hypotheses.b1_zero);
    w.key("all_delta_trivial").value(cert.hypotheses.all_delta_trivial);
    w.key("all_metric_dominated").value(cert.hypotheses.all_metric_dominated);
    w.key("derivative_bounds_finite").value(cert.hypotheses.derivative_bounds_finite);
    w.key("pairing_nondegenerate").value(cert.hypotheses.pairing_nondegenerate);
    w.key("pairing_condition").value(cert.hypotheses.pairing_condition);
    w.key("classes").begin_array();
    for (const auto& cb : cert.hypotheses.classes) {
        w.begin_object();
        w.key("id").value(cb.id);
        w.key("g_cap").value(cb.g_cap);
        w.key("sup_abs_fprime").value(cb.sup_abs_fprime);
        w.key("abs_fprime_at_T").value(cb.abs_fprime_at_T);
        w.key("integral_abs_fsecond").value(cb.integral_abs_fsecond);
        w.end_object();
    }
    w.end_array();
    w.key("failures").begin_array();
    for (const auto& f : cert.hypotheses.failures) w.value(f);
    w.end_array();
    w.end_object();
    w.key("bounds").begin_object();
    w.key("C_bound").value(cert.C_bound);
    w.key("A_integral").value(cert.A_integral);
    w.key("energy_bound").value(cert.energy_bound);
    w.key("length_bound").value(cert.length_bound);
    w.end_object();
    w.key("valid").value(cert.valid);
    w.end_object();
}

// ---- Kahler intersection data ----

inline IntersectionForm parse_intersection_form(const Json& j, const std::string& path) {
    const std::int64_t rank = as_integer(require_field(j, path, "rank"), path + ".rank");
    const std::int64_t n = as_integer(require_field(j, path, "n"), path + ".n");
    if (rank < 1 || rank > 8) throw InputError(path + ".rank: must be in 1..8");
    if (n < 2 || n > 3) throw InputError(path + ".n: must be 2 or 3");
    IntersectionForm q(static_cast<int>(rank), static_cast<int>(n));
    const Json& entries = as_array(require_field(j, path, "entries"), path + ".entries");
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const std::string epath = path + ".entries[" + std::to_string(e) + "]";
        const Json& je = entries[e];
        const Json& idx = as_array(require_field(je, epath, "indices"), epath + ".indices");
        if (idx.size() != static_cast<std::size_t>(n))
            throw InputError(epath + ".indices: must list exactly n indices");
        std::vector<int> indices;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const std::int64_t v = as_integer(idx[i], epath + ".indices[" + std::to_string(i) + "]");
            if (v < 0 || v >= rank)
                throw InputError(epath + ".indices[" + std::to_string(i) + "]: out of range 0..rank-1");
            indices.push_back(static_cast<int>(v));
        }
        q.set_symmetric(indices, field_number(je, epath, "value"));
    }
    return q;
}

}  // namespace g2m
