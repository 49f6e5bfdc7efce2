#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "g2m/serialize.hpp"

namespace g2m {

inline constexpr int kScenarioSchemaVersion = 1;

/// Flag overrides; a flag beats the scenario field, which beats the default.
struct RunOptions {
    std::string out_dir = "out";
    std::optional<int> quad_nodes;
    std::optional<double> fd_step;
    std::optional<std::uint64_t> seed;
};

struct ScenarioOutcome {
    int exit_code = 0;  // 0 success, 2 negative verdict; input errors throw
    std::vector<std::string> artifacts;
    std::string summary;
};

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot open output file " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

struct ScenarioHeader {
    std::string kind;
    std::string name;
    std::uint64_t seed = 0;
    std::string report_name;
    std::string series_name;
};

inline ScenarioHeader parse_header(const Json& j, const RunOptions& opt) {
    const std::int64_t version =
        as_integer(require_field(j, "scenario", "schema_version"), "scenario.schema_version");
    if (version != kScenarioSchemaVersion)
        throw InputError("scenario.schema_version: expected " +
                         std::to_string(kScenarioSchemaVersion) + ", got " + std::to_string(version));
    ScenarioHeader h;
    h.kind = field_string(j, "scenario", "kind");
    if (h.kind != "point" && h.kind != "hessian" && h.kind != "path" && h.kind != "kummer" &&
        h.kind != "kahler")
        throw InputError("scenario.kind: must be one of point, hessian, path, kummer, kahler");
    h.name = optional_string(j, "scenario", "name", h.kind);
    h.seed = static_cast<std::uint64_t>(optional_integer(j, "scenario", "seed", 0));
    if (opt.seed) h.seed = *opt.seed;
    h.report_name = h.name + ".report.json";
    h.series_name = h.name + ".series.csv";
    if (j.contains("output")) {
        const Json& out = j.at("output");
        h.report_name = optional_string(out, "scenario.output", "report", h.report_name);
        h.series_name = optional_string(out, "scenario.output", "series", h.series_name);
    }
    return h;
}

inline void begin_report(JsonWriter& w, const ScenarioHeader& h) {
    w.begin_object();
    w.key("scenario").value(h.name);
    w.key("kind").value(h.kind);
    w.key("seed").value(h.seed);
}

inline std::string artifact_path(const RunOptions& opt, const std::string& name) {
    return (std::filesystem::path(opt.out_dir) / name).string();
}

// ---- point ----

inline ScenarioOutcome run_point(const Json& payload, const ScenarioHeader& h,
                                 const RunOptions& opt) {
    Form phi = parse_form(require_field(payload, "payload", "phi"), "payload.phi");
    const std::int64_t trials = optional_integer(payload, "payload", "comass_trials", 0);
    if (trials < 0) throw InputError("payload.comass_trials: must be >= 0");
    G2PointData point = G2PointData::analyze(phi);

    JsonWriter w;
    begin_report(w, h);
    w.key("point");
    write_g2_point(w, point);
    w.key("phi_norm_sq").value(point.phi_norm_sq());
    double comass = 0.0;
    if (trials > 0) {
        comass = comass_sample(point, static_cast<int>(trials), h.seed);
        w.key("comass").begin_object();
        w.key("value").value(comass);
        w.key("trials").value(trials);
        w.key("seed").value(h.seed);
        w.end_object();
    }
    w.end_object();

    ScenarioOutcome out;
    const std::string path = artifact_path(opt, h.report_name);
    write_file(path, w.take());
    out.artifacts.push_back(path);
    std::ostringstream s;
    s << h.name << ": density " << format_double(point.density()) << ", |phi|^2 "
      << format_double(point.phi_norm_sq());
    if (trials > 0) s << ", comass sample " << format_double(comass) << " (" << trials << " trials)";
    s << "\n";
    out.summary = s.str();
    return out;
}

// ---- hessian ----

inline ScenarioOutcome run_hessian(const Json& payload, const ScenarioHeader& h,
                                   const RunOptions& opt) {
    Lattice lattice = payload.contains("lattice_basis")
                          ? parse_lattice_basis(payload.at("lattice_basis"), "payload.lattice_basis")
                          : Lattice::cubic();
    Form phi = parse_form(require_field(payload, "payload", "phi"), "payload.phi");
    const double step = opt.fd_step.value_or(optional_number(payload, "payload", "fd_step_scale", 1e-4));
    TorusModuliPoint pt = TorusModuliPoint::make(lattice, phi);
    HessianReport report = hessian_F(pt, step);

    double d2_along_phi = 0.0;
    for (int i = 0; i < 35; ++i)
        for (int j = 0; j < 35; ++j)
            d2_along_phi += phi[i] * report.matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * phi[j];

    JsonWriter w;
    begin_report(w, h);
    w.key("volume").value(total_volume(pt));
    w.key("potential").value(potential_F(pt));
    w.key("fd_step").value(report.fd_step);
    w.key("zero_tolerance").value(report.zero_tolerance);
    w.key("signature").begin_array();
    w.value(report.signature.positives).value(report.signature.negatives).value(report.signature.zeros);
    w.end_array();
    w.key("d2F_along_phi").value(d2_along_phi);
    w.key("eigenvalues").begin_array();
    for (double v : report.eigenvalues) w.value(v);
    w.end_array();
    w.end_object();

    std::string csv = "index,eigenvalue,pencil_eigenvalue\n";
    for (std::size_t i = 0; i < report.eigenvalues.size(); ++i)
        csv += std::to_string(i) + "," + format_double(report.eigenvalues[i]) + "," +
               format_double(report.pencil_eigenvalues[i]) + "\n";

    ScenarioOutcome out;
    const std::string report_path = artifact_path(opt, h.report_name);
    const std::string series_path = artifact_path(opt, h.series_name);
    write_file(report_path, w.take());
    write_file(series_path, csv);
    out.artifacts = {report_path, series_path};
    std::ostringstream s;
    s << h.name << ": signature (" << report.signature.positives << ", "
      << report.signature.negatives << ", " << report.signature.zeros << "), D2F(phi,phi) "
      << format_double(d2_along_phi) << "\n";
    out.summary = s.str();
    return out;
}

// ---- path ----

inline ModuliPath parse_path(const Json& payload, Lattice lattice) {
    const Json& jd = require_field(payload, "payload", "domain");
    Domain domain{field_number(jd, "payload.domain", "t_low"),
                  field_number(jd, "payload.domain", "t_high")};
    if (!(domain.t_low >= 0.0 && domain.t_high > domain.t_low))
        throw InputError("payload.domain: need 0 <= t_low < t_high");
    const std::string kind = field_string(payload, "payload", "path_kind");
    if (kind == "affine") {
        Form base = parse_form(require_field(payload, "payload", "base"), "payload.base");
        Form dir = parse_form(require_field(payload, "payload", "direction"), "payload.direction");
        return make_affine_path(std::move(lattice), base, dir, domain);
    }
    if (kind == "scaling") {
        Form base = parse_form(require_field(payload, "payload", "base"), "payload.base");
        const double rate = field_number(payload, "payload", "rate");
        return make_scaling_path(std::move(lattice), base, rate, domain);
    }
    if (kind == "polynomial") {
        const Json& jc = as_array(require_field(payload, "payload", "coefficients"),
                                  "payload.coefficients");
        std::vector<Form> coeffs;
        for (std::size_t k = 0; k < jc.size(); ++k)
            coeffs.push_back(parse_form(jc[k], "payload.coefficients[" + std::to_string(k) + "]"));
        return make_polynomial_path(std::move(lattice), std::move(coeffs), domain);
    }
    throw InputError("payload.path_kind: must be one of affine, scaling, polynomial");
}

inline ScenarioOutcome run_path(const Json& payload, const ScenarioHeader& h,
                                const RunOptions& opt) {
    Lattice lattice = payload.contains("lattice_basis")
                          ? parse_lattice_basis(payload.at("lattice_basis"), "payload.lattice_basis")
                          : Lattice::cubic();
    ModuliPath path = parse_path(payload, std::move(lattice));
    const std::string form_name = optional_string(payload, "payload", "form", "hessian-form");
    if (form_name != "hessian-form" && form_name != "l2-pairing")
        throw InputError("payload.form: must be \"hessian-form\" or \"l2-pairing\"");
    const FormKind kind = form_name == "hessian-form" ? FormKind::hessian : FormKind::l2;

    double a = path.domain().t_low, b = path.domain().t_high;
    if (payload.contains("integrate")) {
        const Json& ji = payload.at("integrate");
        a = optional_number(ji, "payload.integrate", "tau", a);
        b = optional_number(ji, "payload.integrate", "T", b);
        path.require_in_domain(a);
        path.require_in_domain(b);
        if (!(a < b)) throw InputError("payload.integrate: need tau < T");
    }

    QuadratureSpec quad;
    if (opt.quad_nodes) quad.nodes_per_segment = *opt.quad_nodes;

    PathReport hessian_report = energy_by_parts(path, a, b, quad);
    double requested_energy = hessian_report.energy_direct;
    double requested_length = hessian_report.length;
    bool requested_length_valid = hessian_report.length_valid;
    if (kind == FormKind::l2) {
        requested_energy = energy_direct(path, a, b, FormKind::l2, quad);
        requested_length = path_length(path, a, b, FormKind::l2, quad, &requested_length_valid);
    }
    const bool cs_ok =
        requested_length * requested_length <= (b - a) * requested_energy + 1e-9;

    const std::string path_kind = field_string(payload, "payload", "path_kind");
    std::optional<FluxMonitorSeries> monitor;
    if (path_kind == "affine")
        monitor = pd_flux_monitor(path, path.dphi(b), 33);

    std::optional<FinitenessVerdict> verdict;
    if (payload.contains("corollary22")) {
        const Json& jc = payload.at("corollary22");
        verdict = finite_energy_check(path, field_number(jc, "payload.corollary22", "C"),
                                      field_number(jc, "payload.corollary22", "A_integral"));
    }

    JsonWriter w;
    begin_report(w, h);
    w.key("form_used").value(form_name);
    w.key("interval").begin_array().value(a).value(b).end_array();
    w.key("hessian_form");
    write_path_report(w, hessian_report);
    if (kind == FormKind::l2) {
        w.key("l2_pairing").begin_object();
        w.key("energy").value(requested_energy);
        w.key("length").value(requested_length);
        w.key("length_valid").value(requested_length_valid);
        w.end_object();
    }
    w.key("cauchy_schwarz").begin_object();
    w.key("ok").value(cs_ok);
    w.key("interval_length").value(b - a);
    w.end_object();
    if (monitor) {
        w.key("monitor").begin_object();
        w.key("volume_shrinks").value(monitor->volume_shrinks);
        w.key("flux_diverges").value(monitor->flux_diverges);
        w.key("infinite_distance_condition").value(monitor->infinite_distance_condition);
        w.key("flux_growth_exponent").value(monitor->flux_growth_exponent);
        w.end_object();
    }
    if (verdict) {
        w.key("corollary22").begin_object();
        w.key("hypotheses_hold").value(verdict->hypotheses_hold);
        w.key("energy_bound").value(verdict->energy_bound);
        w.key("length_bound").value(verdict->length_bound);
        w.key("measured_sup_h").value(verdict->measured_sup_h);
        w.key("measured_A_integral").value(verdict->measured_A_integral);
        if (verdict->witness_t) w.key("witness_t").value(*verdict->witness_t);
        if (!verdict->failure.empty()) w.key("failure").value(verdict->failure);
        w.end_object();
    }
    w.end_object();

    // sampled series along the integration interval
    std::string csv = "t,h,speed2,volume,flux_lb\n";
    const int samples = 65;
    const double lo = a > 0.0 ? a : b * 1e-4;
    const double ratio = std::pow(b / lo, 1.0 / (samples - 1));
    std::vector<double> ts(samples);
    ts[0] = b;
    for (int i = 1; i < samples; ++i) ts[static_cast<std::size_t>(i)] = ts[static_cast<std::size_t>(i) - 1] / ratio;
    for (int i = samples - 1; i >= 0; --i) {
        const double t = ts[static_cast<std::size_t>(i)];
        ModuliPointOps ops = path.point_ops(t);
        const Form v = path.dphi(t);
        const double pairing = ops.theta_pairing(v);
        const double q = kind == FormKind::hessian ? ops.hessian_form(v, v) : ops.l2(v, v);
        csv += format_double(t) + "," + format_double(pairing / ops.volume()) + "," +
               format_double(q) + "," + format_double(ops.volume()) + "," +
               format_double(std::abs(pairing)) + "\n";
    }

    ScenarioOutcome out;
    const std::string report_path = artifact_path(opt, h.report_name);
    const std::string series_path = artifact_path(opt, h.series_name);
    write_file(report_path, w.take());
    write_file(series_path, csv);
    out.artifacts = {report_path, series_path};
    if (verdict && !verdict->hypotheses_hold) out.exit_code = 2;
    std::ostringstream s;
    s << h.name << ": energy " << format_double(requested_energy) << " (" << form_name
      << "), by-parts residual " << format_double(hessian_report.residual) << ", length "
      << format_double(requested_length) << "\n";
    if (verdict)
        s << h.name << ": finiteness hypotheses " << (verdict->hypotheses_hold ? "hold" : "FAIL")
          << "\n";
    out.summary = s.str();
    return out;
}

// ---- kummer ----

inline ScenarioOutcome run_kummer(const Json& payload, const ScenarioHeader& h,
                                  const RunOptions& opt) {
    KummerModel model = parse_kummer_model(payload, "payload");
    Certificate cert = energy_upper_bound(model);

    std::optional<CrossCheckResult> cross;
    if (optional_bool(payload, "payload", "cross_check_constant_g", false) && cert.valid) {
        std::vector<std::function<double(double)>> gs;
        for (const auto& comp : model.components)
            for (const auto& entry : comp.classes) {
                const double cap = model.metric_equivalence_dim4_factor * entry.calib_volume_bound;
                gs.push_back([cap](double) { return cap; });
            }
        cross = cross_check_with_path_geometry(model, gs);
    }

    JsonWriter w;
    begin_report(w, h);
    w.key("certificate");
    write_certificate(w, cert);
    if (cross) {
        w.key("cross_check").begin_object();
        w.key("max_energy").value(cross->max_energy);
        w.key("energy_bound").value(cross->energy_bound);
        w.key("margin").value(cross->margin);
        w.key("dominated").value(cross->dominated);
        w.end_object();
    }
    w.end_object();

    ScenarioOutcome out;
    const std::string report_path = artifact_path(opt, h.report_name);
    write_file(report_path, w.take());
    out.artifacts = {report_path};
    out.exit_code = cert.valid ? 0 : 2;

    std::ostringstream s;
    s << h.name << ": hypotheses " << (cert.hypotheses.all_hold() ? "hold" : "FAIL") << "\n";
    for (const auto& f : cert.hypotheses.failures) s << h.name << ":   - " << f << "\n";
    for (const auto& cb : cert.hypotheses.classes)
        s << h.name << ":   class " << cb.id << ": cap " << format_double(cb.g_cap) << ", sup|f'| "
          << format_double(cb.sup_abs_fprime) << ", int|f''| "
          << format_double(cb.integral_abs_fsecond) << "\n";
    if (cert.valid)
        s << h.name << ": energy bound " << format_double(cert.energy_bound) << ", length bound "
          << format_double(cert.length_bound) << "\n";
    else
        s << h.name << ": certificate INVALID\n";
    out.summary = s.str();
    return out;
}

// ---- kahler ----

inline ScenarioOutcome run_kahler(const Json& payload, const ScenarioHeader& h,
                                  const RunOptions& opt) {
    IntersectionForm q = parse_intersection_form(
        require_field(payload, "payload", "intersection_form"), "payload.intersection_form");
    ConeClass alpha = as_number_array(require_field(payload, "payload", "alpha"), "payload.alpha",
                                      static_cast<std::size_t>(q.rank()));
    ConeClass omega = as_number_array(require_field(payload, "payload", "omega"), "payload.omega",
                                      static_cast<std::size_t>(q.rank()));
    const std::int64_t kmax = optional_integer(payload, "payload", "kmax", 30);
    if (kmax < 1 || kmax > 60) throw InputError("payload.kmax: must be in 1..60");

    BoundaryScan scan = boundary_scan(alpha, omega, q, static_cast<int>(kmax));

    JsonWriter w;
    begin_report(w, h);
    w.key("classification").value(boundary_distance_name(scan.classification));
    w.key("volume_alpha").value(scan.volume_alpha);
    w.key("energy_converged").value(scan.energy_converged);
    w.key("energy_limit").value(scan.energy_limit);
    w.key("energy_growth_exponent").value(scan.energy_growth_exponent);
    w.end_object();

    std::string csv = "tau,energy,length\n";
    for (const auto& row : scan.rows)
        csv += format_double(row.tau) + "," + format_double(row.energy) + "," +
               format_double(row.length) + "\n";

    ScenarioOutcome out;
    const std::string report_path = artifact_path(opt, h.report_name);
    const std::string series_path = artifact_path(opt, h.series_name);
    write_file(report_path, w.take());
    write_file(series_path, csv);
    out.artifacts = {report_path, series_path};
    std::ostringstream s;
    s << h.name << ": boundary class is at " << boundary_distance_name(scan.classification)
      << " distance; energy " << (scan.energy_converged ? "converged to " : "diverging, last ")
      << format_double(scan.energy_limit) << "\n";
    out.summary = s.str();
    return out;
}

}  // namespace detail

/// Runs one scenario document. Input errors throw; negative verdicts map to
/// exit code 2 in the outcome.
inline ScenarioOutcome run_scenario_json(const Json& j, const RunOptions& opt) {
    detail::ScenarioHeader h = detail::parse_header(j, opt);
    const Json& payload = require_field(j, "scenario", "payload");
    if (h.kind == "point") return detail::run_point(payload, h, opt);
    if (h.kind == "hessian") return detail::run_hessian(payload, h, opt);
    if (h.kind == "path") return detail::run_path(payload, h, opt);
    if (h.kind == "kummer") return detail::run_kummer(payload, h, opt);
    return detail::run_kahler(payload, h, opt);
}

inline ScenarioOutcome run_scenario_text(const std::string& text, const RunOptions& opt) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("scenario: malformed JSON");
    return run_scenario_json(j, opt);
}

inline ScenarioOutcome run_scenario_file(const std::string& file, const RunOptions& opt) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw InputError("cannot read scenario file " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_scenario_text(buf.str(), opt);
}

// ---- bundled scenario catalog ----

struct BundledScenario {
    std::string name;
    std::string description;
    std::string json_text;
};

namespace detail {

inline void write_form_json(JsonWriter& w, const Form& f) { write_form(w, f); }

inline std::string point_scenario_phi0() {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kScenarioSchemaVersion);
    w.key("kind").value("point");
    w.key("name").value("g2-point-phi0");
    w.key("seed").value(static_cast<std::int64_t>(41));
    w.key("payload").begin_object();
    w.key("phi");
    write_form_json(w, reference_phi());
    w.key("comass_trials").value(400);
    w.end_object();
    w.end_object();
    return w.take();
}

inline std::string hessian_scenario() {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kScenarioSchemaVersion);
    w.key("kind").value("hessian");
    w.key("name").value("torus-signature");
    w.key("payload").begin_object();
    w.key("phi");
    write_form_json(w, reference_phi());
    w.end_object();
    w.end_object();
    return w.take();
}

inline std::string scaling_ray_scenario() {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kScenarioSchemaVersion);
    w.key("kind").value("path");
    w.key("name").value("path-scaling-ray");
    w.key("payload").begin_object();
    w.key("path_kind").value("scaling");
    w.key("base");
    write_form_json(w, reference_phi());
    w.key("rate").value(1.0);
    w.key("domain").begin_object();
    w.key("t_low").value(0.0);
    w.key("t_high").value(1.0);
    w.end_object();
    w.key("form").value("hessian-form");
    w.end_object();
    w.end_object();
    return w.take();
}

inline std::string affine_flux_scenario() {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kScenarioSchemaVersion);
    w.key("kind").value("path");
    w.key("name").value("path-affine-flux");
    w.key("payload").begin_object();
    w.key("path_kind").value("affine");
    w.key("base");
    write_form_json(w, reference_phi());
    w.key("direction");
    write_form_json(w, 0.25 * Form::basis({0, 1, 2}));
    w.key("domain").begin_object();
    w.key("t_low").value(0.0);
    w.key("t_high").value(1.0);
    w.end_object();
    w.key("form").value("hessian-form");
    w.key("corollary22").begin_object();
    w.key("C").value(2.0);
    w.key("A_integral").value(0.0);
    w.end_object();
    w.end_object();
    w.end_object();
    return w.take();
}

inline std::string kummer_scenario(const char* name, const char* kind, double a, double b) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kScenarioSchemaVersion);
    w.key("kind").value("kummer");
    w.key("name").value(name);
    w.key("payload").begin_object();
    w.key("T").value(1.0);
    w.key("V0").value(1.0);
    w.key("metric_equivalence_dim4_factor").value(4.0);
    w.key("b1_zero").value(true);
    w.key("components").begin_array();
    w.begin_object();
    w.key("name").value(std::string("resolution-") + kind);
    w.key("singularity_type").value(kind);
    w.key("delta_trivial").value(true);
    w.key("metric_dominated").value(true);
    w.key("classes").begin_array();
    w.begin_object();
    w.key("id").value("c0");
    w.key("coeff").begin_object();
    w.key("kind").value(std::string("type") + kind);
    w.key("a").value(a);
    w.key("b").value(b);
    w.end_object();
    w.key("calib_volume_bound").value(0.25);  // cap 4 * 0.25 = 1
    w.end_object();
    w.end_array();
    w.end_object();
    w.end_array();
    w.key("cross_check_constant_g").value(true);
    w.end_object();
    w.end_object();
    return w.take();
}

inline std::string kahler_scenario(const char* name, double a0, double a1, double w0, double w1,
                                   int kmax) {
    JsonWriter w;
    w.begin_object();
    w.key("schema_version").value(kScenarioSchemaVersion);
    w.key("kind").value("kahler");
    w.key("name").value(name);
    w.key("payload").begin_object();
    w.key("intersection_form").begin_object();
    w.key("rank").value(2);
    w.key("n").value(2);
    w.key("entries").begin_array();
    w.begin_object();
    w.key("indices").begin_array().value(0).value(1).end_array();
    w.key("value").value(1.0);
    w.end_object();
    w.end_array();
    w.end_object();
    w.key("alpha").begin_array().value(a0).value(a1).end_array();
    w.key("omega").begin_array().value(w0).value(w1).end_array();
    w.key("kmax").value(kmax);
    w.end_object();
    w.end_object();
    return w.take();
}

}  // namespace detail

inline const std::vector<BundledScenario>& bundled_scenarios() {
    static const std::vector<BundledScenario> catalog = [] {
        std::vector<BundledScenario> v;
        v.push_back({"g2-point-phi0",
                     "reference positive 3-form: induced metric, volume density, dual 4-form, "
                     "comass sample",
                     detail::point_scenario_phi0()});
        v.push_back({"torus-signature",
                     "Hessian of the volume potential at the unit 7-torus; signature (28, 7, 0)",
                     detail::hessian_scenario()});
        v.push_back({"path-scaling-ray",
                     "scaling ray e^t phi0 on [0, 1]: constant speed sqrt(7), energy 7",
                     detail::scaling_ray_scenario()});
        v.push_back({"path-affine-flux",
                     "affine path with bounded dual-form flux; finiteness hypotheses hold",
                     detail::affine_flux_scenario()});
        v.push_back({"kummer-typeI-unit",
                     "single type-I class (a=0, b=1, cap 1, V0=1, T=1): energy bound 6",
                     detail::kummer_scenario("kummer-typeI-unit", "I", 0.0, 1.0)});
        v.push_back({"kummer-typeII-unit",
                     "single type-II class (a=1, b=1, cap 1, V0=1, T=1): energy bound 15",
                     detail::kummer_scenario("kummer-typeII-unit", "II", 1.0, 1.0)});
        v.push_back({"kahler-null-boundary",
                     "hyperbolic surface, null boundary class: infinite distance, E = 1/tau - 1",
                     detail::kahler_scenario("kahler-null-boundary", 1.0, 0.0, 0.0, 1.0, 24)});
        v.push_back({"kahler-finite-ray",
                     "hyperbolic surface, positive-volume boundary class: finite distance, E -> 1",
                     detail::kahler_scenario("kahler-finite-ray", 1.0, 1.0, 1.0, 1.0, 34)});
        return v;
    }();
    return catalog;
}

}  // namespace g2m
