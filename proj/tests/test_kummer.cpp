#include <doctest.h>

#include <cmath>

#include "g2m/kummer.hpp"
#include "g2m/rng.hpp"
#include "oracles.hpp"

using namespace g2m;

namespace {

KummerModel single_class_model(CoeffFunction f, double calib_bound = 0.25) {
    KummerModel m;
    m.T = 1.0;
    m.V0 = 1.0;
    m.b1_zero = true;
    GluingComponent comp;
    comp.name = "resolution";
    comp.singularity_type = SingularityType::type_i;
    comp.delta_trivial = true;
    comp.metric_dominated = true;
    comp.classes.push_back({"c0", f, calib_bound});
    m.components.push_back(comp);
    return m;
}

}  // namespace

TEST_CASE("polynomial roots, variation and sup on closed intervals") {
    // (t - 0.25)(t - 0.5)(t - 0.75) expanded
    Poly p = {-0.09375, 0.6875, -1.5, 1.0};
    auto roots = poly_real_roots(p, 0.0, 1.0);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(roots[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(roots[2] == doctest::Approx(0.75).epsilon(1e-12));
    // double root: t^2 touching zero at 0.5
    Poly touch = {0.25, -1.0, 1.0};
    auto r2 = poly_real_roots(touch, 0.0, 1.0);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0] == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(poly_sup_abs({0.0, 2.0}, 0.0, 1.0) == doctest::Approx(2.0));
    CHECK(poly_total_variation({0.25, -1.0, 1.0}, 0.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("coefficient families evaluate exactly") {
    CoeffFunction f1 = CoeffFunction::type_i(1.0, 2.0);
    auto j1 = f1.eval(1.0);
    CHECK(j1.f == 3.0);
    CHECK(j1.df == 4.0);
    CHECK(j1.ddf == 4.0);

    CoeffFunction f2 = CoeffFunction::type_ii(1.0, 1.0);
    auto j2 = f2.eval(1.0);
    CHECK(j2.f == 2.0);
    CHECK(j2.df == 5.0);
    CHECK(j2.ddf == 8.0);

    // derivatives match central finite differences
    Rng rng(40);
    for (int trial = 0; trial < 10; ++trial) {
        Poly coeffs(5);
        for (auto& c : coeffs) c = rng.uniform(-2.0, 2.0);
        CoeffFunction f = CoeffFunction::polynomial(coeffs);
        const double t = rng.uniform(0.1, 0.9);
        const double h = 1e-6;
        const double fd = (f.eval(t + h).f - f.eval(t - h).f) / (2.0 * h);
        CHECK(std::abs(f.eval(t).df - fd) < 1e-8 * std::max(1.0, std::abs(fd)));
    }

    CHECK_THROWS_AS((void)CoeffFunction::polynomial({}), InputError);
}

TEST_CASE("derivative bounds for the two singularity families") {
    CoeffFunction f1 = CoeffFunction::type_i(0.0, 1.0);
    CHECK(f1.sup_abs_derivative(1.0) == 2.0);
    CHECK(f1.integral_abs_second(1.0) == 2.0);
    CoeffFunction f2 = CoeffFunction::type_ii(1.0, 1.0);
    CHECK(f2.sup_abs_derivative(1.0) == 5.0);
    CHECK(f2.integral_abs_second(1.0) == 5.0);
}

TEST_CASE("exact |f''| integral equals adaptive quadrature on random polynomials") {
    Rng rng(41);
    for (int trial = 0; trial < 12; ++trial) {
        Poly coeffs(static_cast<std::size_t>(rng.integer(3, 6)));
        for (auto& c : coeffs) c = rng.uniform(-3.0, 3.0);
        CoeffFunction f = CoeffFunction::polynomial(coeffs);
        const double T = rng.uniform(0.5, 2.0);
        const double exact = f.integral_abs_second(T);
        const double quad = oracles::adaptive_simpson(
            [&](double t) { return std::abs(f.eval(t).ddf); }, 0.0, T);
        CHECK(std::abs(exact - quad) < 1e-9 * std::max(1.0, exact));
    }
}

TEST_CASE("dual basis: inversion and conditioning guard") {
    Mat id = Mat::identity(4);
    Mat dual_id = dual_basis(id);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(dual_id(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

    Mat diag(2, 2);
    diag(0, 0) = 2.0;
    diag(1, 1) = 5.0;
    Mat dd = dual_basis(diag);
    CHECK(dd(0, 0) == doctest::Approx(0.5));
    CHECK(dd(1, 1) == doctest::Approx(0.2));

    Rng rng(42);
    Mat p(6, 6);
    for (auto& v : p.data()) v = rng.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i < 6; ++i) p(i, i) += 3.0;
    Mat d = dual_basis(p);
    Mat round = matmul(transpose(p), d);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(std::abs(round(i, j) - (i == j ? 1.0 : 0.0)) < 1e-10);

    Mat singular(3, 3);
    singular(0, 0) = 1.0;
    bool threw = false;
    try {
        (void)dual_basis(singular);
    } catch (const NumericError& e) {
        threw = true;
        CHECK(std::string(e.what()).find("condition") != std::string::npos);
    }
    CHECK(threw);
}

TEST_CASE("hypotheses report: computed bounds and echoed assumptions") {
    HypothesesReport rep = check_hypotheses(single_class_model(CoeffFunction::type_i(0.0, 1.0)));
    CHECK(rep.all_hold());
    REQUIRE(rep.classes.size() == 1);
    CHECK(rep.classes[0].sup_abs_fprime == 2.0);
    CHECK(rep.classes[0].integral_abs_fsecond == 2.0);
    CHECK(rep.classes[0].g_cap == 1.0);

    KummerModel bad = single_class_model(CoeffFunction::type_i(0.0, 1.0));
    bad.components[0].delta_trivial = false;
    HypothesesReport rb = check_hypotheses(bad);
    CHECK_FALSE(rb.all_hold());
    CHECK_FALSE(rb.all_delta_trivial);

    KummerModel broken = single_class_model(CoeffFunction::type_i(0.0, 1.0));
    broken.T = -1.0;
    CHECK_THROWS_AS((void)check_hypotheses(broken), InputError);
}

TEST_CASE("per-class caps") {
    GluingComponent comp;
    comp.name = "c";
    comp.classes.push_back({"a", CoeffFunction::type_i(0.0, 1.0), 1.0});
    comp.classes.push_back({"z", CoeffFunction::type_i(0.0, 1.0), 0.0});
    CHECK(g_bound(comp, "a", 4.0) == 4.0);
    CHECK(g_bound(comp, "z", 4.0) == 0.0);
    CHECK_THROWS_AS((void)g_bound(comp, "missing", 4.0), InputError);
    // the default factor is the dimension-4 volume inflation of a 2-Lipschitz
    // metric equivalence
    CHECK(metric_equivalence_factor() == 4.0);
    CHECK(metric_equivalence_factor(2.0, 4) == 4.0);
}

TEST_CASE("certificates for the two bundled families are exact") {
    Certificate c1 = energy_upper_bound(single_class_model(CoeffFunction::type_i(0.0, 1.0)));
    CHECK(c1.valid);
    CHECK(c1.energy_bound == 6.0);                 // 2 + 2 + 2, exactly
    CHECK(c1.length_bound == std::sqrt(6.0));      // sqrt(T * bound), exactly
    CHECK(c1.C_bound == 2.0);
    CHECK(c1.A_integral == 2.0);

    Certificate c2 = energy_upper_bound(single_class_model(CoeffFunction::type_ii(1.0, 1.0)));
    CHECK(c2.valid);
    CHECK(c2.energy_bound == 15.0);  // 5 + 5 + 5

    Certificate c0 = energy_upper_bound(single_class_model(CoeffFunction::type_i(3.0, 0.0)));
    CHECK(c0.valid);
    CHECK(c0.energy_bound == 0.0);  // static path

    KummerModel bad = single_class_model(CoeffFunction::type_i(0.0, 1.0));
    bad.b1_zero = false;
    Certificate cb = energy_upper_bound(bad);
    CHECK_FALSE(cb.valid);
    CHECK(cb.energy_bound == 0.0);
}

TEST_CASE("the bound is monotone in the caps and the coefficients") {
    Rng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const double b = rng.uniform(0.1, 3.0);
        const double cap = rng.uniform(0.1, 2.0);
        Certificate base = energy_upper_bound(single_class_model(CoeffFunction::type_i(0.0, b), cap));
        Certificate more_cap =
            energy_upper_bound(single_class_model(CoeffFunction::type_i(0.0, b), cap * 1.5));
        Certificate more_b =
            energy_upper_bound(single_class_model(CoeffFunction::type_i(0.0, b * 1.5), cap));
        CHECK(more_cap.energy_bound >= base.energy_bound);
        CHECK(more_b.energy_bound >= base.energy_bound);
    }
}

TEST_CASE("cross-check: the certificate dominates bounded synthetic profiles") {
    KummerModel m = single_class_model(CoeffFunction::type_i(0.0, 1.0));

    // constant profile at the cap: by parts the expression collapses to zero
    CrossCheckResult r1 = cross_check_with_path_geometry(m, {[](double) { return 1.0; }});
    CHECK(r1.dominated);
    CHECK(std::abs(r1.max_energy) < 1e-12);

    CrossCheckResult r2 = cross_check_with_path_geometry(m, {[](double) { return 0.0; }});
    CHECK(r2.dominated);
    CHECK(r2.max_energy == 0.0);

    CrossCheckResult r3 =
        cross_check_with_path_geometry(m, {[](double t) { return std::sin(1.0 / t); }});
    CHECK(r3.dominated);
    CHECK(r3.max_energy <= r3.energy_bound + 1e-9);

    CHECK_THROWS_AS(
        (void)cross_check_with_path_geometry(m, {[](double) { return 1.0 + 1e-6; }}),
        InputError);
    CHECK_THROWS_AS((void)cross_check_with_path_geometry(m, {}), InputError);
}

TEST_CASE("a non-identity cup pairing reweights the bound") {
    // two classes coupled off-diagonally
    KummerModel m;
    m.T = 1.0;
    m.V0 = 1.0;
    m.b1_zero = true;
    GluingComponent comp;
    comp.name = "two-classes";
    comp.delta_trivial = true;
    comp.metric_dominated = true;
    comp.classes.push_back({"p", CoeffFunction::type_i(0.0, 1.0), 0.25});
    comp.classes.push_back({"q", CoeffFunction::type_i(0.0, 2.0), 0.5});
    m.components.push_back(comp);
    Mat pairing(2, 2);
    pairing(0, 1) = 1.0;
    pairing(1, 0) = 1.0;
    m.pairing = pairing;

    Certificate cert = energy_upper_bound(m);
    CHECK(cert.valid);
    // class p couples to q's cap 2.0: (2+2+2)*2 = 12; q to p's cap 1.0: (4+4+4)*1
    CHECK(cert.energy_bound == doctest::Approx(24.0));

    CrossCheckResult rc = cross_check_with_path_geometry(
        m, {[](double t) { return std::cos(3.0 / (t + 0.01)); },
            [](double t) { return 2.0 * std::sin(5.0 * t); }});
    CHECK(rc.dominated);
}
