#include <doctest.h>

#include <cmath>

#include "g2m/path.hpp"
#include "oracles.hpp"

using namespace g2m;

namespace {

ModuliPath scaling_ray() {
    return make_scaling_path(Lattice::cubic(), reference_phi(), 1.0, Domain{0.0, 1.0});
}

}  // namespace

TEST_CASE("path construction validates derivatives and positivity") {
    Lattice unit = Lattice::cubic();
    Form phi0 = reference_phi();
    Form zero(3);

    // wrong first derivative is rejected
    CHECK_THROWS_AS(ModuliPath(unit, Domain{0.1, 1.0}, [&](double t) { return (1.0 + t) * phi0; },
                               [&](double) { return 2.0 * phi0; }, [&](double) { return zero; }),
                    InputError);
    // a path that leaves the positive cone is rejected
    CHECK_THROWS_AS(make_affine_path(unit, phi0, -2.0 * phi0, Domain{0.0, 1.0}), InputError);
    CHECK_THROWS_AS(make_affine_path(unit, phi0, zero, Domain{1.0, 0.5}), InputError);
    CHECK_THROWS_AS(make_polynomial_path(unit, {}, Domain{0.0, 1.0}), InputError);
}

TEST_CASE("velocity pairing h(t) and the h = -dF identity") {
    // path t phi0: h(1) = 7 since phi ^ theta = 7 Vol
    ModuliPath line = make_affine_path(Lattice::cubic(), Form(3), reference_phi(), Domain{0.5, 1.5});
    CHECK(velocity_pairing(line, 1.0) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)velocity_pairing(line, 0.25), InputError);

    // affine path from phi0 in a type-27 direction: h -> 0 at the base point
    Rng rng(30);
    G2PointData p0 = G2PointData::analyze(reference_phi());
    Form eta27 = 0.2 * type_decompose(oracles::random_form(rng, 3), p0).pi27;
    ModuliPath aff = make_affine_path(Lattice::cubic(), reference_phi(), eta27, Domain{0.0, 1.0});
    CHECK(std::abs(velocity_pairing(aff, 0.0)) < 1e-10);

    // h(t) = -dF(dphi) along random polynomial paths
    std::vector<Form> coeffs = {reference_phi(), 0.1 * oracles::random_form(rng, 3),
                                0.05 * oracles::random_form(rng, 3)};
    ModuliPath poly = make_polynomial_path(Lattice::cubic(), coeffs, Domain{0.0, 1.0});
    for (double t : {0.2, 0.6, 1.0}) {
        ModuliPointOps ops = poly.point_ops(t);
        CHECK(velocity_pairing(poly, t) == doctest::Approx(-ops.dF(poly.dphi(t))).epsilon(1e-12));
    }
}

TEST_CASE("energy and length of the model paths") {
    ModuliPath ray = scaling_ray();
    QuadratureSpec quad;
    CHECK(energy_direct(ray, 0.0, 1.0, FormKind::hessian, quad) == doctest::Approx(7.0).epsilon(1e-9));
    CHECK(path_length(ray, 0.0, 1.0, FormKind::hessian, quad) ==
          doctest::Approx(std::sqrt(7.0)).epsilon(1e-9));

    // phi_t = t^3 phi0 on [1/e, 1], L2 form: length 3 sqrt(7)
    std::vector<Form> cubic(4, Form(3));
    cubic[3] = reference_phi();
    ModuliPath steep = make_polynomial_path(Lattice::cubic(), cubic, Domain{std::exp(-1.0), 1.0});
    CHECK(path_length(steep, std::exp(-1.0), 1.0, FormKind::l2, quad) ==
          doctest::Approx(3.0 * std::sqrt(7.0)).epsilon(1e-8));
}

TEST_CASE("integration by parts reproduces the direct energy") {
    ModuliPath ray = scaling_ray();
    PathReport rep = energy_by_parts(ray, 0.0, 1.0);
    // h is constant 7 on the ray, so the boundary terms cancel and the
    // acceleration integral carries everything
    CHECK(rep.boundary_term_low == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(rep.boundary_term_high == doctest::Approx(-7.0).epsilon(1e-12));
    CHECK(rep.integral_term == doctest::Approx(7.0).epsilon(1e-9));
    CHECK(rep.energy_by_parts == doctest::Approx(7.0).epsilon(1e-9));
    CHECK(rep.residual < 1e-6 * std::max(1.0, rep.energy_direct));
    CHECK(rep.length_valid);

    // affine path: the acceleration integral vanishes identically
    Rng rng(31);
    Form dir = 0.1 * oracles::random_form(rng, 3);
    ModuliPath aff = make_affine_path(Lattice::cubic(), reference_phi(), dir, Domain{0.0, 1.0});
    PathReport ra = energy_by_parts(aff, 0.25, 1.0);
    CHECK(ra.integral_term == 0.0);
    CHECK(ra.energy_by_parts ==
          doctest::Approx(ra.boundary_term_low + ra.boundary_term_high).epsilon(1e-14));
    CHECK(ra.residual < 1e-6 * std::max(1.0, ra.energy_direct));

    // random C^2 polynomial paths
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<Form> coeffs(4, Form(3));
        coeffs[0] = reference_phi();
        for (int k = 1; k < 4; ++k) coeffs[static_cast<std::size_t>(k)] = 0.06 * oracles::random_form(rng, 3);
        ModuliPath poly = make_polynomial_path(Lattice::cubic(), coeffs, Domain{0.2, 1.0});
        PathReport rp = energy_by_parts(poly, 0.2, 1.0);
        CHECK(rp.residual < 1e-6 * std::max(1.0, std::abs(rp.energy_direct)));
    }
}

TEST_CASE("cauchy-schwarz: equality at constant speed, strict otherwise") {
    PathReport rep = energy_by_parts(scaling_ray(), 0.0, 1.0);
    CHECK(cauchy_schwarz_ok(rep, 1.0));
    // constant speed means equality up to quadrature tolerance
    CHECK(std::abs(rep.length * rep.length - rep.energy_direct) < 1e-7);

    // reparameterized ray e^{t^2} phi0 has non-constant speed: strict inequality
    ModuliPath warped(Lattice::cubic(), Domain{0.0, 1.0},
                      [](double t) { return std::exp(t * t) * reference_phi(); },
                      [](double t) { return 2.0 * t * std::exp(t * t) * reference_phi(); },
                      [](double t) { return (2.0 + 4.0 * t * t) * std::exp(t * t) * reference_phi(); });
    PathReport rw = energy_by_parts(warped, 0.0, 1.0);
    CHECK(cauchy_schwarz_ok(rw, 1.0));
    CHECK(rw.length * rw.length < 1.0 * rw.energy_direct - 1e-3);
}

TEST_CASE("improper energies over the half-open domain") {
    // the scaling ray has constant speed: the tail limit is the full energy
    ImproperResult ray = improper_energy(scaling_ray(), FormKind::hessian);
    CHECK(ray.converged);
    CHECK(ray.value == doctest::Approx(7.0).epsilon(1e-8));

    // t^3 phi0 on (0, 1] has L2 speed^2 = 63/t^2: the energy diverges like 1/tau
    std::vector<Form> cubic(4, Form(3));
    cubic[3] = reference_phi();
    ModuliPath steep = make_polynomial_path(Lattice::cubic(), cubic, Domain{0.0, 1.0});
    ImproperResult div = improper_energy(steep, FormKind::l2, QuadratureSpec{}, 24);
    CHECK_FALSE(div.converged);
    CHECK(div.growth_exponent == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("the potential is convex along tame affine paths") {
    Rng rng(36);
    G2PointData p0 = G2PointData::analyze(reference_phi());
    TypeSplit s = type_decompose(oracles::random_form(rng, 3), p0);
    Form dir = 0.2 * (s.pi1 + s.pi27);
    ModuliPath aff = make_affine_path(Lattice::cubic(), reference_phi(), dir, Domain{0.0, 1.0});
    const double h = 1e-3;
    for (int k = 1; k < 40; ++k) {
        const double t = k / 40.0;
        auto F = [&](double u) { return potential_F({aff.lattice(), aff.phi(u)}); };
        CHECK(F(t + h) - 2.0 * F(t) + F(t - h) >= -1e-8);
    }

    // a type-7-dominant direction makes the hessian form negative; the
    // report flags it rather than asserting convexity there
    Form bad = 0.2 * s.pi7;
    if (bad.coeff_norm() > 1e-6) {
        ModuliPath worst = make_affine_path(Lattice::cubic(), reference_phi(), bad, Domain{0.0, 1.0});
        CHECK(speed_squared(worst, 0.0, FormKind::hessian) < 0.0);
        PathReport rep = energy_by_parts(worst, 0.0, 1.0);
        CHECK_FALSE(rep.length_valid);
        CHECK(rep.residual < 1e-6 * std::max(1.0, std::abs(rep.energy_direct)));
    }
}

TEST_CASE("energy is non-increasing in the lower endpoint") {
    Rng rng(32);
    G2PointData p0 = G2PointData::analyze(reference_phi());
    TypeSplit s = type_decompose(oracles::random_form(rng, 3), p0);
    Form dir = 0.15 * (s.pi1 + s.pi27);
    ModuliPath aff = make_affine_path(Lattice::cubic(), reference_phi(), dir, Domain{0.0, 1.0});
    QuadratureSpec quad;
    double prev = energy_direct(aff, 1.0, 1.0, FormKind::hessian, quad);
    for (int k = 1; k <= 12; ++k) {
        const double tau = std::ldexp(1.0, -k);
        const double e = energy_direct(aff, tau, 1.0, FormKind::hessian, quad);
        CHECK(e >= prev - 1e-9);
        prev = e;
    }
}

TEST_CASE("finiteness certificate: bounded affine, singular scaling, constant") {
    Rng rng(33);
    Form dir = 0.1 * oracles::random_form(rng, 3);
    ModuliPath aff = make_affine_path(Lattice::cubic(), reference_phi(), dir, Domain{0.0, 1.0});
    // generous C; affine paths have no acceleration term
    FinitenessVerdict good = finite_energy_check(aff, 10.0, 0.0, 256);
    CHECK(good.hypotheses_hold);
    CHECK(good.energy_bound == doctest::Approx(20.0));
    CHECK(good.length_bound == doctest::Approx(std::sqrt(20.0)));
    CHECK(good.measured_A_integral == 0.0);

    // t^3 phi0 on (1e-6, 1]: the velocity pairing behaves like 21/t near 0
    std::vector<Form> cubic(4, Form(3));
    cubic[3] = reference_phi();
    ModuliPath steep = make_polynomial_path(Lattice::cubic(), cubic, Domain{1e-6, 1.0});
    FinitenessVerdict bad = finite_energy_check(steep, 1000.0, 0.0, 256);
    CHECK_FALSE(bad.hypotheses_hold);
    REQUIRE(bad.witness_t.has_value());
    CHECK(*bad.witness_t < 0.05);

    // constant path: C = 0, A = 0, zero energy bound
    ModuliPath constant = make_affine_path(Lattice::cubic(), reference_phi(), Form(3), Domain{0.5, 1.0});
    FinitenessVerdict trivial = finite_energy_check(constant, 0.0, 0.0, 64);
    CHECK(trivial.hypotheses_hold);
    CHECK(trivial.energy_bound == 0.0);
}

TEST_CASE("cycle flux and volume against the dual 4-form") {
    TorusModuliPoint pt{Lattice::cubic(), reference_phi()};
    FlatCycle4 cyc;
    cyc.coeffs[0][3] = 1;
    cyc.coeffs[1][4] = 1;
    cyc.coeffs[2][5] = 1;
    cyc.coeffs[3][6] = 1;
    FluxVolume fv = cycle_flux_and_volume(cyc, pt);
    CHECK(fv.flux == doctest::Approx(1.0));
    CHECK(fv.volume == doctest::Approx(1.0));

    FlatCycle4 flat;
    flat.coeffs[0][0] = 1;
    flat.coeffs[1][1] = 1;
    flat.coeffs[2][2] = 1;
    flat.coeffs[3][3] = 1;
    FluxVolume fz = cycle_flux_and_volume(flat, pt);
    CHECK(fz.flux == doctest::Approx(0.0));
    CHECK(fz.volume == doctest::Approx(1.0));

    // c^{4/3} on both sides at c = 8
    FluxVolume f8 = cycle_flux_and_volume(cyc, {Lattice::cubic(), 8.0 * reference_phi()});
    CHECK(f8.flux == doctest::Approx(16.0).epsilon(1e-10));
    CHECK(f8.volume == doctest::Approx(16.0).epsilon(1e-10));

    FlatCycle4 dependent;
    dependent.coeffs[0][0] = 1;
    dependent.coeffs[1][0] = 2;
    dependent.coeffs[2][2] = 1;
    dependent.coeffs[3][3] = 1;
    CHECK_THROWS_AS((void)cycle_flux_and_volume(dependent, pt), InputError);
}

TEST_CASE("calibration inequality |flux| <= volume on random cycles") {
    Rng rng(34);
    for (int trial = 0; trial < 50; ++trial) {
        TorusModuliPoint pt{Lattice::cubic(), oracles::random_positive_phi(rng)};
        FlatCycle4 cyc;
        for (auto& row : cyc.coeffs)
            for (auto& v : row) v = rng.integer(-3, 3);
        try {
            FluxVolume fv = cycle_flux_and_volume(cyc, pt);
            CHECK(std::abs(fv.flux) <= fv.volume + 1e-9);
        } catch (const InputError&) {
            // dependent random cycle; nothing to check
        }
    }
}

TEST_CASE("poincare-dual flux monitor branches") {
    // bounded affine path: nothing diverges
    Rng rng(35);
    Form dir = 0.1 * oracles::random_form(rng, 3);
    ModuliPath aff = make_affine_path(Lattice::cubic(), reference_phi(), dir, Domain{0.0, 1.0});
    FluxMonitorSeries bounded = pd_flux_monitor(aff, dir, 17);
    CHECK_FALSE(bounded.volume_shrinks);
    CHECK_FALSE(bounded.flux_diverges);
    CHECK_FALSE(bounded.infinite_distance_condition);

    // t phi0: the volume collapses, so the volume branch of the trichotomy
    // fires rather than the flux branch
    ModuliPath shrink = make_affine_path(Lattice::cubic(), Form(3), reference_phi(), Domain{1e-3, 1.0});
    FluxMonitorSeries collapsing = pd_flux_monitor(shrink, reference_phi(), 17);
    CHECK(collapsing.volume_shrinks);
    CHECK_FALSE(collapsing.infinite_distance_condition);

    // constant path: constant series
    ModuliPath constant = make_affine_path(Lattice::cubic(), reference_phi(), Form(3), Domain{0.5, 1.0});
    FluxMonitorSeries flat = pd_flux_monitor(constant, Form(3), 9);
    for (const auto& row : flat.rows) {
        CHECK(row.flux_lower_bound == 0.0);
        CHECK(row.volume == doctest::Approx(flat.rows.front().volume));
    }
    CHECK_FALSE(flat.infinite_distance_condition);

    // non-affine velocity class is rejected
    CHECK_THROWS_AS((void)pd_flux_monitor(scaling_ray(), reference_phi(), 9), InputError);
}
