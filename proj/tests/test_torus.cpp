#include <doctest.h>

#include <cmath>

#include "g2m/torus.hpp"
#include "oracles.hpp"

using namespace g2m;

TEST_CASE("lattice construction and covolume") {
    CHECK(Lattice::cubic().covolume() == doctest::Approx(1.0));
    CHECK(Lattice::cubic(2.0).covolume() == doctest::Approx(128.0));
    Mat singular(7, 7);
    CHECK_THROWS_AS((void)Lattice::from_basis(singular), InputError);
    Mat rect(7, 6);
    CHECK_THROWS_AS((void)Lattice::from_basis(rect), InputError);
}

TEST_CASE("total volume: density times covolume") {
    CHECK(total_volume({Lattice::cubic(), reference_phi()}) == doctest::Approx(1.0));
    // c^{7/3} scaling at c = 8
    CHECK(total_volume({Lattice::cubic(), 8.0 * reference_phi()}) == doctest::Approx(128.0));
    // covolume 2^7
    CHECK(total_volume({Lattice::cubic(2.0), reference_phi()}) == doctest::Approx(128.0));
    CHECK_THROWS_AS((void)total_volume({Lattice::cubic(), Form::basis({0, 1, 2})}), InputError);
    CHECK_THROWS_AS((void)TorusModuliPoint::make(Lattice::cubic(), Form::basis({0, 1, 2})),
                    InputError);
}

TEST_CASE("volume potential values and scaling identity") {
    CHECK(potential_F({Lattice::cubic(), reference_phi()}) == doctest::Approx(0.0));
    CHECK(potential_F({Lattice::cubic(), 8.0 * reference_phi()}) ==
          doctest::Approx(-21.0 * std::log(2.0)));
    // F(c phi) - F(phi) = -7 log c at c = e
    Rng rng(20);
    Form phi = oracles::random_positive_phi(rng);
    const double c = std::exp(1.0);
    CHECK(potential_F({Lattice::cubic(), c * phi}) - potential_F({Lattice::cubic(), phi}) ==
          doctest::Approx(-7.0).epsilon(1e-10));
}

TEST_CASE("differential of the potential") {
    TorusModuliPoint pt{Lattice::cubic(), reference_phi()};
    CHECK(dF(pt, pt.phi) == doctest::Approx(-7.0).epsilon(1e-12));

    // type-27 directions pair to zero against theta
    G2PointData p = G2PointData::analyze(pt.phi);
    Rng rng(21);
    Form eta27 = type_decompose(oracles::random_form(rng, 3), p).pi27;
    CHECK(std::abs(dF(pt, eta27)) < 1e-10);

    // central finite differences of F in 100 random directions
    for (int trial = 0; trial < 100; ++trial) {
        Form phi = oracles::random_positive_phi(rng);
        TorusModuliPoint q{Lattice::cubic(), phi};
        Form eta = oracles::random_form(rng, 3);
        const double h = 1e-4 * (1.0 + phi.coeff_norm());
        const double fd = (potential_F({q.lattice, phi + h * eta}) -
                           potential_F({q.lattice, phi - h * eta})) /
                          (2.0 * h);
        CHECK(oracles::rel_err(dF(q, eta), fd) < 1e-6);
    }
}

TEST_CASE("volume-normalised L2 pairing") {
    TorusModuliPoint pt{Lattice::cubic(), reference_phi()};
    CHECK(l2_pairing(pt, pt.phi, pt.phi) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(l2_pairing(pt, Form::basis({0, 1, 2}), Form::basis({0, 3, 4})) == doctest::Approx(0.0));

    // the covolume cancels for constant forms
    Rng rng(22);
    Mat basis = Mat::identity(7);
    for (auto& v : basis.data()) v += 0.1 * rng.uniform(-1.0, 1.0);
    Form a = oracles::random_form(rng, 3), b = oracles::random_form(rng, 3);
    Form phi = oracles::random_positive_phi(rng);
    const double on_unit = l2_pairing({Lattice::cubic(), phi}, a, b);
    const double on_skew = l2_pairing({Lattice::from_basis(basis), phi}, a, b);
    CHECK(on_unit == doctest::Approx(on_skew).epsilon(1e-12));
    // symmetric, positive on nonzero inputs
    CHECK(l2_pairing(pt, a, b) == doctest::Approx(l2_pairing(pt, b, a)).epsilon(1e-12));
    CHECK(l2_pairing(pt, a, a) > 0.0);
}

TEST_CASE("hessian of the potential: signature, frozen values, closed form") {
    TorusModuliPoint pt{Lattice::cubic(), reference_phi()};
    HessianReport report = hessian_F(pt);

    CHECK(report.signature.positives == 28);
    CHECK(report.signature.negatives == 7);
    CHECK(report.signature.zeros == 0);

    // quadratic form along phi0: second derivative of -7 log(1+t)
    double along_phi = 0.0;
    for (int i = 0; i < 35; ++i)
        for (int j = 0; j < 35; ++j)
            along_phi += pt.phi[i] * report.matrix(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * pt.phi[j];
    CHECK(along_phi == doctest::Approx(7.0).epsilon(1e-5));

    // finite differences against the closed form through the linearized theta
    Mat closed = hessian_closed_form(pt);
    double scale = max_abs(closed);
    for (std::size_t i = 0; i < 35; ++i)
        for (std::size_t j = 0; j < 35; ++j)
            CHECK(std::abs(closed(i, j) - report.matrix(i, j)) < 1e-5 * scale);

    // type-7 direction: D2F(eta, eta) = -|eta|^2 (here -4 for e_0 -| theta)
    ModuliPointOps ops(pt);
    Form gen = ops.g2().type7_frame()[0];
    CHECK(ops.hessian_form(gen, gen) == doctest::Approx(-4.0).epsilon(1e-10));
    CHECK(ops.l2(gen, gen) == doctest::Approx(4.0).epsilon(1e-10));

    CHECK_THROWS_AS((void)hessian_F(pt, 1e-9), NumericError);
    CHECK_THROWS_AS((void)hessian_F(pt, 0.5), NumericError);
}

TEST_CASE("negative eigenspace of the pencil is the type-7 subspace") {
    Rng rng(23);
    for (int trial = 0; trial < 2; ++trial) {
        Form phi = trial == 0 ? reference_phi() : oracles::random_positive_phi(rng, 0.25);
        TorusModuliPoint pt{Lattice::cubic(), phi};
        HessianReport report = hessian_F(pt);
        REQUIRE(report.negative_directions.cols() == 7);
        G2PointData p = G2PointData::analyze(phi);
        for (std::size_t c = 0; c < 7; ++c) {
            Form eta(3);
            for (int i = 0; i < 35; ++i) eta[i] = report.negative_directions(static_cast<std::size_t>(i), c);
            TypeSplit s = type_decompose(eta, p);
            const double full = std::sqrt(inner(eta, eta, p.ops()));
            const double part = std::sqrt(inner(s.pi7, s.pi7, p.ops()));
            const double angle = std::acos(std::min(part / full, 1.0));
            CHECK(angle < 1e-4);
        }
    }
}

TEST_CASE("hessian form equals the L2 pairing on the type-(1+27) subspace") {
    Rng rng(24);
    for (int trial = 0; trial < 10; ++trial) {
        Form phi = oracles::random_positive_phi(rng);
        TorusModuliPoint pt{Lattice::cubic(), phi};
        ModuliPointOps ops(pt);
        TypeSplit s = type_decompose(oracles::random_form(rng, 3), ops.g2());
        Form eta = s.pi1 + s.pi27;
        CHECK(oracles::rel_err(ops.hessian_form(eta, eta), ops.l2(eta, eta)) < 1e-6);
    }
}

TEST_CASE("the scaling line has constant hessian-form speed sqrt(7)") {
    for (double t : {0.0, 0.25, 0.5, 1.0}) {
        Form phi = std::exp(t) * reference_phi();
        ModuliPointOps ops({Lattice::cubic(), phi});
        // velocity of e^t phi0 is the point itself
        CHECK(std::sqrt(ops.hessian_form(phi, phi)) == doctest::Approx(std::sqrt(7.0)).epsilon(1e-6));
    }
}
