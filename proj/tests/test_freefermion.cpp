#include <doctest.h>

#include "spinring/errors.hpp"
#include "spinring/freefermion.hpp"
#include "spinring/observables.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace spinring;
using std::numbers::pi;

TEST_CASE("six-site XY ring: odd filling, periodic boundary") {
    const FreeFermionModel m = to_free_fermion(build_ring(6, profile::Uniform{1.0}, 0.0));
    CHECK(m.n_fermions == 3);
    CHECK(m.boundary == Boundary::Periodic);
    const FermionGround g = single_particle_ground(m);
    CHECK(g.energy == doctest::Approx(-2.0).epsilon(1e-14));
    REQUIRE(g.occupied_momenta.size() == 3);
    CHECK(g.occupied_momenta[0] == doctest::Approx(pi));
    CHECK(g.occupied_momenta[1] == doctest::Approx(2 * pi / 3));
    CHECK(g.occupied_momenta[2] == doctest::Approx(-2 * pi / 3));
    CHECK_FALSE(g.shell_split);
}

TEST_CASE("eight-site XY ring: even filling, antiperiodic boundary") {
    const FreeFermionModel m = to_free_fermion(build_ring(8, profile::Uniform{1.0}, 0.0));
    CHECK(m.boundary == Boundary::Antiperiodic);
    const auto k = m.momenta();
    REQUIRE(k.size() == 8);
    CHECK(k.front() == doctest::Approx(-7 * pi / 8));
    CHECK(k.back() == doctest::Approx(7 * pi / 8));
    // Closing bond carries the sign flip.
    const Eigen::MatrixXd h = m.single_particle_matrix();
    CHECK(h(0, 1) == doctest::Approx(0.5));
    CHECK(h(7, 0) == doctest::Approx(-0.5));
}

TEST_CASE("free fermions reproduce exact diagonalization") {
    for (int n = 4; n <= 14; n += 2) {
        for (const CouplingGraph& ring : {build_ring(n, profile::Uniform{1.0}, 0.0),
                                          build_ring(n, profile::Cosine{1.0, 0.6, 1}, 0.0),
                                          build_ring(n, profile::Alternating{0.3}, 0.0)}) {
            const double ff = single_particle_ground(to_free_fermion(ring)).energy;
            const double ed = lanczos_ground(assemble_zero_sector(ring)).energy;
            CHECK(std::abs(ff - ed) < 1e-9);
        }
    }
}

TEST_CASE("other fillings") {
    const CouplingGraph ring = build_ring(8, profile::Uniform{1.0}, 0.0);
    for (int nf = 0; nf <= 8; ++nf) {
        const FreeFermionModel m = to_free_fermion(ring, nf);
        CHECK(m.boundary == (nf % 2 ? Boundary::Periodic : Boundary::Antiperiodic));
        const double ed = lanczos_ground(assemble(ring, nf)).energy;
        CHECK(single_particle_ground(m).energy == doctest::Approx(ed).epsilon(1e-9));
    }
}

TEST_CASE("momentum modes") {
    const FreeFermionModel m = to_free_fermion(build_ring(6, profile::Uniform{1.0}, 0.0));
    const auto modes = momentum_modes(m);
    REQUIRE(modes.size() == 6);
    for (std::size_t k = 1; k < modes.size(); ++k) CHECK(modes[k].energy >= modes[k - 1].energy - 1e-15);
    for (const auto& mode : modes) CHECK(mode.energy == doctest::Approx(std::cos(mode.momentum)));
    CHECK_THROWS_AS(momentum_modes(to_free_fermion(build_ring(6, profile::Alternating{0.5}, 0.0))), InvalidArgument);
}

TEST_CASE("k-space form of the modulated hopping") {
    for (int n : {6, 10, 14, 18}) {
        const KSpaceHopping kh = kspace_hadd(n, 1.0);
        CHECK(kh.fermi_point == doctest::Approx(pi / 2 - pi / n));
        const Eigen::MatrixXcd direct = to_momentum_basis(modulated_hopping_matrix(n, 1.0), kh.momenta);
        CHECK((direct - kh.matrix()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((kh.matrix() - kh.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-15);
        CHECK(verify_conserved_number(n, 1.0) < 1e-12);
        // Hopping across the Fermi points vanishes exactly.
        int zeros = 0;
        for (const auto& a : kh.amplitudes) zeros += a == std::complex<double>{};
        CHECK(zeros == 2);
    }
    CHECK_THROWS_AS(kspace_hadd(8, 1.0), UnsupportedRegimeError);
    CHECK_THROWS_AS(kspace_hadd(7, 1.0), UnsupportedRegimeError);
}

TEST_CASE("zero modes of the modulated term") {
    for (int n : {6, 10}) {
        const ZeroModeReport r = verify_zero_modes(n, 1.0);
        CHECK(r.hadd_on_ground < 1e-8);
        CHECK(r.hadd_on_maximal < 1e-8);
        CHECK(r.hadd_on_ferro_up < 1e-14);
        CHECK(r.hadd_on_ferro_down < 1e-14);
        CHECK(r.modulated_ground_overlap == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(r.modulated_energy == doctest::Approx(r.uniform_energy).epsilon(1e-9));
        CHECK(r.free_fermion_energy == doctest::Approx(r.uniform_energy).epsilon(1e-9));
    }
    CHECK_THROWS_AS(verify_zero_modes(8, 1.0), UnsupportedRegimeError);
    CHECK_THROWS_AS(verify_zero_modes(18, 1.0), SizeLimitError);
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(to_free_fermion(build_ring(6, profile::Uniform{}, 1.0)), InvalidArgument);
    CHECK_THROWS_AS(to_free_fermion(build_cubic({2, 4}, true, 1.0, 0.0)), InvalidArgument);
    CHECK_THROWS_AS(to_free_fermion(build_ring(6, profile::Uniform{}, 0.0), 7), InvalidArgument);
}
