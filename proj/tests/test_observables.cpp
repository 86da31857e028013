#include <doctest.h>

#include "oracles.hpp"
#include "spinring/errors.hpp"
#include "spinring/observables.hpp"

#include <cmath>
#include <vector>

using namespace spinring;

namespace {
TwoSiteRDM werner(double p) {
    // p |singlet><singlet| + (1 - p) I/4
    Eigen::Vector4d s(0, M_SQRT1_2, -M_SQRT1_2, 0);
    TwoSiteRDM r;
    r.rho = p * s * s.transpose() + (1 - p) * 0.25 * Eigen::Matrix4d::Identity();
    return r;
}
}  // namespace

TEST_CASE("two-site singlet") {
    const SparseOperator op = assemble(build_ring(2, profile::Uniform{1.0}, 1.0), 1);
    const GroundStateResult g = lanczos_ground(op);
    CHECK(g.energy == doctest::Approx(-0.75));
    CHECK(correlator(g.vector, op.basis(), 0, 1) == doctest::Approx(-0.75));
    CHECK(concurrence_wootters(two_site_rdm(g.vector, op.basis(), 0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(total_spin_squared(g.vector, op.basis()) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("isotropic concurrence") {
    CHECK(concurrence_isotropic(-0.75) == doctest::Approx(1.0));
    CHECK(concurrence_isotropic(-0.25) == 0.0);
    CHECK(concurrence_isotropic(0.0) == 0.0);
    CHECK(concurrence_isotropic(0.25) == 0.0);
    CHECK(concurrence_isotropic(-0.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(concurrence_isotropic(-0.8), InvalidArgument);
    CHECK_THROWS_AS(concurrence_isotropic(0.3), InvalidArgument);
}

TEST_CASE("Wootters concurrence of Werner states") {
    for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
        CHECK(concurrence_wootters(werner(p)) == doctest::Approx(std::max(0.0, (3 * p - 1) / 2)).scale(1.0).epsilon(1e-12));
    }
    TwoSiteRDM product;
    product.rho(1, 1) = 1.0;  // |ud>
    CHECK(concurrence_wootters(product) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("RDM validation") {
    TwoSiteRDM bad = werner(0.5);
    bad.rho(0, 0) += 0.1;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    CHECK_THROWS_AS(concurrence_wootters(bad), InvalidArgument);
    TwoSiteRDM neg = werner(0.5);
    neg.rho(0, 0) -= 0.2;
    neg.rho(3, 3) += 0.2;
    CHECK_THROWS_AS(neg.validate(), InvalidArgument);
    TwoSiteRDM asym = werner(0.5);
    asym.rho(0, 1) = 0.01;
    CHECK_THROWS_AS(asym.validate(), InvalidArgument);
}

TEST_CASE("RDM matches an explicit partial trace") {
    const CouplingGraph g = build_ring(8, profile::Cosine{1.0, 0.7, 1}, 0.6);
    const auto sg = solve_zero_sector(g);
    const auto states = sg.basis->states();
    const std::vector<std::uint32_t> cfg(states.begin(), states.end());
    for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 1}, {0, 4}, {5, 2}, {7, 0}}) {
        const TwoSiteRDM r = two_site_rdm(sg.ground.vector, *sg.basis, i, j);
        const Eigen::Matrix4d expected = oracle::partial_trace(8, cfg, sg.ground.vector, i, j);
        CHECK((r.rho - expected).cwiseAbs().maxCoeff() < 1e-14);
        r.validate();
        // Tr(rho S_i.S_j) = G_ij
        Eigen::Matrix4d sdots;
        sdots << 0.25, 0, 0, 0, 0, -0.25, 0.5, 0, 0, 0.5, -0.25, 0, 0, 0, 0, 0.25;
        CHECK((r.rho * sdots).trace() == doctest::Approx(correlator(sg.ground.vector, *sg.basis, i, j)).epsilon(1e-12));
    }
}

TEST_CASE("singlet ground states of Heisenberg rings") {
    for (int n : {4, 6, 8, 10, 12}) {
        const CouplingGraph g = build_ring(n, profile::Cosine{1.0, 0.5, 1}, 1.0);
        const auto sg = solve_zero_sector(g);
        CHECK(std::abs(total_spin_squared(sg.ground.vector, *sg.basis)) < 1e-9);
        const CorrelationReport rep = correlation_report(sg.ground.vector, g, *sg.basis);
        for (std::size_t b = 0; b < rep.correlations.size(); ++b) {
            const Bond& bond = g.bonds()[b];
            const double cw = concurrence_wootters(two_site_rdm(sg.ground.vector, *sg.basis, bond.i, bond.j));
            CHECK(std::abs(cw - rep.concurrences[b]) < 1e-10);
        }
    }
}

TEST_CASE("energy is the coupling-weighted correlator sum") {
    const CouplingGraph g = build_ring(10, profile::Alternating{0.4}, 1.0);
    const auto sg = solve_zero_sector(g);
    double e = 0;
    for (const Bond& b : g.bonds()) e += b.strength * correlator(sg.ground.vector, *sg.basis, b.i, b.j);
    CHECK(e == doctest::Approx(sg.ground.energy).epsilon(1e-10));
}

TEST_CASE("aggregate concurrence") {
    CHECK(aggregate_concurrence(-0.75, 4, 4) == doctest::Approx(1.0));
    CHECK(aggregate_concurrence(-0.5, 4, 4) == doctest::Approx(0.5));
    // Literal form -(4 F0 + M/N)/2 with F0 = (1/N) sum G: a lone bond on two sites.
    CHECK(aggregate_concurrence(-0.375, 1, 2) == doctest::Approx(0.5));
    CHECK(aggregate_concurrence(-0.1, 4, 4) == 0.0);
    const CouplingGraph g = build_ring(8, profile::Uniform{1.0}, 1.0);
    const auto sg = solve_zero_sector(g);
    const CorrelationReport rep = correlation_report(sg.ground.vector, g, *sg.basis);
    // On a uniform ring every bond is equivalent.
    CHECK(rep.aggregate_concurrence == doctest::Approx(rep.mean_concurrence).epsilon(1e-10));
    CHECK(rep.f0 * 8 == doctest::Approx(sg.ground.energy).epsilon(1e-10));
}

TEST_CASE("Hellmann-Feynman and stationarity") {
    const CouplingGraph g = build_ring(8, profile::Cosine{1.0, 0.5, 1}, 1.0);
    for (std::size_t b = 0; b < g.link_count(); ++b) {
        const HellmannFeynman hf = hellmann_feynman_check(g, b, 1e-4, {1e-12, 500, 0});
        CHECK(hf.discrepancy < 1e-7);
    }
    const StationarityScan s = stationarity_scan(build_ring(8, profile::Uniform{1.0}, 1.0), 1e-4, {1e-12, 500, 0});
    CHECK(s.max_abs_derivative < 1e-6);
    CHECK_THROWS_AS(stationarity_scan(g, 1e-4), InvalidArgument);
    CHECK_THROWS_AS(hellmann_feynman_check(g, 8, 1e-4), InvalidArgument);
    CHECK_THROWS_AS(hellmann_feynman_check(g, 0, 0.0), InvalidArgument);
}

TEST_CASE("near-degenerate ground states are refused by Hellmann-Feynman") {
    const CouplingGraph g(4, {{0, 1, 1.0}, {2, 3, 5e-9}}, 1.0);
    CHECK_THROWS_AS(hellmann_feynman_check(g, 0, 1e-4), DegenerateStateError);
}

TEST_CASE("errors") {
    const SectorBasis b = enumerate_sector(4, 2);
    const std::vector<double> v(6, 1.0 / std::sqrt(6.0));
    CHECK_THROWS_AS(correlator(v, b, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(correlator(v, b, 0, 4), InvalidArgument);
    CHECK_THROWS_AS(correlator(std::vector<double>(5), b, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(two_site_rdm(v, b, 2, 2), InvalidArgument);
    CHECK_THROWS_AS(overlap(v, std::vector<double>(5)), InvalidArgument);
}
