#include <doctest.h>

#include "spinring/errors.hpp"
#include "spinring/lattice.hpp"

#include <cmath>
#include <numbers>

using namespace spinring;

namespace {
std::vector<double> strengths(const CouplingGraph& g) {
    std::vector<double> out;
    for (const Bond& b : g.bonds()) out.push_back(b.strength);
    return out;
}
}  // namespace

TEST_CASE("uniform ring of four sites") {
    const CouplingGraph g = build_ring(4, profile::Uniform{1.0}, 1.0);
    REQUIRE(g.link_count() == 4);
    CHECK(g.bonds()[0] == Bond{0, 1, 1.0});
    CHECK(g.bonds()[1] == Bond{1, 2, 1.0});
    CHECK(g.bonds()[2] == Bond{2, 3, 1.0});
    CHECK(g.bonds()[3] == Bond{3, 0, 1.0});
    CHECK(g.is_bipartite());
    CHECK(g.warnings().empty());
}

TEST_CASE("cosine profile on eight sites") {
    const CouplingGraph g = build_ring(8, profile::Cosine{1.0, 1.0, 1}, 1.0);
    const auto j = strengths(g);
    CHECK(j[0] == doctest::Approx(1.0 + std::cos(std::numbers::pi / 4)).epsilon(1e-15));
    CHECK(j[0] == doctest::Approx(1.70711).epsilon(1e-5));
    CHECK(j[3] == 0.0);
    CHECK(j[7] == 2.0);
    // J_4 = 0 is kept but reported.
    CHECK(g.warnings().size() == 1);
}

TEST_CASE("alternating profile") {
    const CouplingGraph g = build_ring(6, profile::Alternating{0.5}, 1.0);
    CHECK(strengths(g) == std::vector<double>{1, 0.5, 1, 0.5, 1, 0.5});
}

TEST_CASE("cosine profile properties") {
    SUBCASE("harmonic zero degenerates to uniform J + J'") {
        const CouplingGraph g = build_ring(10, profile::Cosine{1.0, 0.3, 0}, 1.0);
        CHECK(g.is_uniform());
        CHECK(g.bonds()[0].strength == doctest::Approx(1.3));
    }
    SUBCASE("bond sum is N J for every harmonic >= 1") {
        for (int n = 4; n <= 24; n += 2) {
            for (int h = 1; h < n; ++h) {
                const CouplingGraph g = build_ring(n, profile::Cosine{0.8, 0.7, h}, 1.0);
                CHECK(g.total_strength() == doctest::Approx(0.8 * n).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("ring preconditions") {
    CHECK_THROWS_AS(build_ring(5, profile::Uniform{}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(build_ring(0, profile::Uniform{}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(build_ring(26, profile::Uniform{}, 1.0), SizeLimitError);
    CHECK_THROWS_AS(build_ring(4, profile::Custom{{1, 2, 3}}, 1.0), InvalidArgument);
    // Two sites: both ring bonds join the same pair, so one bond remains.
    CHECK(build_ring(2, profile::Uniform{}, 1.0).link_count() == 1);
}

TEST_CASE("cubic lattices") {
    SUBCASE("open plaquette") {
        const CouplingGraph g = build_cubic({2, 2}, false, 1.0, 1.0);
        CHECK(g.n_sites() == 4);
        CHECK(g.link_count() == 4);
    }
    SUBCASE("periodic ladder counts rungs once") {
        const CouplingGraph g = build_cubic({2, 4}, true, 1.0, 1.0);
        CHECK(g.n_sites() == 8);
        CHECK(g.link_count() == 12);
        CHECK(g.is_bipartite());
    }
    SUBCASE("cube") {
        const CouplingGraph g = build_cubic({2, 2, 2}, false, 1.0, 1.0);
        CHECK(g.n_sites() == 8);
        CHECK(g.link_count() == 12);
        CHECK(g.is_bipartite());
    }
    SUBCASE("even extents give balanced sublattices") {
        for (const auto& ext : std::vector<std::vector<int>>{{4}, {2, 4}, {4, 4}, {2, 2, 2}, {2, 6}, {2, 2, 4}}) {
            const auto labels = build_cubic(ext, true, 1.0, 1.0).bipartition();
            REQUIRE(labels.has_value());
            CHECK(std::count(labels->begin(), labels->end(), 0) ==
                  std::count(labels->begin(), labels->end(), 1));
        }
    }
    SUBCASE("odd periodic extent is frustrated") {
        CHECK_FALSE(build_cubic({3, 2}, true, 1.0, 1.0).is_bipartite());
    }
    CHECK_THROWS_AS(build_cubic({5, 5}, false, 1.0, 1.0), SizeLimitError);
    CHECK_THROWS_AS(build_cubic({1, 4}, false, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("perturb_bond") {
    const CouplingGraph ring = build_ring(4, profile::Uniform{1.0}, 1.0);
    const CouplingGraph p = perturb_bond(ring, 0, 0.01);
    CHECK(p.bonds()[0].strength == doctest::Approx(1.01));
    CHECK(p.bonds()[1].strength == 1.0);
    CHECK(ring.bonds()[0].strength == 1.0);
    CHECK(perturb_bond(ring, 2, 0.0) == ring);
    const CouplingGraph cos8 = build_ring(8, profile::Cosine{1.0, 1.0, 1}, 1.0);
    CHECK(perturb_bond(cos8, 3, 0.1).bonds()[3].strength == doctest::Approx(0.1));
    CHECK_THROWS_AS(perturb_bond(ring, 4, 0.1), InvalidArgument);
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(CouplingGraph(3, {{0, 0, 1.0}}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(CouplingGraph(3, {{0, 3, 1.0}}, 1.0), InvalidArgument);
    CHECK_THROWS_AS(CouplingGraph(3, {{0, 1, 1.0}, {1, 0, 2.0}}, 1.0), InvalidArgument);
}
