#include <doctest.h>

#include "oracles.hpp"
#include "spinring/basis.hpp"
#include "spinring/errors.hpp"

#include <algorithm>

using namespace spinring;

TEST_CASE("four sites, two up") {
    const SectorBasis b = enumerate_sector(4, 2);
    const std::vector<Config> expected{0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100};
    REQUIRE(b.dimension() == 6);
    CHECK(std::equal(b.states().begin(), b.states().end(), expected.begin()));
    CHECK(b.rank(0b0011) == 0);
    CHECK(b.rank(0b1100) == 5);
    for (Config s : expected) CHECK(b.unrank(b.rank(s)) == s);
}

TEST_CASE("six sites, three up, against brute-force enumeration") {
    const SectorBasis b = enumerate_sector(6, 3);
    const auto brute = oracle::brute_sector(6, 3);
    REQUIRE(b.dimension() == brute.size());
    CHECK(b.rank(0b000111) == 0);
    CHECK(b.dimension() - 1 == 19);
    CHECK(b.unrank(19) == 0b111000);
    for (std::size_t k = 0; k < brute.size(); ++k) CHECK(b.rank(brute[k]) == k);
}

TEST_CASE("dimensions") {
    CHECK(enumerate_sector(12, 6).dimension() == 924);
    CHECK(enumerate_sector(24, 12).dimension() == 2'704'156);
    for (int n = 2; n <= 24; n += 2) CHECK(enumerate_sector(n, n / 2).dimension() == binomial(n, n / 2));
    CHECK(enumerate_sector(5, 0).dimension() == 1);
    CHECK(enumerate_sector(5, 5).dimension() == 1);
}

TEST_CASE("exhaustive round trip for every sector up to twelve sites") {
    for (int n = 1; n <= 12; ++n) {
        for (int k = 0; k <= n; ++k) {
            const SectorBasis b = enumerate_sector(n, k);
            const auto brute = oracle::brute_sector(n, k);
            REQUIRE(b.dimension() == brute.size());
            for (std::size_t idx = 0; idx < b.dimension(); ++idx) {
                REQUIRE(b.states()[idx] == brute[idx]);
                REQUIRE(b.rank(b.unrank(idx)) == idx);
            }
        }
    }
}

TEST_CASE("large sector ranks agree with positions") {
    const SectorBasis b = enumerate_sector(24, 12);
    const auto states = b.states();
    CHECK(std::is_sorted(states.begin(), states.end()));
    for (std::size_t idx = 0; idx < states.size(); idx += 997) CHECK(b.rank(states[idx]) == idx);
    CHECK(b.rank(states.back()) == states.size() - 1);
}

TEST_CASE("errors") {
    const SectorBasis b = enumerate_sector(4, 2);
    CHECK_THROWS_AS(b.rank(0b0111), InvalidArgument);
    CHECK_THROWS_AS(b.rank(0b10001), InvalidArgument);
    CHECK_THROWS_AS(b.unrank(6), InvalidArgument);
    CHECK_THROWS_AS(enumerate_sector(25, 12), SizeLimitError);
    CHECK_THROWS_AS(enumerate_sector(4, 5), InvalidArgument);
}
