#include <doctest.h>

#include "oracles.hpp"
#include "spinring/errors.hpp"
#include "spinring/hamiltonian.hpp"

#include <cmath>
#include <cstring>
#include <numeric>
#include <random>

using namespace spinring;

namespace {
std::vector<std::pair<int, int>> pairs_of(const CouplingGraph& g) {
    std::vector<std::pair<int, int>> out;
    for (const Bond& b : g.bonds()) out.emplace_back(b.i, b.j);
    return out;
}
std::vector<double> strengths_of(const CouplingGraph& g) {
    std::vector<double> out;
    for (const Bond& b : g.bonds()) out.push_back(b.strength);
    return out;
}
void check_against_full(const CouplingGraph& g, int n_up) {
    const Eigen::MatrixXd full = oracle::full_hamiltonian(g.n_sites(), pairs_of(g), strengths_of(g), g.anisotropy());
    const Eigen::MatrixXd expected = oracle::restrict_to_sector(full, n_up);
    for (Storage s : {Storage::Explicit, Storage::MatrixFree}) {
        const Eigen::MatrixXd got = assemble(g, n_up, s).to_dense();
        REQUIRE(got.rows() == expected.rows());
        CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-14);
    }
}
}  // namespace

TEST_CASE("two-site matrix") {
    const CouplingGraph g = build_ring(2, profile::Uniform{1.0}, 1.0);
    const SparseOperator op = assemble(g, 1);
    Eigen::Matrix2d expected;
    expected << -0.25, 0.5, 0.5, -0.25;
    CHECK((op.to_dense() - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("four-site ring spectrum") {
    const SparseOperator op = assemble(build_ring(4, profile::Uniform{1.0}, 1.0), 2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.to_dense());
    const auto expected = oracle::ring4_sector_spectrum(1.0);
    REQUIRE(expected == std::vector<double>{-2, -1, 0, 0, 0, 1});
    for (std::size_t k = 0; k < expected.size(); ++k) CHECK(es.eigenvalues()(k) == doctest::Approx(expected[k]).epsilon(1e-12));
}

TEST_CASE("sector matrices match the full Kronecker Hamiltonian") {
    SUBCASE("uniform ring") { check_against_full(build_ring(8, profile::Uniform{1.0}, 1.0), 4); }
    SUBCASE("cosine ring, every sector") {
        const CouplingGraph g = build_ring(8, profile::Cosine{1.0, 0.6, 2}, 1.0);
        for (int k = 0; k <= 8; ++k) check_against_full(g, k);
    }
    SUBCASE("XXZ and XY") {
        check_against_full(build_ring(6, profile::Alternating{0.3}, 0.4), 3);
        check_against_full(build_ring(6, profile::Uniform{1.0}, 0.0), 2);
    }
    SUBCASE("ladder and cube") {
        check_against_full(build_cubic({2, 4}, true, 1.0, 1.0), 4);
        check_against_full(build_cubic({2, 2, 2}, false, 0.7, 1.0), 3);
    }
}

TEST_CASE("symmetry and storage equivalence") {
    const CouplingGraph g = build_ring(12, profile::Cosine{1.0, 1.0, 1}, 1.0);
    const SparseOperator csr = assemble(g, 6, Storage::Explicit);
    const SparseOperator mf = assemble(g, 6, Storage::MatrixFree);
    CHECK_FALSE(csr.matrix_free());
    CHECK(mf.matrix_free());
    CHECK(mf.stored_nonzeros() == 0);
    const Eigen::MatrixXd d = csr.to_dense();
    CHECK((d - d.transpose()).cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(csr.dimension());
    for (double& v : x) v = u(rng);
    const auto a = csr.apply(x);
    const auto b = mf.apply(x);
    REQUIRE(a.size() == b.size());
    CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
    CHECK(csr.element(0, 0) == mf.element(0, 0));
}

TEST_CASE("auto storage switches at the threshold") {
    CHECK_FALSE(assemble_zero_sector(build_ring(12, profile::Uniform{}, 1.0)).matrix_free());
    CHECK(assemble_zero_sector(build_ring(24, profile::Uniform{}, 1.0)).matrix_free());
}

TEST_CASE("Rayleigh quotient") {
    const SparseOperator op = assemble(build_ring(4, profile::Uniform{1.0}, 1.0), 2);
    const std::vector<double> x(op.dimension(), 1.0);
    const auto hx = op.apply(x);
    const double expected = std::inner_product(x.begin(), x.end(), hx.begin(), 0.0) / x.size();
    CHECK(op.rayleigh_quotient(x) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("errors") {
    const CouplingGraph g = build_ring(4, profile::Uniform{}, 1.0);
    const SparseOperator op = assemble(g, 2);
    std::vector<double> in(6, 1.0), out(5);
    CHECK_THROWS_AS(op.apply(in, out), InvalidArgument);
    CHECK_THROWS_AS(op.apply(in, in), InvalidArgument);
    CHECK_THROWS_AS(assemble(g, std::make_shared<const SectorBasis>(enumerate_sector(6, 3))), InvalidArgument);
    CHECK_THROWS_AS(assemble_zero_sector(build_ring(16, profile::Uniform{}, 1.0)).to_dense(), SizeLimitError);
}
