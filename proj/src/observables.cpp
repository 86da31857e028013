#include "spinring/observables.hpp"

#include "spinring/errors.hpp"
#include "spinring/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinring {

namespace {

void check_pair(std::span<const double> state, const SectorBasis& basis, int i, int j) {
    if (state.size() != basis.dimension()) {
        throw InvalidArgument("state length " + std::to_string(state.size()) +
                              " does not match sector dimension " + std::to_string(basis.dimension()));
    }
    if (i == j) throw InvalidArgument("two-site observable needs distinct sites");
    if (i < 0 || j < 0 || i >= basis.n_sites() || j >= basis.n_sites()) {
        throw InvalidArgument("site index out of range");
    }
}

// Index in {uu, ud, du, dd} with "up" = bit set.
int pair_index(bool up_i, bool up_j) noexcept { return (up_i ? 0 : 2) + (up_j ? 0 : 1); }

}  // namespace

void TwoSiteRDM::validate(double tol) const {
    if (!rho.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
    if ((rho - rho.transpose()).cwiseAbs().maxCoeff() > tol) {
        throw InvalidArgument("density matrix is not Hermitian");
    }
    if (std::abs(rho.trace() - 1.0) > 1e3 * tol) {
        throw InvalidArgument("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()(0) < -tol) {
        throw InvalidArgument("density matrix is not positive semidefinite");
    }
}

double correlator(std::span<const double> state, const SectorBasis& basis, int i, int j) {
    check_pair(state, basis, i, j);
    const auto states = basis.states();
    const Config mask = (Config{1} << i) | (Config{1} << j);
    double zz = 0.0;
    double flip = 0.0;
    for (std::size_t a = 0; a < states.size(); ++a) {
        const Config s = states[a];
        const bool parallel = (((s >> i) ^ (s >> j)) & 1u) == 0;
        const double amp = state[a];
        zz += (parallel ? 0.25 : -0.25) * amp * amp;
        if (!parallel) flip += amp * state[basis.rank_unchecked(s ^ mask)];
    }
    return zz + 0.5 * flip;
}

double nn_correlation(std::span<const double> state, const CouplingGraph& graph,
                      const SectorBasis& basis) {
    if (graph.n_sites() != basis.n_sites()) throw InvalidArgument("graph and basis sizes differ");
    double sum = 0.0;
    for (const Bond& b : graph.bonds()) sum += correlator(state, basis, b.i, b.j);
    return sum / graph.n_sites();
}

TwoSiteRDM two_site_rdm(std::span<const double> state, const SectorBasis& basis, int i, int j) {
    check_pair(state, basis, i, j);
    const auto states = basis.states();
    const Config mask = (Config{1} << i) | (Config{1} << j);
    TwoSiteRDM out;
    // Inside one S_z sector only the ud/du coherence survives off the diagonal.
    for (std::size_t a = 0; a < states.size(); ++a) {
        const Config s = states[a];
        const bool up_i = (s >> i) & 1u;
        const bool up_j = (s >> j) & 1u;
        const double amp = state[a];
        const int p = pair_index(up_i, up_j);
        out.rho(p, p) += amp * amp;
        if (up_i && !up_j) {
            const double c = amp * state[basis.rank_unchecked(s ^ mask)];
            out.rho(1, 2) += c;
            out.rho(2, 1) += c;
        }
    }
    return out;
}

double concurrence_wootters(const TwoSiteRDM& rdm) {
    rdm.validate(1e-10);
    // rho = W W^T with W = V sqrt(p). The Wootters lambdas are the singular
    // values of W^T (sy x sy) W, which avoids square roots of tiny
    // eigenvalues of rho * rho~.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rdm.rho);
    const Eigen::Vector4d p = es.eigenvalues().cwiseMax(0.0);
    const Eigen::Matrix4d w = es.eigenvectors() * p.cwiseSqrt().asDiagonal();
    Eigen::Matrix4d flip;
    flip << 0, 0, 0, -1,
            0, 0, 1, 0,
            0, 1, 0, 0,
            -1, 0, 0, 0;
    const Eigen::Matrix4d tau = w.transpose() * flip * w;
    const Eigen::Vector4d l = Eigen::JacobiSVD<Eigen::Matrix4d>(tau).singularValues();  // descending
    return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

double concurrence_isotropic(double correlation) {
    constexpr double slack = 1e-12;
    if (!(correlation >= -0.75 - slack && correlation <= 0.25 + slack)) {
        throw InvalidArgument("spin-1/2 pair correlation must lie in [-3/4, 1/4], got " +
                              std::to_string(correlation));
    }
    return std::max(0.0, -(4.0 * correlation + 1.0) / 2.0);
}

double overlap(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw InvalidArgument("overlap: dimension mismatch");
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return std::abs(s);
}

double overlap(const GroundStateResult& a, const GroundStateResult& b) {
    return overlap(a.vector, b.vector);
}

double total_spin_squared(std::span<const double> state, const SectorBasis& basis) {
    const int n = basis.n_sites();
    double sum = 0.75 * n;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) sum += 2.0 * correlator(state, basis, i, j);
    }
    return sum;
}

double aggregate_concurrence(double f0, std::size_t link_count, int n_sites) {
    const double ratio = static_cast<double>(link_count) / n_sites;
    return std::max(0.0, -0.5 * (4.0 * f0 + ratio));
}

CorrelationReport correlation_report(std::span<const double> state, const CouplingGraph& graph,
                                     const SectorBasis& basis) {
    if (graph.n_sites() != basis.n_sites()) throw InvalidArgument("graph and basis sizes differ");
    CorrelationReport r;
    double sum_g = 0.0;
    double sum_c = 0.0;
    for (const Bond& b : graph.bonds()) {
        const double g = correlator(state, basis, b.i, b.j);
        const double c = concurrence_isotropic(g);
        r.correlations.push_back(g);
        r.concurrences.push_back(c);
        sum_g += g;
        sum_c += c;
    }
    r.f0 = sum_g / graph.n_sites();
    r.aggregate_concurrence = aggregate_concurrence(r.f0, graph.link_count(), graph.n_sites());
    r.mean_concurrence = graph.link_count() > 0 ? sum_c / static_cast<double>(graph.link_count()) : 0.0;
    return r;
}

SectorGround solve_zero_sector(const CouplingGraph& graph, const LanczosOptions& options) {
    if (graph.n_sites() % 2 != 0) throw InvalidArgument("S_z = 0 sector needs an even site count");
    auto basis = std::make_shared<const SectorBasis>(enumerate_sector(graph.n_sites(), graph.n_sites() / 2));
    const SparseOperator op = assemble(graph, basis);
    return {basis, lanczos_ground(op, options)};
}

HellmannFeynman hellmann_feynman_check(const CouplingGraph& graph, std::size_t bond, double epsilon,
                                       const LanczosOptions& options) {
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (bond >= graph.link_count()) throw InvalidArgument("bond index out of range");
    const SectorGround base = solve_zero_sector(graph, options);
    if (base.ground.degeneracy_suspected) {
        throw DegenerateStateError("ground state flagged as degenerate; Hellmann-Feynman does not apply");
    }
    const double e_plus = solve_zero_sector(perturb_bond(graph, bond, epsilon), options).ground.energy;
    const double e_minus = solve_zero_sector(perturb_bond(graph, bond, -epsilon), options).ground.energy;
    const Bond& b = graph.bonds()[bond];
    HellmannFeynman out;
    out.numeric_derivative = (e_plus - e_minus) / (2.0 * epsilon);
    out.correlation = correlator(base.ground.vector, *base.basis, b.i, b.j);
    out.discrepancy = std::abs(out.numeric_derivative - out.correlation);
    return out;
}

StationarityScan stationarity_scan(const CouplingGraph& graph, double epsilon,
                                   const LanczosOptions& options) {
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (graph.link_count() == 0 || !graph.is_uniform()) {
        throw InvalidArgument("stationarity_scan requires uniform couplings");
    }
    const SectorGround base = solve_zero_sector(graph, options);
    if (base.ground.degeneracy_suspected) {
        throw DegenerateStateError("ground state flagged as degenerate");
    }
    auto f0_at = [&](const CouplingGraph& g) {
        const SectorGround sg = solve_zero_sector(g, options);
        return nn_correlation(sg.ground.vector, g, *sg.basis);
    };
    StationarityScan out;
    for (std::size_t k = 0; k < graph.link_count(); ++k) {
        const double plus = f0_at(perturb_bond(graph, k, epsilon));
        const double minus = f0_at(perturb_bond(graph, k, -epsilon));
        const double d = (plus - minus) / (2.0 * epsilon);
        out.derivatives.push_back(d);
        out.max_abs_derivative = std::max(out.max_abs_derivative, std::abs(d));
    }
    return out;
}

}  // namespace spinring
