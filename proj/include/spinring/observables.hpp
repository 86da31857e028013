#pragma once

#include "spinring/basis.hpp"
#include "spinring/eigensolve.hpp"
#include "spinring/lattice.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace spinring {

/// Two-site reduced density matrix in the basis {uu, ud, du, dd}; the first
/// label refers to site i.
struct TwoSiteRDM {
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();

    /// Throws InvalidArgument unless rho is symmetric, has unit trace and
    /// smallest eigenvalue >= -tol.
    void validate(double tol = 1e-12) const;
};

/// G_ij = <S_i . S_j>. Sites are 0-based. Throws InvalidArgument if i == j,
/// a site is out of range, or the state length differs from the basis.
double correlator(std::span<const double> state, const SectorBasis& basis, int i, int j);

/// F0 = (1/N) sum over bonds of G_ij.
double nn_correlation(std::span<const double> state, const CouplingGraph& graph,
                      const SectorBasis& basis);

TwoSiteRDM two_site_rdm(std::span<const double> state, const SectorBasis& basis, int i, int j);

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}.
double concurrence_wootters(const TwoSiteRDM& rdm);

/// Concurrence of an SU(2)-invariant pair from G = <S_i . S_j>:
/// max{0, -(4G + 1)/2}. Requires -3/4 <= G <= 1/4.
double concurrence_isotropic(double correlation);

/// |<a|b>|.
double overlap(std::span<const double> a, std::span<const double> b);
double overlap(const GroundStateResult& a, const GroundStateResult& b);

/// <S_total^2> = 3N/4 + 2 sum_{i<j} G_ij.
double total_spin_squared(std::span<const double> state, const SectorBasis& basis);

/// Per-bond correlators and concurrences plus the bond-averaged quantities.
struct CorrelationReport {
    std::vector<double> correlations;   ///< G per bond, bond order
    std::vector<double> concurrences;   ///< isotropic C per bond
    double f0 = 0.0;                    ///< (1/N) sum G
    double aggregate_concurrence = 0.0; ///< max{0, -(4 F0 + M/N)/2}
    double mean_concurrence = 0.0;      ///< (1/M) sum C
};

CorrelationReport correlation_report(std::span<const double> state, const CouplingGraph& graph,
                                     const SectorBasis& basis);

/// Bond-averaged concurrence from F0 and M/N; clipped at zero.
double aggregate_concurrence(double f0, std::size_t link_count, int n_sites);

struct HellmannFeynman {
    double numeric_derivative = 0.0;  ///< [E0(J+eps) - E0(J-eps)] / (2 eps)
    double correlation = 0.0;         ///< <S_k . S_l> in the unperturbed ground state
    double discrepancy = 0.0;
};

/// Central-difference check of dE0/dJ_kl = <S_k . S_l> in the S_z = 0 sector
/// (n_up = N/2). Throws DegenerateStateError when the unperturbed ground
/// state is flagged.
HellmannFeynman hellmann_feynman_check(const CouplingGraph& graph, std::size_t bond, double epsilon,
                                       const LanczosOptions& options = {});

struct StationarityScan {
    std::vector<double> derivatives;  ///< dF0/dJ_kl per bond
    double max_abs_derivative = 0.0;
};

/// Central differences of F0 with respect to each bond at uniform coupling.
/// Throws InvalidArgument for non-uniform input.
StationarityScan stationarity_scan(const CouplingGraph& graph, double epsilon,
                                   const LanczosOptions& options = {});

/// Ground state of graph in the S_z = 0 sector plus the basis it lives on.
struct SectorGround {
    std::shared_ptr<const SectorBasis> basis;
    GroundStateResult ground;
};

SectorGround solve_zero_sector(const CouplingGraph& graph, const LanczosOptions& options = {});

}  // namespace spinring
