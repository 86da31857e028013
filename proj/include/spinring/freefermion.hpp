#pragma once

#include "spinring/eigensolve.hpp"
#include "spinring/lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace spinring {

/// Boundary condition the ring bond (N, 1) takes after the Jordan-Wigner
/// mapping, fixed by the parity of the fermion number.
enum class Boundary { Periodic, Antiperiodic };

/// Spinless fermions hopping with t_i = J_i / 2 on the bonds of an XY ring.
struct FreeFermionModel {
    int n_sites = 0;
    int n_fermions = 0;
    std::vector<double> hopping;  ///< t_1..t_N; t_N closes the ring
    Boundary boundary = Boundary::Periodic;

    /// N x N real symmetric h with H = sum a_i^+ h_ij a_j.
    Eigen::MatrixXd single_particle_matrix() const;

    /// Allowed momenta in (-pi, pi], ascending: 2 pi n / N for periodic,
    /// (2n + 1) pi / N for antiperiodic boundaries.
    std::vector<double> momenta() const;

    bool uniform_hopping() const noexcept;
};

/// Jordan-Wigner image of an XY ring (Delta = 0). An odd fermion number
/// gives periodic, an even one antiperiodic boundaries. n_fermions < 0 means
/// half filling. Throws InvalidArgument for Delta != 0 or non-ring graphs.
FreeFermionModel to_free_fermion(const CouplingGraph& ring, int n_fermions = -1);

struct FermionMode {
    double momentum = 0.0;
    double energy = 0.0;
};

struct FermionGround {
    double energy = 0.0;
    /// Filled momenta in filling order; empty for non-uniform hopping where
    /// momentum is not a good label.
    std::vector<double> occupied_momenta;
    /// Filled single-particle energies, ascending.
    std::vector<double> occupied_energies;
    /// The last filled level is degenerate with the first empty one, so the
    /// filling is convention dependent.
    bool shell_split = false;
};

/// Plane-wave modes of a uniform model with energy 2 t cos k, ordered by
/// energy, then |k|, then positive k first. Throws InvalidArgument for
/// non-uniform hopping.
std::vector<FermionMode> momentum_modes(const FreeFermionModel& model);

/// Slater-determinant ground state with n_fermions particles (the model's
/// own count when negative).
FermionGround single_particle_ground(const FreeFermionModel& model, int n_fermions = -1);

/// k-space form of the cos(2 pi i / N)-modulated hopping on a periodic grid:
/// amplitude (J/2) e^{-i pi/N} cos(k + pi/N) for a_k^+ a_{k + 2 pi/N}.
struct KSpaceHopping {
    int n_sites = 0;
    double J = 1.0;
    std::vector<double> momenta;                    ///< 2 pi n / N, n = -(N/2-1) .. N/2
    std::vector<std::complex<double>> amplitudes;   ///< hop from momenta[k] to the next one
    double fermi_point = 0.0;                       ///< pi/2 - pi/N

    /// Hermitian N x N matrix in the momentum basis.
    Eigen::MatrixXcd matrix() const;
};

/// Throws UnsupportedRegimeError unless N/2 is odd.
KSpaceHopping kspace_hadd(int n_sites, double J);

/// Real-space single-particle matrix of (J/2) sum_i cos(2 pi i/N)(a_i^+ a_{i+1} + h.c.)
/// with periodic closure.
Eigen::MatrixXd modulated_hopping_matrix(int n_sites, double J);

/// U^T h U^* with U_{l,k} = e^{i k l} / sqrt(N), sites labelled l = 1..N.
Eigen::MatrixXcd to_momentum_basis(const Eigen::MatrixXd& h, const std::vector<double>& momenta);

/// Frobenius norm of [n, h_add] where n projects onto |k| <= k_f.
double verify_conserved_number(int n_sites, double J);

struct ZeroModeReport {
    double hadd_on_ground = 0.0;         ///< ||H_add psi_g||
    double hadd_on_maximal = 0.0;        ///< ||H_add psi_max||
    double hadd_on_ferro_up = 0.0;
    double hadd_on_ferro_down = 0.0;
    double modulated_ground_overlap = 0.0;  ///< |<ground of H0 + H_add | psi_g>|
    double uniform_energy = 0.0;            ///< many-body E0 of H0^XY
    double modulated_energy = 0.0;          ///< many-body E0 of H0 + H_add
    double free_fermion_energy = 0.0;       ///< half-filled Slater determinant
    bool degeneracy_suspected = false;
};

/// Many-body checks of the zero modes of H_add on the half-filled XY ring.
/// Requires N/2 odd and N <= 14.
ZeroModeReport verify_zero_modes(int n_sites, double J, const LanczosOptions& options = {});

}  // namespace spinring
