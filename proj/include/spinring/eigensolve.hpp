#pragma once

#include "spinring/hamiltonian.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace spinring {

struct LanczosOptions {
    double tol = 1e-10;   ///< bound on ||H v - E v||
    int max_iter = 500;   ///< Krylov dimension cap
    std::uint64_t seed = 0;
};

/// Ritz gap below which the ground state is reported as possibly degenerate.
inline constexpr double kDegeneracyGap = 1e-8;

struct GroundStateResult {
    double energy = 0.0;
    /// Unit norm; the largest-magnitude amplitude (first one on ties) is positive.
    std::vector<double> vector;
    double residual = 0.0;
    int iterations = 0;
    /// Lowest Ritz value after each Lanczos step.
    std::vector<double> ritz_history;
    /// Second-lowest minus lowest Ritz value at exit (+inf if unavailable).
    double ritz_gap = 0.0;
    bool degeneracy_suspected = false;
};

/// Thrown when Lanczos fails to reach the tolerance; carries the best estimate.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, GroundStateResult best)
        : std::runtime_error(what), best_(std::make_shared<GroundStateResult>(std::move(best))) {}
    const GroundStateResult& best_estimate() const noexcept { return *best_; }

private:
    std::shared_ptr<const GroundStateResult> best_;
};

/// Lowest eigenpair by Lanczos with full reorthogonalization.
///
/// The start vector is drawn from a seeded mt19937_64 stream, so results
/// are reproducible bit-for-bit for a given seed.
GroundStateResult lanczos_ground(const SparseOperator& op, const LanczosOptions& options = {});

struct DenseSpectrum {
    Eigen::VectorXd values;   ///< ascending
    Eigen::MatrixXd vectors;  ///< columns, orthonormal
};

inline constexpr std::size_t kDenseLimit = 4096;

/// Full spectrum by dense diagonalization (dimension <= 4096).
DenseSpectrum dense_spectrum(const SparseOperator& op);

/// Sign convention shared by both solvers: flips v so its largest-magnitude
/// entry (first one on ties) is positive.
void fix_phase(std::span<double> v) noexcept;

}  // namespace spinring
