#pragma once

#include "spinring/basis.hpp"
#include "spinring/lattice.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace spinring {

enum class Storage {
    Auto,        ///< explicit rows up to kMatrixFreeThreshold, matrix-free beyond
    Explicit,    ///< row-compressed storage
    MatrixFree,  ///< entries regenerated on every apply
};

inline constexpr std::size_t kMatrixFreeThreshold = 1'000'000;

/// Sector-restricted XXZ Hamiltonian, real symmetric.
///
/// Row a holds the diagonal first, then one J/2 entry per bond whose two
/// spins are antiparallel in state a, in bond order. Both storage modes
/// visit entries in that order, so apply() is bit-identical between them.
class SparseOperator {
public:
    std::size_t dimension() const noexcept { return basis_->dimension(); }
    const SectorBasis& basis() const noexcept { return *basis_; }
    std::shared_ptr<const SectorBasis> basis_ptr() const noexcept { return basis_; }
    const CouplingGraph& graph() const noexcept { return graph_; }
    bool matrix_free() const noexcept { return row_start_.empty(); }
    std::size_t stored_nonzeros() const noexcept { return values_.size(); }

    /// out = H in. Throws InvalidArgument on length mismatch or aliasing.
    void apply(std::span<const double> in, std::span<double> out) const;
    std::vector<double> apply(std::span<const double> in) const;

    /// x^T H x / x^T x accumulated in long double. Used for final energies,
    /// whose finite differences must resolve ~1e-10 at eps = 1e-4.
    double rayleigh_quotient(std::span<const double> x) const;

    /// <a|H|b> (row scan, for tests and small checks).
    double element(std::size_t row, std::size_t col) const;

    /// Dense copy; throws SizeLimitError above 4096.
    Eigen::MatrixXd to_dense() const;

    friend SparseOperator assemble(const CouplingGraph&, std::shared_ptr<const SectorBasis>, Storage);

private:
    SparseOperator(CouplingGraph graph, std::shared_ptr<const SectorBasis> basis)
        : graph_(std::move(graph)), basis_(std::move(basis)) {}

    template <class Visit>
    void visit_row(std::size_t row, Visit&& visit) const;

    CouplingGraph graph_;
    std::shared_ptr<const SectorBasis> basis_;
    std::vector<std::size_t> row_start_;
    std::vector<std::uint32_t> columns_;
    std::vector<double> values_;
};

/// Builds H for graph on the sector. Throws InvalidArgument when the site
/// counts differ.
SparseOperator assemble(const CouplingGraph& graph, std::shared_ptr<const SectorBasis> basis,
                        Storage storage = Storage::Auto);

/// Convenience: enumerate the sector and assemble.
SparseOperator assemble(const CouplingGraph& graph, int n_up, Storage storage = Storage::Auto);

/// Half-filled (S_z = 0) sector of graph.
SparseOperator assemble_zero_sector(const CouplingGraph& graph, Storage storage = Storage::Auto);

}  // namespace spinring
