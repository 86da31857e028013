#include "spinring/hamiltonian.hpp"

#include "spinring/errors.hpp"

#include <string>

namespace spinring {

template <class Visit>
void SparseOperator::visit_row(std::size_t row, Visit&& visit) const {
    if (!row_start_.empty()) {
        for (std::size_t k = row_start_[row]; k < row_start_[row + 1]; ++k) {
            visit(static_cast<std::size_t>(columns_[k]), values_[k]);
        }
        return;
    }
    const Config s = basis_->states()[row];
    const double delta = graph_.anisotropy();
    double diag = 0.0;
    for (const Bond& b : graph_.bonds()) {
        const bool parallel = (((s >> b.i) ^ (s >> b.j)) & 1u) == 0;
        diag += b.strength * delta * (parallel ? 0.25 : -0.25);
    }
    visit(row, diag);
    for (const Bond& b : graph_.bonds()) {
        if ((((s >> b.i) ^ (s >> b.j)) & 1u) == 0) continue;
        const Config flipped = s ^ ((Config{1} << b.i) | (Config{1} << b.j));
        visit(basis_->rank_unchecked(flipped), 0.5 * b.strength);
    }
}

void SparseOperator::apply(std::span<const double> in, std::span<double> out) const {
    const std::size_t dim = dimension();
    if (in.size() != dim || out.size() != dim) {
        throw InvalidArgument("apply: vector length does not match operator dimension " +
                              std::to_string(dim));
    }
    if (in.data() == out.data()) throw InvalidArgument("apply: input and output alias");
    for (std::size_t a = 0; a < dim; ++a) {
        double acc = 0.0;
        visit_row(a, [&](std::size_t col, double value) { acc += value * in[col]; });
        out[a] = acc;
    }
}

std::vector<double> SparseOperator::apply(std::span<const double> in) const {
    std::vector<double> out(dimension());
    apply(in, out);
    return out;
}

double SparseOperator::rayleigh_quotient(std::span<const double> x) const {
    if (x.size() != dimension()) throw InvalidArgument("rayleigh_quotient: length mismatch");
    long double num = 0.0L;
    long double den = 0.0L;
    for (std::size_t a = 0; a < x.size(); ++a) {
        long double row = 0.0L;
        visit_row(a, [&](std::size_t col, double value) {
            row += static_cast<long double>(value) * static_cast<long double>(x[col]);
        });
        num += static_cast<long double>(x[a]) * row;
        den += static_cast<long double>(x[a]) * static_cast<long double>(x[a]);
    }
    if (den == 0.0L) throw InvalidArgument("rayleigh_quotient: zero vector");
    return static_cast<double>(num / den);
}

double SparseOperator::element(std::size_t row, std::size_t col) const {
    if (row >= dimension() || col >= dimension()) throw InvalidArgument("element index out of range");
    double value = 0.0;
    visit_row(row, [&](std::size_t c, double v) {
        if (c == col) value += v;
    });
    return value;
}

Eigen::MatrixXd SparseOperator::to_dense() const {
    const std::size_t dim = dimension();
    if (dim > 4096) throw SizeLimitError("dense copy limited to dimension 4096");
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    for (std::size_t a = 0; a < dim; ++a) {
        visit_row(a, [&](std::size_t c, double v) {
            m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(c)) += v;
        });
    }
    return m;
}

SparseOperator assemble(const CouplingGraph& graph, std::shared_ptr<const SectorBasis> basis,
                        Storage storage) {
    if (!basis) throw InvalidArgument("assemble: null basis");
    if (graph.n_sites() != basis->n_sites()) {
        throw InvalidArgument("assemble: graph has " + std::to_string(graph.n_sites()) +
                              " sites, basis has " + std::to_string(basis->n_sites()));
    }
    SparseOperator op(graph, std::move(basis));
    const std::size_t dim = op.dimension();
    const bool explicit_rows = storage == Storage::Explicit ||
                               (storage == Storage::Auto && dim <= kMatrixFreeThreshold);
    if (explicit_rows) {
        std::vector<std::size_t> row_start;
        std::vector<std::uint32_t> columns;
        std::vector<double> values;
        row_start.reserve(dim + 1);
        row_start.push_back(0);
        for (std::size_t a = 0; a < dim; ++a) {
            op.visit_row(a, [&](std::size_t c, double v) {
                columns.push_back(static_cast<std::uint32_t>(c));
                values.push_back(v);
            });
            row_start.push_back(values.size());
        }
        op.row_start_ = std::move(row_start);
        op.columns_ = std::move(columns);
        op.values_ = std::move(values);
    }
    return op;
}

SparseOperator assemble(const CouplingGraph& graph, int n_up, Storage storage) {
    return assemble(graph, std::make_shared<const SectorBasis>(enumerate_sector(graph.n_sites(), n_up)),
                    storage);
}

SparseOperator assemble_zero_sector(const CouplingGraph& graph, Storage storage) {
    if (graph.n_sites() % 2 != 0) throw InvalidArgument("S_z = 0 sector needs an even site count");
    return assemble(graph, graph.n_sites() / 2, storage);
}

}  // namespace spinring
