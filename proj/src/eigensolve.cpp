#include "spinring/eigensolve.hpp"

#include "spinring/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace spinring {

namespace {

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
    for (std::size_t k = 0; k < x.size(); ++k) y[k] += alpha * x[k];
}

double norm(std::span<const double> a) noexcept { return std::sqrt(dot(a, a)); }

// Uniform in [-1, 1) from raw 64-bit draws; independent of the standard
// library's distribution implementations.
std::vector<double> random_start(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> v(dim);
    for (double& x : v) {
        x = 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0;
    }
    return v;
}

// Ritz vector from the Krylov basis and tridiagonal eigenvector coefficients.
std::vector<double> ritz_vector(const std::vector<std::vector<double>>& basis,
                                const Eigen::VectorXd& coeffs) {
    std::vector<double> x(basis.front().size(), 0.0);
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) axpy(coeffs(k), basis[k], x);
    const double n = norm(x);
    for (double& e : x) e /= n;
    return x;
}

}  // namespace

void fix_phase(std::span<double> v) noexcept {
    std::size_t best = 0;
    for (std::size_t k = 1; k < v.size(); ++k) {
        if (std::abs(v[k]) > std::abs(v[best])) best = k;
    }
    if (!v.empty() && v[best] < 0.0) {
        for (double& x : v) x = -x;
    }
}

GroundStateResult lanczos_ground(const SparseOperator& op, const LanczosOptions& options) {
    const std::size_t dim = op.dimension();
    if (dim == 0) throw InvalidArgument("lanczos_ground: empty operator");
    if (!(options.tol > 0.0)) throw InvalidArgument("lanczos_ground: tol must be positive");
    if (options.max_iter < 1) throw InvalidArgument("lanczos_ground: max_iter must be >= 1");

    GroundStateResult result;
    std::vector<std::vector<double>> krylov;
    std::vector<double> alpha;
    std::vector<double> beta;  // beta[k] couples krylov[k] and krylov[k+1]

    {
        std::vector<double> v0 = random_start(dim, options.seed);
        const double n0 = norm(v0);
        for (double& x : v0) x /= n0;
        krylov.push_back(std::move(v0));
    }

    const int cap = static_cast<int>(std::min<std::size_t>(dim, static_cast<std::size_t>(options.max_iter)));
    std::vector<double> w(dim);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;

    auto finish = [&](std::vector<double> x) {
        std::vector<double> hx = op.apply(x);
        const double e = op.rayleigh_quotient(x);
        axpy(-e, x, hx);
        result.energy = e;
        result.residual = norm(hx);
        fix_phase(x);
        result.vector = std::move(x);
    };

    for (int m = 1; m <= cap; ++m) {
        const std::vector<double>& v = krylov.back();
        op.apply(v, w);
        const double a = dot(v, w);
        alpha.push_back(a);
        axpy(-a, v, w);
        if (m > 1) axpy(-beta.back(), krylov[krylov.size() - 2], w);
        // Full reorthogonalization; a second pass runs only when the first
        // one cancelled most of w (norm drop below 1/sqrt(2)).
        double b = norm(w);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : krylov) axpy(-dot(q, w), q, w);
            const double after = norm(w);
            const bool enough = after > 0.7071067811865476 * b;
            b = after;
            if (enough) break;
        }

        Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
        Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), m - 1);
        tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
        const Eigen::VectorXd& theta = tri.eigenvalues();
        result.ritz_history.push_back(theta(0));
        result.iterations = m;
        result.ritz_gap = m > 1 ? theta(1) - theta(0) : std::numeric_limits<double>::infinity();

        const Eigen::VectorXd s = tri.eigenvectors().col(0);
        const double estimate = b * std::abs(s(m - 1));
        const bool exhausted = b <= 1e-14 * std::max(1.0, std::abs(theta(0))) || m == cap;

        if (estimate <= options.tol || exhausted) {
            std::vector<double> x = ritz_vector(krylov, s);
            finish(std::move(x));
            if (result.residual <= options.tol) {
                result.degeneracy_suspected = result.ritz_gap < kDegeneracyGap;
                return result;
            }
            if (exhausted) {
                result.degeneracy_suspected = result.ritz_gap < kDegeneracyGap;
                std::ostringstream msg;
                msg << "Lanczos did not converge in " << m << " iterations (residual "
                    << result.residual << " > tol " << options.tol << ")";
                throw ConvergenceError(msg.str(), result);
            }
        }
        for (double& x : w) x /= b;
        beta.push_back(b);
        krylov.push_back(w);
    }
    // Unreachable: the loop always exits through the exhausted branch.
    throw ConvergenceError("Lanczos terminated unexpectedly", result);
}

DenseSpectrum dense_spectrum(const SparseOperator& op) {
    if (op.dimension() > kDenseLimit) {
        throw SizeLimitError("dense_spectrum limited to dimension " + std::to_string(kDenseLimit));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(op.to_dense());
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
    DenseSpectrum out{solver.eigenvalues(), solver.eigenvectors()};
    for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
        fix_phase(std::span<double>(out.vectors.col(c).data(), static_cast<std::size_t>(out.vectors.rows())));
    }
    return out;
}

}  // namespace spinring
