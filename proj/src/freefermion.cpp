#include "spinring/freefermion.hpp"

#include "spinring/errors.hpp"
#include "spinring/hamiltonian.hpp"
#include "spinring/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace spinring {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEnergyTie = 1e-12;

void require_odd_half(int n_sites) {
    if (n_sites < 2 || n_sites % 2 != 0 || (n_sites / 2) % 2 == 0) {
        throw UnsupportedRegimeError("k-space treatment needs N/2 odd, got N = " +
                                     std::to_string(n_sites));
    }
}

double norm(const std::vector<double>& v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

}  // namespace

Eigen::MatrixXd FreeFermionModel::single_particle_matrix() const {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_sites, n_sites);
    for (int i = 0; i < n_sites; ++i) {
        const int j = (i + 1) % n_sites;
        double t = hopping[static_cast<std::size_t>(i)];
        if (j == 0 && boundary == Boundary::Antiperiodic) t = -t;
        h(i, j) += t;
        h(j, i) += t;
    }
    return h;
}

std::vector<double> FreeFermionModel::momenta() const {
    std::vector<double> k;
    const int n = n_sites;
    if (boundary == Boundary::Periodic) {
        for (int m = -(n / 2 - 1); m <= n / 2; ++m) k.push_back(2.0 * kPi * m / n);
    } else {
        for (int m = -n / 2; m < n / 2; ++m) k.push_back((2.0 * m + 1.0) * kPi / n);
    }
    return k;
}

bool FreeFermionModel::uniform_hopping() const noexcept {
    return std::all_of(hopping.begin(), hopping.end(),
                       [&](double t) { return t == hopping.front(); });
}

FreeFermionModel to_free_fermion(const CouplingGraph& ring, int n_fermions) {
    if (ring.anisotropy() != 0.0) {
        throw InvalidArgument("Jordan-Wigner free-fermion mapping needs Delta = 0");
    }
    const int n = ring.n_sites();
    if (n < 3 || ring.link_count() != static_cast<std::size_t>(n)) {
        throw InvalidArgument("free-fermion mapping needs a ring with N >= 3 bonds");
    }
    for (int k = 0; k < n; ++k) {
        const Bond& b = ring.bonds()[static_cast<std::size_t>(k)];
        const int next = (k + 1) % n;
        if (!((b.i == k && b.j == next) || (b.i == next && b.j == k))) {
            throw InvalidArgument("bond " + std::to_string(k) + " does not follow ring order");
        }
    }
    if (n_fermions < 0) {
        if (n % 2 != 0) throw InvalidArgument("half filling needs even N");
        n_fermions = n / 2;
    }
    if (n_fermions > n) throw InvalidArgument("more fermions than sites");

    FreeFermionModel model;
    model.n_sites = n;
    model.n_fermions = n_fermions;
    for (const Bond& b : ring.bonds()) model.hopping.push_back(0.5 * b.strength);
    // S+_N S-_1 = -(-1)^{N_f} a_N^+ a_1: odd fermion number keeps the sign.
    model.boundary = (n_fermions % 2 == 1) ? Boundary::Periodic : Boundary::Antiperiodic;
    return model;
}

std::vector<FermionMode> momentum_modes(const FreeFermionModel& model) {
    if (!model.uniform_hopping()) {
        throw InvalidArgument("momentum labels need uniform hopping");
    }
    const double t = model.hopping.front();
    std::vector<FermionMode> modes;
    for (double k : model.momenta()) modes.push_back({k, 2.0 * t * std::cos(k)});
    std::sort(modes.begin(), modes.end(),
              [](const FermionMode& a, const FermionMode& b) { return a.energy < b.energy; });
    // Within an energy shell: smallest |k| first, then positive k.
    auto first = modes.begin();
    while (first != modes.end()) {
        auto last = first + 1;
        while (last != modes.end() && last->energy - first->energy <= kEnergyTie) ++last;
        std::sort(first, last, [](const FermionMode& a, const FermionMode& b) {
            const double ka = std::abs(a.momentum);
            const double kb = std::abs(b.momentum);
            if (std::abs(ka - kb) > kEnergyTie) return ka < kb;
            return a.momentum > b.momentum;
        });
        first = last;
    }
    return modes;
}

FermionGround single_particle_ground(const FreeFermionModel& model, int n_fermions) {
    if (n_fermions < 0) n_fermions = model.n_fermions;
    if (n_fermions > model.n_sites) throw InvalidArgument("more fermions than sites");
    FermionGround out;
    std::vector<double> energies;
    if (model.uniform_hopping()) {
        const std::vector<FermionMode> modes = momentum_modes(model);
        for (const FermionMode& m : modes) energies.push_back(m.energy);
        for (int k = 0; k < n_fermions; ++k) out.occupied_momenta.push_back(modes[static_cast<std::size_t>(k)].momentum);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.single_particle_matrix(),
                                                          Eigen::EigenvaluesOnly);
        energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + model.n_sites);
    }
    for (int k = 0; k < n_fermions; ++k) {
        out.energy += energies[static_cast<std::size_t>(k)];
        out.occupied_energies.push_back(energies[static_cast<std::size_t>(k)]);
    }
    if (n_fermions > 0 && n_fermions < model.n_sites) {
        out.shell_split = energies[static_cast<std::size_t>(n_fermions)] -
                              energies[static_cast<std::size_t>(n_fermions - 1)] <= kEnergyTie;
    }
    return out;
}

Eigen::MatrixXcd KSpaceHopping::matrix() const {
    const auto n = static_cast<Eigen::Index>(n_sites);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const Eigen::Index b = (a + 1) % n;
        m(a, b) += amplitudes[static_cast<std::size_t>(a)];
        m(b, a) += std::conj(amplitudes[static_cast<std::size_t>(a)]);
    }
    return m;
}

KSpaceHopping kspace_hadd(int n_sites, double J) {
    require_odd_half(n_sites);
    KSpaceHopping out;
    out.n_sites = n_sites;
    out.J = J;
    out.fermi_point = kPi / 2.0 - kPi / n_sites;
    const std::complex<double> phase = std::polar(1.0, -kPi / n_sites);
    for (int m = -(n_sites / 2 - 1); m <= n_sites / 2; ++m) {
        const double k = 2.0 * kPi * m / n_sites;
        out.momenta.push_back(k);
        // cos(k + pi/N) = cos((2m + 1) pi / N); the integer form keeps the
        // zeros at k = k_f and k = -k_f - 2 pi/N exact.
        const int twice = 2 * m + 1;  // multiple of pi/N
        const double c = (std::abs(twice) * 2 == n_sites) ? 0.0 : std::cos(twice * kPi / n_sites);
        out.amplitudes.push_back(0.5 * J * phase * c);
    }
    return out;
}

Eigen::MatrixXd modulated_hopping_matrix(int n_sites, double J) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_sites, n_sites);
    for (int l = 1; l <= n_sites; ++l) {
        const int a = l - 1;
        const int b = l % n_sites;
        const double t = 0.5 * J * std::cos(2.0 * kPi * (l % n_sites) / n_sites);
        h(a, b) += t;
        h(b, a) += t;
    }
    return h;
}

Eigen::MatrixXcd to_momentum_basis(const Eigen::MatrixXd& h, const std::vector<double>& momenta) {
    const Eigen::Index n = h.rows();
    Eigen::MatrixXcd u(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (Eigen::Index l = 0; l < n; ++l) {
        for (Eigen::Index k = 0; k < n; ++k) {
            u(l, k) = std::polar(scale, momenta[static_cast<std::size_t>(k)] * static_cast<double>(l + 1));
        }
    }
    return u.transpose() * h.cast<std::complex<double>>() * u.conjugate();
}

double verify_conserved_number(int n_sites, double J) {
    const KSpaceHopping hk = kspace_hadd(n_sites, J);
    const Eigen::MatrixXcd h = to_momentum_basis(modulated_hopping_matrix(n_sites, J), hk.momenta);
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(n_sites, n_sites);
    for (int k = 0; k < n_sites; ++k) {
        if (std::abs(hk.momenta[static_cast<std::size_t>(k)]) <= hk.fermi_point + 1e-12) proj(k, k) = 1.0;
    }
    return (proj * h - h * proj).norm();
}

ZeroModeReport verify_zero_modes(int n_sites, double J, const LanczosOptions& options) {
    require_odd_half(n_sites);
    if (n_sites > 14) throw SizeLimitError("zero-mode verification limited to N <= 14");

    const CouplingGraph h0 = build_ring(n_sites, profile::Uniform{J}, 0.0);
    const CouplingGraph h0_reversed = build_ring(n_sites, profile::Uniform{-J}, 0.0);
    const CouplingGraph hadd = build_ring(n_sites, profile::Cosine{0.0, J, 1}, 0.0);
    const CouplingGraph modulated = build_ring(n_sites, profile::Cosine{J, J, 1}, 0.0);

    auto basis = std::make_shared<const SectorBasis>(enumerate_sector(n_sites, n_sites / 2));
    const SparseOperator op_hadd = assemble(hadd, basis);
    const GroundStateResult ground = lanczos_ground(assemble(h0, basis), options);
    const GroundStateResult maximal = lanczos_ground(assemble(h0_reversed, basis), options);
    const GroundStateResult mod_ground = lanczos_ground(assemble(modulated, basis), options);

    ZeroModeReport r;
    r.hadd_on_ground = norm(op_hadd.apply(ground.vector));
    r.hadd_on_maximal = norm(op_hadd.apply(maximal.vector));
    const std::vector<double> single{1.0};
    r.hadd_on_ferro_up = norm(assemble(hadd, n_sites).apply(single));
    r.hadd_on_ferro_down = norm(assemble(hadd, 0).apply(single));
    r.modulated_ground_overlap = overlap(ground, mod_ground);
    r.uniform_energy = ground.energy;
    r.modulated_energy = mod_ground.energy;
    r.free_fermion_energy = single_particle_ground(to_free_fermion(h0)).energy;
    r.degeneracy_suspected = ground.degeneracy_suspected || mod_ground.degeneracy_suspected ||
                             maximal.degeneracy_suspected;
    return r;
}

}  // namespace spinring
