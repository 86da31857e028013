#include "spinring/lattice.hpp"

#include "spinring/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

namespace spinring {

CouplingGraph::CouplingGraph(int n_sites, std::vector<Bond> bonds, double anisotropy)
    : n_sites_(n_sites), bonds_(std::move(bonds)), anisotropy_(anisotropy) {
    if (n_sites_ < 1) {
        throw InvalidArgument("coupling graph needs at least one site");
    }
    if (n_sites_ > kMaxSites) {
        throw SizeLimitError("coupling graph limited to " + std::to_string(kMaxSites) + " sites");
    }
    std::set<std::pair<int, int>> seen;
    for (std::size_t k = 0; k < bonds_.size(); ++k) {
        const Bond& b = bonds_[k];
        if (b.i < 0 || b.i >= n_sites_ || b.j < 0 || b.j >= n_sites_) {
            throw InvalidArgument("bond " + std::to_string(k) + " references a site out of range");
        }
        if (b.i == b.j) {
            throw InvalidArgument("bond " + std::to_string(k) + " is a self loop");
        }
        if (!seen.emplace(std::min(b.i, b.j), std::max(b.i, b.j)).second) {
            throw InvalidArgument("duplicate bond between sites " + std::to_string(b.i) + " and " +
                                  std::to_string(b.j));
        }
        if (!std::isfinite(b.strength)) {
            throw InvalidArgument("bond " + std::to_string(k) + " has a non-finite strength");
        }
        if (b.strength <= 0.0) {
            std::ostringstream msg;
            msg << "bond " << k << " (sites " << b.i << "," << b.j << ") has J = " << b.strength
                << " <= 0; ground state may be degenerate";
            warnings_.push_back(msg.str());
        }
    }
}

std::optional<std::vector<int>> CouplingGraph::bipartition() const {
    std::vector<std::vector<int>> adj(n_sites_);
    for (const Bond& b : bonds_) {
        adj[b.i].push_back(b.j);
        adj[b.j].push_back(b.i);
    }
    std::vector<int> label(n_sites_, -1);
    for (int start = 0; start < n_sites_; ++start) {
        if (label[start] >= 0) continue;
        label[start] = 0;
        std::queue<int> todo;
        todo.push(start);
        while (!todo.empty()) {
            const int s = todo.front();
            todo.pop();
            for (int t : adj[s]) {
                if (label[t] < 0) {
                    label[t] = 1 - label[s];
                    todo.push(t);
                } else if (label[t] == label[s]) {
                    return std::nullopt;
                }
            }
        }
    }
    return label;
}

bool CouplingGraph::is_uniform(double tol) const noexcept {
    if (bonds_.empty()) return true;
    const double ref = bonds_.front().strength;
    return std::all_of(bonds_.begin(), bonds_.end(),
                       [&](const Bond& b) { return std::abs(b.strength - ref) <= tol; });
}

double CouplingGraph::total_strength() const noexcept {
    double sum = 0.0;
    for (const Bond& b : bonds_) sum += b.strength;
    return sum;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::vector<double> ring_strengths(const ModulationProfile& profile, int n_sites) {
    if (n_sites < 1) throw InvalidArgument("ring needs at least one site");
    std::vector<double> out(static_cast<std::size_t>(n_sites));
    std::visit(
        Overloaded{
            [&](const profile::Uniform& p) { std::fill(out.begin(), out.end(), p.J); },
            [&](const profile::Alternating& p) {
                for (int i = 1; i <= n_sites; ++i) out[i - 1] = (i % 2 == 1) ? 1.0 : p.J;
            },
            [&](const profile::Cosine& p) {
                if (p.harmonic < 0) throw InvalidArgument("cosine harmonic must be >= 0");
                for (int i = 1; i <= n_sites; ++i) {
                    // Reduce n*i mod N first so the phase argument stays exact.
                    const long long m = (static_cast<long long>(p.harmonic) * i) % n_sites;
                    const double phase = 2.0 * std::numbers::pi * static_cast<double>(m) / n_sites;
                    out[i - 1] = p.J + p.J_prime * std::cos(phase);
                }
            },
            [&](const profile::Custom& p) {
                if (p.strengths.size() != out.size()) {
                    throw InvalidArgument("custom profile has " + std::to_string(p.strengths.size()) +
                                          " strengths for " + std::to_string(n_sites) + " bonds");
                }
                out = p.strengths;
            },
        },
        profile);
    return out;
}

CouplingGraph build_ring(int n_sites, const ModulationProfile& profile, double anisotropy) {
    if (n_sites < 2 || n_sites % 2 != 0) {
        throw InvalidArgument("ring size must be even and >= 2, got " + std::to_string(n_sites));
    }
    if (n_sites > kMaxSites) {
        throw SizeLimitError("ring limited to " + std::to_string(kMaxSites) + " sites");
    }
    const std::vector<double> strengths = ring_strengths(profile, n_sites);
    std::vector<Bond> bonds;
    if (n_sites == 2) {
        bonds.push_back({0, 1, strengths[0]});
    } else {
        for (int k = 0; k < n_sites; ++k) bonds.push_back({k, (k + 1) % n_sites, strengths[k]});
    }
    return CouplingGraph(n_sites, std::move(bonds), anisotropy);
}

CouplingGraph build_cubic(const std::vector<int>& extents, bool periodic, double J,
                          double anisotropy) {
    if (extents.empty()) throw InvalidArgument("cubic lattice needs at least one axis");
    long long n = 1;
    for (int e : extents) {
        if (e < 2) throw InvalidArgument("every lattice extent must be >= 2");
        n *= e;
        if (n > kMaxSites) {
            throw SizeLimitError("cubic lattice limited to " + std::to_string(kMaxSites) + " sites");
        }
    }
    const int n_sites = static_cast<int>(n);
    std::vector<int> stride(extents.size(), 1);
    for (std::size_t a = 1; a < extents.size(); ++a) stride[a] = stride[a - 1] * extents[a - 1];

    std::vector<Bond> bonds;
    for (int s = 0; s < n_sites; ++s) {
        for (std::size_t a = 0; a < extents.size(); ++a) {
            const int x = (s / stride[a]) % extents[a];
            if (x + 1 < extents[a]) {
                bonds.push_back({s, s + stride[a], J});
            } else if (periodic && extents[a] > 2) {
                bonds.push_back({s, s - x * stride[a], J});
            }
        }
    }
    return CouplingGraph(n_sites, std::move(bonds), anisotropy);
}

CouplingGraph perturb_bond(const CouplingGraph& graph, std::size_t bond_index, double epsilon) {
    if (bond_index >= graph.link_count()) {
        throw InvalidArgument("bond index " + std::to_string(bond_index) + " out of range (M = " +
                              std::to_string(graph.link_count()) + ")");
    }
    std::vector<Bond> bonds = graph.bonds();
    bonds[bond_index].strength += epsilon;
    return CouplingGraph(graph.n_sites(), std::move(bonds), graph.anisotropy());
}

CouplingGraph with_strengths(const CouplingGraph& graph, const std::vector<double>& strengths) {
    if (strengths.size() != graph.link_count()) {
        throw InvalidArgument("strength list length does not match the bond count");
    }
    std::vector<Bond> bonds = graph.bonds();
    for (std::size_t k = 0; k < bonds.size(); ++k) bonds[k].strength = strengths[k];
    return CouplingGraph(graph.n_sites(), std::move(bonds), graph.anisotropy());
}

}  // namespace spinring
