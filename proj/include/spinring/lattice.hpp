#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace spinring {

/// Largest lattice handled anywhere in the library.
inline constexpr int kMaxSites = 24;

/// Exchange bond between two sites. Sites are 0-based bit positions:
/// site index s corresponds to the physical label s+1.
struct Bond {
    int i = 0;
    int j = 0;
    double strength = 0.0;

    friend bool operator==(const Bond&, const Bond&) = default;
};

/// Sites, weighted bonds and the global anisotropy Delta of
/// H = sum_b J_b (Sx Sx + Sy Sy + Delta Sz Sz).
///
/// Bonds keep their insertion order; for rings built by build_ring the
/// k-th bond (0-based) carries the coupling J_{k+1} and joins sites k and
/// k+1 (mod N).
class CouplingGraph {
public:
    /// Throws InvalidArgument on out-of-range sites, self bonds or
    /// duplicate (unordered) pairs.
    CouplingGraph(int n_sites, std::vector<Bond> bonds, double anisotropy);

    int n_sites() const noexcept { return n_sites_; }
    const std::vector<Bond>& bonds() const noexcept { return bonds_; }
    double anisotropy() const noexcept { return anisotropy_; }

    /// Link count M.
    std::size_t link_count() const noexcept { return bonds_.size(); }

    /// Sublattice label (0 = A, 1 = B) per site, or nullopt when the graph
    /// has an odd cycle. Disconnected components start on A.
    std::optional<std::vector<int>> bipartition() const;
    bool is_bipartite() const { return bipartition().has_value(); }

    /// True when every bond strength equals the first one within tol.
    bool is_uniform(double tol = 0.0) const noexcept;

    /// Sum of bond strengths.
    double total_strength() const noexcept;

    /// Non-fatal construction notes (e.g. bonds with J <= 0).
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    friend bool operator==(const CouplingGraph& a, const CouplingGraph& b) {
        return a.n_sites_ == b.n_sites_ && a.bonds_ == b.bonds_ &&
               a.anisotropy_ == b.anisotropy_;
    }

private:
    int n_sites_;
    std::vector<Bond> bonds_;
    double anisotropy_;
    std::vector<std::string> warnings_;
};

namespace profile {

struct Uniform {
    double J = 1.0;
};

/// Strength 1 on odd bonds i = 1, 3, ... and J on even bonds.
struct Alternating {
    double J = 1.0;
};

/// J_i = J + J' cos(2 pi n i / N), i = 1..N.
struct Cosine {
    double J = 1.0;
    double J_prime = 0.0;
    int harmonic = 1;
};

/// One strength per bond, in bond order.
struct Custom {
    std::vector<double> strengths;
};

}  // namespace profile

using ModulationProfile =
    std::variant<profile::Uniform, profile::Alternating, profile::Cosine, profile::Custom>;

/// Bond strengths J_1..J_N of a ring with the given profile.
std::vector<double> ring_strengths(const ModulationProfile& profile, int n_sites);

/// Ring of N sites (N even, N >= 2). Bond k joins sites k and k+1 mod N.
/// N = 2 collapses to one bond since both ring bonds join the same pair.
/// Non-positive strengths are kept and reported in warnings().
CouplingGraph build_ring(int n_sites, const ModulationProfile& profile, double anisotropy);

/// Hypercubic lattice; site index is row-major with the first axis fastest.
/// With periodic = true each axis of extent > 2 gets wrap bonds.
CouplingGraph build_cubic(const std::vector<int>& extents, bool periodic, double J,
                          double anisotropy);

/// Copy of graph with bond `bond_index` (0-based) shifted by epsilon.
CouplingGraph perturb_bond(const CouplingGraph& graph, std::size_t bond_index, double epsilon);

/// Copy of graph with all strengths replaced (same bond list otherwise).
CouplingGraph with_strengths(const CouplingGraph& graph, const std::vector<double>& strengths);

}  // namespace spinring
