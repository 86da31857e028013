#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spinring {

/// Spin configuration: bit b set <=> site b is up.
using Config = std::uint32_t;

/// Binomial coefficient C(n, k) for 0 <= n <= 32; zero when k is out of range.
std::uint64_t binomial(int n, int k) noexcept;

/// Fixed-magnetization sector: all N-bit configurations with n_up set bits,
/// in ascending order.
///
/// Ranking uses the combinatorial number system, which coincides with
/// ascending integer order inside a fixed-popcount sector. No hash map is
/// kept; rank() costs two table lookups.
class SectorBasis {
public:
    int n_sites() const noexcept { return n_sites_; }
    int n_up() const noexcept { return n_up_; }
    std::size_t dimension() const noexcept { return states_.size(); }
    std::span<const Config> states() const noexcept { return states_; }

    /// Index of config; throws InvalidArgument for a wrong popcount or
    /// bits beyond n_sites.
    std::size_t rank(Config config) const;
    /// Config at index; throws InvalidArgument when index >= dimension().
    Config unrank(std::size_t index) const;

    /// Unchecked rank for hot loops. config must belong to the sector.
    std::size_t rank_unchecked(Config config) const noexcept;

    friend SectorBasis enumerate_sector(int n_sites, int n_up);

private:
    SectorBasis(int n_sites, int n_up, std::vector<Config> states)
        : n_sites_(n_sites), n_up_(n_up), states_(std::move(states)) {}

    int n_sites_;
    int n_up_;
    std::vector<Config> states_;
};

/// Enumerates the sector. Throws SizeLimitError when n_sites > 24 and
/// InvalidArgument when n_up is outside [0, n_sites].
SectorBasis enumerate_sector(int n_sites, int n_up);

}  // namespace spinring
