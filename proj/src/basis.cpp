#include "spinring/basis.hpp"

#include "spinring/errors.hpp"
#include "spinring/lattice.hpp"

#include <array>
#include <bit>
#include <string>

namespace spinring {

namespace {

constexpr int kMaxBinomial = 32;

struct BinomialTable {
    std::array<std::array<std::uint64_t, kMaxBinomial + 1>, kMaxBinomial + 1> c{};
    constexpr BinomialTable() {
        for (int n = 0; n <= kMaxBinomial; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
    }
};

constexpr BinomialTable kBinomial{};

// rank(config) = sum over set bits of C(position, ordinal + 1). The sum is
// split into the low 12 bits and the remaining high bits; the high part
// depends on how many bits the low part already consumed.
constexpr int kSplit = 12;
constexpr Config kLowMask = (Config{1} << kSplit) - 1;

struct RankTables {
    std::vector<std::uint32_t> low;
    std::vector<std::uint32_t> high;  // [low_popcount][high_bits]

    RankTables() : low(std::size_t{1} << kSplit), high((kSplit + 1) << kSplit) {
        for (Config bits = 0; bits <= kLowMask; ++bits) {
            std::uint64_t r = 0;
            int ordinal = 0;
            for (int p = 0; p < kSplit; ++p) {
                if ((bits >> p) & 1u) r += kBinomial.c[p][++ordinal];
            }
            low[bits] = static_cast<std::uint32_t>(r);
        }
        for (int offset = 0; offset <= kSplit; ++offset) {
            for (Config bits = 0; bits <= kLowMask; ++bits) {
                std::uint64_t r = 0;
                int ordinal = offset;
                for (int p = 0; p < kSplit; ++p) {
                    if ((bits >> p) & 1u) r += kBinomial.c[p + kSplit][++ordinal];
                }
                high[(static_cast<std::size_t>(offset) << kSplit) | bits] =
                    static_cast<std::uint32_t>(r);
            }
        }
    }
};

const RankTables& rank_tables() {
    static const RankTables tables;
    return tables;
}

}  // namespace

std::uint64_t binomial(int n, int k) noexcept {
    if (n < 0 || n > kMaxBinomial || k < 0 || k > n) return 0;
    return kBinomial.c[n][k];
}

std::size_t SectorBasis::rank_unchecked(Config config) const noexcept {
    const RankTables& t = rank_tables();
    const Config low = config & kLowMask;
    const Config high = config >> kSplit;
    const auto offset = static_cast<std::size_t>(std::popcount(low));
    return t.low[low] + t.high[(offset << kSplit) | high];
}

std::size_t SectorBasis::rank(Config config) const {
    if (n_sites_ < 32 && (config >> n_sites_) != 0) {
        throw InvalidArgument("configuration has bits beyond site " + std::to_string(n_sites_));
    }
    if (std::popcount(config) != n_up_) {
        throw InvalidArgument("configuration has " + std::to_string(std::popcount(config)) +
                              " up spins, sector expects " + std::to_string(n_up_));
    }
    return rank_unchecked(config);
}

Config SectorBasis::unrank(std::size_t index) const {
    if (index >= states_.size()) {
        throw InvalidArgument("index " + std::to_string(index) + " out of range (dimension " +
                              std::to_string(states_.size()) + ")");
    }
    return states_[index];
}

SectorBasis enumerate_sector(int n_sites, int n_up) {
    if (n_sites > kMaxSites) {
        throw SizeLimitError("sector enumeration limited to " + std::to_string(kMaxSites) + " sites");
    }
    if (n_sites < 1) throw InvalidArgument("sector needs at least one site");
    if (n_up < 0 || n_up > n_sites) {
        throw InvalidArgument("n_up must lie in [0, " + std::to_string(n_sites) + "]");
    }
    const std::uint64_t dim = binomial(n_sites, n_up);
    std::vector<Config> states;
    states.reserve(dim);
    if (n_up == 0) {
        states.push_back(0);
    } else {
        // Gosper's hack: next larger integer with the same popcount.
        Config s = (Config{1} << n_up) - 1;
        for (std::uint64_t k = 0; k < dim; ++k) {
            states.push_back(s);
            const Config c = s & (~s + 1);
            const Config r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    return SectorBasis(n_sites, n_up, std::move(states));
}

}  // namespace spinring
