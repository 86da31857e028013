#pragma once

#include "spinring/eigensolve.hpp"
#include "spinring/errors.hpp"
#include "spinring/lattice.hpp"
#include "spinring/observables.hpp"
#include "spinring/report.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spinring {

/// Invalid experiment configuration (CLI exit code 1).
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

struct SolverSettings {
    double tol = 1e-10;
    int max_iter = 500;
    std::uint64_t seed = 0;

    LanczosOptions options() const { return {tol, max_iter, seed}; }
};

/// Profile as written in a config file. For cosine profiles either
/// J_prime or amplitude (J' = amplitude * J) is given.
struct ProfileSpec {
    std::string kind = "uniform";  ///< uniform | alternating | cosine | custom
    double J = 1.0;
    std::optional<double> J_prime;
    std::optional<double> amplitude;
    std::vector<int> harmonics{1};
    std::vector<double> strengths;  ///< custom only

    /// Concrete profile; `harmonic` overrides the first listed harmonic.
    ModulationProfile to_profile(std::optional<int> harmonic = std::nullopt) const;
    nlohmann::json to_json() const;
    static ProfileSpec from_json(const nlohmann::json& j);
};

struct ExperimentConfig {
    std::string experiment = "sweep";
    std::vector<int> Ns;
    ProfileSpec profile;
    double delta = 1.0;
    SolverSettings solver;
    std::string output;
    std::string format = "csv";
    bool large = false;
    bool quick = false;

    /// Throws ConfigError: N must be even and in [2, 24]; amplitude in [0, 1].
    void validate() const;
    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

// --- fig1: alternating ring ----------------------------------------------

struct Fig1Row {
    int n_sites = 0;
    double J = 0.0;
    double strong_concurrence = 0.0;     ///< bond with the larger coupling
    double weak_concurrence = 0.0;
    double mean_concurrence = 0.0;       ///< average of per-bond concurrences
    double aggregate_concurrence = 0.0;  ///< from F0 and M/N
    double f0 = 0.0;
    double energy = 0.0;
    double residual = 0.0;
    bool degenerate = false;
};

/// Default J grid: 0.01 and 0.05, 0.10, ..., 3.00.
std::vector<double> default_fig1_grid();

std::vector<Fig1Row> run_fig1(const std::vector<int>& Ns, const std::vector<double>& J_grid,
                              const SolverSettings& solver = {});
ResultTable fig1_table(const std::vector<Fig1Row>& rows);

/// Aggregate concurrence at J = 1 strictly above J = 1 - delta and 1 + delta.
/// Returns nullopt when the grid lacks one of the three points.
std::optional<bool> fig1_uniform_is_local_max(const std::vector<Fig1Row>& rows, int n_sites,
                                              double delta);

// --- table1: cos^2 ring vs uniform ring -----------------------------------

struct Table1Row {
    int n_sites = 0;
    double energy_modulated = 0.0;
    double energy_uniform = 0.0;
    double delta_e = 0.0;           ///< |E(H) - E(H0)| in units of J
    double delta_e_per_site = 0.0;  ///< delta_e / N
    double overlap = 0.0;
    double residual_modulated = 0.0;
    double residual_uniform = 0.0;
    bool degenerate = false;
    bool failed = false;
    std::string error;
};

std::vector<Table1Row> run_table1(const std::vector<int>& Ns, const SolverSettings& solver = {});
ResultTable table1_table(const std::vector<Table1Row>& rows);

// --- fig3: harmonic scan -------------------------------------------------

struct Fig3Row {
    int n_sites = 0;
    double amplitude = 0.0;
    int harmonic = 0;
    double overlap = 0.0;
    double energy = 0.0;
    double residual = 0.0;
    bool degenerate = false;
};

/// J_i = 1 + A cos(2 n pi i / N) against the uniform ring; harmonics default
/// to 0..N-1 when empty.
std::vector<Fig3Row> run_fig3(const std::vector<int>& Ns, const std::vector<double>& amplitudes,
                              const std::vector<int>& harmonics = {}, const SolverSettings& solver = {});
ResultTable fig3_table(const std::vector<Fig3Row>& rows);

struct Fig3Check {
    bool holds = false;
    double overlap_n1 = 0.0;
    double best_other = 0.0;  ///< max overlap over harmonics not equivalent to 0 or 1
    int best_other_harmonic = -1;
};

/// Harmonic n = N - 1 produces the same couplings as n = 1 and is excluded
/// together with n = 0.
Fig3Check fig3_harmonic_one_dominates(const std::vector<Fig3Row>& rows, int n_sites, double amplitude);

// --- Long-range concurrence -------------------------------------------------

struct LongRangeRow {
    int n_sites = 0;
    double amplitude = 0.0;
    double modulated_concurrence = 0.0;  ///< sites N/2 and N/2 + 1 (weakest bond)
    double uniform_concurrence = 0.0;    ///< nearest neighbours on the uniform ring
    double difference = 0.0;             ///< modulated - uniform
    double residual = 0.0;
    bool degenerate = false;
};

LongRangeRow run_long_range(int n_sites, double amplitude, const SolverSettings& solver = {});
ResultTable long_range_table(const std::vector<LongRangeRow>& rows);

// --- Generic per-bond sweep --------------------------------------------------

/// One row per (N, bond) of the configured ring: couplings, correlators,
/// Wootters concurrence, F0 and the aggregate concurrence.
ResultTable run_sweep(const ExperimentConfig& config);

// --- Property suite ---------------------------------------------------------

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct PropertyOptions {
    bool quick = false;  ///< N <= 12 only
    SolverSettings solver;
    /// Replaceable to test that the suite catches a broken concurrence.
    std::function<double(double)> isotropic_concurrence = concurrence_isotropic;
};

std::vector<PropertyResult> run_properties(const PropertyOptions& options = {});
ResultTable properties_table(const std::vector<PropertyResult>& results);

/// Runs fn(k) for k in [0, count) on up to `threads` workers (0 = hardware
/// concurrency). Each index writes its own slot, so output order is fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace spinring
