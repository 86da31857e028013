// Command-line runner for the spin-ring experiments.
//
//   spinring fig1 | table1 | fig3 | longrange | properties | sweep [flags]
//
// Exit codes: 0 success, 1 invalid config, 2 solver non-convergence,
// 3 property or claim check failure.

#include "spinring/errors.hpp"
#include "spinring/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace spinring;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitProperty = 3;

struct Flags {
    std::string config_path;
    std::vector<int> n_sites;
    std::optional<double> delta;
    std::string profile_json;
    std::optional<double> tol;
    std::optional<int> max_iter;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
    bool large = false;
    bool quick = false;
    std::vector<double> amplitudes;
    std::vector<double> J_grid;
};

ExperimentConfig resolve(const std::string& experiment, const Flags& f) {
    ExperimentConfig c;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw ConfigError("cannot open config file " + f.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }
        c = ExperimentConfig::from_json(j);
    }
    c.experiment = experiment;
    if (!f.n_sites.empty()) c.Ns = f.n_sites;
    if (f.delta) c.delta = *f.delta;
    if (!f.profile_json.empty()) {
        try {
            c.profile = ProfileSpec::from_json(nlohmann::json::parse(f.profile_json));
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("--profile is not valid JSON: ") + e.what());
        }
    }
    if (f.tol) c.solver.tol = *f.tol;
    if (f.max_iter) c.solver.max_iter = *f.max_iter;
    if (f.seed) c.solver.seed = *f.seed;
    if (!f.out.empty()) c.output = f.out;
    if (!f.format.empty()) c.format = f.format;
    c.large = f.large;
    c.quick = f.quick;
    c.validate();
    return c;
}

void emit(ResultTable table, const ExperimentConfig& c) {
    if (table.provenance.empty()) table.provenance = c.to_json();
    const std::string text = c.format == "json" ? to_json(table).dump(2) + "\n" : to_csv(table);
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw ConfigError("cannot write " + c.output);
    out << text;
}

int run(const std::string& cmd, const Flags& f) {
    ExperimentConfig c = resolve(cmd, f);
    if (cmd == "fig1") {
        if (c.Ns.empty()) c.Ns = {8, 10, 12};
        const auto grid = f.J_grid.empty() ? default_fig1_grid() : f.J_grid;
        const auto rows = run_fig1(c.Ns, grid, c.solver);
        emit(fig1_table(rows), c);
        bool ok = true;
        for (int n : c.Ns) {
            if (auto m = fig1_uniform_is_local_max(rows, n, 0.05)) {
                std::cerr << "N=" << n << " C_aggregate(1) local maximum vs 1+-0.05: "
                          << (*m ? "yes" : "NO") << "\n";
                ok = ok && *m;
            }
        }
        return ok ? kExitOk : kExitProperty;
    }
    if (cmd == "table1") {
        if (c.Ns.empty()) {
            c.Ns = {12, 14, 16, 18, 20};
            if (c.large) c.Ns.insert(c.Ns.end(), {22, 24});
        }
        for (int n : c.Ns) {
            if (n > 20 && !c.large) throw ConfigError("N > 20 requires --large");
        }
        const auto rows = run_table1(c.Ns, c.solver);
        emit(table1_table(rows), c);
        for (const auto& r : rows) {
            if (r.failed) {
                std::cerr << "N=" << r.n_sites << ": " << r.error << "\n";
                return kExitSolver;
            }
        }
        return kExitOk;
    }
    if (cmd == "fig3") {
        if (c.Ns.empty()) c.Ns = {16, 18, 20};
        const auto amps = f.amplitudes.empty() ? std::vector<double>{0.5, 0.95} : f.amplitudes;
        const auto rows = run_fig3(c.Ns, amps, {}, c.solver);
        emit(fig3_table(rows), c);
        bool ok = true;
        for (int n : c.Ns) {
            for (double a : amps) {
                const Fig3Check chk = fig3_harmonic_one_dominates(rows, n, a);
                std::cerr << "N=" << n << " A=" << a << " overlap(n=1)=" << chk.overlap_n1
                          << " best other=" << chk.best_other << " (n=" << chk.best_other_harmonic << ")"
                          << (chk.holds ? "" : "  VIOLATED") << "\n";
                ok = ok && chk.holds;
            }
        }
        return ok ? kExitOk : kExitProperty;
    }
    if (cmd == "longrange") {
        if (c.Ns.empty()) c.Ns = {12, 16};
        const auto amps = f.amplitudes.empty() ? std::vector<double>{0.0, 0.5, 0.95} : f.amplitudes;
        std::vector<LongRangeRow> rows;
        for (int n : c.Ns) {
            for (double a : amps) rows.push_back(run_long_range(n, a, c.solver));
        }
        emit(long_range_table(rows), c);
        return kExitOk;
    }
    if (cmd == "properties") {
        PropertyOptions opts;
        opts.quick = c.quick;
        opts.solver = c.solver;
        const auto results = run_properties(opts);
        emit(properties_table(results), c);
        bool ok = true;
        for (const auto& r : results) {
            std::cerr << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << "  " << r.detail << "\n";
            ok = ok && r.passed;
        }
        return ok ? kExitOk : kExitProperty;
    }
    if (cmd == "sweep") {
        if (c.Ns.empty()) throw ConfigError("sweep needs --n-sites or Ns in the config");
        emit(run_sweep(c), c);
        return kExitOk;
    }
    throw ConfigError("unknown subcommand " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact diagonalization of engineered spin-1/2 rings"};
    app.require_subcommand(1, 1);
    Flags flags;

    for (const char* name : {"fig1", "table1", "fig3", "longrange", "properties", "sweep"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", flags.config_path, "JSON experiment config");
        sub->add_option("--n-sites", flags.n_sites, "ring sizes")->delimiter(',');
        sub->add_option("--delta", flags.delta, "anisotropy Delta");
        sub->add_option("--profile", flags.profile_json, "coupling profile as JSON");
        sub->add_option("--tol", flags.tol, "Lanczos residual tolerance");
        sub->add_option("--max-iter", flags.max_iter, "Lanczos iteration cap");
        sub->add_option("--seed", flags.seed, "start-vector seed");
        sub->add_option("--out", flags.out, "output file (stdout if omitted)");
        sub->add_option("--format", flags.format, "csv or json");
        sub->add_flag("--large", flags.large, "allow N = 22, 24 in table1");
        sub->add_flag("--quick", flags.quick, "restrict the property suite to N <= 12");
        sub->add_option("--amplitude", flags.amplitudes, "modulation amplitudes")->delimiter(',');
        sub->add_option("--J-grid", flags.J_grid, "alternating couplings for fig1")->delimiter(',');
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run(cmd, flags);
    } catch (const ConvergenceError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidArgument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return kExitConfig;
    }
}
