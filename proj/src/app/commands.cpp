#include "nmq/app/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "nmq/app/simulation.hpp"
#include "nmq/boundstate.hpp"
#include "nmq/errors.hpp"
#include "nmq/markovian.hpp"

namespace nmq::app {

namespace {

int report_failure(std::ostream& err, const std::exception& e, int code) {
    err << "error: " << e.what() << '\n';
    return code;
}

// Maps library exceptions onto exit codes; anything else is a solver failure.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        return report_failure(err, e, kExitConfigError);
    } catch (const DomainError& e) {
        return report_failure(err, e, kExitConfigError);
    } catch (const std::exception& e) {
        return report_failure(err, e, kExitSolverFailure);
    }
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open " + path.string() + " for writing");
    file.imbue(std::locale::classic());
    return file;
}

void prepare_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());
}

}  // namespace

std::filesystem::path output_directory(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') return env;
    return ".";
}

int cmd_simulate(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        prepare_directory(out_dir);
        const SimulationResult result = run_simulation(config);
        const auto csv_path = out_dir / (config.label + ".csv");
        const auto json_path = out_dir / (config.label + ".summary.json");
        {
            auto csv = open_output(csv_path);
            write_csv(csv, result);
        }
        {
            auto json = open_output(json_path);
            json << summary_json(result).dump(2) << '\n';
        }
        out << "wrote " << csv_path.string() << '\n' << "wrote " << json_path.string() << '\n';
        out << "plateau_mean " << format_number(result.plateau.plateau_mean) << " trapped "
            << (result.plateau.trapped ? "true" : "false") << '\n';
        return int{kExitSuccess};
    });
}

int cmd_sweep(SweepAxis axis, const std::vector<double>& values, const RunConfig& base,
              unsigned workers, const std::filesystem::path& out_dir, std::ostream& out,
              std::ostream& err) {
    return guarded(err, [&] {
        if (values.empty()) throw ConfigError("sweep needs at least one value (--values)");
        RunConfig checked = base;
        if (axis == SweepAxis::eta) checked.eta = values.front();
        else checked.omega_c = values.front();
        checked.validate();
        prepare_directory(out_dir);
        const auto rows = run_sweep(axis, values, base, workers);
        const auto path = out_dir / (base.label + "." + std::string(to_string(axis)) + ".sweep.csv");
        {
            auto csv = open_output(path);
            write_sweep_csv(csv, rows);
        }
        write_sweep_csv(out, rows);
        std::size_t ok = 0;
        for (const SweepRow& r : rows) {
            if (r.ok()) ++ok;
            else err << "value " << format_number(r.axis_value) << " failed: " << r.error << '\n';
        }
        return ok > 0 ? int{kExitSuccess} : int{kExitSolverFailure};
    });
}

int cmd_boundstate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        const BoundStateReport report = analyze_bound_state(config.spectral());
        nlohmann::ordered_json j;
        j["params"] = {{"eta", config.eta}, {"omega_c", config.omega_c}, {"omega0", 1.0}};
        j["bound_state"] = bound_state_json(report);
        out << j.dump(2) << '\n';
        return report.exists ? int{kExitSuccess} : int{kExitNoBoundState};
    });
}

int cmd_markovian(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        const MarkovConstants m = markov_constants(config.spectral());
        nlohmann::ordered_json j;
        j["params"] = {{"eta", config.eta}, {"omega_c", config.omega_c}, {"omega0", 1.0},
                       {"alpha_sq", config.alpha_sq}};
        j["markov"] = markov_json(m);
        j["at_t_max"] = {{"t", config.t_max},
                         {"coherence", markov_coherence(m, config.t_max)},
                         {"purity", markov_purity(config.state(), m, config.t_max)}};
        out << j.dump(2) << '\n';
        return int{kExitSuccess};
    });
}

int cmd_validate(ValidationLevel level, unsigned workers, bool include_timing, std::ostream& out,
                 std::ostream& err) {
    return guarded(err, [&] {
        const auto checks = run_validation(level, workers);
        for (const CheckResult& c : checks) print_check(out, c, include_timing);
        const bool ok = all_passed(checks);
        out << (ok ? "all checks passed" : "some checks failed") << '\n';
        return ok ? int{kExitSuccess} : int{kExitValidationFailure};
    });
}

namespace {

struct CommonFlags {
    std::optional<double> eta, omega_c, alpha_sq, t_max, dt, tolerance;
    std::optional<std::string> preset, label, outputs;
    std::string config_file;
    std::string out_dir;
    unsigned workers = 0;
    bool fixed_step = false;
};

void add_common(CLI::App& cmd, CommonFlags& f) {
    cmd.add_option("--eta", f.eta, "Coupling strength eta (>= 0)");
    cmd.add_option("--omega-c", f.omega_c, "Cutoff frequency omega_c in units of omega0 (> 0)");
    cmd.add_option("--alpha-sq", f.alpha_sq, "Initial excited-state weight |alpha|^2 in [0, 1]");
    cmd.add_option("--t-max", f.t_max, "Final time in units of 1/omega0 (default 200)");
    cmd.add_option("--dt", f.dt, "Initial step (default 0.005)");
    cmd.add_option("--tolerance", f.tolerance, "Step-halving tolerance on |b0| (default 1e-5)");
    cmd.add_option("--preset", f.preset, "Parameter preset")->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
    cmd.add_option("--config", f.config_file, "Flat key = value config file (flags override it)");
    cmd.add_option("--label", f.label, "Output file stem (default: preset name or 'run')");
    cmd.add_option("--outputs", f.outputs,
                   "Comma separated CSV column groups: gamma, omega, purity, coherence, amplitude, "
                   "markovian-baseline");
    cmd.add_flag("--fixed-step", f.fixed_step, "Single solve at --dt without step halving");
}

void add_io(CLI::App& cmd, CommonFlags& f) {
    cmd.add_option("--out", f.out_dir,
                   std::string("Output directory (default: $") + kOutDirEnv + ", else the working directory)");
}

void add_workers(CLI::App& cmd, CommonFlags& f) {
    cmd.add_option("--workers", f.workers, "Worker threads (default: number of processors)");
}

// Defaults, then the config file, then --preset, then explicit flags.
RunConfig resolve(const CommonFlags& f) {
    RunConfig c;
    if (!f.config_file.empty()) apply_config_file(c, f.config_file);
    if (f.preset) apply_preset(c, *f.preset);
    if (f.eta) c.eta = *f.eta;
    if (f.omega_c) c.omega_c = *f.omega_c;
    if (f.alpha_sq) c.alpha_sq = *f.alpha_sq;
    if (f.t_max) c.t_max = *f.t_max;
    if (f.dt) c.dt = *f.dt;
    if (f.tolerance) c.tolerance = *f.tolerance;
    if (f.label) c.label = *f.label;
    if (f.outputs) set_value(c, "outputs", *f.outputs);
    if (f.fixed_step) c.adaptive = false;
    c.validate();
    return c;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact non-Markovian decoherence of a qubit in a super-Ohmic vacuum reservoir.\n"
                 "Output files go to --out, or to $" + std::string(kOutDirEnv) +
                 " when --out is absent, or to the working directory."};
    app.require_subcommand(1);

    CommonFlags f;
    auto* simulate = app.add_subcommand("simulate", "Solve one run; write <label>.csv and <label>.summary.json");
    add_common(*simulate, f);
    add_io(*simulate, f);

    std::string axis_name;
    std::string values_text;
    auto* sweep = app.add_subcommand("sweep", "One simulation per value; write <label>.<axis>.sweep.csv");
    add_common(*sweep, f);
    add_io(*sweep, f);
    add_workers(*sweep, f);
    sweep->add_option("--axis", axis_name, "Swept parameter: eta or omega_c")->required();
    sweep->add_option("--values", values_text, "Comma separated values, e.g. 0.01,0.08,0.6")->required();

    auto* boundstate = app.add_subcommand("boundstate", "Bound-state report (exit 4 when none exists)");
    add_common(*boundstate, f);

    auto* markovian = app.add_subcommand("markovian", "Born-Markov constants");
    add_common(*markovian, f);

    std::string level_name = "quick";
    bool no_timing = false;
    auto* validate = app.add_subcommand("validate", "Run built-in checks (exit 1 on any failure)");
    validate->add_option("level", level_name, "quick or full")->check(CLI::IsMember({"quick", "full"}));
    add_workers(*validate, f);
    validate->add_flag("--no-timing", no_timing, "Omit per-check timings from the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }

    RunConfig config;
    if (!validate->parsed()) {
        try {
            config = resolve(f);
        } catch (const ConfigError& e) {
            err << "error: " << e.what() << '\n';
            return kExitConfigError;
        }
    }

    if (simulate->parsed()) return cmd_simulate(config, output_directory(f.out_dir), out, err);
    if (sweep->parsed()) {
        SweepAxis axis;
        std::vector<double> values;
        try {
            axis = parse_axis(axis_name);
            values = parse_values(values_text);
        } catch (const ConfigError& e) {
            err << "error: " << e.what() << '\n';
            return kExitConfigError;
        }
        return cmd_sweep(axis, values, config, f.workers, output_directory(f.out_dir), out, err);
    }
    if (boundstate->parsed()) return cmd_boundstate(config, out, err);
    if (markovian->parsed()) return cmd_markovian(config, out, err);
    return cmd_validate(parse_level(level_name), f.workers, !no_timing, out, err);
}

}  // namespace nmq::app
