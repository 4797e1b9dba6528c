// Command-line front end: one subcommand per experiment family, CSV outputs
// plus a reproducibility manifest per run.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tstdp/config.hpp"
#include "tstdp/csv.hpp"
#include "tstdp/dataset.hpp"
#include "tstdp/errors.hpp"
#include "tstdp/fitting.hpp"
#include "tstdp/manifest.hpp"
#include "tstdp/robustness.hpp"
#include "tstdp/sweeps.hpp"

namespace {

using namespace tstdp;
namespace fs = std::filesystem;

struct CommonArgs {
    std::string config_path;
    std::string dataset_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    bool retune = false;
};

struct Run {
    RunConfig cfg;
    fs::path out_dir;
    std::vector<std::pair<std::string, std::string>> outputs; // name -> content
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    std::string started_utc;
};

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Run open_run(const CommonArgs& args) {
    Run run;
    run.started_utc = utc_now();
    run.cfg = load_config(args.config_path);
    if (args.seed) run.cfg.seed = *args.seed;
    if (args.trials) {
        run.cfg.window.trials = *args.trials;
        run.cfg.freq.trials = *args.trials;
        run.cfg.triplet.trials = *args.trials;
        run.cfg.quad.trials = *args.trials;
        run.cfg.bcm.sweep.trials = *args.trials;
    }
    run.cfg.bcm.sweep.seed = run.cfg.seed;

    std::string out = args.out_dir;
    if (out.empty()) out = run.cfg.out_dir;
    if (out.empty()) {
        if (const char* env = std::getenv("TSTDP_OUT")) out = env;
    }
    if (out.empty()) out = "out";
    run.out_dir = out;
    fs::create_directories(run.out_dir);
    return run;
}

void emit(Run& run, const std::string& name, const std::string& content) {
    run.outputs.emplace_back(name, content);
}

void close_run(Run& run, const std::string& command) {
    RunManifest manifest;
    manifest.artifact_version = std::string(kArtifactVersion);
    manifest.command = command;
    manifest.config_digest = fnv1a64_hex(run.cfg.raw_text);
    manifest.seed = run.cfg.seed;
    manifest.started_utc = run.started_utc;
    manifest.wall_clock_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - run.t0).count();
    for (const auto& [name, content] : run.outputs) {
        write_file_atomic(run.out_dir / name, content);
        manifest.outputs.emplace_back(name, fnv1a64_hex(content));
        std::cout << "wrote " << (run.out_dir / name).string() << "\n";
    }
    write_file_atomic(run.out_dir / "manifest.json", manifest_to_json(manifest));
    std::cout << "wrote " << (run.out_dir / "manifest.json").string() << "\n";
}

std::string protocol_label(const Protocol& protocol) {
    return std::visit(
        [](const auto& p) -> std::string {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, PairingProtocol>) {
                return "pairing(dt=" + format_number(p.dt * 1e3) + "ms)";
            } else if constexpr (std::is_same_v<P, TripletProtocol>) {
                return "triplet(" + to_string(p.kind) + " " + format_number(p.dt1 * 1e3) + "/" +
                       format_number(p.dt2 * 1e3) + "ms)";
            } else if constexpr (std::is_same_v<P, QuadrupletProtocol>) {
                return "quadruplet(T=" + format_number(p.T * 1e3) + "ms)";
            } else if constexpr (std::is_same_v<P, SixTripletProtocol>) {
                return "six(" + to_string(p.kind) + ")";
            } else {
                return "poisson";
            }
        },
        protocol);
}

nlohmann::ordered_json params_to_json(const TripletParams& params) {
    nlohmann::ordered_json model = nlohmann::ordered_json::object();
    nlohmann::ordered_json alias = nlohmann::ordered_json::object();
    for (ParamId id : kAllParams) {
        const bool amp = is_amplitude(id);
        const std::string suffix = amp ? "" : "_ms";
        const double value = amp ? get_param(params, id) : get_param(params, id) * 1e3;
        model[std::string(param_name(id)) + suffix] = value;
        alias[std::string(bias_alias(id)) + suffix] = value;
    }
    nlohmann::ordered_json j;
    j["model"] = model;
    j["bias_aliases"] = alias;
    return j;
}

void warn_skipped(const std::string& what, double x, const std::string& note) {
    std::cerr << "warning: " << what << " point " << format_number(x) << " skipped: " << note
              << "\n";
}

// --- subcommands ----------------------------------------------------------

void cmd_window(Run& run) {
    const auto points = stdp_window(run.cfg.rule, run.cfg.window);
    CsvWriter csv({"dt_ms", "mean_dw", "std_dw", "trials"});
    for (const WindowPoint& p : points) {
        csv.add_row({p.dt * 1e3, p.stat.mean, p.stat.stddev, double(p.stat.trials)});
    }
    emit(run, "window.csv", csv.content());
}

void cmd_freq(Run& run) {
    for (const FreqCurve& curve : frequency_sweep(run.cfg.rule, run.cfg.freq)) {
        CsvWriter csv({"rho_hz", "mean_dw", "std_dw", "trials"});
        for (const FreqPoint& p : curve.points) {
            if (!p.valid) {
                warn_skipped("freq", p.rho, p.note);
                continue;
            }
            csv.add_row({p.rho, p.stat.mean, p.stat.stddev, double(p.stat.trials)});
        }
        emit(run, "freq_dt_" + format_number(curve.dt * 1e3) + "ms.csv", csv.content());
    }
}

void cmd_triplet(Run& run) {
    const auto points = triplet_grid(run.cfg.rule, run.cfg.triplet);
    CsvWriter csv({"dt1_ms", "dt2_ms", "mean_dw", "std_dw", "trials"});
    for (const TripletGridPoint& p : points) {
        if (!p.valid) {
            warn_skipped("triplet", p.dt1 * 1e3, p.note);
            continue;
        }
        csv.add_row({p.dt1 * 1e3, p.dt2 * 1e3, p.stat.mean, p.stat.stddev, double(p.stat.trials)});
    }
    emit(run, "triplet_" + to_string(run.cfg.triplet.kind) + ".csv", csv.content());
}

void cmd_quad(Run& run) {
    const auto points = quadruplet_sweep(run.cfg.rule, run.cfg.quad);
    CsvWriter csv({"T_ms", "mean_dw", "std_dw", "trials"});
    for (const QuadPoint& p : points) {
        if (!p.valid) {
            warn_skipped("quad", p.T * 1e3, p.note);
            continue;
        }
        csv.add_row({p.T * 1e3, p.stat.mean, p.stat.stddev, double(p.stat.trials)});
    }
    emit(run, "quad.csv", csv.content());
}

void cmd_six(Run& run) {
    const auto values = six_triplet_matrix(run.cfg.rule, run.cfg.six);
    CsvWriter csv({"kind", "dt1_ms", "dt2_ms", "dw"});
    for (const SixTripletValue& v : values) {
        csv.add_row(to_string(v.kind), {run.cfg.six.gap1 * 1e3, run.cfg.six.gap2 * 1e3, v.dw});
    }
    emit(run, "six.csv", csv.content());
}

void cmd_bcm(Run& run) {
    TripletParams params = require_triplet(run.cfg.rule, "bcm");
    if (params.a3_minus != 0.0) {
        throw ConfigError("config error: the bcm command needs the minimal rule (a3_minus = 0)");
    }
    std::vector<double> a3_values = run.cfg.bcm.a3_plus_values;
    if (a3_values.empty()) a3_values.push_back(params.a3_plus);

    const bool presyn = run.cfg.bcm.presynaptic;
    for (double a3 : a3_values) {
        params.a3_plus = a3;
        const auto points = presyn ? bcm_presynaptic_curve(params, run.cfg.bcm.sweep)
                                   : bcm_curve(params, run.cfg.bcm.sweep);
        CsvWriter csv({presyn ? "rho_hz" : "rho_post_hz", "mean_drift", "std_drift", "trials"});
        for (const BcmPoint& p : points) {
            csv.add_row({p.rho_post, p.stat.mean, p.stat.stddev, double(p.stat.trials)});
        }
        const std::string name = std::string(presyn ? "bcm_presyn" : "bcm") + "_a3p_" +
                                 format_number(a3) + ".csv";
        emit(run, name, csv.content());
    }
}

void cmd_fit(Run& run, const std::string& dataset_path) {
    const Dataset dataset = load_dataset(dataset_path);
    const TripletParams base = require_triplet(run.cfg.rule, "fit");
    const TripletParams initial = run.cfg.fit.has_initial ? run.cfg.fit.initial : base;

    FitOptions options;
    options.free_mask = run.cfg.fit.mask;
    options.tol_x = run.cfg.fit.tol_x;
    options.tol_f = run.cfg.fit.tol_f;
    options.max_iter = run.cfg.fit.max_iter;

    const FitResult result =
        run.cfg.fit.n_starts > 1
            ? multi_start_fit(dataset, run.cfg.fit.n_starts, run.cfg.seed, initial, options)
            : fit(dataset, initial, options);

    nlohmann::ordered_json report;
    report["dataset"] = dataset.name;
    report["points"] = dataset.points.size();
    report["mask"] = run.cfg.fit.mask_name;
    report["n_starts"] = run.cfg.fit.n_starts;
    report["nmse"] = result.nmse;
    report["iterations"] = result.iterations;
    report["converged"] = result.converged;
    report["params"] = params_to_json(result.params);
    emit(run, "fit_report.json", report.dump(2) + "\n");

    const std::vector<double> model = predict(result.params, dataset);
    CsvWriter csv({"index", "protocol", "dw_exp", "dw_model", "sem", "weighted_residual"});
    for (std::size_t i = 0; i < dataset.points.size(); ++i) {
        const DataPoint& p = dataset.points[i];
        csv.add_row_raw({std::to_string(i), protocol_label(p.protocol),
                         format_number(p.dw_exp), format_number(model[i]),
                         format_number(p.sem), format_number((p.dw_exp - model[i]) / p.sem)});
    }
    emit(run, "fit_residuals.csv", csv.content());

    std::cout << "fit: dataset " << dataset.name << ", NMSE " << format_number(result.nmse)
              << " after " << result.iterations << " iterations"
              << (result.converged ? "" : " (not converged)") << "\n";
}

void cmd_mc(Run& run, const std::string& dataset_path, bool retune_flag) {
    const Dataset dataset = load_dataset(dataset_path);
    const TripletParams params = require_triplet(run.cfg.rule, "mc");

    PerturbationSpec spec = run.cfg.mc.spec;
    spec.seed = run.cfg.seed;
    const McReport report = monte_carlo(dataset, params, spec);

    CsvWriter runs_csv({"run", "nmse", "ok"});
    for (const McRun& r : report.runs) {
        runs_csv.add_row({double(r.index), r.ok ? r.nmse : std::nan(""), double(r.ok)});
    }
    emit(run, "mc_runs.csv", runs_csv.content());

    nlohmann::ordered_json summary;
    summary["dataset"] = dataset.name;
    summary["n_runs"] = spec.n_runs;
    summary["sigma_v_mv"] = spec.sigma_v * 1e3;
    summary["v_scale_mv"] = spec.v_scale * 1e3;
    summary["baseline_nmse"] = report.baseline_nmse;
    summary["failed_runs"] = report.failed_runs;
    summary["min"] = report.min;
    summary["q05"] = report.q05;
    summary["q25"] = report.q25;
    summary["median"] = report.median;
    summary["mean"] = report.mean;
    summary["q75"] = report.q75;
    summary["q95"] = report.q95;
    summary["max"] = report.max;
    summary["worst_run"] = report.worst_index;
    nlohmann::ordered_json factors = nlohmann::ordered_json::object();
    for (int k = 0; k < kParamCount; ++k) {
        factors[std::string(param_name(kAllParams[k]))] = report.worst_factors[k];
    }
    summary["worst_factors"] = factors;

    if ((retune_flag || run.cfg.mc.retune) && report.worst_index >= 0) {
        FitOptions options;
        options.free_mask = run.cfg.fit.mask;
        options.tol_x = run.cfg.fit.tol_x;
        options.tol_f = run.cfg.fit.tol_f;
        options.max_iter = run.cfg.fit.max_iter;
        const FitResult retuned = retune(dataset, report.worst_factors, params, options);
        nlohmann::ordered_json block;
        block["worst_nmse"] = report.max;
        block["retuned_nmse"] = retuned.nmse;
        block["iterations"] = retuned.iterations;
        block["converged"] = retuned.converged;
        block["mask"] = run.cfg.fit.mask_name;
        block["params"] = params_to_json(retuned.params);
        summary["retune"] = block;
        std::cout << "mc: worst NMSE " << format_number(report.max) << " (run "
                  << report.worst_index << "), retuned to " << format_number(retuned.nmse)
                  << "\n";
    } else {
        std::cout << "mc: baseline NMSE " << format_number(report.baseline_nmse) << ", worst "
                  << format_number(report.max) << " (run " << report.worst_index << ")\n";
    }
    emit(run, "mc_summary.json", summary.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event-driven synaptic plasticity experiments: pair/triplet/suppressive "
                 "STDP rules, BCM-style rate curves, NMSE fitting and mismatch analysis"};
    app.require_subcommand(1);

    CommonArgs args;
    const auto add_common = [&](CLI::App* cmd, bool with_dataset) {
        cmd->add_option("--config", args.config_path, "JSON run configuration")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--seed", args.seed, "override the configured seed");
        cmd->add_option("--out", args.out_dir,
                        "output directory (default: config, then $TSTDP_OUT, then ./out)");
        cmd->add_option("--trials", args.trials, "override per-point trial counts");
        if (with_dataset) {
            cmd->add_option("--dataset", args.dataset_path, "dataset file")
                ->required()
                ->check(CLI::ExistingFile);
        }
    };

    CLI::App* window = app.add_subcommand("window", "weight change vs pairing delay");
    CLI::App* freq = app.add_subcommand("freq", "weight change vs pairing frequency");
    CLI::App* triplet = app.add_subcommand("triplet", "weight change over a (dt1, dt2) grid");
    CLI::App* quad = app.add_subcommand("quad", "weight change vs quadruplet separation T");
    CLI::App* six = app.add_subcommand("six", "all six three-spike orderings");
    CLI::App* bcm = app.add_subcommand("bcm", "Poisson-protocol drift vs post-synaptic rate");
    CLI::App* fit_cmd = app.add_subcommand("fit", "fit rule parameters to a dataset");
    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo mismatch campaign");
    for (CLI::App* cmd : {window, freq, triplet, quad, six, bcm}) add_common(cmd, false);
    add_common(fit_cmd, true);
    add_common(mc, true);
    mc->add_flag("--retune", args.retune, "re-optimize the worst run's parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage errors are exit code 1
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        Run run = open_run(args);
        if (command == "window") cmd_window(run);
        else if (command == "freq") cmd_freq(run);
        else if (command == "triplet") cmd_triplet(run);
        else if (command == "quad") cmd_quad(run);
        else if (command == "six") cmd_six(run);
        else if (command == "bcm") cmd_bcm(run);
        else if (command == "fit") cmd_fit(run, args.dataset_path);
        else if (command == "mc") cmd_mc(run, args.dataset_path, args.retune);
        close_run(run, command);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const DatasetError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
