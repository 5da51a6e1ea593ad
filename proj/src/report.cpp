#include "qadapt/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fmt/format.h>

#include <climits>
#include <fstream>
#include <iostream>
#include <iterator>
#include <ostream>

namespace qadapt {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["dim"] = c.dim;
    j["copies"] = c.copies;
    j["runs"] = c.runs;
    j["strategy"] = std::string(to_string(c.strategy));
    j["seed"] = c.master_seed;
    j["adaption"] = {
        {"restarts", c.adaption.restarts},
        {"max_iterations", c.adaption.max_iterations},
        {"convergence_tol", c.adaption.convergence_tol},
        {"unbiasedness_tol", c.adaption.unbiasedness_tol},
    };
    return j;
}

void check_sink(const std::ostream& sink) {
    if (!sink) {
        throw std::runtime_error("failed to write output");
    }
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return f;
}

}  // namespace

CliOptions parse_config(std::span<const std::string> args) {
    CliOptions opts;
    ExperimentConfig& cfg = opts.config;
    std::string strategy = "adaptive";
    std::string format = "csv";

    CLI::App app{"Adaptive single-copy estimation of pure qudit states", "qadapt"};
    app.add_option("--dim", cfg.dim, "Hilbert space dimension d")
        ->check(CLI::Range(2, INT_MAX));
    app.add_option("--copies", cfg.copies, "Measurements per run (N)")
        ->check(CLI::Range(1, INT_MAX));
    app.add_option("--runs", cfg.runs, "Monte Carlo runs (R)")->check(CLI::Range(1, INT_MAX));
    app.add_option("--strategy", strategy, "Basis choice")
        ->check(CLI::IsMember({"adaptive", "random"}));
    app.add_option("--seed", cfg.master_seed, "Master seed");
    app.add_option("--restarts", cfg.adaption.restarts, "Random restarts per adaption")
        ->check(CLI::Range(1, INT_MAX));
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opts.out_path, "Output file (default: stdout)");
    app.add_option("--dump-runs", opts.dump_runs_path, "Write per-run fidelity traces here");
    app.add_option("--workers", opts.workers, "Worker threads (0: all cores)")
        ->check(CLI::Range(0, 4096));

    // CLI11 consumes the vector from the back.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    cfg.strategy = parse_strategy(strategy);
    opts.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    return opts;
}

void emit_csv(const OutputDocument& doc, std::ostream& sink) {
    std::string text = "nu,mean_fidelity,stderr,f_opt,delta_f\n";
    for (const auto& p : doc.curve) {
        text += fmt::format("{},{:.6f},{:.6f},{:.6f},{:.6f}\n", p.nu, p.mean_fidelity,
                            p.standard_error, p.f_opt, p.delta_f);
    }
    sink.write(text.data(), static_cast<std::streamsize>(text.size()));
    sink.flush();
    check_sink(sink);
}

void emit_json(const OutputDocument& doc, std::ostream& sink) {
    ordered_json j;
    j["config"] = config_to_json(doc.config);
    j["curve"] = ordered_json::array();
    for (const auto& p : doc.curve) {
        ordered_json row;
        row["nu"] = p.nu;
        row["mean_fidelity"] = p.mean_fidelity;
        row["stderr"] = p.standard_error;
        row["f_opt"] = p.f_opt;
        row["delta_f"] = p.delta_f;
        j["curve"].push_back(std::move(row));
    }
    j["version"] = doc.version;
    const std::string text = j.dump(2) + "\n";
    sink.write(text.data(), static_cast<std::streamsize>(text.size()));
    sink.flush();
    check_sink(sink);
}

ExperimentConfig config_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    const auto& c = j.contains("config") ? j.at("config") : j;
    ExperimentConfig cfg;
    cfg.dim = c.at("dim").get<int>();
    cfg.copies = c.at("copies").get<int>();
    cfg.runs = c.at("runs").get<int>();
    cfg.strategy = parse_strategy(c.at("strategy").get<std::string>());
    cfg.master_seed = c.at("seed").get<std::uint64_t>();
    const auto& a = c.at("adaption");
    cfg.adaption.restarts = a.at("restarts").get<int>();
    cfg.adaption.max_iterations = a.at("max_iterations").get<int>();
    cfg.adaption.convergence_tol = a.at("convergence_tol").get<double>();
    cfg.adaption.unbiasedness_tol = a.at("unbiasedness_tol").get<double>();
    return cfg;
}

void emit_run_dump(std::span<const RunResult> runs, std::ostream& sink) {
    std::string text = "run,nu,fidelity,h,degenerate\n";
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto& run = runs[r];
        for (std::size_t i = 0; i < run.fidelity_trace.size(); ++i) {
            text += fmt::format("{},{},{:.17g},{:.17g},{}\n", r, i + 1, run.fidelity_trace[i],
                                run.h_trace[i], run.degenerate_flags[i] ? 1 : 0);
        }
    }
    sink.write(text.data(), static_cast<std::streamsize>(text.size()));
    sink.flush();
    check_sink(sink);
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CliOptions opts;
    try {
        opts = parse_config(args);
    } catch (const UsageError& e) {
        err << "qadapt: " << e.what() << "\n"
            << "usage: qadapt [--dim D] [--copies N] [--runs R] [--strategy adaptive|random]\n"
            << "              [--seed S] [--restarts K] [--format csv|json] [--out PATH]\n"
            << "              [--dump-runs PATH] [--workers W]\n";
        return 2;
    }
    try {
        const auto runs = simulate_runs(opts.config, opts.workers);
        const OutputDocument doc{opts.config, aggregate_curve(runs, opts.config.dim)};

        auto write = [&](std::ostream& sink) {
            if (opts.format == OutputFormat::json) {
                emit_json(doc, sink);
            } else {
                emit_csv(doc, sink);
            }
        };
        if (opts.out_path.empty()) {
            write(out);
        } else {
            auto f = open_output(opts.out_path);
            write(f);
        }
        if (!opts.dump_runs_path.empty()) {
            auto f = open_output(opts.dump_runs_path);
            emit_run_dump(runs, f);
        }
    } catch (const std::exception& e) {
        err << "qadapt: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace qadapt
