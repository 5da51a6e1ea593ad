#pragma once

// Command-line configuration and CSV/JSON serialization of fidelity curves.

#include "qadapt/harness.hpp"

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qadapt {

inline constexpr const char* kToolVersion = "qadapt 0.1.0";

/// Bad command line. The message names the offending flag.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct CliOptions {
    ExperimentConfig config;
    OutputFormat format = OutputFormat::csv;
    std::string out_path;        ///< empty: standard output
    std::string dump_runs_path;  ///< empty: no per-run dump
    int workers = 0;             ///< 0: hardware concurrency
};

/// Parses flags (argv without the program name). Defaults: --dim 2,
/// --copies 50, --runs 10000, --strategy adaptive, --seed 0, --restarts 8,
/// --format csv. Throws UsageError on unknown flags, malformed values,
/// --dim < 2, --copies < 1 or --runs < 1.
CliOptions parse_config(std::span<const std::string> args);

struct OutputDocument {
    ExperimentConfig config;
    FidelityCurve curve;
    std::string version = kToolVersion;
};

/// Header `nu,mean_fidelity,stderr,f_opt,delta_f`, then one row per point
/// with six-decimal fixed reals, '\n' line endings. Throws
/// std::runtime_error if the sink fails.
void emit_csv(const OutputDocument& doc, std::ostream& sink);

/// {"config": ..., "curve": [...], "version": ...} in that key order.
/// Throws std::runtime_error if the sink fails.
void emit_json(const OutputDocument& doc, std::ostream& sink);

/// Inverse of the "config" object written by emit_json.
ExperimentConfig config_from_json(const std::string& json_text);

/// One CSV row per run and nu: `run,nu,fidelity,h,degenerate`. Reals use
/// 17 significant digits.
void emit_run_dump(std::span<const RunResult> runs, std::ostream& sink);

/// Full command-line entry point. Returns 0 on success, 2 on a usage error
/// and 1 on a runtime failure; diagnostics go to `err`, results to `out`
/// unless --out is given.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qadapt
