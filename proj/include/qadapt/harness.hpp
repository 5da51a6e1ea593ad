#pragma once

// Measurement/estimation runs and Monte Carlo fidelity curves.

#include "qadapt/adaption.hpp"
#include "qadapt/estimator.hpp"
#include "qadapt/linalg.hpp"
#include "qadapt/measurement.hpp"
#include "qadapt/random.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qadapt {

enum class Strategy { adaptive, random };

std::string_view to_string(Strategy s);
/// Accepts "adaptive" or "random"; throws std::invalid_argument otherwise.
Strategy parse_strategy(std::string_view name);

struct ExperimentConfig {
    int dim = 2;
    int copies = 50;
    int runs = 10000;
    Strategy strategy = Strategy::adaptive;
    std::uint64_t master_seed = 0;
    AdaptionConfig adaption{};

    /// Throws std::invalid_argument for dim < 2, copies < 1, runs < 1 or an
    /// invalid adaption config.
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

struct RunResult {
    StateVector true_state;
    /// fidelity_trace[nu - 1] is F after nu measurements.
    std::vector<double> fidelity_trace;
    /// degenerate_flags[nu - 1] marks a degenerate leading eigenvalue at step nu.
    std::vector<bool> degenerate_flags;
    /// h_trace[k] is h of the basis used for measurement k + 1, evaluated
    /// against the k vectors measured before it. So h_trace[nu] is the h the
    /// adaption reached with nu measured vectors, and h_trace[0] = 0.
    std::vector<double> h_trace;
};

struct CurvePoint {
    int nu = 0;
    double mean_fidelity = 0.0;
    double standard_error = 0.0;
    double f_opt = 0.0;
    double delta_f = 0.0;

    bool operator==(const CurvePoint&) const = default;
};

/// One point per nu = 1..N, ascending.
using FidelityCurve = std::vector<CurvePoint>;

/// (N + 1) / (N + d): the optimal average fidelity of a collective
/// measurement on N copies. Reduces to (N + 1) / (N + 2) for qubits.
double optimal_fidelity(int copies, int dim);

struct BasisChoice {
    Basis basis;
    /// bias_entropy of `basis` against the measured vectors.
    double entropy = 0.0;
};

/// adaptive: adapt_basis on the history (computational basis when it is
/// empty), warm-started from `previous` when given. random: a Haar-random
/// unitary, independent of the history.
BasisChoice choose_next_basis_detailed(Strategy strategy, int dim,
                                       std::span<const StateVector> measured,
                                       const AdaptionConfig& cfg, RandomStream& rng,
                                       const std::optional<Basis>& previous = std::nullopt);
Basis choose_next_basis(Strategy strategy, int dim, std::span<const StateVector> measured,
                        const AdaptionConfig& cfg, RandomStream& rng);

/// One run of config.copies measurements on true_state, re-estimating after
/// every measurement.
RunResult run_single_experiment(const StateVector& true_state, const ExperimentConfig& config,
                                RandomStream& rng);

/// All config.runs runs. Run r uses RandomStream(config.master_seed, r) to
/// draw a Haar-random true state and then drive the run, so the result does
/// not depend on `workers` (0 = hardware concurrency).
std::vector<RunResult> simulate_runs(const ExperimentConfig& config, int workers = 0);

/// Mean, standard error (sample standard deviation / sqrt(R)), f_opt and
/// delta_f per nu. Sums run in run-index order.
FidelityCurve aggregate_curve(std::span<const RunResult> runs, int dim);

FidelityCurve run_monte_carlo(const ExperimentConfig& config, int workers = 0);

}  // namespace qadapt
