#include "qadapt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace qadapt {

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::adaptive:
            return "adaptive";
        case Strategy::random:
            return "random";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    if (name == "adaptive") return Strategy::adaptive;
    if (name == "random") return Strategy::random;
    throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
    if (dim < 2) throw std::invalid_argument("ExperimentConfig: dim must be >= 2");
    if (copies < 1) throw std::invalid_argument("ExperimentConfig: copies must be >= 1");
    if (runs < 1) throw std::invalid_argument("ExperimentConfig: runs must be >= 1");
    adaption.validate();
}

double optimal_fidelity(int copies, int dim) {
    return static_cast<double>(copies + 1) / static_cast<double>(copies + dim);
}

BasisChoice choose_next_basis_detailed(Strategy strategy, int dim,
                                       std::span<const StateVector> measured,
                                       const AdaptionConfig& cfg, RandomStream& rng,
                                       const std::optional<Basis>& previous) {
    if (strategy == Strategy::random) {
        Basis b = haar_unitary(dim, rng);
        const double h = bias_entropy(measured, b);
        return BasisChoice{std::move(b), h};
    }
    AdaptionResult r = adapt_basis_detailed(dim, measured, cfg, rng, previous);
    return BasisChoice{std::move(r.basis), r.entropy};
}

Basis choose_next_basis(Strategy strategy, int dim, std::span<const StateVector> measured,
                        const AdaptionConfig& cfg, RandomStream& rng) {
    return choose_next_basis_detailed(strategy, dim, measured, cfg, rng).basis;
}

RunResult run_single_experiment(const StateVector& true_state, const ExperimentConfig& config,
                                RandomStream& rng) {
    config.validate();
    if (true_state.dim() != config.dim) {
        throw std::invalid_argument("run_single_experiment: true state dimension mismatch");
    }
    const auto n = static_cast<std::size_t>(config.copies);
    RunResult result{true_state, {}, {}, {}};
    result.fidelity_trace.reserve(n);
    result.degenerate_flags.reserve(n);
    result.h_trace.reserve(n);

    std::vector<StateVector> measured;
    measured.reserve(n);
    std::optional<Basis> previous;
    for (std::size_t step = 0; step < n; ++step) {
        BasisChoice choice = choose_next_basis_detailed(config.strategy, config.dim, measured,
                                                        config.adaption, rng, previous);
        result.h_trace.push_back(choice.entropy);
        MeasurementRecord record = sample_outcome(true_state, choice.basis, rng);
        measured.push_back(record.measured_vector);
        previous = std::move(choice.basis);

        const Estimate est = estimate_state_detailed(average_density(measured));
        result.fidelity_trace.push_back(fidelity(true_state, est.state));
        result.degenerate_flags.push_back(est.degenerate);
    }
    return result;
}

std::vector<RunResult> simulate_runs(const ExperimentConfig& config, int workers) {
    config.validate();
    const auto total = static_cast<std::size_t>(config.runs);
    std::vector<std::optional<RunResult>> slots(total);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t r = next++; r < total; r = next++) {
            try {
                RandomStream rng(config.master_seed, r);
                const StateVector truth = haar_state(config.dim, rng);
                slots[r] = run_single_experiment(truth, config, rng);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
            }
        }
    };

    int count = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    count = std::clamp(count, 1, static_cast<int>(std::max<std::size_t>(total, 1)));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<RunResult> runs;
    runs.reserve(total);
    for (auto& s : slots) runs.push_back(std::move(*s));
    return runs;
}

FidelityCurve aggregate_curve(std::span<const RunResult> runs, int dim) {
    FidelityCurve curve;
    if (runs.empty()) return curve;
    const std::size_t n = runs.front().fidelity_trace.size();
    const double count = static_cast<double>(runs.size());
    curve.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double sum = 0.0;
        for (const auto& r : runs) sum += r.fidelity_trace.at(i);
        const double mean = sum / count;
        double sq = 0.0;
        for (const auto& r : runs) {
            const double dev = r.fidelity_trace[i] - mean;
            sq += dev * dev;
        }
        const double stderr_ = runs.size() > 1 ? std::sqrt(sq / (count - 1.0) / count) : 0.0;
        const int nu = static_cast<int>(i) + 1;
        const double f_opt = optimal_fidelity(nu, dim);
        curve.push_back(CurvePoint{nu, mean, stderr_, f_opt, mean - f_opt});
    }
    return curve;
}

FidelityCurve run_monte_carlo(const ExperimentConfig& config, int workers) {
    const auto runs = simulate_runs(config, workers);
    return aggregate_curve(runs, config.dim);
}

}  // namespace qadapt
