#include "qadapt/measurement.hpp"

#include <algorithm>
#include <stdexcept>

namespace qadapt {

std::vector<double> outcome_probabilities(const StateVector& psi, const Basis& basis) {
    if (psi.dim() != basis.dim()) {
        throw std::invalid_argument("outcome_probabilities: dimension mismatch");
    }
    const CVector overlaps = basis.matrix().adjoint() * psi.amplitudes();
    std::vector<double> p(static_cast<std::size_t>(psi.dim()));
    for (int j = 0; j < psi.dim(); ++j) {
        p[static_cast<std::size_t>(j)] = std::norm(overlaps(j));
    }
    return p;
}

MeasurementRecord sample_outcome(const StateVector& psi, const Basis& basis, RandomStream& rng) {
    std::vector<double> p = outcome_probabilities(psi, basis);
    double total = 0.0;
    for (double& x : p) {
        x = std::max(x, 0.0);
        total += x;
    }
    const double u = rng.uniform() * total;
    const int d = basis.dim();
    int outcome = d - 1;
    double cumulative = 0.0;
    for (int j = 0; j < d; ++j) {
        cumulative += p[static_cast<std::size_t>(j)];
        // Zero-probability outcomes are never selected, even when u hits a
        // cumulative boundary exactly.
        if (u < cumulative && p[static_cast<std::size_t>(j)] > 0.0) {
            outcome = j;
            break;
        }
    }
    if (p[static_cast<std::size_t>(outcome)] <= 0.0) {
        // u landed in the rounding gap at the top; take the last possible outcome.
        for (int j = d - 1; j >= 0; --j) {
            if (p[static_cast<std::size_t>(j)] > 0.0) {
                outcome = j;
                break;
            }
        }
    }
    return MeasurementRecord{basis, outcome, basis.vector(outcome).canonicalized()};
}

}  // namespace qadapt
