#pragma once

// Projective (Born-rule) measurement of a pure state in a chosen basis.

#include "qadapt/linalg.hpp"
#include "qadapt/random.hpp"

#include <vector>

namespace qadapt {

struct MeasurementRecord {
    Basis basis;
    int outcome_index = 0;
    /// Column outcome_index of basis, phase canonicalized.
    StateVector measured_vector;
};

/// p_j = |<b_j|psi>|^2. Throws std::invalid_argument on dimension mismatch.
std::vector<double> outcome_probabilities(const StateVector& psi, const Basis& basis);

/// Draws one outcome by inverse CDF on the clipped, renormalized Born
/// probabilities using a single uniform variate from rng.
MeasurementRecord sample_outcome(const StateVector& psi, const Basis& basis, RandomStream& rng);

}  // namespace qadapt
