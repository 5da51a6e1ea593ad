#pragma once

// Pure-state estimate from measurement data: average the projectors onto the
// measured vectors and take the leading eigenvector of the result.

#include "qadapt/linalg.hpp"
#include "qadapt/measurement.hpp"

#include <span>

namespace qadapt {

/// Leading eigenvalues closer than this are reported as degenerate.
inline constexpr double kDegeneracyGap = 1e-10;

struct Estimate {
    StateVector state;
    /// Largest eigenvalue of the averaged density matrix, <state|rho|state>.
    double overlap = 0.0;
    /// e_0 - e_1 (0 for d = 1).
    double leading_gap = 0.0;
    /// True when leading_gap < kDegeneracyGap; the state is then the
    /// solver's first vector in the cluster.
    bool degenerate = false;
};

/// (1/nu) sum_k |m_k><m_k|. Throws std::invalid_argument for an empty list or
/// mixed dimensions.
DensityMatrix average_density(std::span<const MeasurementRecord> records);
DensityMatrix average_density(std::span<const StateVector> measured);

/// Leading eigenvector of rho, phase canonicalized.
StateVector estimate_state(const DensityMatrix& rho);
Estimate estimate_state_detailed(const DensityMatrix& rho);

}  // namespace qadapt
