#include "qadapt/estimator.hpp"

#include <stdexcept>
#include <vector>

namespace qadapt {

DensityMatrix average_density(std::span<const MeasurementRecord> records) {
    if (records.empty()) {
        throw std::invalid_argument("average_density: no measurement records");
    }
    std::vector<StateVector> measured;
    measured.reserve(records.size());
    for (const auto& r : records) {
        measured.push_back(r.measured_vector);
    }
    return DensityMatrix::mixture(measured);
}

DensityMatrix average_density(std::span<const StateVector> measured) {
    if (measured.empty()) {
        throw std::invalid_argument("average_density: no measured vectors");
    }
    return DensityMatrix::mixture(measured);
}

Estimate estimate_state_detailed(const DensityMatrix& rho) {
    const EigenDecomposition eig = hermitian_eigendecomposition(rho);
    const double gap = eig.values.size() > 1 ? eig.values[0] - eig.values[1] : 0.0;
    return Estimate{eig.vectors.front(), eig.values.front(), gap,
                    eig.values.size() > 1 && gap < kDegeneracyGap};
}

StateVector estimate_state(const DensityMatrix& rho) {
    return estimate_state_detailed(rho).state;
}

}  // namespace qadapt
