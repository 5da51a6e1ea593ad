#pragma once

// Least-bias adaption: choose the next measurement basis by maximizing
//   h(B) = - sum_j sum_k |<m_k|b_j>|^2 ln |<m_k|b_j>|^2
// over the unitary group, where m_k are the vectors actually found so far.

#include "qadapt/linalg.hpp"
#include "qadapt/random.hpp"

#include <optional>
#include <span>

namespace qadapt {

struct AdaptionConfig {
    int restarts = 8;              ///< Haar-random starting points, besides the warm start
    int max_iterations = 2000;     ///< sweeps per starting point
    double convergence_tol = 1e-6; ///< a sweep gaining less than this halves the step
    double unbiasedness_tol = 1e-3;///< h deficit below which a basis counts as unbiased

    /// Throws std::invalid_argument if any field is non-positive or convergence_tol >= 1.
    void validate() const;

    bool operator==(const AdaptionConfig&) const = default;
};

/// h as above with 0 ln 0 = 0. Empty `measured` gives 0.
/// Throws std::invalid_argument on dimension mismatch.
double bias_entropy(std::span<const StateVector> measured, const Basis& basis);

/// nu ln d, the value of h for a basis unbiased to all nu vectors.
double max_bias_entropy(std::size_t nu, int dim);

/// True iff every | |<a_i|b_j>|^2 - 1/d | <= tol.
bool is_unbiased(const Basis& a, const Basis& b, double tol);

struct AdaptionResult {
    Basis basis;
    double entropy = 0.0;
    /// entropy >= max_bias_entropy - cfg.unbiasedness_tol.
    bool unbiased = false;
    /// Sweeps spent over all starting points.
    int sweeps = 0;
};

/// Best basis found by local ascent of h.
///
/// With no measured vectors the computational basis of dimension `dim` is
/// returned. Otherwise the search starts from `warm_start` (computational
/// basis if absent) and from cfg.restarts Haar-random bases drawn from child streams of `rng`.
/// Each start is improved by a compass search over elementary two-level
/// rotations composed onto the current basis; the best start is then
/// polished to a fine step. Remaining restarts are skipped once a start is
/// within cfg.unbiasedness_tol of nu ln d, since nothing can beat that bound
/// by more than the tolerance. The result never has lower h than any start.
///
/// Throws std::invalid_argument if any vector or the warm start is not of
/// dimension `dim`.
AdaptionResult adapt_basis_detailed(int dim, std::span<const StateVector> measured,
                                    const AdaptionConfig& cfg, RandomStream& rng,
                                    const std::optional<Basis>& warm_start = std::nullopt);

Basis adapt_basis(int dim, std::span<const StateVector> measured, const AdaptionConfig& cfg,
                  RandomStream& rng);

}  // namespace qadapt
