#pragma once

// Seedable random streams and Haar sampling on U(d) and on pure states.

#include "qadapt/linalg.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qadapt {

/// Reproducible random stream keyed by (master_seed, stream_index).
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard; real-valued variates are produced here rather than through the
/// <random> distributions so that sequences agree across standard libraries.
/// A stream is single-consumer.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal (Box-Muller).
    double normal();

    /// Draws a seed for a family of child streams RandomStream(seed, i).
    std::uint64_t child_seed() { return next_u64(); }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// Parameters of the Hurwitz product (see hurwitz_unitary).
struct HurwitzParams {
    int dim = 0;
    std::vector<double> angles;        ///< d(d-1)/2 values in [0, pi/2]
    std::vector<double> phases;        ///< d(d-1)/2 values in [0, 2 pi)
    std::vector<double> extra_phases;  ///< d column phases in [0, 2 pi)

    static HurwitzParams zeros(int dim);
    static std::size_t rotation_count(int dim) {
        return static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim - 1) / 2;
    }
    /// Throws std::invalid_argument on a count mismatch or out-of-range value.
    void validate() const;
};

/// Elementary rotation acting on coordinates (a, b):
///   e_a -> cos(theta) e_a + e^{i phi} sin(theta) e_b
///   e_b -> -e^{-i phi} sin(theta) e_a + cos(theta) e_b
/// Applied in place as m <- m * R (i.e. it mixes columns a and b).
void apply_rotation_right(CMatrix& m, int a, int b, double theta, double phi);

/// Hurwitz-type product U = W_0 W_1 ... W_{d-2} D.
///
/// Level s (s = 0..d-2) is the chain
///   W_s = R(d-2, d-1) ... R(s+1, s+2) R(s, s+1),
/// with the rightmost factor applied first, so W_s e_s walks e_s out into
/// coordinates s..d-1 in hyperspherical form. Parameters are consumed level
/// by level and, within a level, in the order R(s, s+1), R(s+1, s+2), ...
/// D = diag(e^{i extra_phases}). Every unitary is reachable.
Basis hurwitz_unitary(const HurwitzParams& p);

/// Haar-distributed Hurwitz parameters. For level s (sub-dimension n = d - s)
/// and rotation r = 1..n-1 within it, sin^2(theta) = u^{1/(n-r)} with u uniform;
/// all phases are uniform on [0, 2 pi).
HurwitzParams haar_hurwitz_params(int dim, RandomStream& rng);

/// Haar-random unitary. Throws std::invalid_argument for dim < 2.
Basis haar_unitary(int dim, RandomStream& rng);

/// Haar-random pure state from normalized complex Gaussians, phase canonicalized.
/// Throws std::invalid_argument for dim < 2.
StateVector haar_state(int dim, RandomStream& rng);

}  // namespace qadapt
