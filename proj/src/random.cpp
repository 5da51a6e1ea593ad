#include "qadapt/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qadapt {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
    // Counter-based key: hash the pair, then expand into a seed sequence.
    const std::uint64_t k0 = splitmix64(seed ^ splitmix64(index));
    const std::uint64_t k1 = splitmix64(k0 ^ 0x6a09e667f3bcc908ULL);
    std::seed_seq seq{static_cast<std::uint32_t>(k0), static_cast<std::uint32_t>(k0 >> 32),
                      static_cast<std::uint32_t>(k1), static_cast<std::uint32_t>(k1 >> 32)};
    return std::mt19937_64(seq);
}

void require_dim(int dim, const char* what) {
    if (dim < 2) {
        throw std::invalid_argument(std::string(what) + ": dimension must be >= 2, got " +
                                    std::to_string(dim));
    }
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(make_engine(master_seed, stream_index)) {}

double RandomStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    // 1 - uniform() lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_normal_ = radius * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return radius * std::cos(kTwoPi * u2);
}

HurwitzParams HurwitzParams::zeros(int dim) {
    HurwitzParams p;
    p.dim = dim;
    p.angles.assign(rotation_count(dim), 0.0);
    p.phases.assign(rotation_count(dim), 0.0);
    p.extra_phases.assign(static_cast<std::size_t>(dim), 0.0);
    return p;
}

void HurwitzParams::validate() const {
    if (dim < 1) {
        throw std::invalid_argument("HurwitzParams: dimension must be positive");
    }
    const std::size_t m = rotation_count(dim);
    if (angles.size() != m || phases.size() != m ||
        extra_phases.size() != static_cast<std::size_t>(dim)) {
        throw std::invalid_argument("HurwitzParams: parameter count does not match dimension " +
                                    std::to_string(dim));
    }
    for (double a : angles) {
        if (!(a >= 0.0 && a <= std::numbers::pi / 2)) {
            throw std::invalid_argument("HurwitzParams: angle out of [0, pi/2]");
        }
    }
    auto check_phase = [](double ph) {
        if (!(ph >= 0.0 && ph < kTwoPi)) {
            throw std::invalid_argument("HurwitzParams: phase out of [0, 2 pi)");
        }
    };
    for (double ph : phases) check_phase(ph);
    for (double ph : extra_phases) check_phase(ph);
}

void apply_rotation_right(CMatrix& m, int a, int b, double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex to_b = std::polar(s, phi);     // R(b, a)
    const Complex to_a = -std::polar(s, -phi);   // R(a, b)
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        const Complex ma = m(k, a);
        const Complex mb = m(k, b);
        m(k, a) = c * ma + to_b * mb;
        m(k, b) = to_a * ma + c * mb;
    }
}

Basis hurwitz_unitary(const HurwitzParams& p) {
    p.validate();
    const int d = p.dim;
    CMatrix u = CMatrix::Identity(d, d);
    std::size_t idx = 0;
    for (int s = 0; s + 1 < d; ++s) {
        // Right-multiplying builds u * W_s, so the factors of W_s are
        // appended leftmost-first: R(d-2, d-1) down to R(s, s+1). The
        // parameter index for R(a, a+1) is offset + (a - s).
        const std::size_t offset = idx;
        for (int a = d - 2; a >= s; --a) {
            const std::size_t k = offset + static_cast<std::size_t>(a - s);
            apply_rotation_right(u, a, a + 1, p.angles[k], p.phases[k]);
        }
        idx += static_cast<std::size_t>(d - 1 - s);
    }
    for (int j = 0; j < d; ++j) {
        u.col(j) *= std::polar(1.0, p.extra_phases[static_cast<std::size_t>(j)]);
    }
    return Basis(std::move(u));
}

HurwitzParams haar_hurwitz_params(int dim, RandomStream& rng) {
    require_dim(dim, "haar_hurwitz_params");
    HurwitzParams p = HurwitzParams::zeros(dim);
    std::size_t idx = 0;
    for (int s = 0; s + 1 < dim; ++s) {
        const int n = dim - s;
        for (int r = 1; r <= n - 1; ++r, ++idx) {
            const double u = rng.uniform();
            const double sin_theta = std::pow(u, 1.0 / (2.0 * (n - r)));
            p.angles[idx] = std::asin(std::min(sin_theta, 1.0));
            p.phases[idx] = kTwoPi * rng.uniform();
        }
    }
    for (auto& ph : p.extra_phases) {
        ph = kTwoPi * rng.uniform();
    }
    return p;
}

Basis haar_unitary(int dim, RandomStream& rng) {
    require_dim(dim, "haar_unitary");
    return hurwitz_unitary(haar_hurwitz_params(dim, rng));
}

StateVector haar_state(int dim, RandomStream& rng) {
    require_dim(dim, "haar_state");
    CVector v(dim);
    for (int i = 0; i < dim; ++i) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(i) = Complex(re, im);
    }
    return StateVector::normalized(v).canonicalized();
}

}  // namespace qadapt
