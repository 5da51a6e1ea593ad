#include "qadapt/adaption.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace qadapt {

namespace {

// Step schedule of the compass search, in radians.
constexpr double kInitialStep = std::numbers::pi / 4;
constexpr double kCoarseStep = 1e-2;
constexpr double kFineStep = 1e-5;
// Improvements below this are rounding noise.
constexpr double kAcceptThreshold = 1e-14;

inline double entropy_term(double p) {
    return p > 0.0 ? -p * std::log(p) : 0.0;
}

int common_dim(std::span<const StateVector> measured, int dim, const char* what) {
    for (const auto& m : measured) {
        if (m.dim() != dim) {
            throw std::invalid_argument(std::string(what) + ": dimension mismatch");
        }
    }
    return dim;
}

CMatrix stack_columns(std::span<const StateVector> measured, int dim) {
    CMatrix m(dim, static_cast<Eigen::Index>(measured.size()));
    for (std::size_t k = 0; k < measured.size(); ++k) {
        m.col(static_cast<Eigen::Index>(k)) = measured[k].amplitudes();
    }
    return m;
}

void gram_schmidt(CMatrix& u) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
        for (Eigen::Index i = 0; i < j; ++i) {
            const Complex proj = u.col(i).dot(u.col(j));
            u.col(j) -= proj * u.col(i);
        }
        u.col(j).normalize();
    }
}

// Compass search on h over right-multiplied elementary rotations. The
// overlap matrix overlaps_ = M^dagger B is kept in sync with the basis so a
// trial rotation of columns (p, q) costs O(nu).
class LocalAscent {
public:
    LocalAscent(const CMatrix& measured, CMatrix start)
        : basis_(std::move(start)),
          overlaps_(measured.adjoint() * basis_),
          column_h_(static_cast<std::size_t>(basis_.cols())),
          trial_p_(overlaps_.rows()),
          trial_q_(overlaps_.rows()) {
        for (Eigen::Index j = 0; j < basis_.cols(); ++j) {
            column_h_[static_cast<std::size_t>(j)] = column_entropy(overlaps_.col(j));
        }
    }

    double entropy() const {
        double h = 0.0;
        for (double c : column_h_) h += c;
        return h;
    }
    double step() const { return step_; }
    int sweeps() const { return sweeps_; }
    const CMatrix& basis() const { return basis_; }

    /// Sweeps until the step drops below min_step or the sweep budget is spent.
    void run(double min_step, double convergence_tol, int max_sweeps) {
        const int d = static_cast<int>(basis_.cols());
        while (step_ >= min_step && sweeps_ < max_sweeps) {
            double gain = 0.0;
            for (int p = 0; p + 1 < d; ++p) {
                for (int q = p + 1; q < d; ++q) {
                    gain += try_rotation(p, q, step_, 0.0);
                    gain += try_rotation(p, q, -step_, 0.0);
                    gain += try_rotation(p, q, step_, std::numbers::pi / 2);
                    gain += try_rotation(p, q, -step_, std::numbers::pi / 2);
                }
            }
            ++sweeps_;
            if (gain < convergence_tol) {
                step_ *= 0.5;
            }
        }
    }

private:
    static double column_entropy(const CVector& col) {
        // Clamping to the smallest normal keeps log finite; 0 * log(tiny) = 0.
        const Eigen::ArrayXd p = col.cwiseAbs2().array();
        return -(p * p.max(std::numeric_limits<double>::min()).log()).sum();
    }

    // Same column mixing as apply_rotation_right(basis, p, q, theta, phi).
    double try_rotation(int p, int q, double theta, double phi) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex to_q = std::polar(s, phi);
        const Complex to_p = -std::polar(s, -phi);
        trial_p_ = c * overlaps_.col(p) + to_q * overlaps_.col(q);
        trial_q_ = to_p * overlaps_.col(p) + c * overlaps_.col(q);
        const double hp = column_entropy(trial_p_);
        const double hq = column_entropy(trial_q_);
        const auto up = static_cast<std::size_t>(p);
        const auto uq = static_cast<std::size_t>(q);
        const double delta = (hp + hq) - (column_h_[up] + column_h_[uq]);
        if (!(delta > kAcceptThreshold)) {
            return 0.0;
        }
        overlaps_.col(p) = trial_p_;
        overlaps_.col(q) = trial_q_;
        column_h_[up] = hp;
        column_h_[uq] = hq;
        apply_rotation_right(basis_, p, q, theta, phi);
        return delta;
    }

    CMatrix basis_;
    CMatrix overlaps_;
    std::vector<double> column_h_;
    CVector trial_p_;
    CVector trial_q_;
    double step_ = kInitialStep;
    int sweeps_ = 0;
};

}  // namespace

void AdaptionConfig::validate() const {
    if (restarts < 1 || max_iterations < 1) {
        throw std::invalid_argument("AdaptionConfig: restarts and max_iterations must be positive");
    }
    if (!(convergence_tol > 0.0 && convergence_tol < 1.0)) {
        throw std::invalid_argument("AdaptionConfig: convergence_tol must lie in (0, 1)");
    }
    if (!(unbiasedness_tol > 0.0)) {
        throw std::invalid_argument("AdaptionConfig: unbiasedness_tol must be positive");
    }
}

double bias_entropy(std::span<const StateVector> measured, const Basis& basis) {
    common_dim(measured, basis.dim(), "bias_entropy");
    double h = 0.0;
    for (const auto& m : measured) {
        const CVector overlaps = basis.matrix().adjoint() * m.amplitudes();
        for (Eigen::Index j = 0; j < overlaps.size(); ++j) {
            h += entropy_term(std::norm(overlaps(j)));
        }
    }
    return h;
}

double max_bias_entropy(std::size_t nu, int dim) {
    return static_cast<double>(nu) * std::log(static_cast<double>(dim));
}

bool is_unbiased(const Basis& a, const Basis& b, double tol) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("is_unbiased: dimension mismatch");
    }
    const double target = 1.0 / a.dim();
    const CMatrix overlaps = a.matrix().adjoint() * b.matrix();
    return (overlaps.cwiseAbs2().array() - target).abs().maxCoeff() <= tol;
}

AdaptionResult adapt_basis_detailed(int dim, std::span<const StateVector> measured,
                                    const AdaptionConfig& cfg, RandomStream& rng,
                                    const std::optional<Basis>& warm_start) {
    cfg.validate();
    if (dim < 1) {
        throw std::invalid_argument("adapt_basis: dimension must be positive");
    }
    const int d = common_dim(measured, dim, "adapt_basis");
    if (warm_start && warm_start->dim() != d) {
        throw std::invalid_argument("adapt_basis: warm start dimension mismatch");
    }
    if (measured.empty()) {
        return AdaptionResult{Basis::computational(d), 0.0, true, 0};
    }
    const double target = max_bias_entropy(measured.size(), d);
    const CMatrix m = stack_columns(measured, d);

    // Children are keyed by restart index, so each restart's start is fixed
    // regardless of how many restarts are actually evaluated.
    const std::uint64_t child_seed = rng.child_seed();

    auto polish_and_finish = [&](LocalAscent& best, int sweeps_so_far) {
        const int before = best.sweeps();
        best.run(kFineStep, cfg.convergence_tol, cfg.max_iterations);
        CMatrix u = best.basis();
        gram_schmidt(u);
        Basis basis(std::move(u));
        const double h = bias_entropy(measured, basis);
        return AdaptionResult{std::move(basis), h, h >= target - cfg.unbiasedness_tol,
                              sweeps_so_far + best.sweeps() - before};
    };

    LocalAscent best(m, warm_start ? warm_start->matrix() : CMatrix::Identity(d, d));
    best.run(kCoarseStep, cfg.convergence_tol, cfg.max_iterations);
    int total_sweeps = best.sweeps();

    for (int r = 0; r < cfg.restarts; ++r) {
        if (best.entropy() >= target - cfg.unbiasedness_tol) {
            break;
        }
        RandomStream child(child_seed, static_cast<std::uint64_t>(r));
        LocalAscent candidate(m, haar_unitary(d, child).matrix());
        candidate.run(kCoarseStep, cfg.convergence_tol, cfg.max_iterations);
        total_sweeps += candidate.sweeps();
        if (candidate.entropy() > best.entropy()) {
            best = std::move(candidate);
        }
    }
    return polish_and_finish(best, total_sweeps);
}

Basis adapt_basis(int dim, std::span<const StateVector> measured, const AdaptionConfig& cfg,
                  RandomStream& rng) {
    return adapt_basis_detailed(dim, measured, cfg, rng).basis;
}

}  // namespace qadapt
