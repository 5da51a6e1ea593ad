#include "qadapt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qadapt {

namespace {

void require_same_dim(int a, int b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                    std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

StateVector::StateVector(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) {
        throw std::invalid_argument("StateVector: empty amplitude vector");
    }
    const double norm = amplitudes_.norm();
    if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
        throw std::invalid_argument("StateVector: norm " + std::to_string(norm) + " is not 1");
    }
}

StateVector StateVector::normalized(const CVector& v) {
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("StateVector::normalized: zero or non-finite vector");
    }
    return StateVector(v / norm);
}

StateVector StateVector::basis_vector(int dim, int index) {
    if (dim < 1 || index < 0 || index >= dim) {
        throw std::invalid_argument("StateVector::basis_vector: index out of range");
    }
    CVector v = CVector::Zero(dim);
    v(index) = 1.0;
    return StateVector(std::move(v));
}

StateVector StateVector::canonicalized() const {
    double max_abs = 0.0;
    for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
        max_abs = std::max(max_abs, std::abs(amplitudes_(i)));
    }
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 0; i < amplitudes_.size(); ++i) {
        if (std::abs(amplitudes_(i)) >= max_abs - 1e-12) {
            pivot = i;
            break;
        }
    }
    const Complex a = amplitudes_(pivot);
    const double mag = std::abs(a);
    CVector out = amplitudes_;
    if (mag > 0.0) {
        out *= std::conj(a) / mag;
        // Kill the rounding residue so the pivot is exactly real.
        out(pivot) = Complex(mag, 0.0);
    }
    return StateVector(std::move(out));
}

Basis::Basis(CMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("Basis: matrix must be square and non-empty");
    }
    const double defect = unitarity_defect(matrix_);
    if (!(defect <= kUnitarityTolerance)) {
        throw std::invalid_argument("Basis: matrix is not unitary (defect " +
                                    std::to_string(defect) + ")");
    }
}

Basis Basis::computational(int dim) {
    if (dim < 1) {
        throw std::invalid_argument("Basis::computational: dim must be positive");
    }
    return Basis(CMatrix::Identity(dim, dim));
}

Basis Basis::fourier(int dim) {
    if (dim < 1) {
        throw std::invalid_argument("Basis::fourier: dim must be positive");
    }
    CMatrix f(dim, dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < dim; ++k) {
            // Reduce jk mod d before scaling to keep the phase accurate.
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % dim) / dim;
            f(j, k) = std::polar(scale, angle);
        }
    }
    return Basis(std::move(f));
}

StateVector Basis::vector(int j) const {
    if (j < 0 || j >= dim()) {
        throw std::invalid_argument("Basis::vector: column index out of range");
    }
    return StateVector(matrix_.col(j));
}

DensityMatrix::DensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols()) {
        throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
    }
    if (!(hermiticity_defect(matrix_) <= kHermitianTolerance)) {
        throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    const double trace = matrix_.trace().real();
    if (!(std::abs(trace - 1.0) <= 1e-9)) {
        throw std::invalid_argument("DensityMatrix: trace " + std::to_string(trace) + " is not 1");
    }
    const auto eig = hermitian_eigendecomposition(matrix_);
    if (eig.values.back() < -1e-9) {
        throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    const CVector& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint(), Trusted{});
}

DensityMatrix DensityMatrix::mixture(std::span<const StateVector> states) {
    if (states.empty()) {
        throw std::invalid_argument("DensityMatrix::mixture: no states");
    }
    const int d = states.front().dim();
    CMatrix sum = CMatrix::Zero(d, d);
    for (const auto& s : states) {
        require_same_dim(d, s.dim(), "DensityMatrix::mixture");
        sum.noalias() += s.amplitudes() * s.amplitudes().adjoint();
    }
    sum /= static_cast<double>(states.size());
    // Outer products are Hermitian only up to rounding in the diagonal's
    // imaginary part; make the stored matrix exactly Hermitian.
    CMatrix herm = 0.5 * (sum + sum.adjoint());
    return DensityMatrix(std::move(herm), Trusted{});
}

double DensityMatrix::expectation(const StateVector& phi) const {
    require_same_dim(dim(), phi.dim(), "DensityMatrix::expectation");
    const CVector& v = phi.amplitudes();
    return v.dot(matrix_ * v).real();
}

double unitarity_defect(const CMatrix& u) {
    const CMatrix gram = u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols());
    return gram.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const CMatrix& h) {
    if (h.rows() != h.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    require_same_dim(a.dim(), b.dim(), "inner_product");
    // Eigen's dot conjugates the first argument.
    return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector& psi, const StateVector& phi) {
    return std::norm(inner_product(psi, phi));
}

EigenDecomposition hermitian_eigendecomposition(const CMatrix& h) {
    if (h.rows() < 1 || h.rows() != h.cols()) {
        throw std::invalid_argument("hermitian_eigendecomposition: matrix must be square");
    }
    if (!(hermiticity_defect(h) <= kHermitianTolerance)) {
        throw std::invalid_argument("hermitian_eigendecomposition: matrix is not Hermitian");
    }
    const Eigen::Index n = h.rows();
    CMatrix a = 0.5 * (h + h.adjoint());
    CMatrix v = CMatrix::Identity(n, n);

    auto off_norm2 = [&] {
        double s = 0.0;
        for (Eigen::Index q = 0; q < n; ++q) {
            for (Eigen::Index p = 0; p < q; ++p) {
                s += std::norm(a(p, q));
            }
        }
        return s;
    };
    const double scale2 = std::max(a.squaredNorm(), std::numeric_limits<double>::min());
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_norm2() <= eps * eps * scale2) {
            break;
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) {
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Real Jacobi rotation on the phase-rotated block
                // [[app, r], [r, aqq]], conjugated back by diag(1, e^{-i alpha}).
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::hypot(1.0, t);
                const double s = t * c;
                const Complex phase = apq / r;
                // G = [[c, s*phase], [-s*conj(phase), c]] on columns (p, q).
                const Complex g_pq = s * phase;
                const Complex g_qp = -s * std::conj(phase);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp + g_qp * akq;
                    a(k, q) = g_pq * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(g_qp) * aqk;
                    a(q, k) = std::conj(g_pq) * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (Eigen::Index k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp + g_qp * vkq;
                    v(k, q) = g_pq * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenDecomposition out;
    out.values.reserve(order.size());
    out.vectors.reserve(order.size());
    for (Eigen::Index idx : order) {
        out.values.push_back(a(idx, idx).real());
        out.vectors.push_back(StateVector::normalized(v.col(idx)).canonicalized());
    }
    return out;
}

EigenDecomposition hermitian_eigendecomposition(const DensityMatrix& rho) {
    return hermitian_eigendecomposition(rho.matrix());
}

}  // namespace qadapt
