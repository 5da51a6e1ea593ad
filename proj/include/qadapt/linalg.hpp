#pragma once

// Complex linear algebra kernel: pure states, measurement bases, density
// matrices and a Hermitian eigensolver. Everything is double precision and
// small (d <= 13 in practice), so dense Eigen storage is used throughout.

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace qadapt {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Tolerance used by the unit-norm check on StateVector construction.
inline constexpr double kNormTolerance = 1e-9;
/// Tolerance used by the unitarity check on Basis construction.
inline constexpr double kUnitarityTolerance = 1e-9;
/// Elementwise tolerance for Hermiticity of solver and DensityMatrix inputs.
inline constexpr double kHermitianTolerance = 1e-12;

/// Pure d-level state with unit Euclidean norm.
class StateVector {
public:
    /// Throws std::invalid_argument unless |amplitudes| = 1 within 1e-9 and d >= 1.
    explicit StateVector(CVector amplitudes);

    /// Normalizes an arbitrary nonzero vector.
    static StateVector normalized(const CVector& v);
    /// Computational basis vector e_index.
    static StateVector basis_vector(int dim, int index);

    int dim() const { return static_cast<int>(amplitudes_.size()); }
    const CVector& amplitudes() const { return amplitudes_; }
    Complex operator[](int i) const { return amplitudes_(i); }

    /// Copy with the first component of (numerically) largest modulus made
    /// real and non-negative. Components within 1e-12 of the maximum modulus
    /// count as tied, and the lowest index among them wins.
    StateVector canonicalized() const;

private:
    CVector amplitudes_;
};

/// Orthonormal measurement basis; column j is |b_j>.
class Basis {
public:
    /// Throws std::invalid_argument unless the matrix is square and
    /// U^dagger U = I within 1e-9 elementwise.
    explicit Basis(CMatrix matrix);

    static Basis computational(int dim);
    /// Discrete Fourier basis, F_jk = exp(2 pi i jk/d)/sqrt(d).
    static Basis fourier(int dim);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const CMatrix& matrix() const { return matrix_; }
    /// Column j as a state (not phase canonicalized).
    StateVector vector(int j) const;

private:
    CMatrix matrix_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
public:
    /// Validates all invariants, including positivity via an eigensolve.
    explicit DensityMatrix(CMatrix matrix);

    /// |psi><psi|.
    static DensityMatrix pure(const StateVector& psi);
    /// (1/n) sum_k |psi_k><psi_k|. Throws on an empty list or mixed dimensions.
    static DensityMatrix mixture(std::span<const StateVector> states);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const CMatrix& matrix() const { return matrix_; }

    /// <phi| rho |phi>.
    double expectation(const StateVector& phi) const;

private:
    struct Trusted {};
    DensityMatrix(CMatrix matrix, Trusted) : matrix_(std::move(matrix)) {}

    CMatrix matrix_;
};

struct EigenDecomposition {
    /// Descending: values[0] >= values[1] >= ...
    std::vector<double> values;
    /// vectors[j] is the canonicalized eigenvector for values[j].
    std::vector<StateVector> vectors;
};

/// Maximum elementwise |U^dagger U - I|.
double unitarity_defect(const CMatrix& u);
/// Maximum elementwise |H - H^dagger|.
double hermiticity_defect(const CMatrix& h);

/// <a|b>. Throws std::invalid_argument on dimension mismatch.
Complex inner_product(const StateVector& a, const StateVector& b);
/// |<psi|phi>|^2.
double fidelity(const StateVector& psi, const StateVector& phi);

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Eigenvalues are sorted descending with a stable sort, so members of a
/// degenerate cluster keep the order in which the sweeps left them on the
/// diagonal. The result is a deterministic function of the input bits.
/// Throws std::invalid_argument if the input is not square or deviates from
/// Hermiticity by more than 1e-12 elementwise.
EigenDecomposition hermitian_eigendecomposition(const CMatrix& h);
EigenDecomposition hermitian_eigendecomposition(const DensityMatrix& rho);

}  // namespace qadapt
