#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace qpurify {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Global tolerances. Dimensions in this project never exceed 36, so double
// precision leaves a wide margin against all of these.
namespace tol {
inline constexpr double density = 1e-10;  // Hermiticity / PSD / trace defects
inline constexpr double eig = 1e-11;      // eigendecomposition reconstruction
inline constexpr double support = 1e-12;  // sigma eigenvalue treated as zero
inline constexpr double overlap = 1e-10;  // rho weight that makes S(rho||sigma) infinite
}

// Raised when a matrix fails density-matrix certification. `magnitude` is the
// size of the violated invariant's defect.
class ValidationError : public std::runtime_error {
public:
    enum class Kind { NotHermitian, NotPSD, TraceNotOne };

    ValidationError(Kind kind, double magnitude);

    Kind kind() const { return kind_; }
    double magnitude() const { return magnitude_; }

private:
    Kind kind_;
    double magnitude_;
};

// Certified Hermitian, positive-semidefinite, unit-trace matrix. The only way
// to obtain one is through `validated`, so holding a DensityMatrix is proof
// the invariants held (within tolerance) at construction.
class DensityMatrix {
public:
    // Certifies `m`. Eigenvalues in [-tolerance, 0) are treated as float noise
    // and clipped to zero; anything more negative is a logic bug and throws.
    static DensityMatrix validated(const ComplexMatrix& m, double tolerance = tol::density);

    const ComplexMatrix& mat() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }
    Complex operator()(Eigen::Index row, Eigen::Index col) const { return mat_(row, col); }

private:
    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

// Which qubit of a pair survives a partial trace.
enum class PairSlot { First, Second };

// Kronecker product. Trace is multiplicative.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Reduces a two-qubit (4x4) matrix to the kept qubit. Trace preserving;
// partial_trace(tensor(a, b), First) == a * trace(b).
ComplexMatrix partial_trace(const ComplexMatrix& m, PairSlot keep);
DensityMatrix partial_trace(const DensityMatrix& m, PairSlot keep);

struct EigSystem {
    Eigen::VectorXd values;  // descending
    ComplexMatrix vectors;   // orthonormal columns, ordered to match
};

// Full eigendecomposition of a Hermitian matrix. Reconstruction error stays
// below tol::eig for the dimensions used here. Throws on non-Hermitian input.
EigSystem eig_hermitian(const ComplexMatrix& m);

// Quantum relative entropy S(rho || sigma) = Tr(rho log2 rho) - Tr(rho log2 sigma),
// in bits. Returns +infinity when rho has weight above tol::overlap on the
// null space of sigma (eigenvalues below tol::support); weight at or below the
// threshold contributes nothing, which keeps rank-deficient but compatible
// pairs finite.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// <phi| rho |phi> for a unit vector phi.
double fidelity_pure(const ComplexVector& phi, const DensityMatrix& rho);

// Largest entry of |m - m^dagger|; zero for exactly Hermitian input.
double hermiticity_defect(const ComplexMatrix& m);

} // namespace qpurify
