#pragma once

#include "qpurify/qmath.hpp"

#include <string>

namespace qpurify {

// Computational basis is fixed as |H> -> index 0, |V> -> index 1, so the H/V
// polarization analyzer is the sigma_z measurement.
enum class PauliLabel { I, X, Y, Z };

char pauli_char(PauliLabel label);
ComplexMatrix pauli(PauliLabel label);

// Unit polarization state alpha|H> + beta|V>.
class PureQubit {
public:
    static constexpr double kNormTol = 1e-12;

    // Throws std::invalid_argument unless |alpha|^2 + |beta|^2 == 1 within kNormTol.
    PureQubit(Complex alpha, Complex beta);

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }

    ComplexVector ket() const;
    ComplexMatrix projector() const;        // |phi><phi|
    Eigen::Vector3d bloch_axis() const;     // (<sx>, <sy>, <sz>), unit length

private:
    Complex alpha_;
    Complex beta_;
};

// The orthogonal state, with the fixed phase convention (-conj(beta), conj(alpha)).
PureQubit orthogonal(const PureQubit& phi);

// Input-state labels. E(theta) = cos(theta/2)|H> + i sin(theta/2)|V| with
// theta = 3*pi/8 unless overridden; L = (|H> + |V>)/sqrt(2).
class NamedState {
public:
    static NamedState h();
    static NamedState v();
    static NamedState l();
    static NamedState e(double theta = kDefaultTheta);
    static NamedState custom(Complex alpha, Complex beta);

    // Accepts "H", "V", "L", "E", "E:<theta>", or "are,aim,bre,bim".
    static NamedState parse(const std::string& text);

    PureQubit resolve() const;
    const std::string& label() const { return label_; }

    static constexpr double kDefaultTheta = 3.0 * 3.14159265358979323846 / 8.0;

private:
    NamedState(std::string label, Complex alpha, Complex beta);
    std::string label_;
    Complex alpha_;
    Complex beta_;
};

// Isotropic mixture xi*|phi><phi| + (1-xi)*I/2. Eigenvalues are (1+xi)/2 and
// (1-xi)/2 along phi and its orthogonal.
struct MixedQubit {
    MixedQubit(PureQubit phi, double xi);

    DensityMatrix to_density() const;

    PureQubit phi;
    double xi;
};

// Bloch vector (Tr[rho sigma_k]) of a qubit state.
Eigen::Vector3d bloch_vector(const DensityMatrix& rho);

// Projector onto the symmetric (triplet) subspace of two qubits:
// Pi = I - |Psi-><Psi-|. Rank 3, idempotent, invariant under U (x) U.
ComplexMatrix symmetric_projector();

// The singlet (|01> - |10>)/sqrt(2), the lone antisymmetric two-qubit state.
ComplexVector singlet_ket();

} // namespace qpurify
