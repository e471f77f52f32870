#include "qpurify/qubit.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace qpurify {

namespace {
constexpr Complex kI{0.0, 1.0};
}

char pauli_char(PauliLabel label) {
    switch (label) {
        case PauliLabel::I: return 'I';
        case PauliLabel::X: return 'X';
        case PauliLabel::Y: return 'Y';
        case PauliLabel::Z: return 'Z';
    }
    return '?';
}

ComplexMatrix pauli(PauliLabel label) {
    ComplexMatrix m(2, 2);
    switch (label) {
        case PauliLabel::I: m << 1, 0, 0, 1; break;
        case PauliLabel::X: m << 0, 1, 1, 0; break;
        case PauliLabel::Y: m << 0, -kI, kI, 0; break;
        case PauliLabel::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

PureQubit::PureQubit(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
    const double norm2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm2 - 1.0) > kNormTol) {
        throw std::invalid_argument("PureQubit: amplitudes not normalized, |norm^2 - 1| = " +
                                    std::to_string(std::abs(norm2 - 1.0)));
    }
}

ComplexVector PureQubit::ket() const {
    ComplexVector v(2);
    v << alpha_, beta_;
    return v;
}

ComplexMatrix PureQubit::projector() const {
    const ComplexVector v = ket();
    return v * v.adjoint();
}

Eigen::Vector3d PureQubit::bloch_axis() const {
    const Complex cross = std::conj(alpha_) * beta_;
    return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(alpha_) - std::norm(beta_)};
}

PureQubit orthogonal(const PureQubit& phi) {
    return PureQubit(-std::conj(phi.beta()), std::conj(phi.alpha()));
}

NamedState::NamedState(std::string label, Complex alpha, Complex beta)
    : label_(std::move(label)), alpha_(alpha), beta_(beta) {}

NamedState NamedState::h() { return NamedState("H", 1.0, 0.0); }
NamedState NamedState::v() { return NamedState("V", 0.0, 1.0); }

NamedState NamedState::l() {
    const double r = 1.0 / std::sqrt(2.0);
    return NamedState("L", r, r);
}

NamedState NamedState::e(double theta) {
    std::string label = "E";
    if (theta != kDefaultTheta) {
        std::ostringstream os;
        os << "E:" << theta;
        label = os.str();
    }
    return NamedState(std::move(label), std::cos(theta / 2.0), kI * std::sin(theta / 2.0));
}

NamedState NamedState::custom(Complex alpha, Complex beta) {
    std::ostringstream os;
    os << alpha.real() << "," << alpha.imag() << "," << beta.real() << "," << beta.imag();
    return NamedState(os.str(), alpha, beta);
}

NamedState NamedState::parse(const std::string& text) {
    if (text == "H" || text == "h") return h();
    if (text == "V" || text == "v") return v();
    if (text == "L" || text == "l") return l();
    if (text == "E" || text == "e") return e();
    if ((text.size() > 2) && (text[0] == 'E' || text[0] == 'e') && text[1] == ':') {
        return e(std::stod(text.substr(2)));
    }
    std::vector<double> parts;
    std::istringstream is(text);
    std::string piece;
    while (std::getline(is, piece, ',')) {
        parts.push_back(std::stod(piece));
    }
    if (parts.size() != 4) {
        throw std::invalid_argument("NamedState::parse: expected H, V, L, E, E:<theta> or "
                                    "\"are,aim,bre,bim\", got \"" + text + "\"");
    }
    return custom(Complex(parts[0], parts[1]), Complex(parts[2], parts[3]));
}

PureQubit NamedState::resolve() const {
    return PureQubit(alpha_, beta_);
}

MixedQubit::MixedQubit(PureQubit phi_in, double xi_in) : phi(phi_in), xi(xi_in) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
        throw std::invalid_argument("MixedQubit: xi must lie in [0, 1], got " + std::to_string(xi));
    }
}

DensityMatrix MixedQubit::to_density() const {
    const ComplexMatrix m =
        xi * phi.projector() + (1.0 - xi) * 0.5 * ComplexMatrix::Identity(2, 2);
    return DensityMatrix::validated(m);
}

Eigen::Vector3d bloch_vector(const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw std::invalid_argument("bloch_vector: expected a qubit state");
    }
    Eigen::Vector3d s;
    s(0) = std::real(Complex((rho.mat() * pauli(PauliLabel::X)).trace()));
    s(1) = std::real(Complex((rho.mat() * pauli(PauliLabel::Y)).trace()));
    s(2) = std::real(Complex((rho.mat() * pauli(PauliLabel::Z)).trace()));
    return s;
}

ComplexVector singlet_ket() {
    ComplexVector v = ComplexVector::Zero(4);
    const double r = 1.0 / std::sqrt(2.0);
    v(1) = r;   // |HV>
    v(2) = -r;  // |VH>
    return v;
}

ComplexMatrix symmetric_projector() {
    const ComplexVector s = singlet_ket();
    return ComplexMatrix::Identity(4, 4) - s * s.adjoint();
}

} // namespace qpurify
