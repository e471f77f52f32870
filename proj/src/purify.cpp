#include "qpurify/purify.hpp"

#include <cmath>

namespace qpurify {

namespace {

constexpr double kZeroProjectionTol = 1e-12;

void require_unit_range(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " +
                                    std::to_string(value));
    }
}

} // namespace

NoSymmetricComponent::NoSymmetricComponent(double weight)
    : std::runtime_error("NoSymmetricComponent: symmetric weight " + std::to_string(weight) +
                         " below " + std::to_string(kZeroProjectionTol)) {}

std::pair<double, DensityMatrix> project_symmetric(const DensityMatrix& rho_ab) {
    if (rho_ab.dim() != 4) {
        throw std::invalid_argument("project_symmetric: expected a two-qubit state");
    }
    const ComplexMatrix proj = symmetric_projector();
    const ComplexMatrix projected = proj * rho_ab.mat() * proj;
    const double p = std::real(Complex(projected.trace()));
    if (p < kZeroProjectionTol) {
        throw NoSymmetricComponent(p);
    }
    return {p, DensityMatrix::validated(projected / p)};
}

DensityMatrix pair_input(const PureQubit& phi, double zeta, double kappa) {
    require_unit_range(zeta, "zeta");
    require_unit_range(kappa, "kappa");
    return tensor(MixedQubit(phi, zeta).to_density(), MixedQubit(phi, kappa).to_density());
}

PurificationOutcome purify_pair(const PureQubit& phi, double zeta, double kappa) {
    const DensityMatrix rho_in = pair_input(phi, zeta, kappa);
    auto [p, rho_out] = project_symmetric(rho_in);
    DensityMatrix rho_single = partial_trace(rho_out, PairSlot::First);

    const double xi_p = 2.0 * fidelity_pure(phi.ket(), rho_single) - 1.0;
    const double xi_avg = 0.5 * (zeta + kappa);
    // eta = xi_p / xi_avg, continued with its limit 1/p at the fully mixed point
    // where the ratio is 0/0.
    const double eta = xi_avg > 1e-12 ? xi_p / xi_avg : 1.0 / p;

    return PurificationOutcome{std::move(rho_out), std::move(rho_single), p, xi_p, eta, xi_avg};
}

GainPoint gain_at(double xi) {
    require_unit_range(xi, "xi");
    const double denom = 3.0 + xi * xi;
    return GainPoint{xi, 4.0 * xi / denom, 4.0 / denom, denom / 4.0};
}

std::vector<GainPoint> gain_curve(const std::vector<double>& xi_grid) {
    std::vector<GainPoint> out;
    out.reserve(xi_grid.size());
    for (double xi : xi_grid) {
        out.push_back(gain_at(xi));
    }
    return out;
}

InfoGain info_gain(const PureQubit& phi, double zeta, double kappa) {
    ComplexVector phi_pair_ket(4);
    const ComplexVector single = phi.ket();
    phi_pair_ket(0) = single(0) * single(0);
    phi_pair_ket(1) = single(0) * single(1);
    phi_pair_ket(2) = single(1) * single(0);
    phi_pair_ket(3) = single(1) * single(1);
    const DensityMatrix rho_target =
        DensityMatrix::validated(phi_pair_ket * phi_pair_ket.adjoint());

    const DensityMatrix rho_in = pair_input(phi, zeta, kappa);
    const auto [p, rho_out] = project_symmetric(rho_in);
    (void)p;

    const double s_in = relative_entropy(rho_target, rho_in);
    const double s_out = relative_entropy(rho_target, rho_out);
    return InfoGain{s_in, s_out, s_in - s_out};
}

} // namespace qpurify
