#pragma once

#include "qpurify/qmath.hpp"
#include "qpurify/qubit.hpp"

#include <utility>
#include <vector>

namespace qpurify {

// Raised when the symmetric component of the input is (numerically) zero,
// i.e. the input is the pure singlet and the projection can never succeed.
class NoSymmetricComponent : public std::runtime_error {
public:
    explicit NoSymmetricComponent(double weight);
};

// Projects a two-qubit state onto the symmetric subspace. Returns the success
// probability p = Tr[Pi rho Pi] and the renormalized conditional state.
std::pair<double, DensityMatrix> project_symmetric(const DensityMatrix& rho_ab);

// Result of purifying one pair prepared as rho_a (x) rho_b with
// rho_a = zeta|phi><phi| + (1-zeta)I/2 and rho_b likewise with kappa.
struct PurificationOutcome {
    DensityMatrix rho_out;     // 4x4 conditional pair state
    DensityMatrix rho_single;  // 2x2 reduced state (both reductions coincide)
    double p;                  // success probability
    double xi_p;               // output Bloch length along phi
    double eta;                // purification gain xi_p / xi_avg
    double xi_avg;             // (zeta + kappa)/2, the input mixedness factor
};

// Product input rho_a(zeta) (x) rho_b(kappa) in the computational basis.
DensityMatrix pair_input(const PureQubit& phi, double zeta, double kappa);

// Runs the projection pipeline numerically. Satisfies the closed forms
// xi_p = 2(zeta+kappa)/(3+kappa*zeta), eta = 4/(3+kappa*zeta) = 1/p.
PurificationOutcome purify_pair(const PureQubit& phi, double zeta, double kappa);

struct GainPoint {
    double xi;
    double xi_p;  // 4*xi/(3+xi^2)
    double eta;   // 4/(3+xi^2)
    double p;     // (3+xi^2)/4
};

// Closed-form gain figures for one input mixedness value.
GainPoint gain_at(double xi);
std::vector<GainPoint> gain_curve(const std::vector<double>& xi_grid);

// Relative-entropy accounting against the target pure pair |phi,phi>:
// s_in = S(|phi,phi>||rho_in), s_out = S(|phi,phi>||rho_out). The difference
// delta_s equals log2(eta) = -log2(p).
struct InfoGain {
    double s_in;
    double s_out;
    double delta_s;
};

InfoGain info_gain(const PureQubit& phi, double zeta, double kappa);

} // namespace qpurify
