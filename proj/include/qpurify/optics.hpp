#pragma once

#include "qpurify/qmath.hpp"

#include <utility>
#include <vector>

namespace qpurify {

// Raised when a post-selection pattern has (numerically) vanishing probability.
class ZeroProbability : public std::runtime_error {
public:
    explicit ZeroProbability(double prob);
};

// Beam-splitter output ports. Input modes k_a, k_b occupy the same two slots
// before the splitter acts.
enum class SpatialMode { k1, k2 };

// Main beam splitter plus the photons' temporal-mode overlap.
//   t_h, t_v : intensity transmittances for H and V polarization, in [0, 1].
//   overlap  : squared temporal overlap V of the two photon pulses, in [0, 1].
//              V = 1 is the zero-delay (maximum interference) setting, V = 0
//              fully distinguishable pulses.
struct BeamSplitterSpec {
    BeamSplitterSpec(double t_h = 0.5, double t_v = 0.5, double overlap = 1.0);

    double t_h;
    double t_v;
    double overlap;
};

// Delay-to-overlap convenience map, assuming Gaussian pulses:
// V = exp(-(z / (2 c tau_coh))^2) with z the stage coordinate (z = 2*delay*c).
// The pulse shape is an assumption of this helper, not of the simulation;
// everything downstream consumes the overlap directly.
double overlap_from_delay(double z, double c_tau_coh);

// Density operator on the 36-dimensional two-photon sector of the 8 modes
// (2 spatial) x (2 polarization) x (2 temporal). Photon number is exactly 2
// by construction.
class TwoPhotonFockState {
public:
    static constexpr int kModeCount = 8;
    static constexpr int kDim = 36;

    // spatial, pol, temporal in {0, 1}; spatial 0 is k_a/k_1, pol 0 is H.
    static int mode_index(int spatial, int pol, int temporal);
    // Index of the unordered pair (m, n), m <= n, in the sector basis.
    static int pair_index(int m, int n);
    // Inverse of pair_index: the (m, n) modes of a sector basis state.
    static std::pair<int, int> pair_modes(int index);

    explicit TwoPhotonFockState(ComplexMatrix mat);

    const ComplexMatrix& mat() const { return mat_; }
    DensityMatrix density() const { return DensityMatrix::validated(mat_); }

private:
    ComplexMatrix mat_;  // 36x36, certified at construction
};

// State of two photons entering the splitter: photon a in mode (k_a, t0) with
// polarization state rho_a, photon b in (k_b, t_b) with polarization rho_b,
// where |t_b> = sqrt(V)|t0> + sqrt(1-V)|t1>.
TwoPhotonFockState two_photon_input(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                                    double overlap);

// Polarization-dependent splitter: per polarization p,
//   a_p^dag -> sqrt(T_p) c_p^dag + sqrt(1-T_p) d_p^dag
//   b_p^dag -> sqrt(1-T_p) c_p^dag - sqrt(T_p) d_p^dag
// with c on k_1 and d on k_2, temporal labels untouched. (bs.overlap is
// consumed by two_photon_input, not here.)
TwoPhotonFockState apply_bs(const TwoPhotonFockState& state, const BeamSplitterSpec& bs);

struct PortProbabilities {
    double both_k1;
    double both_k2;
    double split;  // one photon in each port
};

PortProbabilities port_probabilities(const TwoPhotonFockState& state);

struct Postselection {
    double prob;           // probability both photons exit the chosen port
    DensityMatrix rho_sym; // conditional two-qubit polarization state
};

// Conditions on both photons leaving through `port`, lifts the bunched bosonic
// state to the two-qubit symmetric subspace of (polarization x temporal) pairs
// and traces out the temporal labels. With T_H = T_V = 1/2 and overlap 1 this
// reproduces the symmetric projection exactly, at probability 2T(1-T) * p.
Postselection postselect_bunched(const TwoPhotonFockState& state,
                                 SpatialMode port = SpatialMode::k1);

// Coincidence probability behind the 50:50 splitter that feeds the two
// detectors on the bunched port: two photons separate with probability 1/2.
double bs1_coincidence(double prob_bunched);

struct HomPoint {
    double overlap;
    double bunched_prob;       // both photons in k_1
    double cross_coincidence;  // one photon in each output port
};

// Sweeps the temporal overlap (the delay-stage scan) at fixed transmittances.
std::vector<HomPoint> hom_scan(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                               const BeamSplitterSpec& bs, const std::vector<double>& v_grid);

} // namespace qpurify
