#pragma once

#include "qpurify/qmath.hpp"
#include "qpurify/qubit.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace qpurify {

// Random-unitary qubit map: apply sigma_k with probability weights[k].
class PauliChannel {
public:
    static constexpr double kWeightTol = 1e-12;

    // Weights in I, X, Y, Z order; each >= 0, summing to 1 within kWeightTol.
    explicit PauliChannel(std::array<double, 4> weights);
    PauliChannel(double w_i, double w_x, double w_y, double w_z)
        : PauliChannel(std::array<double, 4>{w_i, w_x, w_y, w_z}) {}

    double weight(PauliLabel label) const { return weights_[static_cast<int>(label)]; }
    const std::array<double, 4>& weights() const { return weights_; }

private:
    std::array<double, 4> weights_;
};

// Isotropic depolarizer rho -> xi*rho + (1-xi)*I/2 as a Pauli mixture:
// weights (xi + (1-xi)/4, (1-xi)/4, (1-xi)/4, (1-xi)/4).
PauliChannel depolarizing_channel(double xi);

// sum_k w_k sigma_k rho sigma_k. Trace and positivity preserving.
DensityMatrix apply_pauli_channel(const PauliChannel& ch, const DensityMatrix& rho);

// Drive schedule of one dual-Pockels-cell depolarizer. Over each period
// T = 1/frequency, cell X fires for [0, tau) and cell Z for [tau/2, 3*tau/2),
// tau = duty_cycle * T, so the applied operator is X, then Y (both cells),
// then Z, each for tau/2, and the identity for the rest of the period.
struct PockelsTimeline {
    // duty_cycle in [0, 1/2]; phase in [0, 1/frequency) seconds.
    PockelsTimeline(double frequency_hz, double duty_cycle, double phase_s = 0.0);

    double period() const { return 1.0 / frequency; }
    double pulse_duration() const { return duty_cycle / frequency; }  // tau
    PockelsTimeline with_phase(double phase_s) const;

    double frequency;
    double duty_cycle;
    double phase;
};

// Operator applied at time t by the schedule above.
PauliLabel label_at(double t, const PockelsTimeline& tl);

// Time average of the schedule over one period:
// (1 - 3*nu/2, nu/2, nu/2, nu/2) == depolarizing_channel(1 - 2*nu).
PauliChannel effective_channel(const PockelsTimeline& tl);

// The two depolarizers feeding the beam splitter. Distinct drive frequencies
// (default 6 kHz and 1.7x that) plus per-trial phase randomization keep the
// sampled label pairs uncorrelated.
struct ChannelPair {
    ChannelPair(PockelsTimeline timeline_a, PockelsTimeline timeline_b);

    static ChannelPair with_duty_cycles(double nu_a, double nu_b,
                                        double frequency_hz = kDefaultFrequency,
                                        double frequency_ratio = kDefaultFrequencyRatio);

    static constexpr double kDefaultFrequency = 6000.0;
    static constexpr double kDefaultFrequencyRatio = 1.7;

    PockelsTimeline a;
    PockelsTimeline b;
};

// Draws n simultaneous-arrival label pairs. Each trial gets its own substream
// of `seed`: both timeline phases are redrawn uniformly and the arrival time
// is uniform over >= 1000 drive periods, so trials are i.i.d. and the result
// is independent of evaluation order.
std::vector<std::pair<PauliLabel, PauliLabel>> sample_joint_labels(const ChannelPair& pair,
                                                                   std::size_t n,
                                                                   std::uint64_t seed);

// Label-pair frequencies of a sample, in I, X, Y, Z order.
struct JointLabelHistogram {
    std::array<std::array<double, 4>, 4> joint{};  // [a][b]
    std::array<double, 4> marginal_a{};
    std::array<double, 4> marginal_b{};
};

JointLabelHistogram histogram(const std::vector<std::pair<PauliLabel, PauliLabel>>& labels);

} // namespace qpurify
