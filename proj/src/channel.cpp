#include "qpurify/channel.hpp"

#include "qpurify/rng.hpp"

#include <algorithm>
#include <cmath>

namespace qpurify {

PauliChannel::PauliChannel(std::array<double, 4> weights) : weights_(weights) {
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("PauliChannel: negative weight " + std::to_string(w));
        }
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightTol) {
        throw std::invalid_argument("PauliChannel: weights sum to " + std::to_string(sum) +
                                    ", expected 1");
    }
}

PauliChannel depolarizing_channel(double xi) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
        throw std::invalid_argument("depolarizing_channel: xi must lie in [0, 1], got " +
                                    std::to_string(xi));
    }
    const double rest = (1.0 - xi) / 4.0;
    return PauliChannel(xi + rest, rest, rest, rest);
}

DensityMatrix apply_pauli_channel(const PauliChannel& ch, const DensityMatrix& rho) {
    if (rho.dim() != 2) {
        throw std::invalid_argument("apply_pauli_channel: expected a qubit state");
    }
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (int k = 0; k < 4; ++k) {
        const ComplexMatrix sigma = pauli(static_cast<PauliLabel>(k));
        out += ch.weights()[k] * sigma * rho.mat() * sigma;
    }
    return DensityMatrix::validated(out);
}

PockelsTimeline::PockelsTimeline(double frequency_hz, double duty_cycle_in, double phase_s)
    : frequency(frequency_hz), duty_cycle(duty_cycle_in), phase(phase_s) {
    if (!(frequency > 0.0) || !std::isfinite(frequency)) {
        throw std::invalid_argument("PockelsTimeline: frequency must be positive");
    }
    // The drive hardware caps the duty cycle at 1/2; 0 (cells off) is allowed
    // and realizes the noiseless xi = 1 channel.
    if (!(duty_cycle >= 0.0 && duty_cycle <= 0.5)) {
        throw std::invalid_argument("PockelsTimeline: duty cycle must lie in [0, 1/2], got " +
                                    std::to_string(duty_cycle));
    }
    if (!(phase >= 0.0 && phase < period())) {
        throw std::invalid_argument("PockelsTimeline: phase must lie in [0, 1/f)");
    }
}

PockelsTimeline PockelsTimeline::with_phase(double phase_s) const {
    return PockelsTimeline(frequency, duty_cycle, phase_s);
}

PauliLabel label_at(double t, const PockelsTimeline& tl) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("label_at: time must be finite");
    }
    const double period = tl.period();
    double s = std::fmod(t - tl.phase, period);
    if (s < 0.0) {
        s += period;
    }
    const double tau = tl.pulse_duration();
    if (s < 0.5 * tau) return PauliLabel::X;
    if (s < tau) return PauliLabel::Y;
    if (s < 1.5 * tau) return PauliLabel::Z;
    return PauliLabel::I;
}

PauliChannel effective_channel(const PockelsTimeline& tl) {
    const double nu = tl.duty_cycle;
    return PauliChannel(1.0 - 1.5 * nu, 0.5 * nu, 0.5 * nu, 0.5 * nu);
}

ChannelPair::ChannelPair(PockelsTimeline timeline_a, PockelsTimeline timeline_b)
    : a(timeline_a), b(timeline_b) {
    if (a.frequency == b.frequency) {
        throw std::invalid_argument("ChannelPair: drive frequencies must differ");
    }
}

ChannelPair ChannelPair::with_duty_cycles(double nu_a, double nu_b, double frequency_hz,
                                          double frequency_ratio) {
    return ChannelPair(PockelsTimeline(frequency_hz, nu_a),
                       PockelsTimeline(frequency_hz * frequency_ratio, nu_b));
}

std::vector<std::pair<PauliLabel, PauliLabel>> sample_joint_labels(const ChannelPair& pair,
                                                                   std::size_t n,
                                                                   std::uint64_t seed) {
    if (n < 1) {
        throw std::invalid_argument("sample_joint_labels: need at least one trial");
    }
    const double horizon = 1024.0 * std::max(pair.a.period(), pair.b.period());
    std::vector<std::pair<PauliLabel, PauliLabel>> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        SplitMix64 g = substream(seed, i);
        const PockelsTimeline tl_a = pair.a.with_phase(g.uniform() * pair.a.period());
        const PockelsTimeline tl_b = pair.b.with_phase(g.uniform() * pair.b.period());
        const double t = g.uniform() * horizon;
        out.emplace_back(label_at(t, tl_a), label_at(t, tl_b));
    }
    return out;
}

JointLabelHistogram histogram(const std::vector<std::pair<PauliLabel, PauliLabel>>& labels) {
    JointLabelHistogram h;
    if (labels.empty()) {
        return h;
    }
    const double w = 1.0 / static_cast<double>(labels.size());
    for (const auto& [la, lb] : labels) {
        const int ia = static_cast<int>(la);
        const int ib = static_cast<int>(lb);
        h.joint[ia][ib] += w;
        h.marginal_a[ia] += w;
        h.marginal_b[ib] += w;
    }
    return h;
}

} // namespace qpurify
