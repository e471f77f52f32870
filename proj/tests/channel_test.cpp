#include "qpurify/channel.hpp"

#include "qpurify/rng.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace qpurify;
using namespace qpurify::testing;

namespace {

// Binomial 3-sigma band around an expected frequency at n samples.
bool within_3sigma(double observed, double expected, double n) {
    const double sigma = std::sqrt(std::max(expected * (1.0 - expected), 1e-12) / n);
    return std::abs(observed - expected) <= 3.0 * sigma;
}

} // namespace

TEST_CASE("depolarizing_channel: weight formula") {
    const PauliChannel pure = depolarizing_channel(1.0);
    CHECK(pure.weight(PauliLabel::I) == doctest::Approx(1.0));
    CHECK(pure.weight(PauliLabel::X) == doctest::Approx(0.0));

    const PauliChannel fully = depolarizing_channel(0.0);
    for (auto label : {PauliLabel::I, PauliLabel::X, PauliLabel::Y, PauliLabel::Z}) {
        CHECK(fully.weight(label) == doctest::Approx(0.25));
    }

    const PauliChannel half = depolarizing_channel(0.5);
    CHECK(half.weight(PauliLabel::I) == doctest::Approx(5.0 / 8.0));
    CHECK(half.weight(PauliLabel::X) == doctest::Approx(1.0 / 8.0));

    CHECK_THROWS_AS(depolarizing_channel(1.2), std::invalid_argument);
}

TEST_CASE("PauliChannel: rejects invalid weights") {
    CHECK_THROWS_AS(PauliChannel(0.5, 0.5, 0.5, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(PauliChannel(0.3, 0.3, 0.3, 0.3), std::invalid_argument);
}

TEST_CASE("apply_pauli_channel: identity, full mixing, partial depolarization") {
    TestRng rng(31);
    const DensityMatrix rho = random_density(rng, 2);
    CHECK(max_abs_diff(apply_pauli_channel(PauliChannel(1, 0, 0, 0), rho).mat(), rho.mat()) <
          1e-15);

    const DensityMatrix h = MixedQubit(PureQubit(1.0, 0.0), 1.0).to_density();
    const DensityMatrix mixed = apply_pauli_channel(PauliChannel(0.25, 0.25, 0.25, 0.25), h);
    CHECK(max_abs_diff(mixed.mat(), ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);

    const DensityMatrix out = apply_pauli_channel(depolarizing_channel(0.6), h);
    CHECK(std::abs(out(0, 0) - Complex(0.8)) < 1e-15);
    CHECK(std::abs(out(1, 1) - Complex(0.2)) < 1e-15);
}

TEST_CASE("apply_pauli_channel: trace and positivity preserved") {
    TestRng rng(32);
    for (int trial = 0; trial < 100; ++trial) {
        double w[4];
        double sum = 0.0;
        for (double& x : w) {
            x = rng.uniform();
            sum += x;
        }
        const PauliChannel ch(w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum);
        const DensityMatrix rho = random_density(rng, 2);
        // validated() inside apply_pauli_channel enforces trace/PSD to 1e-10;
        // check the trace to full precision on top of that.
        const DensityMatrix out = apply_pauli_channel(ch, rho);
        CHECK(std::abs(out.mat().trace() - Complex(1.0)) < 1e-12);
    }
}

TEST_CASE("apply_pauli_channel: depolarization shrinks the Bloch vector isotropically") {
    TestRng rng(33);
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho = random_density(rng, 2);
        const double xi = rng.uniform();
        const DensityMatrix out = apply_pauli_channel(depolarizing_channel(xi), rho);
        const Eigen::Vector3d shrunk = bloch_vector(out);
        const Eigen::Vector3d scaled = xi * bloch_vector(rho);
        CHECK((shrunk - scaled).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("label_at: schedule of the dual-cell drive") {
    // nu = 0.25 at 6 kHz: period ~166.67 us, tau ~41.67 us.
    const PockelsTimeline tl(6000.0, 0.25);
    CHECK(label_at(10e-6, tl) == PauliLabel::X);
    CHECK(label_at(50e-6, tl) == PauliLabel::Z);
    CHECK(label_at(100e-6, tl) == PauliLabel::I);
    // boundary of the two-cell window
    CHECK(label_at(30e-6, tl) == PauliLabel::Y);
    // wraps across periods and handles times before the phase offset
    const PockelsTimeline shifted = tl.with_phase(100e-6);
    CHECK(label_at(110e-6, shifted) == PauliLabel::X);
    CHECK(label_at(10e-6 + tl.period(), tl) == PauliLabel::X);
    CHECK(label_at(50e-6 - tl.period(), tl) == PauliLabel::Z);
}

TEST_CASE("PockelsTimeline: validates its ranges") {
    CHECK_THROWS_AS(PockelsTimeline(6000.0, 0.6), std::invalid_argument);
    CHECK_THROWS_AS(PockelsTimeline(6000.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(PockelsTimeline(0.0, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(PockelsTimeline(6000.0, 0.25, 1.0), std::invalid_argument);
    CHECK_NOTHROW(PockelsTimeline(6000.0, 0.0));
    CHECK_NOTHROW(PockelsTimeline(6000.0, 0.5));
}

TEST_CASE("effective_channel: duty-cycle average") {
    const PauliChannel off = effective_channel(PockelsTimeline(6000.0, 0.0));
    CHECK(off.weight(PauliLabel::I) == doctest::Approx(1.0));

    const PauliChannel max = effective_channel(PockelsTimeline(6000.0, 0.5));
    for (auto label : {PauliLabel::I, PauliLabel::X, PauliLabel::Y, PauliLabel::Z}) {
        CHECK(max.weight(label) == doctest::Approx(0.25));
    }

    const PauliChannel quarter = effective_channel(PockelsTimeline(6000.0, 0.25));
    CHECK(quarter.weight(PauliLabel::I) == doctest::Approx(5.0 / 8.0));
    CHECK(quarter.weight(PauliLabel::Z) == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("effective_channel equals depolarizing_channel(1 - 2 nu) exactly") {
    for (double nu : {0.0, 0.05, 0.1, 0.2, 0.25, 0.3333, 0.4, 0.5}) {
        const PauliChannel from_timeline = effective_channel(PockelsTimeline(6000.0, nu));
        const PauliChannel closed = depolarizing_channel(1.0 - 2.0 * nu);
        for (int k = 0; k < 4; ++k) {
            CHECK(from_timeline.weights()[k] ==
                  doctest::Approx(closed.weights()[k]).epsilon(1e-15));
        }
    }
}

TEST_CASE("label_at: time-sampled histogram matches the effective channel") {
    const PockelsTimeline tl(6000.0, 0.3);
    const PauliChannel expected = effective_channel(tl);
    SplitMix64 g(1234);
    const int n = 100000;
    std::array<double, 4> freq{};
    const double horizon = 1000.0 * tl.period();
    for (int i = 0; i < n; ++i) {
        freq[static_cast<int>(label_at(g.uniform() * horizon, tl))] += 1.0 / n;
    }
    for (int k = 0; k < 4; ++k) {
        CHECK(within_3sigma(freq[k], expected.weights()[k], n));
    }
}

TEST_CASE("sample_joint_labels: zero duty cycle is the identity channel") {
    const ChannelPair pair = ChannelPair::with_duty_cycles(0.0, 0.0);
    for (const auto& [a, b] : sample_joint_labels(pair, 1000, 7)) {
        CHECK(a == PauliLabel::I);
        CHECK(b == PauliLabel::I);
    }
}

TEST_CASE("sample_joint_labels: marginals converge to the duty-cycle weights") {
    const std::size_t n = 100000;
    const ChannelPair pair = ChannelPair::with_duty_cycles(0.5, 0.5);
    const JointLabelHistogram hist = histogram(sample_joint_labels(pair, n, 99));
    for (int k = 0; k < 4; ++k) {
        CHECK(within_3sigma(hist.marginal_a[k], 0.25, static_cast<double>(n)));
        CHECK(within_3sigma(hist.marginal_b[k], 0.25, static_cast<double>(n)));
    }
}

TEST_CASE("sample_joint_labels: the two channels are independent") {
    const std::size_t n = 100000;
    const ChannelPair pair = ChannelPair::with_duty_cycles(0.25, 0.25);
    const JointLabelHistogram hist = histogram(sample_joint_labels(pair, n, 1));

    // (X, X) cell against the closed-form product (1/8)^2.
    CHECK(within_3sigma(hist.joint[1][1], 1.0 / 64.0, static_cast<double>(n)));

    // Full factorization: every cell within 4 sigma of the product of marginals.
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const double product = hist.marginal_a[a] * hist.marginal_b[b];
            const double sigma =
                std::sqrt(std::max(product * (1.0 - product), 1e-12) / static_cast<double>(n));
            CHECK(std::abs(hist.joint[a][b] - product) <= 4.0 * sigma);
        }
    }
}

TEST_CASE("sample_joint_labels: deterministic per seed") {
    const ChannelPair pair = ChannelPair::with_duty_cycles(0.3, 0.2);
    const auto first = sample_joint_labels(pair, 500, 42);
    const auto second = sample_joint_labels(pair, 500, 42);
    CHECK(first == second);
    CHECK(first != sample_joint_labels(pair, 500, 43));
}

TEST_CASE("ChannelPair: rejects matching frequencies") {
    CHECK_THROWS_AS(ChannelPair(PockelsTimeline(6000.0, 0.2), PockelsTimeline(6000.0, 0.2)),
                    std::invalid_argument);
    CHECK_NOTHROW(ChannelPair::with_duty_cycles(0.2, 0.2));
}
