#include "qpurify/tomo.hpp"

#include "qpurify/rng.hpp"

#include <algorithm>
#include <cmath>

namespace qpurify {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double plus_probability(const DensityMatrix& rho, const MeasurementSetting& setting) {
    if (rho.dim() != 2) {
        throw std::invalid_argument("tomography: expected a qubit state");
    }
    return std::clamp(fidelity_pure(setting.plus.ket(), rho), 0.0, 1.0);
}

} // namespace

MeasurementSetting MeasurementSetting::standard(StokesAxis axis) {
    switch (axis) {
        case StokesAxis::X:
            return {axis, PureQubit(kInvSqrt2, kInvSqrt2), PureQubit(kInvSqrt2, -kInvSqrt2)};
        case StokesAxis::Y:
            return {axis, PureQubit(kInvSqrt2, Complex(0.0, kInvSqrt2)),
                    PureQubit(kInvSqrt2, Complex(0.0, -kInvSqrt2))};
        case StokesAxis::Z:
            return {axis, PureQubit(1.0, 0.0), PureQubit(0.0, 1.0)};
    }
    throw std::invalid_argument("MeasurementSetting::standard: bad axis");
}

CountRecord simulate_counts(const DensityMatrix& rho, const MeasurementSetting& setting,
                            std::int64_t total, std::uint64_t seed) {
    if (total < 1) {
        throw std::invalid_argument("simulate_counts: need at least one event");
    }
    const double p = plus_probability(rho, setting);
    SplitMix64 g(seed);
    std::int64_t n_plus = 0;
    for (std::int64_t i = 0; i < total; ++i) {
        if (g.uniform() < p) {
            ++n_plus;
        }
    }
    return CountRecord{setting.axis, n_plus, total - n_plus, total};
}

CountRecord expected_counts(const DensityMatrix& rho, const MeasurementSetting& setting,
                            std::int64_t total) {
    if (total < 1) {
        throw std::invalid_argument("expected_counts: need at least one event");
    }
    const double p = plus_probability(rho, setting);
    const std::int64_t n_plus = std::llround(p * static_cast<double>(total));
    return CountRecord{setting.axis, n_plus, total - n_plus, total};
}

DensityMatrix project_psd(const ComplexMatrix& hermitian) {
    const EigSystem sys = eig_hermitian(hermitian);
    Eigen::VectorXd clipped = sys.values.cwiseMax(0.0);
    const double total = clipped.sum();
    if (total <= 0.0) {
        throw std::invalid_argument("project_psd: matrix has no positive part");
    }
    clipped /= total;
    return DensityMatrix::validated(sys.vectors * clipped.asDiagonal() * sys.vectors.adjoint());
}

TomographyResult reconstruct(const std::vector<CountRecord>& records) {
    std::array<const CountRecord*, 3> by_axis{nullptr, nullptr, nullptr};
    for (const CountRecord& rec : records) {
        const int k = static_cast<int>(rec.axis);
        if (by_axis[k] != nullptr) {
            throw std::invalid_argument("reconstruct: duplicate setting");
        }
        by_axis[k] = &rec;
    }
    for (int k = 0; k < 3; ++k) {
        if (by_axis[k] == nullptr) {
            throw std::invalid_argument("reconstruct: missing setting for axis " +
                                        std::to_string(k));
        }
    }

    Eigen::Vector3d s_raw;
    Eigen::Vector3d std_errors;
    for (int k = 0; k < 3; ++k) {
        const CountRecord& rec = *by_axis[k];
        const double n = static_cast<double>(rec.total);
        s_raw(k) = static_cast<double>(rec.n_plus - rec.n_minus) / n;
        std_errors(k) = std::sqrt(std::max(1.0 - s_raw(k) * s_raw(k), 0.0) / n);
    }

    ComplexMatrix raw = 0.5 * ComplexMatrix::Identity(2, 2);
    raw += 0.5 * (s_raw(0) * pauli(PauliLabel::X) + s_raw(1) * pauli(PauliLabel::Y) +
                  s_raw(2) * pauli(PauliLabel::Z));

    DensityMatrix rho_hat = project_psd(raw);
    const Eigen::Vector3d s_proj = bloch_vector(rho_hat);
    return TomographyResult{s_proj, s_raw, std::move(rho_hat), std_errors};
}

XiEstimate xi_estimate(const TomographyResult& result, const PureQubit& phi) {
    const Eigen::Vector3d axis = phi.bloch_axis();
    const double xi_hat = result.stokes.dot(axis);
    double var = 0.0;
    for (int k = 0; k < 3; ++k) {
        var += axis(k) * axis(k) * result.std_errors(k) * result.std_errors(k);
    }
    return XiEstimate{xi_hat, std::sqrt(var)};
}

} // namespace qpurify
