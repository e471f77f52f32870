#pragma once

#include "qpurify/qmath.hpp"
#include "qpurify/qubit.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace qpurify {

// Stokes component measured by one analyzer configuration. Indices follow the
// (s1, s2, s3) = (<sx>, <sy>, <sz>) ordering.
enum class StokesAxis { X = 0, Y = 1, Z = 2 };

// One waveplate/PBS setting measuring a Pauli observable: outcome "+" projects
// onto `plus`, "-" onto `minus`.
//   X: plus = (|H>+|V>)/sqrt2   (the diagonal |L> of the input alphabet)
//   Y: plus = (|H>+i|V>)/sqrt2  (right circular)
//   Z: plus = |H>
struct MeasurementSetting {
    static MeasurementSetting standard(StokesAxis axis);

    StokesAxis axis;
    PureQubit plus;
    PureQubit minus;
};

// Click record of one setting: n_plus + n_minus == total.
struct CountRecord {
    StokesAxis axis;
    std::int64_t n_plus;
    std::int64_t n_minus;
    std::int64_t total;
};

// Binomial sampling of `total` detection events. Deterministic per seed; two
// calls with equal seeds consume identical uniform draws, which lets callers
// pair measurements of related states through common randomness.
CountRecord simulate_counts(const DensityMatrix& rho, const MeasurementSetting& setting,
                            std::int64_t total, std::uint64_t seed);

// Rounded expectation counts (the infinite-statistics limit for large totals).
CountRecord expected_counts(const DensityMatrix& rho, const MeasurementSetting& setting,
                            std::int64_t total);

struct TomographyResult {
    Eigen::Vector3d stokes;      // after physicality projection, |s| <= 1
    Eigen::Vector3d stokes_raw;  // straight from counts
    DensityMatrix rho_hat;
    Eigen::Vector3d std_errors;  // binomial standard error per Stokes component
};

// Linear inversion s_k = (n+ - n-)/N followed by projection to the nearest
// physical state. Requires exactly one record per axis.
TomographyResult reconstruct(const std::vector<CountRecord>& records);

// Nearest density matrix (Frobenius) to a Hermitian unit-trace matrix:
// eigenvalue clipping at zero plus trace renormalization. For qubits this is
// the radial Bloch-ball projection.
DensityMatrix project_psd(const ComplexMatrix& hermitian);

struct XiEstimate {
    double xi_hat;
    double std_err;
};

// Bloch component of the reconstructed state along phi's axis, with the
// binomially propagated standard error.
XiEstimate xi_estimate(const TomographyResult& result, const PureQubit& phi);

} // namespace qpurify
