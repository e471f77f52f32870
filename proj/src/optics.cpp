#include "qpurify/optics.hpp"

#include <array>
#include <cmath>

namespace qpurify {

namespace {

constexpr int kModes = TwoPhotonFockState::kModeCount;
constexpr int kDim = TwoPhotonFockState::kDim;
constexpr double kSqrt2 = 1.4142135623730951;

struct PairTable {
    std::array<std::array<int, kModes>, kModes> index;
    std::array<std::pair<int, int>, kDim> modes;

    PairTable() {
        int next = 0;
        for (int m = 0; m < kModes; ++m) {
            for (int n = m; n < kModes; ++n) {
                index[m][n] = next;
                index[n][m] = next;
                modes[next] = {m, n};
                ++next;
            }
        }
    }
};

const PairTable& pairs() {
    static const PairTable table;
    return table;
}

// Lifts a single-photon mode unitary to the bosonic two-photon sector.
// Column (m, n): a_m^dag a_n^dag |0> maps to sum_rs U_rm U_sn a_r^dag a_s^dag |0>,
// expressed in the normalized pair basis |e_mn> = a_m^dag a_n^dag |0> / sqrt(1 + delta_mn).
ComplexMatrix symmetric_square(const ComplexMatrix& u) {
    const auto& table = pairs();
    ComplexMatrix w = ComplexMatrix::Zero(kDim, kDim);
    for (int col = 0; col < kDim; ++col) {
        const auto [m, n] = table.modes[col];
        const double col_norm = (m == n) ? 1.0 / kSqrt2 : 1.0;
        for (int row = 0; row < kDim; ++row) {
            const auto [r, s] = table.modes[row];
            if (r == s) {
                w(row, col) = col_norm * kSqrt2 * u(r, m) * u(r, n);
            } else {
                w(row, col) = col_norm * (u(r, m) * u(s, n) + u(s, m) * u(r, n));
            }
        }
    }
    return w;
}

void require_qubit_state(const DensityMatrix& rho, const char* what) {
    if (rho.dim() != 2) {
        throw std::invalid_argument(std::string(what) + ": expected a qubit polarization state");
    }
}

} // namespace

ZeroProbability::ZeroProbability(double prob)
    : std::runtime_error("ZeroProbability: post-selection probability " + std::to_string(prob)) {}

BeamSplitterSpec::BeamSplitterSpec(double t_h_in, double t_v_in, double overlap_in)
    : t_h(t_h_in), t_v(t_v_in), overlap(overlap_in) {
    // Endpoints are allowed: T = 1 (or 0) is a pass-through (or mirror) and
    // stays unitary; post-selection then reports ZeroProbability where physics
    // forbids bunching.
    if (!(t_h >= 0.0 && t_h <= 1.0) || !(t_v >= 0.0 && t_v <= 1.0)) {
        throw std::invalid_argument("BeamSplitterSpec: transmittances must lie in [0, 1]");
    }
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        throw std::invalid_argument("BeamSplitterSpec: overlap must lie in [0, 1]");
    }
}

double overlap_from_delay(double z, double c_tau_coh) {
    if (!(c_tau_coh > 0.0)) {
        throw std::invalid_argument("overlap_from_delay: coherence length must be positive");
    }
    const double x = z / (2.0 * c_tau_coh);
    return std::exp(-x * x);
}

int TwoPhotonFockState::mode_index(int spatial, int pol, int temporal) {
    return 4 * spatial + 2 * pol + temporal;
}

int TwoPhotonFockState::pair_index(int m, int n) {
    return pairs().index[m][n];
}

std::pair<int, int> TwoPhotonFockState::pair_modes(int index) {
    return pairs().modes[index];
}

TwoPhotonFockState::TwoPhotonFockState(ComplexMatrix mat) : mat_(std::move(mat)) {
    if (mat_.rows() != kDim || mat_.cols() != kDim) {
        throw std::invalid_argument("TwoPhotonFockState: expected a 36x36 sector matrix");
    }
    // Certify once here so every downstream state is a valid density matrix.
    mat_ = DensityMatrix::validated(mat_).mat();
}

TwoPhotonFockState two_photon_input(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                                    double overlap) {
    require_qubit_state(rho_a, "two_photon_input");
    require_qubit_state(rho_b, "two_photon_input");
    if (!(overlap >= 0.0 && overlap <= 1.0)) {
        throw std::invalid_argument("two_photon_input: overlap must lie in [0, 1]");
    }

    const double amp_t0 = std::sqrt(overlap);
    const double amp_t1 = std::sqrt(1.0 - overlap);

    // Kets Phi_pq = a^dag_(ka,p,t0) a^dag_(kb,q,tb) |0>, orthonormal because the
    // two photons sit in distinct spatial modes.
    std::array<std::array<ComplexVector, 2>, 2> kets;
    for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
            ComplexVector v = ComplexVector::Zero(kDim);
            const int mode_a = TwoPhotonFockState::mode_index(0, p, 0);
            const int mode_b0 = TwoPhotonFockState::mode_index(1, q, 0);
            const int mode_b1 = TwoPhotonFockState::mode_index(1, q, 1);
            v(TwoPhotonFockState::pair_index(mode_a, mode_b0)) = amp_t0;
            v(TwoPhotonFockState::pair_index(mode_a, mode_b1)) = amp_t1;
            kets[p][q] = std::move(v);
        }
    }

    ComplexMatrix rho = ComplexMatrix::Zero(kDim, kDim);
    for (int p = 0; p < 2; ++p) {
        for (int q = 0; q < 2; ++q) {
            for (int pp = 0; pp < 2; ++pp) {
                for (int qq = 0; qq < 2; ++qq) {
                    const Complex coeff = rho_a(p, pp) * rho_b(q, qq);
                    if (coeff != Complex(0.0, 0.0)) {
                        rho += coeff * kets[p][q] * kets[pp][qq].adjoint();
                    }
                }
            }
        }
    }
    return TwoPhotonFockState(std::move(rho));
}

TwoPhotonFockState apply_bs(const TwoPhotonFockState& state, const BeamSplitterSpec& bs) {
    ComplexMatrix u = ComplexMatrix::Zero(kModes, kModes);
    for (int p = 0; p < 2; ++p) {
        const double t = (p == 0) ? bs.t_h : bs.t_v;
        const double root_t = std::sqrt(t);
        const double root_r = std::sqrt(1.0 - t);
        for (int temporal = 0; temporal < 2; ++temporal) {
            const int in_a = TwoPhotonFockState::mode_index(0, p, temporal);
            const int in_b = TwoPhotonFockState::mode_index(1, p, temporal);
            u(in_a, in_a) = root_t;   // a -> k1
            u(in_b, in_a) = root_r;   // a -> k2
            u(in_a, in_b) = root_r;   // b -> k1
            u(in_b, in_b) = -root_t;  // b -> k2
        }
    }
    const ComplexMatrix w = symmetric_square(u);
    return TwoPhotonFockState(w * state.mat() * w.adjoint());
}

PortProbabilities port_probabilities(const TwoPhotonFockState& state) {
    PortProbabilities probs{0.0, 0.0, 0.0};
    const auto& table = pairs();
    for (int i = 0; i < kDim; ++i) {
        const auto [m, n] = table.modes[i];
        const double weight = std::real(state.mat()(i, i));
        const bool m_k1 = m < 4;
        const bool n_k1 = n < 4;
        if (m_k1 && n_k1) {
            probs.both_k1 += weight;
        } else if (!m_k1 && !n_k1) {
            probs.both_k2 += weight;
        } else {
            probs.split += weight;
        }
    }
    return probs;
}

Postselection postselect_bunched(const TwoPhotonFockState& state, SpatialMode port) {
    constexpr double kMinProb = 1e-14;
    const int base = (port == SpatialMode::k1) ? 0 : 4;
    const auto& table = pairs();

    // Bunched block: the 10 pair states with both photons in the chosen port.
    std::vector<int> block;
    block.reserve(10);
    for (int i = 0; i < kDim; ++i) {
        const auto [m, n] = table.modes[i];
        if (m >= base && m < base + 4 && n >= base && n < base + 4) {
            block.push_back(i);
        }
    }

    const int block_dim = static_cast<int>(block.size());
    ComplexMatrix bunched(block_dim, block_dim);
    for (int i = 0; i < block_dim; ++i) {
        for (int j = 0; j < block_dim; ++j) {
            bunched(i, j) = state.mat()(block[i], block[j]);
        }
    }
    const double prob = std::real(Complex(bunched.trace()));
    if (prob < kMinProb) {
        throw ZeroProbability(prob);
    }
    bunched /= prob;

    // Isometry from the bunched bosonic basis into the symmetric subspace of
    // two distinguishable (polarization x temporal) particles. Local labels
    // are mu = 2*pol + temporal in {0..3}; the two-particle index is 4*mu1 + mu2.
    ComplexMatrix embed = ComplexMatrix::Zero(16, block_dim);
    for (int j = 0; j < block_dim; ++j) {
        const auto [m, n] = table.modes[block[j]];
        const int mu = m - base;
        const int nu = n - base;
        if (mu == nu) {
            embed(4 * mu + mu, j) = 1.0;
        } else {
            embed(4 * mu + nu, j) = 1.0 / kSqrt2;
            embed(4 * nu + mu, j) = 1.0 / kSqrt2;
        }
    }
    const ComplexMatrix two_particle = embed * bunched * embed.adjoint();

    // Trace out the two temporal labels, keeping (pol1, pol2).
    ComplexMatrix rho_pol = ComplexMatrix::Zero(4, 4);
    for (int p1 = 0; p1 < 2; ++p1)
    for (int p2 = 0; p2 < 2; ++p2)
    for (int q1 = 0; q1 < 2; ++q1)
    for (int q2 = 0; q2 < 2; ++q2) {
        Complex sum = 0.0;
        for (int t1 = 0; t1 < 2; ++t1) {
            for (int t2 = 0; t2 < 2; ++t2) {
                const int row = 4 * (2 * p1 + t1) + (2 * p2 + t2);
                const int col = 4 * (2 * q1 + t1) + (2 * q2 + t2);
                sum += two_particle(row, col);
            }
        }
        rho_pol(2 * p1 + p2, 2 * q1 + q2) = sum;
    }

    return Postselection{prob, DensityMatrix::validated(rho_pol)};
}

double bs1_coincidence(double prob_bunched) {
    if (!(prob_bunched >= 0.0 && prob_bunched <= 1.0)) {
        throw std::invalid_argument("bs1_coincidence: probability must lie in [0, 1]");
    }
    // Two photons in one mode hitting a 50:50 splitter end up on distinct
    // detectors with probability 1/2 (outcomes 1/4 : 1/2 : 1/4).
    return 0.5 * prob_bunched;
}

std::vector<HomPoint> hom_scan(const DensityMatrix& rho_a, const DensityMatrix& rho_b,
                               const BeamSplitterSpec& bs, const std::vector<double>& v_grid) {
    std::vector<HomPoint> out;
    out.reserve(v_grid.size());
    for (double v : v_grid) {
        const TwoPhotonFockState after = apply_bs(two_photon_input(rho_a, rho_b, v), bs);
        const PortProbabilities probs = port_probabilities(after);
        out.push_back(HomPoint{v, probs.both_k1, probs.split});
    }
    return out;
}

} // namespace qpurify
