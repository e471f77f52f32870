#include "qpurify/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qpurify {

namespace {

std::string kind_name(ValidationError::Kind kind) {
    switch (kind) {
        case ValidationError::Kind::NotHermitian: return "NotHermitian";
        case ValidationError::Kind::NotPSD: return "NotPSD";
        case ValidationError::Kind::TraceNotOne: return "TraceNotOne";
    }
    return "Unknown";
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void require_finite(const ComplexMatrix& m, const char* what) {
    if (!m.allFinite()) {
        throw std::invalid_argument(std::string(what) + ": matrix has NaN/Inf entries");
    }
}

} // namespace

ValidationError::ValidationError(Kind kind, double magnitude)
    : std::runtime_error(kind_name(kind) + ": invariant violated by " + std::to_string(magnitude)),
      kind_(kind),
      magnitude_(magnitude) {}

double hermiticity_defect(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix DensityMatrix::validated(const ComplexMatrix& m, double tolerance) {
    require_square(m, "DensityMatrix::validated");
    require_finite(m, "DensityMatrix::validated");

    const double herm = hermiticity_defect(m);
    if (herm > tolerance) {
        throw ValidationError(ValidationError::Kind::NotHermitian, herm);
    }

    const double trace_defect = std::abs(m.trace() - Complex(1.0, 0.0));
    if (trace_defect > tolerance) {
        throw ValidationError(ValidationError::Kind::TraceNotOne, trace_defect);
    }

    ComplexMatrix herm_part = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm_part);
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const double min_eval = evals.minCoeff();
    if (min_eval < -tolerance) {
        throw ValidationError(ValidationError::Kind::NotPSD, -min_eval);
    }

    if (min_eval < 0.0) {
        // Float noise only: clip the offending eigenvalues and rebuild.
        Eigen::VectorXd clipped = evals.cwiseMax(0.0);
        herm_part = solver.eigenvectors() * clipped.asDiagonal() * solver.eigenvectors().adjoint();
    }
    return DensityMatrix(std::move(herm_part));
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "tensor");
    require_square(b, "tensor");
    require_finite(a, "tensor");
    require_finite(b, "tensor");

    const Eigen::Index ra = a.rows();
    const Eigen::Index rb = b.rows();
    ComplexMatrix out(ra * rb, ra * rb);
    for (Eigen::Index i = 0; i < ra; ++i) {
        for (Eigen::Index j = 0; j < ra; ++j) {
            out.block(i * rb, j * rb, rb, rb) = a(i, j) * b;
        }
    }
    return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix::validated(tensor(a.mat(), b.mat()));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, PairSlot keep) {
    require_square(m, "partial_trace");
    if (m.rows() != 4) {
        throw std::invalid_argument("partial_trace: expected a 4x4 two-qubit matrix, got dim " +
                                    std::to_string(m.rows()));
    }
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (Eigen::Index i = 0; i < 2; ++i) {
        for (Eigen::Index j = 0; j < 2; ++j) {
            for (Eigen::Index k = 0; k < 2; ++k) {
                if (keep == PairSlot::First) {
                    out(i, j) += m(2 * i + k, 2 * j + k);
                } else {
                    out(i, j) += m(2 * k + i, 2 * k + j);
                }
            }
        }
    }
    return out;
}

DensityMatrix partial_trace(const DensityMatrix& m, PairSlot keep) {
    return DensityMatrix::validated(partial_trace(m.mat(), keep));
}

EigSystem eig_hermitian(const ComplexMatrix& m) {
    require_square(m, "eig_hermitian");
    require_finite(m, "eig_hermitian");
    const double herm = hermiticity_defect(m);
    if (herm > tol::density) {
        throw ValidationError(ValidationError::Kind::NotHermitian, herm);
    }

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((m + m.adjoint()) / 2.0);
    const Eigen::Index n = m.rows();
    EigSystem sys;
    sys.values.resize(n);
    sys.vectors.resize(n, n);
    // Eigen returns ascending order; flip to descending.
    for (Eigen::Index i = 0; i < n; ++i) {
        sys.values(i) = solver.eigenvalues()(n - 1 - i);
        sys.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return sys;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("relative_entropy: dimension mismatch " +
                                    std::to_string(rho.dim()) + " vs " + std::to_string(sigma.dim()));
    }

    const EigSystem rho_sys = eig_hermitian(rho.mat());
    double tr_rho_log_rho = 0.0;
    for (Eigen::Index i = 0; i < rho_sys.values.size(); ++i) {
        const double r = rho_sys.values(i);
        if (r > tol::support) {
            tr_rho_log_rho += r * std::log2(r);
        }
    }

    const EigSystem sigma_sys = eig_hermitian(sigma.mat());
    double tr_rho_log_sigma = 0.0;
    for (Eigen::Index i = 0; i < sigma_sys.values.size(); ++i) {
        const double s = sigma_sys.values(i);
        const ComplexVector v = sigma_sys.vectors.col(i);
        const double weight = std::real(Complex(v.adjoint() * rho.mat() * v));
        if (s < tol::support) {
            if (weight > tol::overlap) {
                return std::numeric_limits<double>::infinity();
            }
            continue; // rho has no weight here; the w*log(s) limit is zero
        }
        tr_rho_log_sigma += weight * std::log2(s);
    }

    return std::max(tr_rho_log_rho - tr_rho_log_sigma, 0.0);
}

double fidelity_pure(const ComplexVector& phi, const DensityMatrix& rho) {
    if (phi.size() != rho.dim()) {
        throw std::invalid_argument("fidelity_pure: dimension mismatch " +
                                    std::to_string(phi.size()) + " vs " + std::to_string(rho.dim()));
    }
    if (std::abs(phi.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("fidelity_pure: phi is not a unit vector");
    }
    const double f = std::real(Complex(phi.adjoint() * rho.mat() * phi));
    return std::clamp(f, 0.0, 1.0);
}

} // namespace qpurify
