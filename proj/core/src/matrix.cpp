#include "qmetric/matrix.hpp"

#include <cmath>
#include <sstream>

namespace qmetric {

double max_abs(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const Matrix& a) {
    return max_abs(a - a.adjoint());
}

bool is_hermitian(const Matrix& a, double tol) {
    return a.rows() == a.cols() && hermiticity_residual(a) <= tol;
}

void require_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) {
        throw NonHermitianInput("matrix is not square");
    }
    double res = hermiticity_residual(a);
    if (res > tol) {
        std::ostringstream msg;
        msg << "matrix is not Hermitian: max |H - H^dag| = " << res << " > " << tol;
        throw NonHermitianInput(msg.str());
    }
}

Matrix SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition eigh(const Matrix& h, double hermiticity_tol) {
    require_hermitian(h, hermiticity_tol);
    Eigen::SelfAdjointEigenSolver<Matrix> solver((h + h.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw Error("eigh: eigensolver failed to converge");
    }
    SpectralDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
    // Fix the free column phases: first significant component real positive.
    for (Eigen::Index c = 0; c < out.eigenvectors.cols(); ++c) {
        for (Eigen::Index r = 0; r < out.eigenvectors.rows(); ++r) {
            Complex v = out.eigenvectors(r, c);
            if (std::abs(v) > 1e-12) {
                out.eigenvectors.col(c) *= std::conj(v) / std::abs(v);
                break;
            }
        }
    }
    return out;
}

namespace {

Matrix spectral_apply(const SpectralDecomposition& sd, const std::function<double(double)>& phi,
                      double support_tol, bool clamp_negatives) {
    const Eigen::Index n = sd.eigenvalues.size();
    double scale = n > 0 ? sd.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    if (clamp_negatives) {
        scale = n > 0 ? std::max(sd.eigenvalues.maxCoeff(), 0.0) : 0.0;
    }
    const double cutoff = support_tol * scale;
    RealVector mapped(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lam = sd.eigenvalues[k];
        const bool in_kernel = clamp_negatives ? (lam <= cutoff) : (std::abs(lam) <= cutoff);
        if (in_kernel) {
            mapped[k] = 0.0;
            continue;
        }
        const double v = phi(lam);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "matfunc: function undefined at retained eigenvalue " << lam;
            throw DomainError(msg.str());
        }
        mapped[k] = v;
    }
    return sd.eigenvectors * mapped.asDiagonal() * sd.eigenvectors.adjoint();
}

}  // namespace

Matrix matfunc(const Matrix& h, const std::function<double(double)>& phi, double support_tol) {
    return spectral_apply(eigh(h), phi, support_tol, /*clamp_negatives=*/false);
}

Matrix matfunc_psd(const Matrix& h, const std::function<double(double)>& phi, double support_tol) {
    return spectral_apply(eigh(h), phi, support_tol, /*clamp_negatives=*/true);
}

Matrix direct_sum(const std::vector<std::pair<double, Matrix>>& blocks) {
    Eigen::Index total = 0;
    for (const auto& [w, b] : blocks) {
        if (w < 0.0) throw Error("direct_sum: negative block weight");
        if (b.rows() != b.cols()) throw Error("direct_sum: non-square block");
        total += b.rows();
    }
    Matrix out = Matrix::Zero(total, total);
    Eigen::Index offset = 0;
    for (const auto& [w, b] : blocks) {
        out.block(offset, offset, b.rows(), b.rows()) = w * b;
        offset += b.rows();
    }
    return out;
}

double min_eigenvalue(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver((h + h.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("min_eigenvalue: eigensolver failed to converge");
    }
    return solver.eigenvalues().minCoeff();
}

bool is_psd(const Matrix& h, double tol) {
    return min_eigenvalue(h) >= -tol;
}

DensityMatrix::DensityMatrix(Matrix m, double hermiticity_tol, double trace_tol,
                             double negativity_tol)
    : mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() == 0) {
        throw InvalidDensityMatrix("density matrix must be square and non-empty");
    }
    const double herm = hermiticity_residual(mat_);
    if (herm > hermiticity_tol) {
        std::ostringstream msg;
        msg << "density matrix not Hermitian: residual " << herm;
        throw InvalidDensityMatrix(msg.str());
    }
    const double tr_err = std::abs(mat_.trace() - Complex(1.0, 0.0));
    if (tr_err > trace_tol) {
        std::ostringstream msg;
        msg << "density matrix trace differs from 1 by " << tr_err;
        throw InvalidDensityMatrix(msg.str());
    }
    const double lam_min = min_eigenvalue(mat_);
    if (lam_min < -negativity_tol) {
        std::ostringstream msg;
        msg << "density matrix has eigenvalue " << lam_min << " below -" << negativity_tol;
        throw InvalidDensityMatrix(msg.str());
    }
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

}  // namespace qmetric
