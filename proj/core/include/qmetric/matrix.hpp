#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "qmetric/errors.hpp"

namespace qmetric {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Default tolerances. Every operation takes these as explicit parameters;
// the constants below are the documented defaults, not hidden state.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kSupportTol = 1e-12;  // relative to max |eigenvalue|
inline constexpr double kProbTol = 1e-12;
inline constexpr double kPsdTol = 1e-8;
inline constexpr double kCondTol = 1e-8;

double max_abs(const Matrix& a);
double hermiticity_residual(const Matrix& a);
bool is_hermitian(const Matrix& a, double tol = kHermitianTol);
void require_hermitian(const Matrix& a, double tol = kHermitianTol);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending,
/// eigenvector columns unitary with the first significant component of each
/// column made real positive, so repeated runs produce identical bytes.
struct SpectralDecomposition {
    RealVector eigenvalues;
    Matrix eigenvectors;

    Matrix reconstruct() const;
};

SpectralDecomposition eigh(const Matrix& h, double hermiticity_tol = kHermitianTol);

/// Spectral function U diag(phi(lambda)) U^dag. Eigenvalues with
/// |lambda| <= support_tol * max|lambda| are treated as exact zeros and
/// mapped to 0; phi producing a non-finite value at a retained eigenvalue
/// raises DomainError.
Matrix matfunc(const Matrix& h, const std::function<double(double)>& phi,
               double support_tol = kSupportTol);

/// Variant for operators that are positive semidefinite up to numerical
/// noise (density matrices, POVM elements): eigenvalues <= the support
/// cutoff, including small negatives, are clamped to exact zeros before
/// phi is applied on the remaining support.
Matrix matfunc_psd(const Matrix& h, const std::function<double(double)>& phi,
                   double support_tol = kSupportTol);

/// Block-diagonal sum of weight_i * block_i. Weights must be >= 0.
Matrix direct_sum(const std::vector<std::pair<double, Matrix>>& blocks);

double min_eigenvalue(const Matrix& h);
bool is_psd(const Matrix& h, double tol);

/// Validated density operator: Hermitian, unit trace, spectrum >= -1e-10.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix m, double hermiticity_tol = kHermitianTol,
                           double trace_tol = 1e-10, double negativity_tol = 1e-10);

    const Matrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

    static DensityMatrix maximally_mixed(Eigen::Index dim);

private:
    Matrix mat_;
};

}  // namespace qmetric
