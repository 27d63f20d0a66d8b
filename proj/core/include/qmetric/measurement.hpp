#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qmetric/matrix.hpp"

namespace qmetric {

/// Quantum measurement as an outcome-indexed collection of Kraus operators
/// {K_ij}: outcome i groups the inner index j. Normalization
/// sum_ij K^dag K = I is enforced at construction.
class Measurement {
public:
    Measurement(Eigen::Index dim, std::vector<std::vector<Matrix>> outcomes,
                double normalization_tol = 1e-9);

    Eigen::Index dim() const { return dim_; }
    int n_outcomes() const { return static_cast<int>(outcomes_.size()); }
    const std::vector<std::vector<Matrix>>& outcomes() const { return outcomes_; }
    const std::vector<Matrix>& kraus(int outcome) const { return outcomes_[outcome]; }

    double normalization_residual() const;

private:
    Eigen::Index dim_;
    std::vector<std::vector<Matrix>> outcomes_;
};

/// ||sum_ij K^dag K - I||_max for a raw operator collection, usable before a
/// Measurement is constructed (configuration validation).
double kraus_normalization_residual(Eigen::Index dim,
                                    const std::vector<std::vector<Matrix>>& outcomes);

struct OutcomeState {
    double probability = 0.0;
    std::optional<DensityMatrix> state;  // empty for null outcomes (p <= prob_tol)

    bool is_null() const { return !state.has_value(); }
};

struct OutcomeEnsemble {
    std::vector<OutcomeState> entries;

    RealVector probabilities() const;
};

struct Povm {
    std::vector<Matrix> elements;
};

/// sum_j K_ij A K_ij^dag for one outcome. Linear in A, so it propagates both
/// states and their parameter derivatives.
Matrix propagate_outcome(const Measurement& meas, int outcome, const Matrix& a);

/// Full channel action sum_ij K_ij A K_ij^dag (outcome structure ignored).
Matrix propagate_channel(const Measurement& meas, const Matrix& a);

/// Outcome probabilities p_i = sum_j tr(K rho K^dag) and normalized
/// post-measurement states.
OutcomeEnsemble apply(const Measurement& meas, const DensityMatrix& rho,
                      double prob_tol = kProbTol);

/// Block-diagonal channel output: direct sum over outcomes of the
/// unnormalized post-measurement blocks sum_j K rho K^dag. Trace one.
Matrix meas_channel_state(const Measurement& meas, const DensityMatrix& rho);

Povm povm(const Measurement& meas);

/// Pure measurement K_i = E_i^{1/2} extracting the same outcome statistics
/// as any measurement with POVM {E_i}.
Measurement purify(const Povm& p, double support_tol = kSupportTol);

bool is_pure(const Measurement& meas);

/// Defined for pure measurements only: true iff every K_i has smallest
/// singular value above cond_tol.
bool is_reversible(const Measurement& meas, double cond_tol = kCondTol);

/// Two-outcome diagonal qubit measurement with operator angles
/// theta_m/2 -+ sigma_m/4 (cosines for outcome 1, sines for outcome 2).
Measurement royer(double theta_m, double sigma_m);

Measurement identity_measurement(Eigen::Index dim);

/// Seeded random measurement: a Gaussian (n*ops*dim) x dim block column is
/// orthonormalized and sliced back into Kraus operators, so normalization
/// holds to machine precision.
Measurement random_measurement(Eigen::Index dim, int n_outcomes, int ops_per_outcome,
                               std::uint64_t seed);

}  // namespace qmetric
