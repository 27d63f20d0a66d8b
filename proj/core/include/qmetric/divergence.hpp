#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qmetric/matrix.hpp"
#include "qmetric/measurement.hpp"
#include "qmetric/model.hpp"

namespace qmetric {

enum class DivergenceKind { classical, quantum_relative, belavkin_staszewski };

std::string divergence_kind_name(DivergenceKind kind);
DivergenceKind divergence_kind_by_name(std::string_view name);

/// Extended-real divergence value: finite (>= 0 up to a clamped -1e-10
/// noise band) or +infinity. Infinity is an explicit flag, never a sentinel
/// float inside arithmetic.
struct DivergenceValue {
    double value = 0.0;  // meaningful only when !infinite
    bool infinite = false;
    DivergenceKind kind = DivergenceKind::classical;

    double as_double() const {
        return infinite ? std::numeric_limits<double>::infinity() : value;
    }
};

/// sum_{p_i > prob_tol} p_i log(p_i / q_i), natural log; +infinity on
/// support violation.
DivergenceValue classical_relative_entropy(const RealVector& p, const RealVector& q,
                                           double prob_tol = kProbTol);

/// tr rho (log rho - log sigma) on supports; +infinity when rho leaks
/// outside the support of sigma (tr(P_ker(sigma) rho) > 1e-9).
DivergenceValue quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         double support_tol = kSupportTol);

/// Belavkin-Staszewski relative entropy tr rho log(rho^{1/2} sigma^{-1}
/// rho^{1/2}); requires sigma full rank, the log is taken on the support of
/// the conjugated operator (= support of rho).
DivergenceValue bs_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                    double support_tol = kSupportTol);

/// One-sided tradeoff report for D^C(p||q) <= D^Q(rho||sigma)
/// - sum_i p_i D^Q(rho_i||sigma_i): outcome statistics of the same
/// measurement applied to both states, outcome-aligned.
struct DivergenceTradeoffReport {
    DivergenceValue lhs;     // D^C(p||q)
    DivergenceValue before;  // D^Q(rho||sigma)
    std::vector<std::pair<double, DivergenceValue>> post_terms;  // (p_i, D^Q(rho_i||sigma_i))
    bool finite = true;  // all terms finite; slack/rhs only meaningful then
    double rhs = 0.0;
    double slack = 0.0;

    bool vacuous() const { return !finite; }
};

DivergenceTradeoffReport divergence_tradeoff(const DensityMatrix& rho, const DensityMatrix& sigma,
                                             const Measurement& meas, DivergenceKind kind,
                                             double prob_tol = kProbTol,
                                             double support_tol = kSupportTol);

/// Local quadratic expansion of a divergence along a one-parameter model:
/// 2 D(rho_theta || rho_{theta+delta}) / delta^2, which converges to the BKM
/// metric (quantum_relative) or the real RLD metric (belavkin_staszewski).
RealMatrix local_expansion_metric(const StatisticalModel& model, const RealVector& theta,
                                  DivergenceKind kind, double delta = 1e-3);

}  // namespace qmetric
