#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qmetric/matrix.hpp"
#include "qmetric/measurement.hpp"
#include "qmetric/model.hpp"

namespace qmetric {

/// Monotone quantum Fisher metric, described by an operator monotone
/// function f on (0, inf) with f(1) = 1. Operator monotonicity itself is not
/// checked at runtime; the presets are trusted, user-supplied functions are
/// flagged via `trusted`.
struct MonotoneMetric {
    std::string name;
    std::function<double(double)> f;
    bool is_symmetric = true;  // x f(1/x) == f(x)
    bool tolerates_rank_deficiency = false;
    // lim_{y->0+} y f(1/y); equals f(0+) for symmetric metrics. Needed to
    // extend the eigenbasis action to pairs touching the numerical kernel.
    double transpose_at_zero = 0.0;
    bool trusted = true;
};

MonotoneMetric sld_metric();       // f(x) = (1+x)/2, the minimal metric
MonotoneMetric rld_metric();       // f(x) = x, non-symmetric
MonotoneMetric real_rld_metric();  // f(x) = 2x/(x+1), the maximal metric
MonotoneMetric bkm_metric();       // f(x) = (x-1)/log x

/// Resolves "sld" | "rld" | "real_rld" | "bkm"; throws UnknownMetric.
MonotoneMetric metric_by_name(std::string_view name);
std::vector<MonotoneMetric> preset_metrics();

/// User-supplied metric; validates f(1) = 1 within 1e-12 and marks the
/// result untrusted.
MonotoneMetric custom_metric(std::string name, std::function<double(double)> f,
                             bool is_symmetric);

struct FisherMatrix {
    Matrix mat;  // m x m, Hermitian; real symmetric for symmetric metrics
    std::string metric_name;
};

/// Classical Fisher information of an outcome distribution,
/// [J]_ab = sum_i (d_a p_i)(d_b p_i) / p_i over outcomes with p_i > prob_tol.
/// An outcome at the boundary (p_i <= prob_tol) carrying a significant
/// derivative raises SingularDistribution.
FisherMatrix classical_fisher(const RealVector& probs, const std::vector<RealVector>& dprobs,
                              double prob_tol = kProbTol);

/// Quantum Fisher information for a monotone metric, computed through the
/// eigenbasis action of K_rho: on |k><l| the superoperator acts by the
/// scalar c_kl = p_l f(p_k / p_l), so
/// [J]_ab = sum_kl conj(d_a rho)_kl (d_b rho)_kl / c_kl.
/// Pairs whose action falls below the support cutoff must carry no
/// derivative weight; otherwise RankDeficient is raised. Only metrics with
/// tolerates_rank_deficiency (SLD) accept kernel-touching pairs.
FisherMatrix quantum_fisher(const Matrix& state, const std::vector<Matrix>& derivatives,
                            const MonotoneMetric& metric, double support_tol = kSupportTol);
FisherMatrix quantum_fisher(const ModelPoint& point, const MonotoneMetric& metric,
                            double support_tol = kSupportTol);

/// Quantum Fisher information lost to a measurement:
/// delta = J^Q(before) - sum_i p_i J^Q(post-measurement family i).
struct DisturbanceResult {
    FisherMatrix j_quantum_before;
    std::vector<std::pair<double, FisherMatrix>> per_outcome;  // (p_i, J'_i), null outcomes dropped
    Matrix delta;
};

DisturbanceResult disturbance(const ModelPoint& point, const Measurement& meas,
                              const MonotoneMetric& metric, double support_tol = kSupportTol,
                              double prob_tol = kProbTol);
DisturbanceResult disturbance(const StatisticalModel& model, const Measurement& meas,
                              const RealVector& theta, const MonotoneMetric& metric,
                              double support_tol = kSupportTol, double prob_tol = kProbTol);

/// Smallest disturbance over a metric list. Scalar comparison for
/// single-parameter models; the trace is used as a (flagged) proxy when the
/// candidate matrices can be Loewner-incomparable (m >= 2).
struct InfimumResult {
    std::string metric_name;
    Matrix delta;
    bool trace_proxy = false;
};

InfimumResult infimum_disturbance(const StatisticalModel& model, const Measurement& meas,
                                  const RealVector& theta,
                                  const std::vector<MonotoneMetric>& metrics);

}  // namespace qmetric
