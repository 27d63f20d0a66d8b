#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmetric/fisher.hpp"
#include "qmetric/matrix.hpp"
#include "qmetric/measurement.hpp"
#include "qmetric/model.hpp"

namespace qmetric {

/// One certification of the information-disturbance inequality
/// J^C <= Delta J^Q at a parameter point.
struct TradeoffReport {
    RealVector theta;
    std::string metric_name;
    FisherMatrix j_classical;
    Matrix delta;  // Delta J^Q, Hermitian m x m
    Matrix gap;    // delta - j_classical
    bool psd_verdict = false;
    double min_gap_eigenvalue = 0.0;
};

TradeoffReport check_tradeoff(const StatisticalModel& model, const Measurement& meas,
                              const RealVector& theta, const MonotoneMetric& metric,
                              double psd_tol = kPsdTol);

/// Residual of the separating property: the QFI of the block-diagonal
/// measurement-channel output, computed independently from the explicit
/// direct-sum state, against J^C + sum_i p_i J'_i.
double check_separating(const StatisticalModel& model, const Measurement& meas,
                        const RealVector& theta, const MonotoneMetric& metric);

/// Min eigenvalue of J^Q(before) - J^Q(after the channel); nonnegative up
/// to tolerance by monotonicity. The channel's outcome grouping is ignored.
double check_monotonicity(const StatisticalModel& model, const Measurement& channel,
                          const RealVector& theta, const MonotoneMetric& metric);

/// RLD equality for pure reversible measurements: Delta J^RLD = J^C, plus
/// the intermediate identity J^RLD(before) = J^RLD(channel output).
struct RldEqualityResult {
    double delta_vs_classical = 0.0;  // ||Delta J^RLD - J^C||_max
    double before_vs_after = 0.0;     // ||J^RLD - J^RLD(E(rho))||_max
};

RldEqualityResult check_rld_equality(const StatisticalModel& model, const Measurement& meas,
                                     const RealVector& theta, double cond_tol = kCondTol);

/// Pure measurements dominate any measurement with the same POVM: equal
/// classical information, no larger disturbance.
struct PureDominanceReport {
    double jc_max_diff = 0.0;            // ||J^C(impure) - J^C(purified)||_max
    double dominance_min_eigenvalue = 0.0;  // min eig of Delta(impure) - Delta(pure)
    Matrix delta_impure;
    Matrix delta_pure;
};

PureDominanceReport check_pure_dominance(const Measurement& impure, const StatisticalModel& model,
                                         const RealVector& theta, const MonotoneMetric& metric);

/// Trace-preserving Kraus channel (single outcome) from the same stacked
/// isometry construction as random_measurement.
Measurement random_channel(Eigen::Index dim, int kraus_count, std::uint64_t seed);

/// A seeded (model, measurement, theta) triple for certification campaigns.
struct RandomInstance {
    StatisticalModel model;
    Measurement meas;
    RealVector theta;
};

RandomInstance random_tradeoff_instance(Eigen::Index dim, std::uint64_t seed);

/// Aggregate of a randomized campaign. Each trial reports a "badness"
/// oriented so that larger is worse; a trial passes when badness <= tol.
struct CampaignSummary {
    int n_trials = 0;
    int n_pass = 0;
    double worst_residual = 0.0;
    std::vector<std::uint64_t> failing_seeds;

    bool all_passed() const { return n_pass == n_trials; }
};

CampaignSummary run_campaign(int n_trials, std::uint64_t campaign_seed, double tol,
                             const std::function<double(std::uint64_t)>& badness);

}  // namespace qmetric
