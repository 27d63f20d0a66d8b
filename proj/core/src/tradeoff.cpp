#include "qmetric/tradeoff.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qmetric/rng.hpp"

namespace qmetric {

namespace {

// Outcome probabilities and their chain-rule derivatives
// d_a p_i = sum_j tr(K_ij (d_a rho) K_ij^dag).
std::pair<RealVector, std::vector<RealVector>> outcome_statistics(const Measurement& meas,
                                                                  const ModelPoint& point) {
    const int n = meas.n_outcomes();
    const int m = static_cast<int>(point.derivatives.size());
    RealVector p(n);
    std::vector<RealVector> dp(m, RealVector(n));
    for (int i = 0; i < n; ++i) {
        p[i] = propagate_outcome(meas, i, point.state.matrix()).trace().real();
        for (int a = 0; a < m; ++a) {
            dp[a][i] = propagate_outcome(meas, i, point.derivatives[a]).trace().real();
        }
    }
    return {std::move(p), std::move(dp)};
}

// The direct-sum channel output and its parameter derivatives, for the
// independent-path QFI of {E^meas(rho_theta)}.
std::pair<Matrix, std::vector<Matrix>> channel_output_family(const Measurement& meas,
                                                             const ModelPoint& point) {
    std::vector<std::pair<double, Matrix>> state_blocks;
    state_blocks.reserve(meas.n_outcomes());
    for (int i = 0; i < meas.n_outcomes(); ++i) {
        Matrix sigma = propagate_outcome(meas, i, point.state.matrix());
        state_blocks.emplace_back(1.0, ((sigma + sigma.adjoint()) / 2.0).eval());
    }
    Matrix omega = direct_sum(state_blocks);

    std::vector<Matrix> derivs;
    derivs.reserve(point.derivatives.size());
    for (const auto& d : point.derivatives) {
        std::vector<std::pair<double, Matrix>> blocks;
        blocks.reserve(meas.n_outcomes());
        for (int i = 0; i < meas.n_outcomes(); ++i) {
            Matrix pushed = propagate_outcome(meas, i, d);
            blocks.emplace_back(1.0, ((pushed + pushed.adjoint()) / 2.0).eval());
        }
        derivs.push_back(direct_sum(blocks));
    }
    return {std::move(omega), std::move(derivs)};
}

}  // namespace

TradeoffReport check_tradeoff(const StatisticalModel& model, const Measurement& meas,
                              const RealVector& theta, const MonotoneMetric& metric,
                              double psd_tol) {
    const ModelPoint point = evaluate(model, theta);
    auto [p, dp] = outcome_statistics(meas, point);
    FisherMatrix jc = classical_fisher(p, dp);
    DisturbanceResult dist = disturbance(point, meas, metric);

    TradeoffReport report;
    report.theta = theta;
    report.metric_name = metric.name;
    report.j_classical = std::move(jc);
    report.delta = dist.delta;
    report.gap = dist.delta - report.j_classical.mat;
    report.min_gap_eigenvalue = min_eigenvalue(report.gap);
    report.psd_verdict = report.min_gap_eigenvalue >= -psd_tol;
    return report;
}

double check_separating(const StatisticalModel& model, const Measurement& meas,
                        const RealVector& theta, const MonotoneMetric& metric) {
    const ModelPoint point = evaluate(model, theta);

    auto [p, dp] = outcome_statistics(meas, point);
    const FisherMatrix jc = classical_fisher(p, dp);
    const DisturbanceResult dist = disturbance(point, meas, metric);
    Matrix rhs = jc.mat;
    for (const auto& [pi, ji] : dist.per_outcome) {
        rhs += pi * ji.mat;
    }

    auto [omega, omega_derivs] = channel_output_family(meas, point);
    const FisherMatrix j_channel = quantum_fisher(omega, omega_derivs, metric);
    return max_abs(j_channel.mat - rhs);
}

double check_monotonicity(const StatisticalModel& model, const Measurement& channel,
                          const RealVector& theta, const MonotoneMetric& metric) {
    const ModelPoint point = evaluate(model, theta);
    const FisherMatrix before = quantum_fisher(point, metric);

    Matrix mapped = propagate_channel(channel, point.state.matrix());
    mapped = (mapped + mapped.adjoint()).eval() / 2.0;
    std::vector<Matrix> mapped_derivs;
    mapped_derivs.reserve(point.derivatives.size());
    for (const auto& d : point.derivatives) {
        Matrix pushed = propagate_channel(channel, d);
        mapped_derivs.push_back(((pushed + pushed.adjoint()) / 2.0).eval());
    }
    const FisherMatrix after = quantum_fisher(mapped, mapped_derivs, metric);
    return min_eigenvalue(before.mat - after.mat);
}

RldEqualityResult check_rld_equality(const StatisticalModel& model, const Measurement& meas,
                                     const RealVector& theta, double cond_tol) {
    if (!is_pure(meas)) {
        throw NotPure("check_rld_equality: measurement is not pure");
    }
    if (!is_reversible(meas, cond_tol)) {
        throw NotReversible("check_rld_equality: some Kraus operator is not invertible");
    }
    const MonotoneMetric metric = rld_metric();
    const ModelPoint point = evaluate(model, theta);

    auto [p, dp] = outcome_statistics(meas, point);
    const FisherMatrix jc = classical_fisher(p, dp);
    const DisturbanceResult dist = disturbance(point, meas, metric);

    auto [omega, omega_derivs] = channel_output_family(meas, point);
    const FisherMatrix j_channel = quantum_fisher(omega, omega_derivs, metric);

    RldEqualityResult out;
    out.delta_vs_classical = max_abs(dist.delta - jc.mat);
    out.before_vs_after = max_abs(dist.j_quantum_before.mat - j_channel.mat);
    return out;
}

PureDominanceReport check_pure_dominance(const Measurement& impure, const StatisticalModel& model,
                                         const RealVector& theta, const MonotoneMetric& metric) {
    const Measurement pure = purify(povm(impure));
    const ModelPoint point = evaluate(model, theta);

    auto [p_i, dp_i] = outcome_statistics(impure, point);
    auto [p_p, dp_p] = outcome_statistics(pure, point);
    const FisherMatrix jc_impure = classical_fisher(p_i, dp_i);
    const FisherMatrix jc_pure = classical_fisher(p_p, dp_p);

    const DisturbanceResult d_impure = disturbance(point, impure, metric);
    const DisturbanceResult d_pure = disturbance(point, pure, metric);

    PureDominanceReport report;
    report.jc_max_diff = max_abs(jc_impure.mat - jc_pure.mat);
    report.dominance_min_eigenvalue = min_eigenvalue(d_impure.delta - d_pure.delta);
    report.delta_impure = d_impure.delta;
    report.delta_pure = d_pure.delta;
    return report;
}

Measurement random_channel(Eigen::Index dim, int kraus_count, std::uint64_t seed) {
    return random_measurement(dim, 1, kraus_count, seed);
}

RandomInstance random_tradeoff_instance(Eigen::Index dim, std::uint64_t seed) {
    Rng rng(Rng::derive(seed, 0));
    const int param_dim = rng.uniform() < 0.25 ? 2 : 1;
    const int n_outcomes = rng.uniform() < 0.5 ? 2 : 3;
    const int ops_per_outcome = rng.uniform() < 0.3 ? 2 : 1;
    RealVector theta(param_dim);
    for (int a = 0; a < param_dim; ++a) {
        theta[a] = rng.uniform() - 0.5;
    }
    return RandomInstance{random_model(dim, param_dim, Rng::derive(seed, 1)),
                          random_measurement(dim, n_outcomes, ops_per_outcome, Rng::derive(seed, 2)),
                          std::move(theta)};
}

CampaignSummary run_campaign(int n_trials, std::uint64_t campaign_seed, double tol,
                             const std::function<double(std::uint64_t)>& badness) {
    CampaignSummary summary;
    summary.n_trials = n_trials;
    summary.worst_residual = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < n_trials; ++t) {
        const std::uint64_t trial_seed = Rng::derive(campaign_seed, static_cast<std::uint64_t>(t));
        const double b = badness(trial_seed);
        summary.worst_residual = std::max(summary.worst_residual, b);
        if (b <= tol) {
            ++summary.n_pass;
        } else {
            summary.failing_seeds.push_back(trial_seed);
        }
    }
    if (n_trials == 0) summary.worst_residual = 0.0;
    return summary;
}

}  // namespace qmetric
