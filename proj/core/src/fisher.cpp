#include "qmetric/fisher.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace qmetric {

namespace {

double bkm_f(double x) {
    const double t = x - 1.0;
    // Removable singularity at x = 1: series branch for (x-1)/log(x).
    if (std::abs(t) < 1e-4) {
        return 1.0 + t / 2.0 - t * t / 12.0 + t * t * t / 24.0;
    }
    return t / std::log(x);
}

void check_normalized(const MonotoneMetric& m) {
    if (std::abs(m.f(1.0) - 1.0) > 1e-12) {
        throw Error("metric '" + m.name + "' violates f(1) = 1");
    }
}

}  // namespace

MonotoneMetric sld_metric() {
    MonotoneMetric m{"sld", [](double x) { return 0.5 * (1.0 + x); }, true, true, 0.5, true};
    return m;
}

MonotoneMetric rld_metric() {
    MonotoneMetric m{"rld", [](double x) { return x; }, false, false, 1.0, true};
    return m;
}

MonotoneMetric real_rld_metric() {
    MonotoneMetric m{"real_rld", [](double x) { return 2.0 * x / (x + 1.0); }, true, false, 0.0,
                     true};
    return m;
}

MonotoneMetric bkm_metric() {
    MonotoneMetric m{"bkm", bkm_f, true, false, 0.0, true};
    return m;
}

MonotoneMetric metric_by_name(std::string_view name) {
    if (name == "sld") return sld_metric();
    if (name == "rld") return rld_metric();
    if (name == "real_rld") return real_rld_metric();
    if (name == "bkm") return bkm_metric();
    throw UnknownMetric("unknown metric '" + std::string(name) + "'");
}

std::vector<MonotoneMetric> preset_metrics() {
    return {sld_metric(), bkm_metric(), real_rld_metric(), rld_metric()};
}

MonotoneMetric custom_metric(std::string name, std::function<double(double)> f,
                             bool is_symmetric) {
    MonotoneMetric m;
    m.name = std::move(name);
    m.f = std::move(f);
    m.is_symmetric = is_symmetric;
    m.tolerates_rank_deficiency = false;
    m.trusted = false;
    // Numerical estimate of lim y f(1/y); exact for the presets, good enough
    // for a user metric that is actually operator monotone.
    m.transpose_at_zero = 1e-12 * m.f(1e12);
    check_normalized(m);
    return m;
}

FisherMatrix classical_fisher(const RealVector& probs, const std::vector<RealVector>& dprobs,
                              double prob_tol) {
    const Eigen::Index n = probs.size();
    const int m = static_cast<int>(dprobs.size());
    if (m < 1) throw NotADistribution("classical_fisher: no derivative vectors");
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (probs[i] < -1e-12) {
            throw NotADistribution("classical_fisher: negative probability");
        }
        sum += probs[i];
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw NotADistribution("classical_fisher: probabilities do not sum to 1");
    }
    for (const auto& dp : dprobs) {
        if (dp.size() != n) throw NotADistribution("classical_fisher: derivative length mismatch");
        if (std::abs(dp.sum()) > 1e-8) {
            throw NotADistribution("classical_fisher: derivative components do not sum to 0");
        }
    }
    RealMatrix j = RealMatrix::Zero(m, m);
    const double boundary_tol = std::sqrt(prob_tol);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (probs[i] > prob_tol) {
            for (int a = 0; a < m; ++a) {
                for (int b = 0; b < m; ++b) {
                    j(a, b) += dprobs[a][i] * dprobs[b][i] / probs[i];
                }
            }
        } else {
            for (int a = 0; a < m; ++a) {
                if (std::abs(dprobs[a][i]) > boundary_tol) {
                    std::ostringstream msg;
                    msg << "classical_fisher: outcome " << i
                        << " has vanishing probability but derivative " << dprobs[a][i];
                    throw SingularDistribution(msg.str());
                }
            }
        }
    }
    return FisherMatrix{j.cast<Complex>(), "classical"};
}

namespace {

// Scalar action of K_rho on |k><l|: c_kl = p_l f(p_k/p_l), extended by the
// transpose form p_k * (p_l/p_k) f(p_k/p_l) when p_l sits in the kernel.
double metric_action(const MonotoneMetric& metric, double pk, double pl, double cutoff) {
    pk = std::max(pk, 0.0);
    pl = std::max(pl, 0.0);
    if (pl > cutoff) return pl * metric.f(pk / pl);
    if (pk > cutoff) {
        const double y = pl / pk;
        return y > 1e-15 ? pk * y * metric.f(1.0 / y) : pk * metric.transpose_at_zero;
    }
    return 0.0;
}

}  // namespace

FisherMatrix quantum_fisher(const Matrix& state, const std::vector<Matrix>& derivatives,
                            const MonotoneMetric& metric, double support_tol) {
    const int m = static_cast<int>(derivatives.size());
    if (m < 1) throw Error("quantum_fisher: no derivatives supplied");
    const SpectralDecomposition sd = eigh(state);
    const Eigen::Index d = sd.eigenvalues.size();
    const double scale = sd.eigenvalues.maxCoeff();
    if (scale <= 0.0) throw RankDeficient("quantum_fisher: state has no positive spectrum");
    const double cutoff = support_tol * scale;
    const double dead_tol = std::sqrt(support_tol) * scale;

    std::vector<Matrix> db;
    db.reserve(m);
    for (const auto& dv : derivatives) {
        if (dv.rows() != d || dv.cols() != d) {
            throw DimensionMismatch("quantum_fisher: derivative has wrong shape");
        }
        db.push_back(sd.eigenvectors.adjoint() * dv * sd.eigenvectors);
    }

    Matrix j = Matrix::Zero(m, m);
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            const double pk = sd.eigenvalues[k], pl = sd.eigenvalues[l];
            const bool on_support = pk > cutoff && pl > cutoff;
            const double c = metric_action(metric, pk, pl, cutoff);
            const bool usable =
                metric.tolerates_rank_deficiency ? c > cutoff : (on_support && c > cutoff);
            if (usable) {
                for (int a = 0; a < m; ++a) {
                    for (int b = 0; b < m; ++b) {
                        j(a, b) += std::conj(db[a](k, l)) * db[b](k, l) / c;
                    }
                }
            } else {
                // A pair outside the metric's support may not carry weight;
                // that would mean a divergent (rank-changing) direction.
                for (int a = 0; a < m; ++a) {
                    if (std::abs(db[a](k, l)) > dead_tol) {
                        std::ostringstream msg;
                        msg << "quantum_fisher: derivative weight " << std::abs(db[a](k, l))
                            << " on unsupported eigenpair (" << pk << ", " << pl << ") for metric "
                            << metric.name;
                        throw RankDeficient(msg.str());
                    }
                }
            }
        }
    }
    return FisherMatrix{std::move(j), metric.name};
}

FisherMatrix quantum_fisher(const ModelPoint& point, const MonotoneMetric& metric,
                            double support_tol) {
    return quantum_fisher(point.state.matrix(), point.derivatives, metric, support_tol);
}

DisturbanceResult disturbance(const ModelPoint& point, const Measurement& meas,
                              const MonotoneMetric& metric, double support_tol, double prob_tol) {
    if (point.state.dim() != meas.dim()) {
        throw DimensionMismatch("disturbance: state and measurement dimensions differ");
    }
    const int m = static_cast<int>(point.derivatives.size());
    FisherMatrix before = quantum_fisher(point, metric, support_tol);

    Matrix weighted = Matrix::Zero(m, m);
    std::vector<std::pair<double, FisherMatrix>> per_outcome;
    for (int i = 0; i < meas.n_outcomes(); ++i) {
        Matrix sigma = propagate_outcome(meas, i, point.state.matrix());
        sigma = (sigma + sigma.adjoint()).eval() / 2.0;
        const double p = sigma.trace().real();
        if (p <= prob_tol) continue;  // null outcome, excluded from the average
        const Matrix rho_i = sigma / p;
        std::vector<Matrix> derivs_i;
        derivs_i.reserve(m);
        for (int a = 0; a < m; ++a) {
            const Matrix pushed = propagate_outcome(meas, i, point.derivatives[a]);
            const double dp = pushed.trace().real();
            Matrix d = (pushed - dp * rho_i) / p;
            derivs_i.push_back(((d + d.adjoint()) / 2.0).eval());
        }
        FisherMatrix j_i = quantum_fisher(rho_i, derivs_i, metric, support_tol);
        weighted += p * j_i.mat;
        per_outcome.emplace_back(p, std::move(j_i));
    }
    Matrix delta = before.mat - weighted;
    return DisturbanceResult{std::move(before), std::move(per_outcome), std::move(delta)};
}

DisturbanceResult disturbance(const StatisticalModel& model, const Measurement& meas,
                              const RealVector& theta, const MonotoneMetric& metric,
                              double support_tol, double prob_tol) {
    return disturbance(evaluate(model, theta), meas, metric, support_tol, prob_tol);
}

InfimumResult infimum_disturbance(const StatisticalModel& model, const Measurement& meas,
                                  const RealVector& theta,
                                  const std::vector<MonotoneMetric>& metrics) {
    if (metrics.empty()) throw Error("infimum_disturbance: empty metric list");
    const ModelPoint point = evaluate(model, theta);
    const bool trace_proxy = model.param_dim() >= 2;
    InfimumResult best;
    double best_value = std::numeric_limits<double>::infinity();
    for (const auto& metric : metrics) {
        DisturbanceResult d = disturbance(point, meas, metric);
        const double value =
            trace_proxy ? d.delta.trace().real() : d.delta(0, 0).real();
        if (value < best_value) {
            best_value = value;
            best = InfimumResult{metric.name, d.delta, trace_proxy};
        }
    }
    return best;
}

}  // namespace qmetric
