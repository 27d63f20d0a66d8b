#include "qmetric/divergence.hpp"

#include <cmath>

namespace qmetric {

namespace {

double clamp_noise(double v) {
    return (v < 0.0 && v > -1e-10) ? 0.0 : v;
}

void check_distribution(const RealVector& p, const char* who) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] < -1e-12) throw NotADistribution(std::string(who) + ": negative probability");
        sum += p[i];
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw NotADistribution(std::string(who) + ": probabilities do not sum to 1");
    }
}

}  // namespace

std::string divergence_kind_name(DivergenceKind kind) {
    switch (kind) {
        case DivergenceKind::classical: return "classical";
        case DivergenceKind::quantum_relative: return "quantum_relative";
        case DivergenceKind::belavkin_staszewski: return "belavkin_staszewski";
    }
    return "unknown";
}

DivergenceKind divergence_kind_by_name(std::string_view name) {
    if (name == "classical") return DivergenceKind::classical;
    if (name == "quantum_relative") return DivergenceKind::quantum_relative;
    if (name == "belavkin_staszewski") return DivergenceKind::belavkin_staszewski;
    throw SchemaError("unknown divergence kind '" + std::string(name) + "'");
}

DivergenceValue classical_relative_entropy(const RealVector& p, const RealVector& q,
                                           double prob_tol) {
    if (p.size() != q.size()) {
        throw NotADistribution("classical_relative_entropy: length mismatch");
    }
    check_distribution(p, "classical_relative_entropy");
    check_distribution(q, "classical_relative_entropy");
    DivergenceValue out;
    out.kind = DivergenceKind::classical;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p[i] <= prob_tol) continue;
        if (q[i] <= prob_tol) {
            out.infinite = true;
            return out;
        }
        sum += p[i] * std::log(p[i] / q[i]);
    }
    out.value = clamp_noise(sum);
    return out;
}

DivergenceValue quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         double support_tol) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionMismatch("quantum_relative_entropy: dimensions differ");
    }
    DivergenceValue out;
    out.kind = DivergenceKind::quantum_relative;

    const SpectralDecomposition es = eigh(sigma.matrix());
    const double cutoff_s = support_tol * std::max(es.eigenvalues.maxCoeff(), 0.0);
    Matrix kernel_proj = Matrix::Zero(sigma.dim(), sigma.dim());
    bool sigma_singular = false;
    for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k) {
        if (es.eigenvalues[k] <= cutoff_s) {
            kernel_proj += es.eigenvectors.col(k) * es.eigenvectors.col(k).adjoint();
            sigma_singular = true;
        }
    }
    if (sigma_singular) {
        const double leak = (kernel_proj * rho.matrix()).trace().real();
        if (leak > 1e-9) {
            out.infinite = true;
            return out;
        }
    }

    const SpectralDecomposition er = eigh(rho.matrix());
    const double cutoff_r = support_tol * std::max(er.eigenvalues.maxCoeff(), 0.0);
    double tr_rho_log_rho = 0.0;
    for (Eigen::Index k = 0; k < er.eigenvalues.size(); ++k) {
        const double p = er.eigenvalues[k];
        if (p > cutoff_r) tr_rho_log_rho += p * std::log(p);
    }
    const Matrix log_sigma =
        matfunc_psd(sigma.matrix(), [](double x) { return std::log(x); }, support_tol);
    const double tr_rho_log_sigma = (rho.matrix() * log_sigma).trace().real();
    out.value = clamp_noise(tr_rho_log_rho - tr_rho_log_sigma);
    return out;
}

DivergenceValue bs_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                                    double support_tol) {
    if (rho.dim() != sigma.dim()) {
        throw DimensionMismatch("bs_relative_entropy: dimensions differ");
    }
    const SpectralDecomposition es = eigh(sigma.matrix());
    const double cutoff_s = support_tol * std::max(es.eigenvalues.maxCoeff(), 0.0);
    if (es.eigenvalues.minCoeff() <= cutoff_s) {
        throw SingularSigma("bs_relative_entropy: sigma is singular");
    }
    const Matrix sqrt_rho =
        matfunc_psd(rho.matrix(), [](double x) { return std::sqrt(x); }, support_tol);
    const Matrix inv_sigma =
        es.eigenvectors * es.eigenvalues.cwiseInverse().asDiagonal() * es.eigenvectors.adjoint();
    Matrix x = sqrt_rho * inv_sigma * sqrt_rho;
    x = (x + x.adjoint()).eval() / 2.0;
    const Matrix log_x = matfunc_psd(x, [](double v) { return std::log(v); }, support_tol);

    DivergenceValue out;
    out.kind = DivergenceKind::belavkin_staszewski;
    out.value = clamp_noise((rho.matrix() * log_x).trace().real());
    return out;
}

DivergenceTradeoffReport divergence_tradeoff(const DensityMatrix& rho, const DensityMatrix& sigma,
                                             const Measurement& meas, DivergenceKind kind,
                                             double prob_tol, double support_tol) {
    if (kind == DivergenceKind::classical) {
        throw Error("divergence_tradeoff: kind must be a quantum divergence");
    }
    auto quantum = [&](const DensityMatrix& a, const DensityMatrix& b) {
        return kind == DivergenceKind::quantum_relative
                   ? quantum_relative_entropy(a, b, support_tol)
                   : bs_relative_entropy(a, b, support_tol);
    };

    const OutcomeEnsemble ens_r = apply(meas, rho, prob_tol);
    const OutcomeEnsemble ens_s = apply(meas, sigma, prob_tol);

    DivergenceTradeoffReport report;
    report.lhs =
        classical_relative_entropy(ens_r.probabilities(), ens_s.probabilities(), prob_tol);
    report.before = quantum(rho, sigma);

    for (int i = 0; i < meas.n_outcomes(); ++i) {
        const auto& er = ens_r.entries[i];
        const auto& es = ens_s.entries[i];
        if (er.is_null()) continue;  // weight ~0 regardless of sigma's outcome
        if (es.is_null()) {
            // rho can land on an outcome sigma cannot: infinitely distinguishable
            DivergenceValue inf_term;
            inf_term.kind = kind;
            inf_term.infinite = true;
            report.post_terms.emplace_back(er.probability, inf_term);
            continue;
        }
        report.post_terms.emplace_back(er.probability, quantum(*er.state, *es.state));
    }

    report.finite = !report.lhs.infinite && !report.before.infinite;
    double avg = 0.0;
    for (const auto& [p, term] : report.post_terms) {
        if (term.infinite) report.finite = false;
        else avg += p * term.value;
    }
    if (report.finite) {
        report.rhs = report.before.value - avg;
        report.slack = report.rhs - report.lhs.value;
    }
    return report;
}

RealMatrix local_expansion_metric(const StatisticalModel& model, const RealVector& theta,
                                  DivergenceKind kind, double delta) {
    if (kind == DivergenceKind::classical) {
        throw Error("local_expansion_metric: kind must be a quantum divergence");
    }
    if (model.param_dim() != 1) {
        throw Error("local_expansion_metric: only single-parameter models are supported");
    }
    RealVector shifted = theta;
    shifted[0] += delta;
    if (!model.domain().contains(theta) || !model.domain().contains(shifted)) {
        throw OutOfDomain("local_expansion_metric: theta or theta+delta outside the domain");
    }
    const DensityMatrix rho_0(model.state_at(theta));
    const DensityMatrix rho_d(model.state_at(shifted));
    const DivergenceValue d = kind == DivergenceKind::quantum_relative
                                  ? quantum_relative_entropy(rho_0, rho_d)
                                  : bs_relative_entropy(rho_0, rho_d);
    if (d.infinite) {
        throw Error("local_expansion_metric: divergence is infinite at this point");
    }
    RealMatrix out(1, 1);
    out(0, 0) = 2.0 * d.value / (delta * delta);
    return out;
}

}  // namespace qmetric
