#include "qmetric/measurement.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "qmetric/rng.hpp"

namespace qmetric {

double kraus_normalization_residual(Eigen::Index dim,
                                    const std::vector<std::vector<Matrix>>& outcomes) {
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& ops : outcomes) {
        for (const auto& k : ops) {
            sum += k.adjoint() * k;
        }
    }
    return max_abs(sum - Matrix::Identity(dim, dim));
}

Measurement::Measurement(Eigen::Index dim, std::vector<std::vector<Matrix>> outcomes,
                         double normalization_tol)
    : dim_(dim), outcomes_(std::move(outcomes)) {
    if (dim_ < 1) throw Error("Measurement: dimension must be positive");
    if (outcomes_.empty()) throw Error("Measurement: at least one outcome required");
    for (const auto& ops : outcomes_) {
        if (ops.empty()) throw Error("Measurement: outcome without Kraus operators");
        for (const auto& k : ops) {
            if (k.rows() != dim_ || k.cols() != dim_) {
                throw DimensionMismatch("Measurement: Kraus operator has wrong shape");
            }
        }
    }
    const double res = kraus_normalization_residual(dim_, outcomes_);
    if (res > normalization_tol) {
        std::ostringstream msg;
        msg << "Measurement: normalization residual " << res << " exceeds " << normalization_tol;
        throw Error(msg.str());
    }
}

double Measurement::normalization_residual() const {
    return kraus_normalization_residual(dim_, outcomes_);
}

RealVector OutcomeEnsemble::probabilities() const {
    RealVector p(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) p[i] = entries[i].probability;
    return p;
}

Matrix propagate_outcome(const Measurement& meas, int outcome, const Matrix& a) {
    Matrix out = Matrix::Zero(meas.dim(), meas.dim());
    for (const auto& k : meas.kraus(outcome)) {
        out += k * a * k.adjoint();
    }
    return out;
}

Matrix propagate_channel(const Measurement& meas, const Matrix& a) {
    Matrix out = Matrix::Zero(meas.dim(), meas.dim());
    for (int i = 0; i < meas.n_outcomes(); ++i) {
        out += propagate_outcome(meas, i, a);
    }
    return out;
}

OutcomeEnsemble apply(const Measurement& meas, const DensityMatrix& rho, double prob_tol) {
    if (rho.dim() != meas.dim()) {
        throw DimensionMismatch("apply: state and measurement dimensions differ");
    }
    OutcomeEnsemble ens;
    ens.entries.reserve(meas.n_outcomes());
    for (int i = 0; i < meas.n_outcomes(); ++i) {
        Matrix sigma = propagate_outcome(meas, i, rho.matrix());
        sigma = (sigma + sigma.adjoint()).eval() / 2.0;
        const double p = sigma.trace().real();
        OutcomeState entry;
        entry.probability = p;
        if (p > prob_tol) {
            entry.state = DensityMatrix(sigma / p);
        }
        ens.entries.push_back(std::move(entry));
    }
    return ens;
}

Matrix meas_channel_state(const Measurement& meas, const DensityMatrix& rho) {
    if (rho.dim() != meas.dim()) {
        throw DimensionMismatch("meas_channel_state: dimensions differ");
    }
    std::vector<std::pair<double, Matrix>> blocks;
    blocks.reserve(meas.n_outcomes());
    for (int i = 0; i < meas.n_outcomes(); ++i) {
        Matrix sigma = propagate_outcome(meas, i, rho.matrix());
        blocks.emplace_back(1.0, ((sigma + sigma.adjoint()) / 2.0).eval());
    }
    return direct_sum(blocks);
}

Povm povm(const Measurement& meas) {
    Povm out;
    out.elements.reserve(meas.n_outcomes());
    for (int i = 0; i < meas.n_outcomes(); ++i) {
        Matrix e = Matrix::Zero(meas.dim(), meas.dim());
        for (const auto& k : meas.kraus(i)) {
            e += k.adjoint() * k;
        }
        out.elements.push_back(((e + e.adjoint()) / 2.0).eval());
    }
    return out;
}

Measurement purify(const Povm& p, double support_tol) {
    if (p.elements.empty()) throw Error("purify: empty POVM");
    const Eigen::Index dim = p.elements.front().rows();
    Matrix sum = Matrix::Zero(dim, dim);
    for (const auto& e : p.elements) {
        if (e.rows() != dim || e.cols() != dim) {
            throw DimensionMismatch("purify: POVM elements have mixed shapes");
        }
        if (min_eigenvalue(e) < -1e-9) throw Error("purify: POVM element not PSD");
        sum += e;
    }
    if (max_abs(sum - Matrix::Identity(dim, dim)) > 1e-9) {
        throw Error("purify: POVM does not resolve the identity");
    }
    std::vector<std::vector<Matrix>> outcomes;
    outcomes.reserve(p.elements.size());
    for (const auto& e : p.elements) {
        outcomes.push_back({matfunc_psd(e, [](double x) { return std::sqrt(x); }, support_tol)});
    }
    return Measurement(dim, std::move(outcomes));
}

bool is_pure(const Measurement& meas) {
    for (const auto& ops : meas.outcomes()) {
        if (ops.size() != 1) return false;
    }
    return true;
}

bool is_reversible(const Measurement& meas, double cond_tol) {
    if (!is_pure(meas)) {
        throw NotPure("is_reversible: reversibility is defined for pure measurements only");
    }
    for (const auto& ops : meas.outcomes()) {
        Eigen::JacobiSVD<Matrix> svd(ops.front());
        if (svd.singularValues().minCoeff() <= cond_tol) return false;
    }
    return true;
}

Measurement royer(double theta_m, double sigma_m) {
    const double minus = theta_m / 2.0 - sigma_m / 4.0;
    const double plus = theta_m / 2.0 + sigma_m / 4.0;
    Matrix k1 = Matrix::Zero(2, 2), k2 = Matrix::Zero(2, 2);
    k1(0, 0) = std::cos(minus);
    k1(1, 1) = std::cos(plus);
    k2(0, 0) = std::sin(minus);
    k2(1, 1) = std::sin(plus);
    return Measurement(2, {{k1}, {k2}});
}

Measurement identity_measurement(Eigen::Index dim) {
    return Measurement(dim, {{Matrix::Identity(dim, dim)}});
}

Measurement random_measurement(Eigen::Index dim, int n_outcomes, int ops_per_outcome,
                               std::uint64_t seed) {
    if (dim < 1 || n_outcomes < 1 || ops_per_outcome < 1) {
        throw Error("random_measurement: all arguments must be >= 1");
    }
    const Eigen::Index n_ops = static_cast<Eigen::Index>(n_outcomes) * ops_per_outcome;
    Rng rng(seed);
    Matrix stacked = rng.gaussian_matrix(n_ops * dim, dim);
    Eigen::HouseholderQR<Matrix> qr(stacked);
    Matrix q = qr.householderQ() * Matrix::Identity(n_ops * dim, dim);
    std::vector<std::vector<Matrix>> outcomes(n_outcomes);
    Eigen::Index row = 0;
    for (int i = 0; i < n_outcomes; ++i) {
        for (int j = 0; j < ops_per_outcome; ++j) {
            outcomes[i].push_back(q.block(row, 0, dim, dim));
            row += dim;
        }
    }
    return Measurement(dim, std::move(outcomes));
}

}  // namespace qmetric
