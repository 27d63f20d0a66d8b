#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qmetric/matrix.hpp"

namespace qmetric {

inline constexpr double kFdStep = 1e-5;

/// Axis-aligned parameter domain.
struct Box {
    RealVector lo;
    RealVector hi;

    bool contains(const RealVector& x) const;
};

/// State and parameter derivatives of a model at one point.
struct ModelPoint {
    RealVector theta;
    DensityMatrix state;
    std::vector<Matrix> derivatives;  // Hermitian, traceless
};

enum class DerivativeKind { none, analytic, sampled };

/// Differentiable family theta -> rho_theta over an m-dimensional box.
class StatisticalModel {
public:
    using StateFn = std::function<Matrix(const RealVector&)>;
    using DerivFn = std::function<std::vector<Matrix>(const RealVector&)>;

    StatisticalModel(int param_dim, Box domain, StateFn state_fn, DerivFn derivative_fn = nullptr,
                     DerivativeKind derivative_kind = DerivativeKind::none,
                     std::string name = "custom");

    int param_dim() const { return param_dim_; }
    const Box& domain() const { return domain_; }
    const std::string& name() const { return name_; }
    DerivativeKind derivative_kind() const { return derivative_kind_; }
    bool has_derivative_fn() const { return static_cast<bool>(derivative_fn_); }

    Matrix state_at(const RealVector& theta) const { return state_fn_(theta); }
    std::vector<Matrix> derivatives_at(const RealVector& theta) const {
        return derivative_fn_(theta);
    }

private:
    int param_dim_;
    Box domain_;
    StateFn state_fn_;
    DerivFn derivative_fn_;
    DerivativeKind derivative_kind_;
    std::string name_;
};

/// Evaluates the model, validating the density-matrix axioms and the
/// derivative invariants. Falls back to symmetrized central finite
/// differences with step fd_step when no derivative provider exists.
ModelPoint evaluate(const StatisticalModel& model, const RealVector& theta,
                    double fd_step = kFdStep);

/// Commuting qubit family diag(cos^2(theta/2), sin^2(theta/2)) on
/// (0.1, pi - 0.1).
StatisticalModel classical_binary_model();

/// Full-rank qubit family (I + r cos(theta) sx + r sin(theta) sy)/2,
/// 0 < r < 1.
StatisticalModel bloch_rotation_model(double r);

/// Seeded unitary-orbit family exp(-i sum_a theta_a G_a) rho0 exp(+i ...)
/// with Gaussian Hermitian generators and a full-rank random rho0
/// (Hilbert-Schmidt sample mixed with I/d at weight 0.1).
StatisticalModel random_model(Eigen::Index dim, int param_dim, std::uint64_t seed);

/// One-parameter model given as explicit (theta, rho) samples. Evaluation is
/// supported exactly at interior grid nodes; derivatives are central finite
/// differences between the neighboring samples.
StatisticalModel sample_grid_model(std::vector<double> thetas, std::vector<Matrix> states);

}  // namespace qmetric
