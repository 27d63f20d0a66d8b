#include "qmetric/model.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <utility>

#include "qmetric/rng.hpp"

namespace qmetric {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return m;
}

DensityMatrix validate_state(const Matrix& raw) {
    try {
        return DensityMatrix(raw);
    } catch (const InvalidDensityMatrix& e) {
        throw DegenerateModel(std::string("model state invalid: ") + e.what());
    }
}

void validate_derivative(const Matrix& d, double tol, int axis) {
    if (hermiticity_residual(d) > tol) {
        std::ostringstream msg;
        msg << "derivative along axis " << axis << " not Hermitian within " << tol;
        throw DegenerateModel(msg.str());
    }
    const double tr = std::abs(d.trace());
    if (tr > tol) {
        std::ostringstream msg;
        msg << "derivative along axis " << axis << " has |trace| = " << tr << " > " << tol;
        throw DegenerateModel(msg.str());
    }
}

}  // namespace

bool Box::contains(const RealVector& x) const {
    if (x.size() != lo.size()) return false;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (x[i] < lo[i] || x[i] > hi[i]) return false;
    }
    return true;
}

StatisticalModel::StatisticalModel(int param_dim, Box domain, StateFn state_fn,
                                   DerivFn derivative_fn, DerivativeKind derivative_kind,
                                   std::string name)
    : param_dim_(param_dim),
      domain_(std::move(domain)),
      state_fn_(std::move(state_fn)),
      derivative_fn_(std::move(derivative_fn)),
      derivative_kind_(derivative_kind),
      name_(std::move(name)) {
    if (param_dim_ < 1) throw Error("StatisticalModel: param_dim must be >= 1");
    if (domain_.lo.size() != param_dim_ || domain_.hi.size() != param_dim_) {
        throw Error("StatisticalModel: domain dimension does not match param_dim");
    }
}

ModelPoint evaluate(const StatisticalModel& model, const RealVector& theta, double fd_step) {
    if (theta.size() != model.param_dim()) {
        throw OutOfDomain("evaluate: theta has wrong dimension");
    }
    if (!model.domain().contains(theta)) {
        throw OutOfDomain("evaluate: theta outside model domain");
    }
    DensityMatrix state = validate_state(model.state_at(theta));

    std::vector<Matrix> derivs;
    if (model.has_derivative_fn()) {
        derivs = model.derivatives_at(theta);
        if (static_cast<int>(derivs.size()) != model.param_dim()) {
            throw DegenerateModel("derivative provider returned wrong count");
        }
        const double tol = model.derivative_kind() == DerivativeKind::analytic ? 1e-9 : 1e-8;
        for (int a = 0; a < model.param_dim(); ++a) {
            validate_derivative(derivs[a], tol, a);
        }
    } else {
        derivs.reserve(model.param_dim());
        for (int a = 0; a < model.param_dim(); ++a) {
            RealVector up = theta, down = theta;
            up[a] += fd_step;
            down[a] -= fd_step;
            if (!model.domain().contains(up) || !model.domain().contains(down)) {
                throw OutOfDomain("evaluate: finite-difference stencil leaves the domain");
            }
            Matrix d = (model.state_at(up) - model.state_at(down)) / (2.0 * fd_step);
            d = (d + d.adjoint()).eval() / 2.0;
            validate_derivative(d, 1e-8, a);
            derivs.push_back(std::move(d));
        }
    }
    return ModelPoint{theta, std::move(state), std::move(derivs)};
}

StatisticalModel classical_binary_model() {
    Box domain;
    domain.lo = RealVector::Constant(1, 0.1);
    domain.hi = RealVector::Constant(1, kPi - 0.1);
    auto state = [](const RealVector& th) {
        const double c = std::cos(th[0] / 2.0), s = std::sin(th[0] / 2.0);
        Matrix rho = Matrix::Zero(2, 2);
        rho(0, 0) = c * c;
        rho(1, 1) = s * s;
        return rho;
    };
    auto deriv = [](const RealVector& th) {
        const double half_sin = std::sin(th[0]) / 2.0;
        Matrix d = Matrix::Zero(2, 2);
        d(0, 0) = -half_sin;
        d(1, 1) = half_sin;
        return std::vector<Matrix>{d};
    };
    return StatisticalModel(1, domain, state, deriv, DerivativeKind::analytic,
                            "classical_binary");
}

StatisticalModel bloch_rotation_model(double r) {
    if (!(r > 0.0 && r < 1.0)) {
        throw Error("bloch_rotation_model: r must lie in (0, 1)");
    }
    Box domain;
    domain.lo = RealVector::Constant(1, -4.0 * kPi);
    domain.hi = RealVector::Constant(1, 4.0 * kPi);
    const Matrix sx = pauli_x(), sy = pauli_y();
    auto state = [r, sx, sy](const RealVector& th) {
        return (Matrix::Identity(2, 2) + r * std::cos(th[0]) * sx + r * std::sin(th[0]) * sy) /
               2.0;
    };
    auto deriv = [r, sx, sy](const RealVector& th) {
        Matrix d = (-r * std::sin(th[0]) * sx + r * std::cos(th[0]) * sy) / 2.0;
        return std::vector<Matrix>{d};
    };
    return StatisticalModel(1, domain, state, deriv, DerivativeKind::analytic, "bloch_rotation");
}

namespace {

struct RandomModelData {
    std::vector<Matrix> generators;
    Matrix rho0;
};

// Unitary for H = sum_a theta_a G_a together with its spectral data.
struct GeneratorFrame {
    SpectralDecomposition sd;
    Matrix unitary;
};

GeneratorFrame frame_at(const RandomModelData& data, const RealVector& theta) {
    const Eigen::Index d = data.rho0.rows();
    Matrix h = Matrix::Zero(d, d);
    for (Eigen::Index a = 0; a < theta.size(); ++a) {
        h += theta[a] * data.generators[a];
    }
    GeneratorFrame f{eigh(h), Matrix()};
    Eigen::VectorXcd phases(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        phases[k] = std::exp(Complex(0.0, -f.sd.eigenvalues[k]));
    }
    f.unitary = f.sd.eigenvectors * phases.asDiagonal() * f.sd.eigenvectors.adjoint();
    return f;
}

// phi(delta) = (1 - e^{-i delta}) / (i delta), the divided difference that
// turns d/dtheta_a exp(-iH) into a commutator with an effective generator.
Complex exp_divided_difference(double delta) {
    if (std::abs(delta) < 1e-6) {
        const double d2 = delta * delta;
        return Complex(1.0 - d2 / 6.0, -delta / 2.0 + d2 * delta / 24.0);
    }
    return (1.0 - std::exp(Complex(0.0, -delta))) / Complex(0.0, delta);
}

}  // namespace

StatisticalModel random_model(Eigen::Index dim, int param_dim, std::uint64_t seed) {
    if (dim < 2) throw Error("random_model: dim must be >= 2");
    if (param_dim < 1) throw Error("random_model: param_dim must be >= 1");

    Rng rng(seed);
    auto data = std::make_shared<RandomModelData>();
    data->generators.reserve(param_dim);
    for (int a = 0; a < param_dim; ++a) {
        data->generators.push_back(rng.hermitian_gaussian(dim));
    }
    Matrix a = rng.gaussian_matrix(dim, dim);
    Matrix hs = a * a.adjoint();
    hs /= hs.trace().real();
    data->rho0 = 0.9 * hs + 0.1 * Matrix::Identity(dim, dim) / static_cast<double>(dim);

    Box domain;
    domain.lo = RealVector::Constant(param_dim, -2.0 * kPi);
    domain.hi = RealVector::Constant(param_dim, 2.0 * kPi);

    auto state = [data](const RealVector& th) {
        GeneratorFrame f = frame_at(*data, th);
        Matrix rho = f.unitary * data->rho0 * f.unitary.adjoint();
        return ((rho + rho.adjoint()) / 2.0).eval();
    };
    // Exact derivative of the conjugated family: d_a rho = -i [Omega_a, rho]
    // with the effective generator Omega_a = int_0^1 e^{-isH} G_a e^{isH} ds,
    // evaluated through divided differences in the eigenbasis of H. For a
    // single parameter Omega reduces to G itself.
    auto deriv = [data](const RealVector& th) {
        GeneratorFrame f = frame_at(*data, th);
        const Matrix rho_raw = f.unitary * data->rho0 * f.unitary.adjoint();
        const Matrix rho = (rho_raw + rho_raw.adjoint()) / 2.0;
        const Eigen::Index d = data->rho0.rows();
        std::vector<Matrix> out;
        out.reserve(th.size());
        for (Eigen::Index a = 0; a < th.size(); ++a) {
            Matrix g_tilde = f.sd.eigenvectors.adjoint() * data->generators[a] * f.sd.eigenvectors;
            Matrix omega_tilde(d, d);
            for (Eigen::Index k = 0; k < d; ++k) {
                for (Eigen::Index l = 0; l < d; ++l) {
                    omega_tilde(k, l) =
                        g_tilde(k, l) *
                        exp_divided_difference(f.sd.eigenvalues[k] - f.sd.eigenvalues[l]);
                }
            }
            Matrix omega = f.sd.eigenvectors * omega_tilde * f.sd.eigenvectors.adjoint();
            Matrix dv = Complex(0.0, -1.0) * (omega * rho - rho * omega);
            out.push_back(((dv + dv.adjoint()) / 2.0).eval());
        }
        return out;
    };
    return StatisticalModel(param_dim, domain, state, deriv, DerivativeKind::analytic, "random");
}

StatisticalModel sample_grid_model(std::vector<double> thetas, std::vector<Matrix> states) {
    if (thetas.size() != states.size()) {
        throw Error("sample_grid_model: theta/state counts differ");
    }
    if (thetas.size() < 3) {
        throw Error("sample_grid_model: need at least 3 samples for central differences");
    }
    for (std::size_t k = 1; k < thetas.size(); ++k) {
        if (!(thetas[k] > thetas[k - 1])) {
            throw Error("sample_grid_model: thetas must be strictly increasing");
        }
    }
    auto grid = std::make_shared<std::pair<std::vector<double>, std::vector<Matrix>>>(
        std::move(thetas), std::move(states));

    auto node_index = [grid](double t) -> std::size_t {
        const auto& ts = grid->first;
        for (std::size_t k = 0; k < ts.size(); ++k) {
            if (std::abs(t - ts[k]) <= 1e-9 * std::max(1.0, std::abs(ts[k]))) return k;
        }
        throw OutOfDomain("sample_grid_model: theta is not a grid node");
    };

    Box domain;
    domain.lo = RealVector::Constant(1, grid->first.front());
    domain.hi = RealVector::Constant(1, grid->first.back());

    auto state = [grid, node_index](const RealVector& th) {
        return grid->second[node_index(th[0])];
    };
    auto deriv = [grid, node_index](const RealVector& th) {
        const std::size_t k = node_index(th[0]);
        if (k == 0 || k + 1 == grid->first.size()) {
            throw OutOfDomain("sample_grid_model: derivatives need an interior grid node");
        }
        Matrix d = (grid->second[k + 1] - grid->second[k - 1]) /
                   (grid->first[k + 1] - grid->first[k - 1]);
        return std::vector<Matrix>{((d + d.adjoint()) / 2.0).eval()};
    };
    return StatisticalModel(1, domain, state, deriv, DerivativeKind::sampled, "sample_grid");
}

}  // namespace qmetric
