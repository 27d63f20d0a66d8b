#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qmetric/model.hpp"
#include "qmetric/rng.hpp"

using namespace qmetric;

namespace {

constexpr double kPi = std::numbers::pi;

RealVector theta1(double t) {
    return RealVector::Constant(1, t);
}

StatisticalModel constant_model() {
    Box domain;
    domain.lo = theta1(-1.0);
    domain.hi = theta1(1.0);
    return StatisticalModel(
        1, domain, [](const RealVector&) { return Matrix::Identity(2, 2) / 2.0; });
}

}  // namespace

TEST_CASE("constant model has vanishing finite-difference derivatives") {
    ModelPoint pt = evaluate(constant_model(), theta1(0.2));
    REQUIRE(pt.derivatives.size() == 1);
    CHECK(max_abs(pt.derivatives[0]) < 1e-12);
    // the central-difference stencil must stay inside the domain
    CHECK_THROWS_AS(evaluate(constant_model(), theta1(1.0)), OutOfDomain);
}

TEST_CASE("classical binary model at theta = pi/2") {
    ModelPoint pt = evaluate(classical_binary_model(), theta1(kPi / 2.0));
    Matrix expected_state = Matrix::Zero(2, 2);
    expected_state(0, 0) = 0.5;
    expected_state(1, 1) = 0.5;
    CHECK(max_abs(pt.state.matrix() - expected_state) < 1e-12);
    // d/dtheta cos^2(theta/2) = -sin(theta)/2 = -1/2 here
    Matrix expected_deriv = Matrix::Zero(2, 2);
    expected_deriv(0, 0) = -0.5;
    expected_deriv(1, 1) = 0.5;
    CHECK(max_abs(pt.derivatives[0] - expected_deriv) < 1e-12);
}

TEST_CASE("classical binary states commute across the domain") {
    auto model = classical_binary_model();
    Matrix a = model.state_at(theta1(0.4));
    Matrix b = model.state_at(theta1(2.0));
    CHECK(max_abs(a * b - b * a) < 1e-15);
}

TEST_CASE("bloch rotation model eigenvalues are (1 +- r)/2") {
    auto model = bloch_rotation_model(0.5);
    for (double t : {0.0, 0.9, 2.4}) {
        auto sd = eigh(model.state_at(theta1(t)));
        CHECK(sd.eigenvalues[0] == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(sd.eigenvalues[1] == doctest::Approx(0.75).epsilon(1e-12));
    }
    CHECK_THROWS_AS(bloch_rotation_model(1.2), Error);
}

TEST_CASE("bloch rotation analytic and finite-difference derivatives agree") {
    auto analytic = bloch_rotation_model(0.5);
    Box domain = analytic.domain();
    StatisticalModel numeric(1, domain,
                             [analytic](const RealVector& th) { return analytic.state_at(th); });
    for (double t : {0.3, 1.1, 2.8}) {
        ModelPoint pa = evaluate(analytic, theta1(t));
        ModelPoint pn = evaluate(numeric, theta1(t));
        CHECK(max_abs(pa.derivatives[0] - pn.derivatives[0]) < 1e-7);
    }
}

TEST_CASE("random model is deterministic per seed") {
    auto a = random_model(3, 2, 42);
    auto b = random_model(3, 2, 42);
    auto c = random_model(3, 2, 43);
    RealVector th(2);
    th << 0.3, -0.2;
    CHECK(max_abs(a.state_at(th) - b.state_at(th)) == 0.0);
    CHECK(max_abs(a.state_at(th) - c.state_at(th)) > 1e-3);
}

TEST_CASE("random model base state is bounded away from singularity") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        for (Eigen::Index d : {2, 3, 4}) {
            auto model = random_model(d, 1, Rng::derive(505, 10 * s + d));
            auto sd = eigh(model.state_at(theta1(0.0)));
            CHECK(sd.eigenvalues.minCoeff() >= 0.1 / static_cast<double>(d) - 1e-12);
        }
    }
}

TEST_CASE("random model analytic derivatives match finite differences") {
    // exercises both the single-parameter commutator and the multiparameter
    // divided-difference path away from theta = 0
    for (int m : {1, 2, 3}) {
        auto model = random_model(3, m, 1234 + m);
        StatisticalModel numeric(m, model.domain(),
                                 [model](const RealVector& th) { return model.state_at(th); });
        RealVector th(m);
        for (int a = 0; a < m; ++a) th[a] = 0.3 - 0.2 * a;
        ModelPoint pa = evaluate(model, th);
        ModelPoint pn = evaluate(numeric, th);
        for (int a = 0; a < m; ++a) {
            CHECK(max_abs(pa.derivatives[a] - pn.derivatives[a]) < 1e-6);
        }
    }
}

TEST_CASE("all builtin families keep unit trace and traceless derivatives on a grid") {
    std::vector<StatisticalModel> models;
    models.push_back(classical_binary_model());
    models.push_back(bloch_rotation_model(0.3));
    models.push_back(random_model(2, 1, 99));
    models.push_back(random_model(3, 1, 100));
    for (const auto& model : models) {
        const double lo = model.domain().lo[0], hi = model.domain().hi[0];
        for (int g = 0; g < 10; ++g) {
            const double t = lo + (hi - lo) * (g + 0.5) / 10.0;
            ModelPoint pt = evaluate(model, theta1(t));
            CHECK(std::abs(pt.state.matrix().trace() - Complex(1.0, 0.0)) < 1e-10);
            CHECK(std::abs(pt.derivatives[0].trace()) < 1e-8);
        }
    }
}

TEST_CASE("evaluate rejects out-of-domain parameters") {
    auto model = classical_binary_model();
    CHECK_THROWS_AS(evaluate(model, theta1(0.0)), OutOfDomain);
    CHECK_THROWS_AS(evaluate(model, theta1(kPi)), OutOfDomain);
    RealVector bad(2);
    bad << 0.5, 0.5;
    CHECK_THROWS_AS(evaluate(model, bad), OutOfDomain);
}

TEST_CASE("evaluate flags states that violate the density axioms") {
    Box domain;
    domain.lo = theta1(-1.0);
    domain.hi = theta1(1.0);
    StatisticalModel broken(1, domain,
                            [](const RealVector&) { return Matrix::Identity(2, 2); });
    CHECK_THROWS_AS(evaluate(broken, theta1(0.0)), DegenerateModel);
}

TEST_CASE("sample grid model differentiates between neighboring nodes") {
    auto source = bloch_rotation_model(0.5);
    std::vector<double> ts;
    std::vector<Matrix> states;
    for (int k = 0; k < 9; ++k) {
        const double t = 0.2 + 0.05 * k;
        ts.push_back(t);
        states.push_back(source.state_at(theta1(t)));
    }
    auto grid = sample_grid_model(ts, states);
    ModelPoint pt = evaluate(grid, theta1(0.4));
    ModelPoint ref = evaluate(source, theta1(0.4));
    CHECK(max_abs(pt.state.matrix() - ref.state.matrix()) < 1e-12);
    // central difference on a 0.05 grid: O(h^2) accuracy
    CHECK(max_abs(pt.derivatives[0] - ref.derivatives[0]) < 1e-3);
    CHECK_THROWS_AS(evaluate(grid, theta1(0.2)), OutOfDomain);   // boundary node
    CHECK_THROWS_AS(evaluate(grid, theta1(0.33)), OutOfDomain);  // not a node
}
