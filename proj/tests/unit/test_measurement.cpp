#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qmetric/measurement.hpp"
#include "qmetric/rng.hpp"

using namespace qmetric;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix diag2(double a, double b) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

Measurement projective_z() {
    return Measurement(2, {{diag2(1.0, 0.0)}, {diag2(0.0, 1.0)}});
}

DensityMatrix random_state(std::uint64_t seed, Eigen::Index dim) {
    Rng rng(seed);
    Matrix a = rng.gaussian_matrix(dim, dim);
    Matrix hs = a * a.adjoint();
    hs /= hs.trace().real();
    return DensityMatrix(0.9 * hs + 0.1 * Matrix::Identity(dim, dim) / double(dim));
}

}  // namespace

TEST_CASE("identity measurement returns the state untouched") {
    auto rho = DensityMatrix(diag2(0.3, 0.7));
    auto ens = apply(identity_measurement(2), rho);
    REQUIRE(ens.entries.size() == 1);
    CHECK(ens.entries[0].probability == doctest::Approx(1.0));
    CHECK(max_abs(ens.entries[0].state->matrix() - rho.matrix()) < 1e-12);
}

TEST_CASE("projective measurement on a diagonal state") {
    auto ens = apply(projective_z(), DensityMatrix(diag2(0.3, 0.7)));
    CHECK(ens.entries[0].probability == doctest::Approx(0.3));
    CHECK(ens.entries[1].probability == doctest::Approx(0.7));
    CHECK(max_abs(ens.entries[0].state->matrix() - diag2(1.0, 0.0)) < 1e-12);
    CHECK(max_abs(ens.entries[1].state->matrix() - diag2(0.0, 1.0)) < 1e-12);
}

TEST_CASE("royer measurement splits the maximally mixed state evenly") {
    auto ens = apply(royer(kPi / 2.0, kPi / 2.0), DensityMatrix::maximally_mixed(2));
    // (cos^2(pi/8) + cos^2(3pi/8))/2 = 1/2 because the angles pair up
    CHECK(ens.entries[0].probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ens.entries[1].probability == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("apply rejects dimension mismatches") {
    CHECK_THROWS_AS(apply(identity_measurement(3), DensityMatrix::maximally_mixed(2)),
                    DimensionMismatch);
}

TEST_CASE("null outcomes carry no state") {
    // second outcome never fires on |0><0|
    auto ens = apply(projective_z(), DensityMatrix(diag2(1.0, 0.0)));
    CHECK_FALSE(ens.entries[0].is_null());
    CHECK(ens.entries[1].is_null());
    CHECK(ens.entries[1].probability <= 1e-12);
}

TEST_CASE("meas_channel_state of the identity measurement is the state itself") {
    auto rho = random_state(1, 2);
    CHECK(max_abs(meas_channel_state(identity_measurement(2), rho) - rho.matrix()) < 1e-12);
}

TEST_CASE("meas_channel_state is a trace-one PSD block matrix consistent with apply") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto rho = random_state(Rng::derive(606, s), 2);
        auto meas = random_measurement(2, 3, 2, Rng::derive(607, s));
        Matrix omega = meas_channel_state(meas, rho);
        CHECK(omega.rows() == 2 * 3);
        CHECK(std::abs(omega.trace() - Complex(1.0, 0.0)) < 1e-10);
        CHECK(is_psd(omega, 1e-10));
        auto ens = apply(meas, rho);
        for (int i = 0; i < 3; ++i) {
            const double block_trace = omega.block(2 * i, 2 * i, 2, 2).trace().real();
            CHECK(block_trace == doctest::Approx(ens.entries[i].probability).epsilon(1e-10));
        }
    }
}

TEST_CASE("royer POVM elements are the squared diagonal cosines") {
    const double theta_m = 0.9, sigma_m = 0.7;
    auto p = povm(royer(theta_m, sigma_m));
    const double minus = theta_m / 2.0 - sigma_m / 4.0;
    const double plus = theta_m / 2.0 + sigma_m / 4.0;
    Matrix e1 = diag2(std::cos(minus) * std::cos(minus), std::cos(plus) * std::cos(plus));
    CHECK(max_abs(p.elements[0] - e1) < 1e-12);
}

TEST_CASE("POVM elements resolve the identity for random measurements") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto meas = random_measurement(3, 2, 2, Rng::derive(708, s));
        auto p = povm(meas);
        Matrix sum = Matrix::Zero(3, 3);
        for (const auto& e : p.elements) {
            CHECK(min_eigenvalue(e) > -1e-12);
            sum += e;
        }
        CHECK(max_abs(sum - Matrix::Identity(3, 3)) < 1e-10);
    }
}

TEST_CASE("apply probabilities equal tr(E_i rho)") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto rho = random_state(Rng::derive(809, s), 3);
        auto meas = random_measurement(3, 3, 2, Rng::derive(810, s));
        auto p = povm(meas);
        auto ens = apply(meas, rho);
        for (int i = 0; i < meas.n_outcomes(); ++i) {
            const double via_povm = (p.elements[i] * rho.matrix()).trace().real();
            CHECK(std::abs(via_povm - ens.entries[i].probability) < 1e-10);
        }
    }
}

TEST_CASE("purify round-trips the POVM and keeps the statistics") {
    CHECK(max_abs(purify(povm(identity_measurement(2))).kraus(0)[0] - Matrix::Identity(2, 2)) <
          1e-12);
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto meas = random_measurement(2, 2, 2, Rng::derive(911, s));
        auto p = povm(meas);
        auto pure = purify(p);
        CHECK(is_pure(pure));
        auto p2 = povm(pure);
        for (std::size_t i = 0; i < p.elements.size(); ++i) {
            CHECK(max_abs(p.elements[i] - p2.elements[i]) < 1e-8);
        }
        auto rho = random_state(Rng::derive(912, s), 2);
        auto e1 = apply(meas, rho);
        auto e2 = apply(pure, rho);
        for (int i = 0; i < meas.n_outcomes(); ++i) {
            CHECK(std::abs(e1.entries[i].probability - e2.entries[i].probability) < 1e-9);
        }
    }
}

TEST_CASE("is_pure distinguishes single-operator outcomes") {
    CHECK(is_pure(royer(0.4, 0.9)));
    CHECK(is_pure(purify(povm(random_measurement(2, 2, 2, 5)))));
    auto impure = random_measurement(2, 1, 2, 6);
    CHECK_FALSE(is_pure(impure));
    CHECK_THROWS_AS(is_reversible(impure), NotPure);
}

TEST_CASE("royer reversibility follows the excluded angle set") {
    CHECK(is_reversible(royer(kPi / 2.0, kPi / 2.0)));
    // theta/2 + sigma/4 = pi/2 makes K1 = diag(1, 0)
    CHECK_FALSE(is_reversible(royer(kPi / 2.0, kPi)));
    CHECK_FALSE(is_reversible(projective_z()));
}

TEST_CASE("royer normalization is a trig identity") {
    for (double t : {0.0, 0.3, 1.1, 2.9}) {
        for (double s : {0.0, 0.5, 1.9}) {
            CHECK(royer(t, s).normalization_residual() < 1e-12);
        }
    }
    // sigma_m = 0 extracts nothing: both operators proportional to I
    auto m = royer(1.234, 0.0);
    auto ens_a = apply(m, random_state(1, 2));
    auto ens_b = apply(m, random_state(2, 2));
    CHECK(std::abs(ens_a.entries[0].probability - ens_b.entries[0].probability) < 1e-12);
    CHECK(max_abs(royer(kPi / 2.0, kPi / 2.0).kraus(0)[0] -
                  diag2(std::cos(kPi / 8.0), std::cos(3.0 * kPi / 8.0))) < 1e-12);
}

TEST_CASE("random measurements are normalized and deterministic") {
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto meas = random_measurement(2, 2, 2, Rng::derive(1013, s));
        CHECK(meas.normalization_residual() <= 1e-10);
    }
    auto a = random_measurement(3, 2, 1, 77);
    auto b = random_measurement(3, 2, 1, 77);
    CHECK(max_abs(a.kraus(0)[0] - b.kraus(0)[0]) == 0.0);
    CHECK(max_abs(a.kraus(1)[0] - b.kraus(1)[0]) == 0.0);
}

TEST_CASE("single-operator random measurement is unitary") {
    auto meas = random_measurement(4, 1, 1, 31);
    const Matrix& k = meas.kraus(0)[0];
    CHECK(max_abs(k.adjoint() * k - Matrix::Identity(4, 4)) < 1e-12);
    CHECK(max_abs(k * k.adjoint() - Matrix::Identity(4, 4)) < 1e-12);
}

TEST_CASE("Measurement constructor rejects broken normalization") {
    CHECK_THROWS_AS(Measurement(2, {{diag2(1.0, 0.9)}}), Error);
    CHECK_THROWS_AS(Measurement(2, {}), Error);
}
