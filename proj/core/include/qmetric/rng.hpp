#pragma once

#include <cstdint>
#include <random>

#include "qmetric/matrix.hpp"

namespace qmetric {

/// Deterministic random stream. Gaussians come from a hand-rolled
/// Box-Muller transform over mt19937_64 bits, so a seed reproduces the
/// same values on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform();  // [0, 1)
    double gaussian();
    Complex complex_gaussian();  // CN(0,1): variance 1/2 per component

    Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);
    Matrix hermitian_gaussian(Eigen::Index dim);  // (A + A^dag)/2

    /// Derives an independent per-trial seed from (campaign_seed, index)
    /// via a splitmix64 round.
    static std::uint64_t derive(std::uint64_t campaign_seed, std::uint64_t index);

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qmetric
