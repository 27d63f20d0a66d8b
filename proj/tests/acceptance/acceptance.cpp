// Acceptance suite: certifies the library's headline guarantees end to end,
// one pass/fail line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qmetric/divergence.hpp"
#include "qmetric/rng.hpp"
#include "qmetric/tradeoff.hpp"

using namespace qmetric;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSuiteSeed = 20250808;

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d %s: %s\n", pass ? "PASS" : "FAIL", index, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

RealVector theta1(double t) {
    return RealVector::Constant(1, t);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

std::vector<std::uint64_t> instance_seeds(std::uint64_t stream, int count) {
    std::vector<std::uint64_t> seeds;
    seeds.reserve(count);
    for (int t = 0; t < count; ++t) {
        seeds.push_back(Rng::derive(Rng::derive(kSuiteSeed, stream), t));
    }
    return seeds;
}

// ---- criterion 1: gap = Delta J - J^C is PSD on random instances ----------
void criterion_tradeoff_inequality() {
    const auto start = std::chrono::steady_clock::now();
    const auto metrics = preset_metrics();
    double worst = std::numeric_limits<double>::infinity();
    int checked = 0;
    auto run_set = [&](Eigen::Index dim, int count, std::uint64_t stream) {
        for (std::uint64_t seed : instance_seeds(stream, count)) {
            auto inst = random_tradeoff_instance(dim, seed);
            for (const auto& metric : metrics) {
                auto rep = check_tradeoff(inst.model, inst.meas, inst.theta, metric);
                worst = std::min(worst, rep.min_gap_eigenvalue);
                ++checked;
            }
        }
    };
    run_set(2, 200, 1);
    run_set(3, 50, 2);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = worst >= -1e-8 && secs <= 60.0;
    std::ostringstream d;
    d << checked << " gap checks, min eigenvalue " << fmt(worst) << " >= -1e-8, " << fmt(secs)
      << " s <= 60 s";
    report(1, "tradeoff-inequality", pass, d.str());
}

// ---- criterion 2: separating property on the same instance set ------------
void criterion_separating() {
    const auto metrics = preset_metrics();
    double worst = 0.0;
    auto run_set = [&](Eigen::Index dim, int count, std::uint64_t stream) {
        for (std::uint64_t seed : instance_seeds(stream, count)) {
            auto inst = random_tradeoff_instance(dim, seed);
            for (const auto& metric : metrics) {
                worst = std::max(worst,
                                 check_separating(inst.model, inst.meas, inst.theta, metric));
            }
        }
    };
    run_set(2, 200, 1);
    run_set(3, 50, 2);
    const bool pass = worst <= 1e-7;
    report(2, "separating-property", pass, "max residual " + fmt(worst) + " <= 1e-7");
}

// ---- criterion 3: RLD equality for pure reversible measurements -----------
void criterion_rld_equality() {
    const double ts[5] = {0.4, 0.8, 1.2, 1.6, 2.0};
    const double ss[5] = {0.3, 0.7, 1.1, 1.5, 1.9};
    double worst_eq = 0.0, worst_id = 0.0;
    bool grid_ok = true;
    for (double t : ts) {
        for (double s : ss) {
            // keep a safe distance from the singular angle set
            for (double angle : {t / 2.0 - s / 4.0, t / 2.0 + s / 4.0}) {
                const double frac = std::abs(std::remainder(angle, kPi / 2.0));
                grid_ok = grid_ok && frac > 0.02;
            }
            for (double r : {0.3, 0.5, 0.8}) {
                auto eq = check_rld_equality(bloch_rotation_model(r), royer(t, s), theta1(0.7));
                worst_eq = std::max(worst_eq, eq.delta_vs_classical);
                worst_id = std::max(worst_id, eq.before_vs_after);
            }
        }
    }
    const bool pass = grid_ok && worst_eq <= 1e-7 && worst_id <= 1e-7;
    std::ostringstream d;
    d << "75 grid points, max |Delta J^rld - J^C| " << fmt(worst_eq)
      << ", max |J^rld before - after| " << fmt(worst_id) << " <= 1e-7";
    report(3, "rld-equality", pass, d.str());
}

// ---- criterion 4: monotonicity under random and unitary channels ----------
void criterion_monotonicity() {
    const auto metrics = preset_metrics();
    double worst_gap = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed : instance_seeds(4, 100)) {
        auto model = random_model(2, 1, Rng::derive(seed, 1));
        auto channel = random_channel(2, 2 + static_cast<int>(seed % 3), Rng::derive(seed, 2));
        for (const auto& metric : metrics) {
            worst_gap = std::min(worst_gap, check_monotonicity(model, channel, theta1(0.3), metric));
        }
    }
    double worst_unitary = 0.0;
    for (std::uint64_t seed : instance_seeds(5, 25)) {
        auto model = random_model(2, 1, Rng::derive(seed, 1));
        auto unitary = random_channel(2, 1, Rng::derive(seed, 2));
        for (const auto& metric : metrics) {
            worst_unitary = std::max(
                worst_unitary, std::abs(check_monotonicity(model, unitary, theta1(0.3), metric)));
        }
    }
    const bool pass = worst_gap >= -1e-8 && worst_unitary <= 1e-9;
    std::ostringstream d;
    d << "min channel gap " << fmt(worst_gap) << " >= -1e-8, max |unitary gap| "
      << fmt(worst_unitary) << " <= 1e-9";
    report(4, "monotonicity", pass, d.str());
}

// ---- criterion 5: metric ordering and commuting coincidence ---------------
void criterion_metric_ordering() {
    double worst_order = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed : instance_seeds(6, 100)) {
        auto model = random_model(seed % 2 == 0 ? 2 : 3, 1, Rng::derive(seed, 5));
        auto pt = evaluate(model, theta1(0.25));
        const Matrix j_sld = quantum_fisher(pt, sld_metric()).mat;
        const Matrix j_bkm = quantum_fisher(pt, bkm_metric()).mat;
        const Matrix j_rrld = quantum_fisher(pt, real_rld_metric()).mat;
        worst_order = std::min({worst_order, min_eigenvalue(j_bkm - j_sld),
                                min_eigenvalue(j_rrld - j_bkm)});
    }
    double worst_coincidence = 0.0;
    auto binary = classical_binary_model();
    for (int g = 0; g < 7; ++g) {
        auto pt = evaluate(binary, theta1(0.2 + g * (kPi - 0.4) / 6.0));
        const Matrix ref = quantum_fisher(pt, sld_metric()).mat;
        for (const auto& metric : preset_metrics()) {
            worst_coincidence =
                std::max(worst_coincidence, max_abs(quantum_fisher(pt, metric).mat - ref));
        }
    }
    const bool pass = worst_order >= -1e-9 && worst_coincidence <= 1e-9;
    std::ostringstream d;
    d << "sld <= bkm <= real_rld min eigenvalue " << fmt(worst_order)
      << " >= -1e-9, commuting spread " << fmt(worst_coincidence) << " <= 1e-9";
    report(5, "metric-ordering", pass, d.str());
}

// ---- criterion 6: purification dominance -----------------------------------
void criterion_pure_dominance() {
    double worst_info = 0.0;
    double worst_dom = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed : instance_seeds(7, 100)) {
        auto model = random_model(2, 1, Rng::derive(seed, 1));
        auto impure = random_measurement(2, 2, 2, Rng::derive(seed, 2));
        auto rep = check_pure_dominance(impure, model, theta1(0.2), sld_metric());
        worst_info = std::max(worst_info, rep.jc_max_diff);
        worst_dom = std::min(worst_dom, rep.dominance_min_eigenvalue);
    }
    const bool pass = worst_info <= 1e-9 && worst_dom >= -1e-8;
    std::ostringstream d;
    d << "max |J^C(impure) - J^C(pure)| " << fmt(worst_info)
      << " <= 1e-9, min dominance eigenvalue " << fmt(worst_dom) << " >= -1e-8";
    report(6, "pure-dominance", pass, d.str());
}

// ---- criterion 7: divergence tradeoff and BS dominance ---------------------
void criterion_divergence_tradeoff() {
    double worst_slack = std::numeric_limits<double>::infinity();
    double worst_bs_gap = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed : instance_seeds(8, 100)) {
        Rng rng(Rng::derive(seed, 3));
        auto sample = [&rng]() {
            Matrix a = rng.gaussian_matrix(2, 2);
            Matrix hs = a * a.adjoint();
            hs /= hs.trace().real();
            return DensityMatrix(0.9 * hs + 0.05 * Matrix::Identity(2, 2));
        };
        DensityMatrix rho = sample();
        DensityMatrix sigma = sample();
        for (int which = 0; which < 2; ++which) {
            Measurement meas = which == 0 ? royer(kPi / 2.0, kPi / 2.0)
                                          : random_measurement(2, 2, 2, Rng::derive(seed, 4));
            for (auto kind :
                 {DivergenceKind::quantum_relative, DivergenceKind::belavkin_staszewski}) {
                auto rep = divergence_tradeoff(rho, sigma, meas, kind);
                if (rep.finite) worst_slack = std::min(worst_slack, rep.slack);
            }
        }
        worst_bs_gap = std::min(worst_bs_gap, bs_relative_entropy(rho, sigma).value -
                                                  quantum_relative_entropy(rho, sigma).value);
    }
    const bool pass = worst_slack >= -1e-8 && worst_bs_gap >= -1e-8;
    std::ostringstream d;
    d << "min slack " << fmt(worst_slack) << " >= -1e-8, min (S^bs - S^q) " << fmt(worst_bs_gap)
      << " >= -1e-8";
    report(7, "divergence-tradeoff", pass, d.str());
}

// ---- criterion 8: local expansions reproduce the bkm / real rld metrics ----
void criterion_local_expansion() {
    double worst = 0.0;
    auto bloch = bloch_rotation_model(0.5);
    auto pt = evaluate(bloch, theta1(0.7));
    const double bkm_est =
        local_expansion_metric(bloch, theta1(0.7), DivergenceKind::quantum_relative, 1e-3)(0, 0);
    const double bkm_ref = quantum_fisher(pt, bkm_metric()).mat(0, 0).real();
    worst = std::max(worst, std::abs(bkm_est - bkm_ref) / bkm_ref);
    const double rrld_est = local_expansion_metric(bloch, theta1(0.7),
                                                   DivergenceKind::belavkin_staszewski, 1e-3)(0, 0);
    const double rrld_ref = quantum_fisher(pt, real_rld_metric()).mat(0, 0).real();
    worst = std::max(worst, std::abs(rrld_est - rrld_ref) / rrld_ref);
    auto binary = classical_binary_model();
    for (auto kind : {DivergenceKind::quantum_relative, DivergenceKind::belavkin_staszewski}) {
        worst = std::max(
            worst, std::abs(local_expansion_metric(binary, theta1(kPi / 2.0), kind, 1e-3)(0, 0) -
                            1.0));
    }
    const bool pass = worst <= 0.01;
    report(8, "local-expansion", pass, "max relative error " + fmt(worst) + " <= 1%");
}

// ---- criterion 9: oracle cross-checks ---------------------------------------
void criterion_oracles() {
    double worst_r2 = 0.0;
    for (int k = 1; k <= 9; ++k) {
        const double r = 0.1 * k;
        auto j = quantum_fisher(evaluate(bloch_rotation_model(r), theta1(0.4)), sld_metric());
        worst_r2 = std::max(worst_r2, std::abs(j.mat(0, 0).real() - r * r));
    }
    double worst_fd = 0.0;
    std::vector<StatisticalModel> models;
    models.push_back(classical_binary_model());
    models.push_back(bloch_rotation_model(0.5));
    for (std::uint64_t s = 0; s < 5; ++s) models.push_back(random_model(2, 1, 7000 + s));
    for (const auto& model : models) {
        StatisticalModel numeric(1, model.domain(),
                                 [model](const RealVector& th) { return model.state_at(th); });
        auto pa = evaluate(model, theta1(0.8));
        auto pn = evaluate(numeric, theta1(0.8));
        worst_fd = std::max(worst_fd, max_abs(pa.derivatives[0] - pn.derivatives[0]));
    }
    double worst_jc = 0.0;
    auto binary = classical_binary_model();
    for (int g = 0; g < 9; ++g) {
        auto pt = evaluate(binary, theta1(0.15 + g * (kPi - 0.3) / 8.0));
        RealVector p(2), dp(2);
        p << pt.state.matrix()(0, 0).real(), pt.state.matrix()(1, 1).real();
        dp << pt.derivatives[0](0, 0).real(), pt.derivatives[0](1, 1).real();
        worst_jc = std::max(worst_jc,
                            std::abs(classical_fisher(p, {dp}).mat(0, 0).real() - 1.0));
    }
    const bool pass = worst_r2 <= 1e-8 && worst_fd <= 1e-6 && worst_jc <= 1e-10;
    std::ostringstream d;
    d << "|J^sld - r^2| " << fmt(worst_r2) << " <= 1e-8, FD mismatch " << fmt(worst_fd)
      << " <= 1e-6, |J^C - 1| " << fmt(worst_jc) << " <= 1e-10";
    report(9, "oracle-crosschecks", pass, d.str());
}

// ---- criterion 10: full randsuite run through the CLI ----------------------
void criterion_randsuite() {
    const fs::path dir = fs::temp_directory_path() / "qmetric_acceptance";
    fs::create_directories(dir);
    const fs::path cfg = dir / "empty.json";
    {
        std::ofstream out(cfg);
        out << "{}\n";
    }
    const fs::path out_a = dir / "suite_a.json";
    const fs::path out_b = dir / "suite_b.json";
    const std::string base = std::string(QMETRIC_CLI_PATH) + " randsuite --config " + cfg.string() +
                             " --seed 97 --out ";
    const auto start = std::chrono::steady_clock::now();
    const int status_a = std::system((base + out_a.string() + " > /dev/null 2>&1").c_str());
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int status_b = std::system((base + out_b.string() + " > /dev/null 2>&1").c_str());

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string bytes_a = slurp(out_a);
    const bool pass = WEXITSTATUS(status_a) == 0 && WEXITSTATUS(status_b) == 0 &&
                      !bytes_a.empty() && bytes_a == slurp(out_b) && secs <= 300.0;
    std::ostringstream d;
    d << "exit " << WEXITSTATUS(status_a) << ", " << fmt(secs)
      << " s <= 300 s, reports byte-identical";
    report(10, "randsuite", pass, d.str());
}

}  // namespace

int main() {
    criterion_tradeoff_inequality();
    criterion_separating();
    criterion_rld_equality();
    criterion_monotonicity();
    criterion_metric_ordering();
    criterion_pure_dominance();
    criterion_divergence_tradeoff();
    criterion_local_expansion();
    criterion_oracles();
    criterion_randsuite();
    if (g_failures == 0) {
        std::printf("acceptance: all 10 criteria PASS\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
