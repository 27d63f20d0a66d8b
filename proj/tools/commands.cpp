#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "qmetric/divergence.hpp"
#include "qmetric/rng.hpp"
#include "qmetric/serialize.hpp"
#include "qmetric/tradeoff.hpp"

namespace qmetric::cli {

namespace {

constexpr double kPi = std::numbers::pi;

struct LoadedConfig {
    json config;
    std::uint64_t seed = 0;
    int trials = 0;
    double psd_tol = kPsdTol;
    double equality_tol = 1e-7;
    double slack_tol = 1e-8;
    double expansion_rel_tol = 0.01;
};

LoadedConfig load(const CliOptions& opts, bool config_required) {
    LoadedConfig lc;
    if (!opts.config_path.empty()) {
        lc.config = load_config_file(opts.config_path);
        if (!lc.config.is_object()) throw SchemaError("config root must be a JSON object");
    } else if (config_required) {
        throw SchemaError("--config is required for this command");
    } else {
        lc.config = json::object();
    }
    if (lc.config.contains("seed")) {
        if (!lc.config["seed"].is_number_integer()) throw SchemaError("seed must be an integer");
        lc.seed = lc.config["seed"].get<std::uint64_t>();
    }
    if (lc.config.contains("trials")) {
        if (!lc.config["trials"].is_number_integer()) throw SchemaError("trials must be an integer");
        lc.trials = lc.config["trials"].get<int>();
    }
    const json tols = lc.config.value("tolerances", json::object());
    lc.psd_tol = tols.value("psd", kPsdTol);
    lc.equality_tol = tols.value("equality", 1e-7);
    lc.slack_tol = tols.value("slack", 1e-8);
    lc.expansion_rel_tol = tols.value("expansion_rel", 0.01);
    if (opts.seed) lc.seed = *opts.seed;
    if (opts.trials) lc.trials = *opts.trials;
    if (opts.tol) lc.psd_tol = *opts.tol;
    return lc;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << text;
}

void write_report(const CliOptions& opts, const json& report) {
    write_text(opts.out_path, report.dump(2) + "\n");
}

std::string csv_path_for(const CliOptions& opts) {
    if (opts.out_path.empty()) return "";
    const auto dot = opts.out_path.rfind('.');
    if (dot == std::string::npos) return opts.out_path + ".csv";
    return opts.out_path.substr(0, dot) + ".csv";
}

json tolerances_json(const LoadedConfig& lc) {
    return json{{"psd", lc.psd_tol},
                {"equality", lc.equality_tol},
                {"slack", lc.slack_tol},
                {"expansion_rel", lc.expansion_rel_tol},
                {"support", kSupportTol},
                {"prob", kProbTol}};
}

json report_header(const char* command, const LoadedConfig& lc) {
    return json{{"command", command},
                {"config_hash", config_hash(lc.config)},
                {"seed", lc.seed},
                {"tolerances", tolerances_json(lc)}};
}

json theta_json(const RealVector& theta) {
    json out = json::array();
    for (Eigen::Index a = 0; a < theta.size(); ++a) out.push_back(theta[a]);
    return out;
}

std::vector<RealVector> resolve_thetas(const LoadedConfig& lc, const StatisticalModel& model) {
    if (lc.config.contains("theta")) {
        return thetas_from_json(lc.config.at("theta"), model.param_dim());
    }
    RealVector mid = (model.domain().lo + model.domain().hi) / 2.0;
    return {mid};
}

}  // namespace

int cmd_validate(const CliOptions& opts) {
    LoadedConfig lc = load(opts, /*config_required=*/true);
    bool all_pass = true;
    bool saw_section = false;
    std::ostringstream out;

    if (lc.config.contains("measurement")) {
        saw_section = true;
        auto [dim, outcomes] = kraus_from_json(lc.config.at("measurement"), lc.seed);
        const double residual = kraus_normalization_residual(dim, outcomes);
        const bool ok = residual <= 1e-9;
        out << "measurement: dim=" << dim << " outcomes=" << outcomes.size()
            << " normalization_residual=" << format_double(residual) << (ok ? " PASS" : " FAIL")
            << "\n";
        all_pass = all_pass && ok;
    }

    if (lc.config.contains("model")) {
        saw_section = true;
        StatisticalModel model = model_from_json(lc.config.at("model"), lc.seed);
        for (const RealVector& theta : resolve_thetas(lc, model)) {
            try {
                ModelPoint pt = evaluate(model, theta);
                const double herm = hermiticity_residual(pt.state.matrix());
                const double tr_err = std::abs(pt.state.matrix().trace() - Complex(1.0, 0.0));
                const double lam_min = min_eigenvalue(pt.state.matrix());
                double worst_deriv_trace = 0.0;
                for (const auto& d : pt.derivatives) {
                    worst_deriv_trace = std::max(worst_deriv_trace, std::abs(d.trace()));
                }
                out << "model: theta=" << theta_json(theta).dump()
                    << " hermiticity_residual=" << format_double(herm)
                    << " trace_error=" << format_double(tr_err)
                    << " min_eigenvalue=" << format_double(lam_min)
                    << " max_deriv_trace=" << format_double(worst_deriv_trace) << " PASS\n";
            } catch (const Error& e) {
                out << "model: theta=" << theta_json(theta).dump() << " FAIL (" << e.what()
                    << ")\n";
                all_pass = false;
            }
        }
    }

    if (!saw_section) throw SchemaError("validate: config has neither 'model' nor 'measurement'");
    out << (all_pass ? "validate: PASS\n" : "validate: FAIL\n");
    write_text(opts.out_path, out.str());
    return all_pass ? 0 : 1;
}

int cmd_tradeoff(const CliOptions& opts) {
    LoadedConfig lc = load(opts, /*config_required=*/true);
    if (!lc.config.contains("model")) throw SchemaError("tradeoff: config needs 'model'");
    if (!lc.config.contains("measurement")) throw SchemaError("tradeoff: config needs 'measurement'");
    StatisticalModel model = model_from_json(lc.config.at("model"), lc.seed);
    Measurement meas = measurement_from_json(lc.config.at("measurement"), lc.seed);
    std::vector<MonotoneMetric> metrics =
        lc.config.contains("metrics")
            ? metrics_from_json(lc.config.at("metrics"))
            : preset_metrics();
    const std::vector<RealVector> thetas = resolve_thetas(lc, model);

    const bool rld_applicable = is_pure(meas) && is_reversible(meas);
    bool pass = true;
    json results = json::array();
    json rld_results = json::array();
    std::ostringstream csv;
    csv << "theta,metric,j_classical_trace,delta_trace_re,gap_min_eigenvalue,psd_verdict,"
           "separating_residual\n";

    for (const RealVector& theta : thetas) {
        for (const auto& metric : metrics) {
            TradeoffReport report = check_tradeoff(model, meas, theta, metric, lc.psd_tol);
            const double sep = check_separating(model, meas, theta, metric);
            pass = pass && report.psd_verdict && sep <= lc.equality_tol;
            results.push_back(json{{"theta", theta_json(theta)},
                                   {"metric", metric.name},
                                   {"j_classical", matrix_to_json(report.j_classical.mat)},
                                   {"delta", matrix_to_json(report.delta)},
                                   {"gap", matrix_to_json(report.gap)},
                                   {"gap_min_eigenvalue", report.min_gap_eigenvalue},
                                   {"psd_verdict", report.psd_verdict},
                                   {"separating_residual", sep}});
            std::ostringstream theta_cell;
            for (Eigen::Index a = 0; a < theta.size(); ++a) {
                if (a) theta_cell << ';';
                theta_cell << format_double(theta[a]);
            }
            csv << theta_cell.str() << ',' << metric.name << ','
                << format_double(report.j_classical.mat.trace().real()) << ','
                << format_double(report.delta.trace().real()) << ','
                << format_double(report.min_gap_eigenvalue) << ','
                << (report.psd_verdict ? 1 : 0) << ',' << format_double(sep) << '\n';
        }
        if (rld_applicable) {
            RldEqualityResult eq = check_rld_equality(model, meas, theta);
            pass = pass && eq.delta_vs_classical <= lc.equality_tol &&
                   eq.before_vs_after <= lc.equality_tol;
            rld_results.push_back(json{{"theta", theta_json(theta)},
                                       {"delta_vs_classical", eq.delta_vs_classical},
                                       {"before_vs_after", eq.before_vs_after}});
        }
    }

    json report = report_header("tradeoff", lc);
    report["results"] = std::move(results);
    report["rld_equality"] = rld_applicable ? json(std::move(rld_results)) : json(nullptr);
    report["pass"] = pass;
    write_report(opts, report);
    if (opts.format == "csv") {
        const std::string path = csv_path_for(opts);
        if (path.empty()) {
            std::cout << csv.str();
        } else {
            write_text(path, csv.str());
        }
    }
    return pass ? 0 : 1;
}

int cmd_scan(const CliOptions& opts) {
    LoadedConfig lc = load(opts, /*config_required=*/true);
    if (!lc.config.contains("model")) throw SchemaError("scan: config needs 'model'");
    if (!lc.config.contains("measurement")) throw SchemaError("scan: config needs 'measurement'");
    if (!lc.config.contains("scan")) throw SchemaError("scan: config needs 'scan'");
    const json& scan = lc.config.at("scan");
    const std::string param = scan.value("param", "");
    if (param != "sigma_m" && param != "theta_m" && param != "theta") {
        throw SchemaError("scan.param must be 'sigma_m', 'theta_m' or 'theta'");
    }
    if (!scan.contains("from") || !scan.contains("to") || !scan.contains("points")) {
        throw SchemaError("scan needs 'from', 'to' and 'points'");
    }
    const double from = scan.at("from").get<double>();
    const double to = scan.at("to").get<double>();
    const int points = scan.at("points").get<int>();
    if (points < 2) throw SchemaError("scan.points must be >= 2");

    StatisticalModel model = model_from_json(lc.config.at("model"), lc.seed);
    if (model.param_dim() != 1) throw SchemaError("scan supports single-parameter models only");
    RealVector theta = resolve_thetas(lc, model).front();

    std::ostringstream csv;
    csv << "scan_value,j_classical,delta_sld,delta_bkm,delta_realrld,delta_rld_re,"
           "gap_min_eig_sld,rld_equality_residual\n";
    bool pass = true;

    for (int g = 0; g < points; ++g) {
        const double value = from + (to - from) * g / (points - 1);
        json meas_spec = lc.config.at("measurement");
        RealVector theta_here = theta;
        if (param == "theta") {
            theta_here[0] = value;
        } else {
            if (!meas_spec.is_object() || meas_spec.value("builtin", "") != "royer") {
                throw SchemaError("scan over " + param + " requires the royer measurement");
            }
            meas_spec["params"][param] = value;
        }
        Measurement meas = measurement_from_json(meas_spec, lc.seed);

        TradeoffReport sld_report = check_tradeoff(model, meas, theta_here, sld_metric(), lc.psd_tol);
        const double delta_bkm =
            disturbance(model, meas, theta_here, bkm_metric()).delta(0, 0).real();
        const double delta_rrld =
            disturbance(model, meas, theta_here, real_rld_metric()).delta(0, 0).real();
        const double delta_rld =
            disturbance(model, meas, theta_here, rld_metric()).delta(0, 0).real();
        pass = pass && sld_report.psd_verdict;

        std::string rld_cell;
        if (is_pure(meas) && is_reversible(meas)) {
            RldEqualityResult eq = check_rld_equality(model, meas, theta_here);
            rld_cell = format_double(std::max(eq.delta_vs_classical, eq.before_vs_after));
        }
        csv << format_double(value) << ','
            << format_double(sld_report.j_classical.mat(0, 0).real()) << ','
            << format_double(sld_report.delta(0, 0).real()) << ',' << format_double(delta_bkm)
            << ',' << format_double(delta_rrld) << ',' << format_double(delta_rld) << ','
            << format_double(sld_report.min_gap_eigenvalue) << ',' << rld_cell << '\n';
    }
    write_text(opts.out_path, csv.str());
    return pass ? 0 : 1;
}

int cmd_divergence(const CliOptions& opts) {
    LoadedConfig lc = load(opts, /*config_required=*/true);
    if (!lc.config.contains("divergence")) throw SchemaError("divergence: config needs 'divergence'");
    const json& dcfg = lc.config.at("divergence");
    std::vector<DivergenceKind> kinds;
    if (dcfg.contains("kinds")) {
        for (const json& k : dcfg.at("kinds")) {
            kinds.push_back(divergence_kind_by_name(k.get<std::string>()));
        }
    } else {
        kinds = {DivergenceKind::quantum_relative, DivergenceKind::belavkin_staszewski};
    }
    bool pass = true;
    json report = report_header("divergence", lc);

    auto tradeoff_json = [](const DivergenceTradeoffReport& r, DivergenceKind kind) {
        return json{{"kind", divergence_kind_name(kind)},
                    {"lhs", r.lhs.infinite ? json("inf") : json(r.lhs.value)},
                    {"before", r.before.infinite ? json("inf") : json(r.before.value)},
                    {"finite", r.finite},
                    {"rhs", r.finite ? json(r.rhs) : json(nullptr)},
                    {"slack", r.finite ? json(r.slack) : json(nullptr)},
                    {"vacuous", r.vacuous()}};
    };

    if (dcfg.contains("rho") && dcfg.contains("sigma")) {
        if (!lc.config.contains("measurement")) {
            throw SchemaError("divergence: explicit pair mode needs 'measurement'");
        }
        DensityMatrix rho(matrix_from_json(dcfg.at("rho")));
        DensityMatrix sigma(matrix_from_json(dcfg.at("sigma")));
        Measurement meas = measurement_from_json(lc.config.at("measurement"), lc.seed);
        json entries = json::array();
        for (DivergenceKind kind : kinds) {
            auto r = divergence_tradeoff(rho, sigma, meas, kind);
            if (r.finite) pass = pass && r.slack >= -lc.slack_tol;
            entries.push_back(tradeoff_json(r, kind));
        }
        report["pair_reports"] = std::move(entries);
    } else if (lc.trials > 0) {
        if (!lc.config.contains("measurement")) {
            throw SchemaError("divergence: campaign mode needs 'measurement'");
        }
        const Eigen::Index dim = dcfg.value("dim", 2);
        json per_kind = json::array();
        double min_bs_gap = std::numeric_limits<double>::infinity();
        int bs_pass = 0;
        for (DivergenceKind kind : kinds) {
            double min_slack = std::numeric_limits<double>::infinity();
            int n_pass = 0;
            for (int t = 0; t < lc.trials; ++t) {
                const std::uint64_t trial_seed = Rng::derive(lc.seed, static_cast<std::uint64_t>(t));
                Rng rng(trial_seed);
                auto sample = [&rng, dim]() {
                    Matrix a = rng.gaussian_matrix(dim, dim);
                    Matrix hs = a * a.adjoint();
                    hs /= hs.trace().real();
                    return DensityMatrix(0.9 * hs +
                                         0.1 * Matrix::Identity(dim, dim) / double(dim));
                };
                DensityMatrix rho = sample();
                DensityMatrix sigma = sample();
                Measurement meas = measurement_from_json(lc.config.at("measurement"), trial_seed);
                auto r = divergence_tradeoff(rho, sigma, meas, kind);
                if (r.finite) {
                    min_slack = std::min(min_slack, r.slack);
                    if (r.slack >= -lc.slack_tol) ++n_pass;
                } else {
                    ++n_pass;  // vacuous
                }
                if (kind == kinds.front()) {
                    const double gap = bs_relative_entropy(rho, sigma).value -
                                       quantum_relative_entropy(rho, sigma).value;
                    min_bs_gap = std::min(min_bs_gap, gap);
                    if (gap >= -lc.slack_tol) ++bs_pass;
                }
            }
            pass = pass && n_pass == lc.trials;
            per_kind.push_back(json{{"kind", divergence_kind_name(kind)},
                                    {"min_slack", min_slack},
                                    {"n_pass", n_pass},
                                    {"n_trials", lc.trials}});
        }
        pass = pass && bs_pass == lc.trials;
        report["campaign"] = json{{"per_kind", std::move(per_kind)},
                                  {"bs_dominates_qre",
                                   json{{"min_gap", min_bs_gap}, {"n_pass", bs_pass}}}};
    } else {
        throw SchemaError("divergence: give either rho/sigma or trials > 0");
    }

    if (dcfg.contains("expansion")) {
        if (!lc.config.contains("model")) {
            throw SchemaError("divergence: expansion mode needs 'model'");
        }
        const double delta = dcfg.at("expansion").value("delta", 1e-3);
        StatisticalModel model = model_from_json(lc.config.at("model"), lc.seed);
        RealVector theta = resolve_thetas(lc, model).front();
        const ModelPoint pt = evaluate(model, theta);
        json entries = json::array();
        for (DivergenceKind kind : kinds) {
            const double estimate = local_expansion_metric(model, theta, kind, delta)(0, 0);
            const MonotoneMetric ref_metric = kind == DivergenceKind::quantum_relative
                                                  ? bkm_metric()
                                                  : real_rld_metric();
            const double reference = quantum_fisher(pt, ref_metric).mat(0, 0).real();
            const double rel_error =
                reference != 0.0 ? std::abs(estimate - reference) / std::abs(reference)
                                 : std::abs(estimate);
            pass = pass && rel_error <= lc.expansion_rel_tol;
            entries.push_back(json{{"kind", divergence_kind_name(kind)},
                                   {"delta", delta},
                                   {"estimate", estimate},
                                   {"reference_metric", ref_metric.name},
                                   {"reference", reference},
                                   {"rel_error", rel_error}});
        }
        report["expansion"] = std::move(entries);
    }

    report["pass"] = pass;
    write_report(opts, report);
    return pass ? 0 : 1;
}

namespace {

struct Campaign {
    std::string name;
    double tol;
    int default_trials;  // 0: deterministic, ignores the trials override
    std::function<double(std::uint64_t)> badness;
};

double tradeoff_instance_badness(std::uint64_t seed, Eigen::Index dim,
                                 const std::vector<MonotoneMetric>& metrics) {
    auto inst = random_tradeoff_instance(dim, seed);
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& metric : metrics) {
        auto report = check_tradeoff(inst.model, inst.meas, inst.theta, metric);
        worst = std::max(worst, -report.min_gap_eigenvalue);
    }
    return worst;
}

double separating_instance_badness(std::uint64_t seed, Eigen::Index dim,
                                   const std::vector<MonotoneMetric>& metrics) {
    auto inst = random_tradeoff_instance(dim, seed);
    double worst = 0.0;
    for (const auto& metric : metrics) {
        worst = std::max(worst, check_separating(inst.model, inst.meas, inst.theta, metric));
    }
    return worst;
}

double rld_grid_badness() {
    double worst = 0.0;
    const RealVector theta = RealVector::Constant(1, 0.7);
    for (double r : {0.3, 0.5, 0.8}) {
        auto model = bloch_rotation_model(r);
        for (double t : {0.4, 0.8, 1.2, 1.6, 2.0}) {
            for (double s : {0.3, 0.7, 1.1, 1.5, 1.9}) {
                auto eq = check_rld_equality(model, royer(t, s), theta);
                worst = std::max({worst, eq.delta_vs_classical, eq.before_vs_after});
            }
        }
    }
    return worst;
}

double oracle_badness() {
    double worst = 0.0;
    // SLD information of the bloch family equals r^2
    for (int k = 1; k <= 9; ++k) {
        const double r = 0.1 * k;
        auto j = quantum_fisher(evaluate(bloch_rotation_model(r), RealVector::Constant(1, 0.4)),
                                sld_metric());
        worst = std::max(worst, std::abs(j.mat(0, 0).real() - r * r) / 1e-8);
    }
    // analytic vs finite-difference derivatives
    std::vector<StatisticalModel> models;
    models.push_back(classical_binary_model());
    models.push_back(bloch_rotation_model(0.5));
    for (std::uint64_t s = 0; s < 5; ++s) models.push_back(random_model(2, 1, 7000 + s));
    for (const auto& model : models) {
        StatisticalModel numeric(1, model.domain(),
                                 [model](const RealVector& th) { return model.state_at(th); });
        const RealVector theta = RealVector::Constant(1, 0.8);
        auto pa = evaluate(model, theta);
        auto pn = evaluate(numeric, theta);
        worst = std::max(worst, max_abs(pa.derivatives[0] - pn.derivatives[0]) / 1e-6);
    }
    // classical information of the binary family is exactly 1
    auto binary = classical_binary_model();
    for (int g = 0; g < 9; ++g) {
        const double t = 0.15 + g * (kPi - 0.3) / 8.0;
        auto pt = evaluate(binary, RealVector::Constant(1, t));
        RealVector p(2), dp(2);
        p << pt.state.matrix()(0, 0).real(), pt.state.matrix()(1, 1).real();
        dp << pt.derivatives[0](0, 0).real(), pt.derivatives[0](1, 1).real();
        auto jc = classical_fisher(p, {dp});
        worst = std::max(worst, std::abs(jc.mat(0, 0).real() - 1.0) / 1e-10);
    }
    return worst;  // normalized: <= 1 passes
}

double expansion_badness() {
    double worst = 0.0;
    auto bloch = bloch_rotation_model(0.5);
    const RealVector theta = RealVector::Constant(1, 0.7);
    const ModelPoint pt = evaluate(bloch, theta);
    const double est_bkm =
        local_expansion_metric(bloch, theta, DivergenceKind::quantum_relative, 1e-3)(0, 0);
    const double ref_bkm = quantum_fisher(pt, bkm_metric()).mat(0, 0).real();
    worst = std::max(worst, std::abs(est_bkm - ref_bkm) / std::abs(ref_bkm));
    const double est_rrld =
        local_expansion_metric(bloch, theta, DivergenceKind::belavkin_staszewski, 1e-3)(0, 0);
    const double ref_rrld = quantum_fisher(pt, real_rld_metric()).mat(0, 0).real();
    worst = std::max(worst, std::abs(est_rrld - ref_rrld) / std::abs(ref_rrld));
    auto binary = classical_binary_model();
    const RealVector mid = RealVector::Constant(1, kPi / 2.0);
    for (auto kind : {DivergenceKind::quantum_relative, DivergenceKind::belavkin_staszewski}) {
        worst = std::max(worst, std::abs(local_expansion_metric(binary, mid, kind, 1e-3)(0, 0) - 1.0));
    }
    return worst;
}

double metric_ordering_badness(std::uint64_t seed) {
    auto model = random_model(seed % 2 == 0 ? 2 : 3, 1, Rng::derive(seed, 5));
    auto pt = evaluate(model, RealVector::Constant(1, 0.25));
    const Matrix j_sld = quantum_fisher(pt, sld_metric()).mat;
    const Matrix j_bkm = quantum_fisher(pt, bkm_metric()).mat;
    const Matrix j_rrld = quantum_fisher(pt, real_rld_metric()).mat;
    return std::max(-min_eigenvalue(j_bkm - j_sld), -min_eigenvalue(j_rrld - j_bkm));
}

double commuting_coincidence_badness() {
    auto model = classical_binary_model();
    double worst = 0.0;
    for (double t : {0.5, 1.0, kPi / 2.0, 2.0, 2.8}) {
        auto pt = evaluate(model, RealVector::Constant(1, t));
        std::vector<Matrix> js;
        for (const auto& metric : preset_metrics()) {
            js.push_back(quantum_fisher(pt, metric).mat);
        }
        for (std::size_t i = 1; i < js.size(); ++i) {
            worst = std::max(worst, max_abs(js[i] - js[0]));
        }
    }
    return worst;
}

}  // namespace

int cmd_randsuite(const CliOptions& opts) {
    LoadedConfig lc = load(opts, /*config_required=*/false);
    const bool negate =
        opts.self_test_negate || lc.config.value("self_test_negate", false);
    const auto metrics = preset_metrics();

    std::vector<Campaign> campaigns;
    campaigns.push_back({"tradeoff_inequality_qubit", 1e-8, 200,
                         [&](std::uint64_t s) { return tradeoff_instance_badness(s, 2, metrics); }});
    campaigns.push_back({"tradeoff_inequality_qutrit", 1e-8, 50,
                         [&](std::uint64_t s) { return tradeoff_instance_badness(s, 3, metrics); }});
    campaigns.push_back({"separating_property_qubit", 1e-7, 200,
                         [&](std::uint64_t s) { return separating_instance_badness(s, 2, metrics); }});
    campaigns.push_back({"separating_property_qutrit", 1e-7, 50,
                         [&](std::uint64_t s) { return separating_instance_badness(s, 3, metrics); }});
    campaigns.push_back({"rld_equality_grid", 1e-7, 0, [](std::uint64_t) { return rld_grid_badness(); }});
    campaigns.push_back({"monotonicity_random", 1e-8, 100, [&](std::uint64_t s) {
                             auto model = random_model(2, 1, Rng::derive(s, 1));
                             auto channel = random_channel(2, 2 + static_cast<int>(s % 3),
                                                           Rng::derive(s, 2));
                             double worst = -std::numeric_limits<double>::infinity();
                             const RealVector theta = RealVector::Constant(1, 0.3);
                             for (const auto& metric : metrics) {
                                 worst = std::max(worst,
                                                  -check_monotonicity(model, channel, theta, metric));
                             }
                             return worst;
                         }});
    campaigns.push_back({"monotonicity_unitary", 1e-9, 25, [&](std::uint64_t s) {
                             auto model = random_model(2, 1, Rng::derive(s, 1));
                             auto unitary = random_channel(2, 1, Rng::derive(s, 2));
                             double worst = 0.0;
                             const RealVector theta = RealVector::Constant(1, 0.3);
                             for (const auto& metric : metrics) {
                                 worst = std::max(
                                     worst,
                                     std::abs(check_monotonicity(model, unitary, theta, metric)));
                             }
                             return worst;
                         }});
    campaigns.push_back({"metric_ordering", 1e-9, 100,
                         [](std::uint64_t s) { return metric_ordering_badness(s); }});
    campaigns.push_back({"commuting_coincidence", 1e-9, 0,
                         [](std::uint64_t) { return commuting_coincidence_badness(); }});
    campaigns.push_back({"pure_dominance_information", 1e-9, 100, [](std::uint64_t s) {
                             auto model = random_model(2, 1, Rng::derive(s, 1));
                             auto impure = random_measurement(2, 2, 2, Rng::derive(s, 2));
                             return check_pure_dominance(impure, model,
                                                         RealVector::Constant(1, 0.2), sld_metric())
                                 .jc_max_diff;
                         }});
    campaigns.push_back({"pure_dominance_disturbance", 1e-8, 100, [](std::uint64_t s) {
                             auto model = random_model(2, 1, Rng::derive(s, 1));
                             auto impure = random_measurement(2, 2, 2, Rng::derive(s, 2));
                             return -check_pure_dominance(impure, model,
                                                          RealVector::Constant(1, 0.2), sld_metric())
                                         .dominance_min_eigenvalue;
                         }});
    campaigns.push_back({"divergence_tradeoff", 1e-8, 100, [](std::uint64_t s) {
                             Rng rng(Rng::derive(s, 3));
                             auto sample = [&rng]() {
                                 Matrix a = rng.gaussian_matrix(2, 2);
                                 Matrix hs = a * a.adjoint();
                                 hs /= hs.trace().real();
                                 return DensityMatrix(0.9 * hs + 0.05 * Matrix::Identity(2, 2));
                             };
                             DensityMatrix rho = sample();
                             DensityMatrix sigma = sample();
                             double worst = -std::numeric_limits<double>::infinity();
                             for (int which = 0; which < 2; ++which) {
                                 Measurement meas = which == 0
                                                        ? royer(kPi / 2.0, kPi / 2.0)
                                                        : random_measurement(2, 2, 2,
                                                                             Rng::derive(s, 4));
                                 for (auto kind : {DivergenceKind::quantum_relative,
                                                   DivergenceKind::belavkin_staszewski}) {
                                     auto r = divergence_tradeoff(rho, sigma, meas, kind);
                                     worst = std::max(worst, r.finite
                                                                 ? -r.slack
                                                                 : -std::numeric_limits<double>::infinity());
                                 }
                             }
                             const double bs_gap = bs_relative_entropy(rho, sigma).value -
                                                   quantum_relative_entropy(rho, sigma).value;
                             return std::max(worst, -bs_gap);
                         }});
    campaigns.push_back({"local_expansion", 0.01, 0, [](std::uint64_t) { return expansion_badness(); }});
    campaigns.push_back({"oracle_crosschecks", 1.0, 0, [](std::uint64_t) { return oracle_badness(); }});

    json campaign_reports = json::array();
    bool pass = true;
    for (const auto& campaign : campaigns) {
        CampaignSummary summary;
        if (campaign.default_trials == 0) {
            summary = run_campaign(1, lc.seed, campaign.tol,
                                   [&](std::uint64_t) { return campaign.badness(0); });
        } else {
            const int trials = lc.trials > 0 ? lc.trials : campaign.default_trials;
            summary = run_campaign(trials, lc.seed, campaign.tol, campaign.badness);
        }
        bool campaign_pass = summary.all_passed();
        if (negate) campaign_pass = !campaign_pass;
        pass = pass && campaign_pass;
        json failing = json::array();
        for (std::uint64_t s : summary.failing_seeds) failing.push_back(s);
        campaign_reports.push_back(json{{"name", campaign.name},
                                        {"n_trials", summary.n_trials},
                                        {"n_pass", summary.n_pass},
                                        {"worst_residual", summary.worst_residual},
                                        {"tol", campaign.tol},
                                        {"failing_seeds", std::move(failing)},
                                        {"pass", campaign_pass}});
    }

    json report = report_header("randsuite", lc);
    report["trials_override"] = lc.trials > 0 ? json(lc.trials) : json(nullptr);
    report["self_test_negate"] = negate;
    report["campaigns"] = std::move(campaign_reports);
    report["pass"] = pass;
    write_report(opts, report);
    return pass ? 0 : 1;
}

}  // namespace qmetric::cli
