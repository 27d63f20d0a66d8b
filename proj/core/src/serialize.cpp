#include "qmetric/serialize.hpp"

#include <cstdio>
#include <fstream>

namespace qmetric {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw SchemaError("matrix: expected a non-empty array of rows");
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array()) throw SchemaError("matrix: rows must be arrays");
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw SchemaError("matrix: ragged rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& e = row[static_cast<std::size_t>(c)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw SchemaError("matrix: entries must be [re, im] number pairs");
            }
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

json fisher_to_json(const FisherMatrix& f) {
    return json{{"metric", f.metric_name}, {"matrix", matrix_to_json(f.mat)}};
}

namespace {

const json& require_key(const json& j, const char* key, const char* where) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(std::string(where) + ": missing required key '" + key + "'");
    }
    return j.at(key);
}

double param_number(const json& params, const char* key, const char* where) {
    const json& v = require_key(params, key, where);
    if (!v.is_number()) throw SchemaError(std::string(where) + ": '" + key + "' must be a number");
    return v.get<double>();
}

std::int64_t param_integer(const json& params, const char* key, const char* where) {
    const json& v = require_key(params, key, where);
    if (!v.is_number_integer()) {
        throw SchemaError(std::string(where) + ": '" + key + "' must be an integer");
    }
    return v.get<std::int64_t>();
}

}  // namespace

StatisticalModel model_from_json(const json& spec, std::uint64_t default_seed) {
    if (!spec.is_object()) throw SchemaError("model: expected an object");
    if (spec.contains("samples")) {
        const json& samples = spec.at("samples");
        if (!samples.is_array() || samples.size() < 3) {
            throw SchemaError("model.samples: expected an array of at least 3 samples");
        }
        std::vector<double> thetas;
        std::vector<Matrix> states;
        for (const json& s : samples) {
            const json& th = require_key(s, "theta", "model.samples");
            double value = 0.0;
            if (th.is_number()) {
                value = th.get<double>();
            } else if (th.is_array() && th.size() == 1 && th[0].is_number()) {
                value = th[0].get<double>();
            } else {
                throw SchemaError("model.samples: theta must be a scalar (single parameter)");
            }
            thetas.push_back(value);
            states.push_back(matrix_from_json(require_key(s, "rho", "model.samples")));
        }
        return sample_grid_model(std::move(thetas), std::move(states));
    }
    const json& builtin = require_key(spec, "builtin", "model");
    const json params = spec.value("params", json::object());
    const std::string name = builtin.get<std::string>();
    if (name == "classical_binary") return classical_binary_model();
    if (name == "bloch_rotation") return bloch_rotation_model(param_number(params, "r", "model"));
    if (name == "random") {
        const auto dim = static_cast<Eigen::Index>(param_integer(params, "dim", "model"));
        const int m = params.contains("m") ? static_cast<int>(param_integer(params, "m", "model"))
                                           : 1;
        const std::uint64_t seed = params.contains("seed")
                                       ? static_cast<std::uint64_t>(param_integer(params, "seed", "model"))
                                       : default_seed;
        return random_model(dim, m, seed);
    }
    throw SchemaError("model: unknown builtin '" + name + "'");
}

std::pair<Eigen::Index, std::vector<std::vector<Matrix>>> kraus_from_json(
    const json& spec, std::uint64_t default_seed) {
    if (!spec.is_object()) throw SchemaError("measurement: expected an object");
    if (spec.contains("kraus")) {
        const json& outcomes_json = spec.at("kraus");
        if (!outcomes_json.is_array() || outcomes_json.empty()) {
            throw SchemaError("measurement.kraus: expected a non-empty array of outcomes");
        }
        std::vector<std::vector<Matrix>> outcomes;
        for (const json& outcome : outcomes_json) {
            if (!outcome.is_array() || outcome.empty()) {
                throw SchemaError("measurement.kraus: each outcome must list >= 1 operator");
            }
            std::vector<Matrix> ops;
            for (const json& op : outcome) {
                ops.push_back(matrix_from_json(op));
            }
            outcomes.push_back(std::move(ops));
        }
        const Eigen::Index dim = outcomes.front().front().rows();
        return {dim, std::move(outcomes)};
    }
    const json& builtin = require_key(spec, "builtin", "measurement");
    const json params = spec.value("params", json::object());
    const std::string name = builtin.get<std::string>();
    if (name == "royer") {
        Measurement m = royer(param_number(params, "theta_m", "measurement"),
                              param_number(params, "sigma_m", "measurement"));
        return {m.dim(), m.outcomes()};
    }
    if (name == "identity") {
        const auto dim = static_cast<Eigen::Index>(param_integer(params, "dim", "measurement"));
        Measurement m = identity_measurement(dim);
        return {m.dim(), m.outcomes()};
    }
    if (name == "random") {
        const auto dim = static_cast<Eigen::Index>(param_integer(params, "dim", "measurement"));
        const int n = static_cast<int>(param_integer(params, "n_outcomes", "measurement"));
        const int ops = params.contains("ops_per_outcome")
                            ? static_cast<int>(param_integer(params, "ops_per_outcome", "measurement"))
                            : 1;
        const std::uint64_t seed =
            params.contains("seed")
                ? static_cast<std::uint64_t>(param_integer(params, "seed", "measurement"))
                : default_seed;
        Measurement m = random_measurement(dim, n, ops, seed);
        return {m.dim(), m.outcomes()};
    }
    throw SchemaError("measurement: unknown builtin '" + name + "'");
}

Measurement measurement_from_json(const json& spec, std::uint64_t default_seed) {
    auto [dim, outcomes] = kraus_from_json(spec, default_seed);
    return Measurement(dim, std::move(outcomes));
}

std::vector<RealVector> thetas_from_json(const json& j, int param_dim) {
    std::vector<RealVector> out;
    auto point_from = [param_dim](const json& p) {
        RealVector v(param_dim);
        if (p.is_number()) {
            if (param_dim != 1) throw SchemaError("theta: scalar given for multiparameter model");
            v[0] = p.get<double>();
            return v;
        }
        if (!p.is_array() || static_cast<int>(p.size()) != param_dim) {
            throw SchemaError("theta: point has wrong dimension");
        }
        for (int a = 0; a < param_dim; ++a) {
            if (!p[a].is_number()) throw SchemaError("theta: entries must be numbers");
            v[a] = p[a].get<double>();
        }
        return v;
    };

    if (j.is_number()) {
        out.push_back(point_from(j));
    } else if (j.is_array() && !j.empty() && j[0].is_number()) {
        if (param_dim == 1) {
            for (const json& p : j) out.push_back(point_from(p));  // several scalar points
        } else {
            out.push_back(point_from(j));  // one m-dimensional point
        }
    } else if (j.is_array()) {
        for (const json& p : j) out.push_back(point_from(p));
    } else {
        throw SchemaError("theta: expected a number or an array");
    }
    if (out.empty()) throw SchemaError("theta: no parameter points given");
    return out;
}

std::vector<MonotoneMetric> metrics_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw SchemaError("metrics: expected a non-empty array");
    std::vector<MonotoneMetric> out;
    for (const json& name : j) {
        if (!name.is_string()) throw SchemaError("metrics: entries must be strings");
        out.push_back(metric_by_name(name.get<std::string>()));
    }
    return out;
}

std::string config_hash(const json& config) {
    const std::string bytes = config.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open config file '" + path + "'");
    json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw SchemaError("config file '" + path + "' is not valid JSON");
    return j;
}

}  // namespace qmetric
