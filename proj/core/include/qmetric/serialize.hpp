#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmetric/fisher.hpp"
#include "qmetric/matrix.hpp"
#include "qmetric/measurement.hpp"
#include "qmetric/model.hpp"

namespace qmetric {

using json = nlohmann::json;

// Wire conventions: complex scalars are two-element arrays [re, im];
// matrices are row-major nested arrays of such entries.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json fisher_to_json(const FisherMatrix& f);

/// Parses {"builtin": name, "params": {...}} or {"samples": [{"theta": [..],
/// "rho": [[..]]}, ...]}. default_seed backs the "random" builtin when its
/// params omit a seed.
StatisticalModel model_from_json(const json& spec, std::uint64_t default_seed);

/// Raw Kraus lists of a measurement spec, available before normalization is
/// enforced (used by `validate`).
std::pair<Eigen::Index, std::vector<std::vector<Matrix>>> kraus_from_json(
    const json& spec, std::uint64_t default_seed);

/// Parses {"builtin": "royer"|"identity"|"random", "params": {...}} or
/// {"kraus": [[matrix, ...], ...]}.
Measurement measurement_from_json(const json& spec, std::uint64_t default_seed);

/// Accepts a scalar, a flat list (several single-parameter points), or a
/// list of lists (several m-dimensional points).
std::vector<RealVector> thetas_from_json(const json& j, int param_dim);

std::vector<MonotoneMetric> metrics_from_json(const json& j);

/// FNV-1a over the canonical (sorted-key) dump of the config.
std::string config_hash(const json& config);

/// Shortest round-trip-exact decimal form of a double (17 significant
/// digits) for CSV cells.
std::string format_double(double v);

json load_config_file(const std::string& path);

}  // namespace qmetric
