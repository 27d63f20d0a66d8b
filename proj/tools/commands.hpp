#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace qmetric::cli {

struct CliOptions {
    std::string config_path;  // empty: defaults (randsuite only)
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    std::string out_path;  // empty: stdout
    std::string format = "json";
    std::optional<double> tol;  // overrides the PSD tolerance band
    bool self_test_negate = false;
};

// Exit-code contract: 0 pass, 1 assertion/invariant failure, 2 usage or
// schema error (enforced by the caller catching SchemaError/UnknownMetric).
int cmd_validate(const CliOptions& opts);
int cmd_tradeoff(const CliOptions& opts);
int cmd_scan(const CliOptions& opts);
int cmd_divergence(const CliOptions& opts);
int cmd_randsuite(const CliOptions& opts);

}  // namespace qmetric::cli
