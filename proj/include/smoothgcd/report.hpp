#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "smoothgcd/cost_model.hpp"
#include "smoothgcd/gcd_engine.hpp"

namespace sgcd {

inline constexpr int kSchemaVersion = 1;

struct PhaseTimings {
    double table_ms = 0.0;
    double main_loop_ms = 0.0;

    friend bool operator==(const PhaseTimings&, const PhaseTimings&) = default;
};

/// Everything one `gcd` invocation produced. Timings are opt-in so that
/// reports of identical runs stay byte-identical.
struct RunReport {
    int schema_version = kSchemaVersion;
    Natural u;
    Natural v;
    ResolvedConfig config;
    GcdResult result;
    /// Absent when the run is too small for the model (n < 4 or B < 4).
    std::optional<CostLedger> ledger;
    std::optional<PhaseTimings> timings;

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::ordered_json to_json(const RunReport& report);

/// Inverse of to_json. Throws ParameterError on schema mismatch or
/// malformed fields.
RunReport report_from_json(const nlohmann::ordered_json& j);

/// `field,value` CSV: one row per leaf of the JSON document, keyed by its
/// dotted path, so both encodings carry the same values.
std::string to_csv(const RunReport& report);

std::string to_text(const RunReport& report);

/// Flattens a JSON document into (dotted path, scalar text) pairs.
std::vector<std::pair<std::string, std::string>> flatten(const nlohmann::ordered_json& j);

} // namespace sgcd
