#pragma once

#include "sqc/json_io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sqc {

/// Check identifiers in dependency order.
const std::vector<std::string>& check_ids();

struct SuiteConfig {
    std::uint64_t seed = 2024;
    /// Empty optional: every check. An empty list selects nothing.
    std::optional<std::vector<std::string>> only;
    std::size_t mc_samples = 200'000;
    /// Overrides of named tolerances (see README).
    std::map<std::string, double> tolerances;
    /// Heights y of the centres Iy scanned for the d-scaling of eta(B(Iy, 0.5)).
    std::vector<double> scaling_heights{0.70, 0.80, 0.90, 0.95, 0.99};
    /// Heights of the tube covers and packings at r = 0.3.
    std::vector<double> cover_heights{0.70, 0.75, 0.80, 0.85, 0.90};
    std::vector<double> pack_heights{0.70, 0.80, 0.90, 0.95, 0.97};
};

/// Splits "L5.3,T4.8"; throws ConfigInvalid on unknown identifiers.
std::vector<std::string> parse_check_list(const std::string& text);
/// {"seed": n, "only": [...], "mc_samples": n, "tolerances": {...}, "grids": {...}}
SuiteConfig suite_config_from_json(const Json& j);

enum class Status { Pass, Fail, Finding };
std::string to_string(Status s);

struct CheckResult {
    std::string id;
    Status status = Status::Pass;
    Json measured = Json::object();
    /// Internal consistency failures (oracle disagreements).
    std::vector<std::string> failures;
    /// Stated properties that the measurement contradicts.
    std::vector<std::string> findings;
    double runtime_seconds = 0.0;
    /// Wall time of named sections of the check, in execution order.
    std::vector<std::pair<std::string, double>> phase_seconds;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;

    bool failed() const;
};

SuiteReport run_suite(const SuiteConfig& config);
CheckResult run_check(const std::string& id, const SuiteConfig& config);

/// Report without runtimes: a pure function of the configuration.
Json to_json(const SuiteReport& report);
Json timings_json(const SuiteReport& report);

struct ConstantEnvelope {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    std::string grid;
};

/// Empirical envelopes of C1, c2, C2, c3, C3, c5, C5, n0 from the geometry checks.
std::vector<ConstantEnvelope> estimate_constants(const SuiteReport& geometry_report);
std::vector<ConstantEnvelope> estimate_constants(const SuiteConfig& config);

/// Rows (y, d, eta_ball, sigma, fitted_exponent) of the d-scaling scan of eta(B(Iy, 0.5)).
struct ScalingRow {
    double y, d, eta, sigma, exponent;
};
std::vector<ScalingRow> scaling_rows(const SuiteReport& report);

std::string constants_csv(const std::vector<ConstantEnvelope>& c);
std::string scaling_csv(const std::vector<ScalingRow>& rows);

/// Writes report.json, timings.json, constants.csv and scaling_d8.csv into dir.
void emit(const SuiteReport& report, const std::string& dir);

}  // namespace sqc
