#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "quantacurve/scenario.hpp"

namespace quantacurve::io {

inline constexpr int kSchemaVersion = 1;

struct ScenarioDescriptor {
    std::string support;      // segment | circle | polygon
    nlohmann::json params;    // {a, b} | {r} | {m, r}
    std::string flavor;
    std::vector<Point2> conditional;

    friend bool operator==(const ScenarioDescriptor&, const ScenarioDescriptor&) = default;
};

struct CodebookEntry {
    double x = 0.0;
    double y = 0.0;
    double s = 0.0;  // arc-length parameter of the point (or of its projection)

    friend bool operator==(const CodebookEntry&, const CodebookEntry&) = default;
};

struct OracleSummary {
    double v_n = 0.0;
    int iters = 0;
    int restarts = 0;

    friend bool operator==(const OracleSummary&, const OracleSummary&) = default;
};

struct CoefficientSummary {
    double value = 0.0;
    double ci = 0.0;
    std::optional<double> target;
    std::optional<double> deviation;

    friend bool operator==(const CoefficientSummary&, const CoefficientSummary&) = default;
};

struct RunRecord {
    int schema_version = kSchemaVersion;
    ScenarioDescriptor scenario;
    int n = 0;
    std::vector<CodebookEntry> codebook;
    double v_n = 0.0;
    std::optional<OracleSummary> oracle;
    std::optional<CoefficientSummary> coefficient;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

ScenarioDescriptor describe(const Scenario& scenario);
std::vector<CodebookEntry> codebook_entries(const Support& support, const Codebook& codebook);
RunRecord make_record(const QuantizationOutcome& outcome);

nlohmann::json to_json(const RunRecord& record);
RunRecord record_from_json(const nlohmann::json& j);

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

inline constexpr const char* kCsvHeader =
    "scenario,param1,param2,n,v_n,n2_v_n,coeff_est,coeff_target,rel_dev";
std::string csv_row(const RunRecord& record);

} // namespace quantacurve::io
