#include "quantacurve/run_record.hpp"

#include <charconv>
#include <cmath>

#include "quantacurve/errors.hpp"

namespace quantacurve::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> read_optional(const nlohmann::json& j) {
    if (j.is_null()) {
        return std::nullopt;
    }
    return j.get<double>();
}

std::string param_text(const nlohmann::json& params, const char* key) {
    if (!params.contains(key)) {
        return "";
    }
    const auto& v = params.at(key);
    return v.is_number_integer() ? std::to_string(v.get<long long>()) : format_double(v.get<double>());
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

ScenarioDescriptor describe(const Scenario& scenario) {
    ScenarioDescriptor out;
    std::visit(overloaded{
                   [&](const SegmentSupport& s) {
                       out.support = "segment";
                       out.params = {{"a", s.a()}, {"b", s.b()}};
                   },
                   [&](const CircleSupport& s) {
                       out.support = "circle";
                       out.params = {{"r", s.r()}};
                   },
                   [&](const PolygonSupport& s) {
                       out.support = "polygon";
                       out.params = {{"m", s.m()}, {"r", s.r()}};
                   },
               },
               scenario.support());
    out.flavor = to_string(scenario.flavor());
    out.conditional = scenario.conditional();
    return out;
}

std::vector<CodebookEntry> codebook_entries(const Support& support, const Codebook& codebook) {
    std::vector<CodebookEntry> out;
    for (const Point2& p : codebook.points) {
        out.push_back({p.x, p.y, parameter_of(support, p)});
    }
    return out;
}

RunRecord make_record(const QuantizationOutcome& outcome) {
    RunRecord rec;
    rec.scenario = describe(outcome.scenario);
    rec.n = outcome.codebook.n();
    rec.codebook = codebook_entries(outcome.scenario.support(), outcome.codebook);
    rec.v_n = outcome.error;
    if (outcome.provenance == Provenance::Oracle) {
        rec.oracle = OracleSummary{outcome.error, outcome.metadata.iterations, outcome.metadata.restarts};
    }
    return rec;
}

nlohmann::json to_json(const RunRecord& record) {
    nlohmann::json conditional = nlohmann::json::array();
    for (const Point2& p : record.scenario.conditional) {
        conditional.push_back({{"x", p.x}, {"y", p.y}});
    }
    nlohmann::json codebook = nlohmann::json::array();
    for (const CodebookEntry& e : record.codebook) {
        codebook.push_back({{"x", e.x}, {"y", e.y}, {"s", e.s}});
    }
    nlohmann::json j;
    j["schema_version"] = record.schema_version;
    j["scenario"] = {{"support", record.scenario.support},
                     {"params", record.scenario.params},
                     {"flavor", record.scenario.flavor},
                     {"conditional", conditional}};
    j["n"] = record.n;
    j["codebook"] = codebook;
    j["v_n"] = record.v_n;
    j["oracle"] = record.oracle ? nlohmann::json{{"v_n", record.oracle->v_n},
                                                 {"iters", record.oracle->iters},
                                                 {"restarts", record.oracle->restarts}}
                                : nlohmann::json(nullptr);
    j["coefficient"] = record.coefficient ? nlohmann::json{{"value", record.coefficient->value},
                                                           {"ci", record.coefficient->ci},
                                                           {"target", optional_number(record.coefficient->target)},
                                                           {"deviation", optional_number(record.coefficient->deviation)}}
                                          : nlohmann::json(nullptr);
    return j;
}

RunRecord record_from_json(const nlohmann::json& j) {
    try {
        RunRecord rec;
        rec.schema_version = j.at("schema_version").get<int>();
        const auto& sc = j.at("scenario");
        rec.scenario.support = sc.at("support").get<std::string>();
        rec.scenario.params = sc.at("params");
        rec.scenario.flavor = sc.at("flavor").get<std::string>();
        for (const auto& p : sc.at("conditional")) {
            rec.scenario.conditional.push_back({p.at("x").get<double>(), p.at("y").get<double>()});
        }
        rec.n = j.at("n").get<int>();
        for (const auto& e : j.at("codebook")) {
            rec.codebook.push_back({e.at("x").get<double>(), e.at("y").get<double>(), e.at("s").get<double>()});
        }
        rec.v_n = j.at("v_n").get<double>();
        if (const auto& o = j.at("oracle"); !o.is_null()) {
            rec.oracle = OracleSummary{o.at("v_n").get<double>(), o.at("iters").get<int>(),
                                       o.at("restarts").get<int>()};
        }
        if (const auto& c = j.at("coefficient"); !c.is_null()) {
            rec.coefficient = CoefficientSummary{c.at("value").get<double>(), c.at("ci").get<double>(),
                                                 read_optional(c.at("target")), read_optional(c.at("deviation"))};
        }
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed run record: ") + e.what());
    }
}

std::string csv_row(const RunRecord& record) {
    std::string scenario = record.scenario.support + ":" + record.scenario.flavor;
    std::string p1;
    std::string p2;
    if (record.scenario.support == "segment") {
        p1 = param_text(record.scenario.params, "a");
        p2 = param_text(record.scenario.params, "b");
    } else if (record.scenario.support == "circle") {
        p1 = param_text(record.scenario.params, "r");
    } else {
        p1 = param_text(record.scenario.params, "m");
        p2 = param_text(record.scenario.params, "r");
    }
    const double n = record.n;
    std::string row = scenario + "," + p1 + "," + p2 + "," + std::to_string(record.n) + "," +
                      format_double(record.v_n) + "," + format_double(n * n * record.v_n) + ",";
    if (record.coefficient) {
        const auto& c = *record.coefficient;
        row += format_double(c.value) + "," + (c.target ? format_double(*c.target) : "") + "," +
               (c.deviation ? format_double(*c.deviation) : "");
    } else {
        row += ",,";
    }
    return row;
}

} // namespace quantacurve::io
