#include "quantacurve/commands.hpp"

#include <cmath>
#include <exception>
#include <variant>

#include "quantacurve/asymptotics.hpp"
#include "quantacurve/closed_form.hpp"

namespace quantacurve::io {

namespace {

oracle::OracleConfig checked(const oracle::OracleConfig& config) {
    config.validate();
    return config;
}

QuantizationOutcome run_oracle(const Scenario& scenario, int n, const oracle::OracleConfig& config) {
    const Support& support = scenario.support();
    if (const auto* seg = std::get_if<SegmentSupport>(&support)) {
        std::vector<double> xs;
        for (const Point2& p : scenario.conditional()) {
            xs.push_back(p.x);
        }
        QuantizationOutcome out = oracle::dp_conditional_1d({seg->a(), seg->b()}, xs, n, config);
        out.scenario = scenario;
        return out;
    }
    if (const auto* circle = std::get_if<CircleSupport>(&support)) {
        return scenario.flavor() == Flavor::Unconstrained ? oracle::lloyd_unconstrained(*circle, n, config)
                                                          : oracle::lloyd_constrained_circle(*circle, n, config);
    }
    return oracle::polygon_dp(std::get<PolygonSupport>(support), n, config);
}

CoefficientSummary summarize(const Scenario& scenario, const asymptotics::CoefficientEstimate& est) {
    CoefficientSummary c{est.value, est.ci_halfwidth, closed_form::coefficient_target(scenario), std::nullopt};
    if (c.target) {
        c.deviation = std::abs(est.value - *c.target) / *c.target;
    }
    return c;
}

std::vector<RunRecord> coefficient_records(const Scenario& scenario, const std::vector<int>& grid) {
    if (grid.empty()) {
        throw UsageError("coefficient: empty n grid");
    }
    const asymptotics::ErrorSequence seq = asymptotics::make_sequence(
        grid, [&](int n) { return closed_form::closed_form_error(scenario, n); });
    const CoefficientSummary coeff = summarize(scenario, asymptotics::coefficient_estimate(seq));
    const ScenarioDescriptor desc = describe(scenario);
    std::vector<RunRecord> out;
    for (const auto& e : seq.entries) {
        RunRecord rec;
        rec.scenario = desc;
        rec.n = e.n;
        rec.v_n = e.v;
        rec.coefficient = coeff;
        out.push_back(std::move(rec));
    }
    return out;
}

} // namespace

Scenario build_scenario(const ScenarioArgs& args) {
    if (args.support == "segment") {
        if (!args.flavor.empty() && args.flavor != "conditional-unconstrained") {
            throw UsageError("segment supports only the conditional-unconstrained flavor");
        }
        const SegmentSupport seg(args.a, args.b);
        if (args.conditional == "left") {
            return Scenario::segment_endpoints(seg, EndpointSet::Left);
        }
        if (args.conditional == "right") {
            return Scenario::segment_endpoints(seg, EndpointSet::Right);
        }
        if (args.conditional == "both") {
            return Scenario::segment_endpoints(seg, EndpointSet::Both);
        }
        throw UsageError("--conditional must be left, right or both");
    }
    if (args.support == "circle") {
        const CircleSupport circle(args.r);
        if (args.flavor.empty() || args.flavor == "constrained-conditional" ||
            args.flavor == "conditional-constrained") {
            return Scenario::circle_constrained(circle);
        }
        if (args.flavor == "unconstrained") {
            return Scenario::circle_unconstrained(circle);
        }
        throw UsageError("circle --flavor must be constrained-conditional or unconstrained");
    }
    if (args.support == "polygon") {
        if (!args.flavor.empty() && args.flavor != "conditional-unconstrained") {
            throw UsageError("polygon supports only the conditional-unconstrained flavor");
        }
        return Scenario::polygon_vertices(PolygonSupport(args.m, args.r));
    }
    throw UsageError("--support must be segment, circle or polygon");
}

int minimal_n(const Scenario& scenario) {
    if (const auto* poly = std::get_if<PolygonSupport>(&scenario.support())) {
        return poly->m();
    }
    return std::max<int>(1, static_cast<int>(scenario.conditional().size()));
}

RunRecord cmd_solve(const Scenario& scenario, int n, const std::vector<int>& chosen_sides) {
    if (!chosen_sides.empty()) {
        const auto* poly = std::get_if<PolygonSupport>(&scenario.support());
        if (poly == nullptr) {
            throw UsageError("--chosen-sides applies to polygons only");
        }
        return make_record(closed_form::polygon_conditional(*poly, n, chosen_sides));
    }
    return make_record(closed_form::solve(scenario, n));
}

RunRecord cmd_oracle(const Scenario& scenario, int n, const oracle::OracleConfig& config) {
    return make_record(run_oracle(scenario, n, checked(config)));
}

VerifyReport cmd_verify(const Scenario& scenario, int n_min, int n_max, const oracle::OracleConfig& config,
                        double tolerance, double corruption) {
    if (n_min > n_max) {
        throw UsageError("verify: --n-min exceeds --n-max");
    }
    if (!(tolerance > 0.0)) {
        throw UsageError("verify: --tolerance must be positive");
    }
    const oracle::OracleConfig cfg = checked(config);
    VerifyReport report;
    for (int n = n_min; n <= n_max; ++n) {
        QuantizationOutcome cf = closed_form::solve(scenario, n);
        cf.error *= 1.0 + corruption;
        const QuantizationOutcome orc = run_oracle(scenario, n, cfg);
        RunRecord rec = make_record(cf);
        rec.oracle = OracleSummary{orc.error, orc.metadata.iterations, orc.metadata.restarts};
        report.max_gap = std::max(report.max_gap, std::abs(orc.error - cf.error) / cf.error);
        report.records.push_back(std::move(rec));
    }
    report.passed = report.max_gap <= tolerance;
    return report;
}

std::vector<RunRecord> cmd_coefficient(const Scenario& scenario, const std::vector<int>& grid) {
    return coefficient_records(scenario, grid);
}

std::vector<RunRecord> cmd_sweep(const std::vector<Scenario>& scenarios, const std::vector<int>& grid) {
    const int count = static_cast<int>(scenarios.size());
    std::vector<std::optional<RunRecord>> rows(scenarios.size());
    std::vector<std::exception_ptr> failures(scenarios.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        try {
            rows[i] = coefficient_records(scenarios[i], grid).back();
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }
    std::vector<RunRecord> out;
    for (int i = 0; i < count; ++i) {
        if (failures[i]) {
            std::rethrow_exception(failures[i]);
        }
        out.push_back(std::move(*rows[i]));
    }
    return out;
}

} // namespace quantacurve::io
