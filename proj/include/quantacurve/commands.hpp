#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quantacurve/errors.hpp"
#include "quantacurve/oracle.hpp"
#include "quantacurve/run_record.hpp"
#include "quantacurve/scenario.hpp"

// The work behind each CLI subcommand, independent of argument parsing.
namespace quantacurve::io {

class UsageError : public Error {
public:
    using Error::Error;
};

// Scenario as named on the command line.
struct ScenarioArgs {
    std::string support;             // segment | circle | polygon
    double a = 0.0;
    double b = 1.0;
    double r = 1.0;
    int m = 3;
    std::string conditional = "both";  // segment only: left | right | both
    std::string flavor;                // circle: constrained-conditional | unconstrained
};

Scenario build_scenario(const ScenarioArgs& args);

// Smallest n the scenario admits.
int minimal_n(const Scenario& scenario);

RunRecord cmd_solve(const Scenario& scenario, int n, const std::vector<int>& chosen_sides = {});

// Oracle recomputation of V_n, no closed form involved.
RunRecord cmd_oracle(const Scenario& scenario, int n, const oracle::OracleConfig& config);

struct VerifyReport {
    std::vector<RunRecord> records;  // closed-form codebook, oracle summary attached
    double max_gap = 0.0;            // largest relative |V_oracle - V_closed| / V_closed
    bool passed = false;
};

// `corruption` scales the closed-form error by (1 + corruption); a
// negative control for the comparison.
VerifyReport cmd_verify(const Scenario& scenario, int n_min, int n_max, const oracle::OracleConfig& config,
                        double tolerance, double corruption = 0.0);

// One record per grid point; each carries the fit over the whole grid.
std::vector<RunRecord> cmd_coefficient(const Scenario& scenario, const std::vector<int>& grid);

// One record per scenario at the largest grid n; rows computed in
// parallel, returned in input order.
std::vector<RunRecord> cmd_sweep(const std::vector<Scenario>& scenarios, const std::vector<int>& grid);

} // namespace quantacurve::io
