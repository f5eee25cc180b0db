#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "quantacurve/asymptotics.hpp"
#include "quantacurve/commands.hpp"
#include "quantacurve/parallel.hpp"

namespace qc = quantacurve;
namespace io = quantacurve::io;

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Globals {
    std::string out;
    std::string format;
    std::uint64_t seed = qc::oracle::OracleConfig{}.seed;
    double tolerance = 1e-5;
};

void add_scenario_flags(CLI::App* cmd, io::ScenarioArgs& args) {
    cmd->add_option("--support", args.support, "segment | circle | polygon")->required();
    cmd->add_option("--a", args.a, "segment left end");
    cmd->add_option("--b", args.b, "segment right end");
    cmd->add_option("--r", args.r, "circle or polygon circumradius");
    cmd->add_option("--m", args.m, "polygon side count");
    cmd->add_option("--conditional", args.conditional, "segment conditional set: left | right | both");
    cmd->add_option("--flavor", args.flavor, "circle: constrained-conditional | unconstrained");
}

void add_oracle_flags(CLI::App* cmd, qc::oracle::OracleConfig& cfg) {
    cmd->add_option("--grid-cells", cfg.grid_cells, "DP grid resolution");
    cmd->add_option("--quad-panels", cfg.quad_panels, "Simpson panels per smooth piece");
    cmd->add_option("--max-iters", cfg.max_iters, "Lloyd iteration cap");
    cmd->add_option("--conv-tol", cfg.conv_tol, "Lloyd relative convergence tolerance");
    cmd->add_option("--restarts", cfg.restarts, "Lloyd random restarts");
}

struct GridArgs {
    int n_min = 100;
    int n_max = 10000;
    int points = 25;
};

void add_grid_flags(CLI::App* cmd, GridArgs& grid) {
    cmd->add_option("--n-min", grid.n_min, "smallest n of the geometric grid");
    cmd->add_option("--n-max", grid.n_max, "largest n of the geometric grid");
    cmd->add_option("--points", grid.points, "grid size");
}

std::string render(const std::vector<io::RunRecord>& records, bool single, const std::string& format) {
    std::ostringstream os;
    if (format == "csv") {
        os << io::kCsvHeader << '\n';
        for (const auto& rec : records) {
            os << io::csv_row(rec) << '\n';
        }
        return os.str();
    }
    nlohmann::json j;
    if (single && records.size() == 1) {
        j = io::to_json(records.front());
    } else {
        j = nlohmann::json::array();
        for (const auto& rec : records) {
            j.push_back(io::to_json(rec));
        }
    }
    os << j.dump(2) << '\n';
    return os.str();
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw io::UsageError("cannot open output file " + path);
    }
    f << text;
}

} // namespace

int main(int argc, char** argv) {
    qc::apply_thread_cap_from_env();

    CLI::App app{"Conditional quantization on curves: closed forms, oracles, coefficients"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--out", g.out, "write output to this file instead of stdout");
    app.add_option("--format", g.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", g.seed, "oracle RNG seed");
    app.add_option("--tolerance", g.tolerance, "verify: largest accepted relative gap");

    io::ScenarioArgs scen;
    qc::oracle::OracleConfig cfg;
    int n = 0;
    std::vector<int> chosen_sides;

    auto* solve = app.add_subcommand("solve", "closed-form codebook and error");
    add_scenario_flags(solve, scen);
    solve->add_option("--n", n, "codebook size")->required();
    solve->add_option("--chosen-sides", chosen_sides, "polygon sides receiving the extra point")->delimiter(',');

    auto* orc = app.add_subcommand("oracle", "numerical recomputation of the optimum");
    add_scenario_flags(orc, scen);
    orc->add_option("--n", n, "codebook size")->required();
    add_oracle_flags(orc, cfg);

    auto* verify = app.add_subcommand("verify", "closed form against oracle over an n range");
    add_scenario_flags(verify, scen);
    int v_min = 0;
    int v_max = 0;
    double corruption = 0.0;
    verify->add_option("--n-min", v_min, "first n (default: smallest admissible)");
    verify->add_option("--n-max", v_max, "last n")->required();
    add_oracle_flags(verify, cfg);
    verify->add_option("--corrupt-formula", corruption, "scale the closed form by 1 + x")->group("");

    auto* coeff = app.add_subcommand("coefficient", "quantization coefficient from the closed-form sequence");
    add_scenario_flags(coeff, scen);
    GridArgs cgrid;
    add_grid_flags(coeff, cgrid);

    auto* sweep = app.add_subcommand("sweep", "coefficient table over a family of scenarios");
    std::string s_support;
    double s_a = 0.0;
    double s_b = 1.0;
    std::vector<double> s_r{1.0};
    std::vector<int> s_m;
    std::vector<int> s_m_range;
    std::vector<std::string> s_conditional{"left", "right", "both"};
    std::string s_flavor;
    GridArgs sgrid;
    sweep->add_option("--support", s_support, "segment | circle | polygon")->required();
    sweep->add_option("--a", s_a, "segment left end");
    sweep->add_option("--b", s_b, "segment right end");
    sweep->add_option("--r", s_r, "radii (comma separated)")->delimiter(',');
    sweep->add_option("--m", s_m, "polygon side counts (comma separated)")->delimiter(',');
    sweep->add_option("--m-range", s_m_range, "inclusive side-count range LO HI")->expected(2);
    sweep->add_option("--conditional", s_conditional, "segment conditional sets (comma separated)")->delimiter(',');
    sweep->add_option("--flavor", s_flavor, "circle flavor");
    add_grid_flags(sweep, sgrid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    cfg.seed = g.seed;
    try {
        std::vector<io::RunRecord> records;
        bool single = false;
        std::string format = g.format;
        if (*solve) {
            records.push_back(io::cmd_solve(io::build_scenario(scen), n, chosen_sides));
            single = true;
        } else if (*orc) {
            records.push_back(io::cmd_oracle(io::build_scenario(scen), n, cfg));
            single = true;
        } else if (*verify) {
            const qc::Scenario s = io::build_scenario(scen);
            const int lo = verify->count("--n-min") ? v_min : io::minimal_n(s);
            const io::VerifyReport report = io::cmd_verify(s, lo, v_max, cfg, g.tolerance, corruption);
            emit(render(report.records, false, format.empty() ? "json" : format), g.out);
            std::cerr << "max relative gap " << io::format_double(report.max_gap) << " (tolerance "
                      << io::format_double(g.tolerance) << ")\n";
            return report.passed ? 0 : kExitVerifyFailed;
        } else if (*coeff) {
            const auto grid = qc::asymptotics::geometric_grid(cgrid.n_min, cgrid.n_max, cgrid.points);
            records = io::cmd_coefficient(io::build_scenario(scen), grid);
        } else if (*sweep) {
            std::vector<qc::Scenario> family;
            if (s_support == "polygon") {
                std::vector<int> ms = s_m;
                if (!s_m_range.empty()) {
                    for (int m = s_m_range[0]; m <= s_m_range[1]; ++m) {
                        ms.push_back(m);
                    }
                }
                for (double r : s_r) {
                    for (int m : ms) {
                        family.push_back(io::build_scenario({"polygon", 0.0, 1.0, r, m, "", ""}));
                    }
                }
            } else if (s_support == "segment") {
                for (const auto& c : s_conditional) {
                    family.push_back(io::build_scenario({"segment", s_a, s_b, 1.0, 3, c, ""}));
                }
            } else if (s_support == "circle") {
                for (double r : s_r) {
                    family.push_back(io::build_scenario({"circle", 0.0, 1.0, r, 3, "", s_flavor}));
                }
            } else {
                throw io::UsageError("--support must be segment, circle or polygon");
            }
            const auto grid = qc::asymptotics::geometric_grid(sgrid.n_min, sgrid.n_max, sgrid.points);
            records = io::cmd_sweep(family, grid);
            if (format.empty()) {
                format = "csv";
            }
        }
        emit(render(records, single, format.empty() ? "json" : format), g.out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
