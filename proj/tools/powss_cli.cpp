#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "powss/belief.hpp"
#include "powss/errors.hpp"
#include "powss/harness.hpp"
#include "powss/problems.hpp"
#include "powss/sn_estimator.hpp"
#include "powss/solvers.hpp"

namespace {

using nlohmann::json;

std::vector<std::string> action_names(const std::string& problem_name, int action_count) {
    if (problem_name == "co-tiger") return {"open-l", "open-r", "wait", "listen"};
    std::vector<std::string> names;
    for (int a = 0; a < action_count; ++a) names.push_back("a" + std::to_string(a));
    return names;
}

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
    return buf;
}

int run_solve(const std::string& problem_name, const std::string& solver, int width,
              std::uint64_t seed, bool as_json) {
    const powss::ProblemDefinition problem = powss::problem_by_name(problem_name);
    const powss::SolverConfig config =
        powss::make_config(problem, powss::solver_by_name(solver), width);
    powss::Rng rng(seed);
    const powss::QEstimates estimates = powss::select_action(problem, config, rng);
    const auto names = action_names(problem_name, problem.action_count);

    if (as_json) {
        json out = {{"problem", problem_name},
                    {"solver", solver},
                    {"width", width},
                    {"seed", seed},
                    {"q", estimates.per_action},
                    {"chosen_action", estimates.best_action},
                    {"chosen_action_name", names[estimates.best_action]},
                    {"value", estimates.value}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (int a = 0; a < problem.action_count; ++a) {
            std::cout << "Q(" << names[a] << ") = " << fixed(estimates.per_action[a], 4) << "\n";
        }
        std::cout << "chosen action: " << names[estimates.best_action] << "\n";
    }
    return 0;
}

powss::SweepConfig sweep_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw powss::IoError("cannot read config: " + path);
    json cfg = json::parse(in);

    powss::SweepConfig sweep;
    sweep.problem_name = cfg.at("problem").get<std::string>();
    for (const auto& s : cfg.at("solvers")) {
        sweep.solver_kinds.push_back(powss::solver_by_name(s.get<std::string>()));
    }
    sweep.widths = cfg.at("widths").get<std::vector<int>>();
    sweep.runs_per_cell = cfg.at("runs").get<int>();
    sweep.base_seed = cfg.at("seed").get<std::uint64_t>();
    sweep.output_path = cfg.at("output").get<std::string>();
    if (cfg.contains("format") && cfg["format"] == "json") {
        sweep.format = powss::OutputFormat::Json;
    }
    return sweep;
}

int run_sweep(const powss::SweepConfig& config) {
    const auto table = powss::run_root_sweep(config);
    std::cout << "wrote " << table.size() << " rows";
    if (!config.output_path.empty()) std::cout << " to " << config.output_path;
    std::cout << "\n";
    return 0;
}

int run_closed_loop_cmd(const std::string& problem_name, const std::string& solver, int width,
                        int episodes, std::uint64_t seed, int threads) {
    const powss::ProblemDefinition problem = powss::problem_by_name(problem_name);
    const powss::ClosedLoopResult result = powss::run_closed_loop(
        problem, powss::solver_by_name(solver), width, episodes, seed, threads);
    std::cout << "mean return: " << fixed(result.mean_return, 4) << " +/- "
              << fixed(result.std_return, 4) << " (" << result.episodes << " episodes)\n";
    return 0;
}

int run_oracle(const std::string& problem_name) {
    const powss::ProblemDefinition problem = powss::problem_by_name(problem_name);
    const powss::ExactBelief belief{problem.model.value().initial_belief};
    const std::vector<double> exact = powss::exact_q_values(problem, belief, 0);
    const std::vector<double> qmdp = powss::qmdp_q_values(problem, belief);
    const auto names = action_names(problem_name, problem.action_count);

    std::cout << "action      exact-Q*    QMDP\n";
    for (int a = 0; a < problem.action_count; ++a) {
        std::printf("%-10s  %8.2f  %8.2f\n", names[a].c_str(), exact[a], qmdp[a]);
    }
    return 0;
}

int run_bounds(double epsilon, double gamma, double r_max, int depth, int actions, double d_inf) {
    const powss::BoundsReport report =
        powss::theorem2_constants(epsilon, gamma, r_max, depth, actions, d_inf);
    std::cout << "epsilon   = " << powss::format_g17(report.epsilon) << "\n"
              << "lambda    = " << powss::format_g17(report.lambda) << "\n"
              << "delta     = " << powss::format_g17(report.delta) << "\n"
              << "v_max     = " << powss::format_g17(report.v_max) << "\n"
              << "d_inf_max = " << powss::format_g17(report.d_inf_max) << "\n"
              << "min_width = " << report.min_width << "\n"
              << "t_max     = " << powss::format_g17(report.t_max) << "\n";
    std::cout << "alpha     =";
    for (double a : report.alpha_sequence) std::cout << ' ' << powss::format_g17(a);
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse sampling planners for continuous-observation POMDPs"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "worker thread cap (default: available parallelism)");

    std::string problem_name = "co-tiger";
    std::string solver = "powss";
    int width = 10;
    std::uint64_t seed = 0;
    bool as_json = false;

    CLI::App* solve = app.add_subcommand("solve", "plan once from the initial belief");
    solve->add_option("--problem", problem_name)->required();
    solve->add_option("--solver", solver)->check(CLI::IsMember({"poss", "powss"}))->required();
    solve->add_option("--width", width)->check(CLI::PositiveNumber)->required();
    solve->add_option("--seed", seed)->required();
    solve->add_flag("--json", as_json, "machine-readable output at full precision");

    std::string config_path;
    std::vector<int> widths;
    std::vector<std::string> solvers = {"poss", "powss"};
    int runs = 200;
    std::string out_path = "sweep.csv";
    std::string format = "csv";
    bool timing = false;

    CLI::App* sweep = app.add_subcommand("sweep", "root Q-estimate convergence sweep");
    auto* cfg_opt = sweep->add_option("--config", config_path, "JSON sweep config");
    auto* w_opt = sweep->add_option("--widths", widths)->delimiter(',');
    auto* r_opt = sweep->add_option("--runs", runs)->check(CLI::PositiveNumber);
    auto* o_opt = sweep->add_option("--out", out_path);
    auto* p_opt = sweep->add_option("--problem", problem_name);
    auto* s_opt = sweep->add_option("--solvers", solvers)->delimiter(',');
    auto* seed_opt = sweep->add_option("--seed", seed);
    auto* f_opt = sweep->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sweep->add_flag("--timing", timing, "record measured wall time in the output");
    cfg_opt->excludes(w_opt)->excludes(r_opt)->excludes(o_opt)->excludes(p_opt)
           ->excludes(s_opt)->excludes(seed_opt)->excludes(f_opt);

    int episodes = 500;
    CLI::App* closed = app.add_subcommand("closed-loop", "closed-loop policy evaluation");
    closed->add_option("--problem", problem_name)->required();
    closed->add_option("--solver", solver)->check(CLI::IsMember({"poss", "powss"}))->required();
    closed->add_option("--width", width)->check(CLI::PositiveNumber)->required();
    closed->add_option("--episodes", episodes)->check(CLI::PositiveNumber)->required();
    closed->add_option("--seed", seed)->required();

    CLI::App* oracle = app.add_subcommand("oracle", "exact Q* and QMDP at the initial belief");
    oracle->add_option("--problem", problem_name)->required();

    double epsilon = 1.0, gamma = 0.95, r_max = 10.0, d_inf = 1.0;
    int depth = 3, actions = 4;
    CLI::App* bounds = app.add_subcommand("bounds", "accuracy-guarantee constants");
    bounds->add_option("--epsilon", epsilon)->required();
    bounds->add_option("--gamma", gamma)->required();
    bounds->add_option("--rmax", r_max)->required();
    bounds->add_option("--depth", depth)->required();
    bounds->add_option("--actions", actions)->required();
    bounds->add_option("--dinf", d_inf)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return run_solve(problem_name, solver, width, seed, as_json);
        if (sweep->parsed()) {
            powss::SweepConfig config;
            if (!config_path.empty()) {
                config = sweep_from_json(config_path);
            } else {
                config.problem_name = problem_name;
                for (const auto& s : solvers) {
                    config.solver_kinds.push_back(powss::solver_by_name(s));
                }
                config.widths = widths;
                config.runs_per_cell = runs;
                config.base_seed = seed;
                config.output_path = out_path;
                config.format = format == "json" ? powss::OutputFormat::Json
                                                 : powss::OutputFormat::Csv;
            }
            config.record_timing = timing;
            config.threads = threads;
            return run_sweep(config);
        }
        if (closed->parsed()) {
            return run_closed_loop_cmd(problem_name, solver, width, episodes, seed, threads);
        }
        if (oracle->parsed()) return run_oracle(problem_name);
        if (bounds->parsed()) return run_bounds(epsilon, gamma, r_max, depth, actions, d_inf);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
