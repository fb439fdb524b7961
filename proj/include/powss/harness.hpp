#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "powss/problem.hpp"
#include "powss/solvers.hpp"

namespace powss {

enum class OutputFormat { Csv, Json };

std::string solver_name(SolverKind kind);
SolverKind solver_by_name(const std::string& name);

struct SweepConfig {
    std::string problem_name;
    std::vector<SolverKind> solver_kinds;
    std::vector<int> widths;  // strictly increasing
    int runs_per_cell = 1;
    std::uint64_t base_seed = 0;
    std::string output_path;  // empty: don't write
    OutputFormat format = OutputFormat::Csv;
    // Measured wall time is not reproducible, so it is only written when
    // explicitly requested; the default keeps output files byte-identical
    // across repeated runs of the same config.
    bool record_timing = false;
    int threads = 0;  // 0: POWSS_THREADS env var, else hardware concurrency
};

struct RunRecord {
    SolverKind solver;
    int width;
    std::uint64_t seed;
    std::vector<double> per_action_q;
    int chosen_action;
    double wall_time;  // seconds
};

// One output row: per-cell, per-action statistics.
struct CellActionRow {
    SolverKind solver;
    int width;
    int action;
    double q_mean;
    double q_std;  // unbiased (n-1)
    double select_rate;
    int runs;
    double wall_time_s;
};

// Deterministic per-run seed: cells are keyed by a stable hash of
// (solver, width) so inserting new widths never shifts existing streams.
std::uint64_t cell_seed(std::uint64_t base_seed, SolverKind kind, int width, int run_index);

// Runs runs_per_cell independent select_action calls per (solver, width)
// cell and aggregates. Rows come back sorted by (solver, width, action);
// writes to config.output_path when set.
std::vector<CellActionRow> run_root_sweep(const SweepConfig& config);

struct ClosedLoopResult {
    double mean_return = 0.0;
    double std_return = 0.0;
    int episodes = 0;
};

// Alternates exact Bayesian filtering with fresh tree planning from the
// current belief, executing the chosen action against the true generative
// model; returns statistics of the realized discounted return.
ClosedLoopResult run_closed_loop(const ProblemDefinition& problem, SolverKind kind, int width,
                                 int episodes, std::uint64_t base_seed, int threads = 0);

void write_results(const std::vector<CellActionRow>& table, const std::string& path,
                   OutputFormat format);

// Shortest exact decimal rendering with up to 17 significant digits.
std::string format_g17(double value);

}  // namespace powss
