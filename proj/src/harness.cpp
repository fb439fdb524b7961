#include "powss/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "powss/belief.hpp"
#include "powss/errors.hpp"
#include "powss/problems.hpp"

namespace powss {

namespace {

int effective_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("POWSS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs body(i) for i in [0, count) on up to `threads` workers. Results must
// be written to preassigned slots so scheduling never affects output.
template <typename Body>
void parallel_for(int count, int threads, const Body& body) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& w : workers) w.join();
}

double sample_std(const std::vector<double>& xs, double mean) {
    if (xs.size() < 2) return 0.0;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return std::sqrt(ss / (xs.size() - 1));
}

}  // namespace

std::string solver_name(SolverKind kind) {
    return kind == SolverKind::Poss ? "poss" : "powss";
}

SolverKind solver_by_name(const std::string& name) {
    if (name == "poss") return SolverKind::Poss;
    if (name == "powss") return SolverKind::Powss;
    throw DomainError("unknown solver: " + name);
}

std::uint64_t cell_seed(std::uint64_t base_seed, SolverKind kind, int width, int run_index) {
    std::uint64_t h = fnv1a64(solver_name(kind));
    h = fnv1a64(static_cast<std::uint64_t>(width), h);
    return (base_seed ^ h) + static_cast<std::uint64_t>(run_index);
}

std::vector<CellActionRow> run_root_sweep(const SweepConfig& config) {
    const ProblemDefinition problem = problem_by_name(config.problem_name);
    const int actions = problem.action_count;

    struct Task {
        SolverKind solver;
        int width;
        int run_index;
    };
    std::vector<Task> tasks;
    for (SolverKind kind : config.solver_kinds) {
        for (int width : config.widths) {
            for (int run = 0; run < config.runs_per_cell; ++run) {
                tasks.push_back({kind, width, run});
            }
        }
    }

    std::vector<RunRecord> records(tasks.size());
    parallel_for(static_cast<int>(tasks.size()), effective_threads(config.threads), [&](int i) {
        const Task& task = tasks[i];
        const std::uint64_t seed = cell_seed(config.base_seed, task.solver, task.width,
                                             task.run_index);
        Rng rng(seed);
        const SolverConfig solver_config = make_config(problem, task.solver, task.width);
        const auto start = std::chrono::steady_clock::now();
        const QEstimates estimates = select_action(problem, solver_config, rng);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        records[i] = {task.solver, task.width, seed, estimates.per_action,
                      estimates.best_action, elapsed.count()};
    });

    std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.solver != b.solver) return a.solver < b.solver;
        if (a.width != b.width) return a.width < b.width;
        return a.seed < b.seed;
    });

    std::vector<CellActionRow> table;
    for (std::size_t lo = 0; lo < records.size();) {
        std::size_t hi = lo;
        while (hi < records.size() && records[hi].solver == records[lo].solver &&
               records[hi].width == records[lo].width) {
            ++hi;
        }
        const int runs = static_cast<int>(hi - lo);
        double cell_time = 0.0;
        for (std::size_t i = lo; i < hi; ++i) cell_time += records[i].wall_time;
        cell_time /= runs;

        for (int a = 0; a < actions; ++a) {
            std::vector<double> qs;
            qs.reserve(runs);
            int chosen = 0;
            for (std::size_t i = lo; i < hi; ++i) {
                qs.push_back(records[i].per_action_q[a]);
                if (records[i].chosen_action == a) ++chosen;
            }
            double mean = 0.0;
            for (double q : qs) mean += q;
            mean /= runs;
            table.push_back({records[lo].solver, records[lo].width, a, mean,
                             sample_std(qs, mean), static_cast<double>(chosen) / runs, runs,
                             config.record_timing ? cell_time : 0.0});
        }
        lo = hi;
    }

    if (!config.output_path.empty()) {
        write_results(table, config.output_path, config.format);
    }
    return table;
}

ClosedLoopResult run_closed_loop(const ProblemDefinition& problem, SolverKind kind, int width,
                                 int episodes, std::uint64_t base_seed, int threads) {
    const ExplicitModel& model = problem.model.value();
    const SolverConfig config = make_config(problem, kind, width);

    std::vector<double> returns(episodes, 0.0);
    parallel_for(episodes, effective_threads(threads), [&](int episode) {
        Rng rng(cell_seed(base_seed, kind, width, episode));
        State true_state = problem.initial_sampler(rng);
        ExactBelief belief{model.initial_belief};

        double discounted_return = 0.0;
        double discount = 1.0;
        for (int t = 0; t < problem.horizon; ++t) {
            const QEstimates plan = select_action_from(problem, config, belief, rng);
            const GenerativeOutcome out = problem.generative(true_state, plan.best_action, rng);
            discounted_return += discount * out.reward;
            discount *= problem.discount;
            if (out.terminal) break;
            belief = exact_bayes_update(problem, belief, plan.best_action, out.observation);
            true_state = out.next_state;
        }
        returns[episode] = discounted_return;
    });

    ClosedLoopResult result;
    result.episodes = episodes;
    for (double r : returns) result.mean_return += r;
    result.mean_return /= episodes;
    result.std_return = sample_std(returns, result.mean_return);
    return result;
}

std::string format_g17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void write_results(const std::vector<CellActionRow>& table, const std::string& path,
                   OutputFormat format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);

    if (format == OutputFormat::Csv) {
        out << "solver,width,action,q_mean,q_std,select_rate,runs,wall_time_s\n";
        for (const auto& row : table) {
            out << solver_name(row.solver) << ',' << row.width << ',' << row.action << ','
                << format_g17(row.q_mean) << ',' << format_g17(row.q_std) << ','
                << format_g17(row.select_rate) << ',' << row.runs << ','
                << format_g17(row.wall_time_s) << '\n';
        }
    } else {
        nlohmann::json records = nlohmann::json::array();
        for (const auto& row : table) {
            records.push_back({{"solver", solver_name(row.solver)},
                               {"width", row.width},
                               {"action", row.action},
                               {"q_mean", row.q_mean},
                               {"q_std", row.q_std},
                               {"select_rate", row.select_rate},
                               {"runs", row.runs},
                               {"wall_time_s", row.wall_time_s}});
        }
        out << records.dump(2) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace powss
