#include "powss/solvers.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "powss/errors.hpp"
#include "powss/sn_estimator.hpp"

namespace powss {

namespace {

double estimate_q(const ProblemDefinition& problem, const SolverConfig& config,
                  const WeightedParticleSet& belief, int action, int depth, Rng& rng,
                  SolverStats* stats) {
    return config.kind == SolverKind::Poss
               ? poss_estimate_q(problem, config, belief, action, depth, rng, stats)
               : powss_estimate_q(problem, config, belief, action, depth, rng, stats);
}

void record_child(SolverStats* stats, int particle_count) {
    if (stats == nullptr) return;
    ++stats->nodes;
    stats->min_child_particles = std::min(stats->min_child_particles, particle_count);
    stats->max_child_particles = std::max(stats->max_child_particles, particle_count);
}

QEstimates estimate_root(const ProblemDefinition& problem, const SolverConfig& config,
                         const WeightedParticleSet& root, Rng& rng, SolverStats* stats) {
    QEstimates result;
    result.per_action.reserve(problem.action_count);
    for (int a = 0; a < problem.action_count; ++a) {
        result.per_action.push_back(estimate_q(problem, config, root, a, 0, rng, stats));
    }
    result.best_action = 0;
    result.value = result.per_action[0];
    for (int a = 1; a < problem.action_count; ++a) {
        if (result.per_action[a] > result.value) {
            result.value = result.per_action[a];
            result.best_action = a;
        }
    }
    return result;
}

}  // namespace

SolverConfig make_config(const ProblemDefinition& problem, SolverKind kind, int width) {
    assert(width >= 1);
    return {width, kind, problem.discount, problem.horizon};
}

QEstimates select_action(const ProblemDefinition& problem, const SolverConfig& config, Rng& rng,
                         SolverStats* stats) {
    const WeightedParticleSet root = sample_initial_particles(problem, config.width, rng);
    return estimate_root(problem, config, root, rng, stats);
}

QEstimates select_action_from(const ProblemDefinition& problem, const SolverConfig& config,
                              const ExactBelief& belief, Rng& rng, SolverStats* stats) {
    const WeightedParticleSet root = sample_particles_from_belief(belief, config.width, rng);
    return estimate_root(problem, config, root, rng, stats);
}

double estimate_v(const ProblemDefinition& problem, const SolverConfig& config,
                  const WeightedParticleSet& belief, int depth, Rng& rng, SolverStats* stats) {
    if (depth >= config.horizon) return 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < problem.action_count; ++a) {
        best = std::max(best, estimate_q(problem, config, belief, a, depth, rng, stats));
    }
    return best;
}

double poss_estimate_q(const ProblemDefinition& problem, const SolverConfig& config,
                       const WeightedParticleSet& belief, int action, int depth, Rng& rng,
                       SolverStats* stats) {
    assert(depth < config.horizon);
    assert(belief.size() >= 1);
    const int width = config.width;

    std::vector<GenerativeOutcome> outcomes;
    outcomes.reserve(width);
    for (int i = 0; i < width; ++i) {
        // Cyclic reuse when the set holds fewer than C particles.
        const State s = belief.particles[i % belief.size()].state;
        outcomes.push_back(problem.generative(s, action, rng));
    }

    if (depth == config.horizon - 1) {
        // Children would only feed EstimateV at the horizon, which is 0.
        double sum = 0.0;
        for (const auto& out : outcomes) sum += out.reward;
        return sum / width;
    }

    // Group successors by exact observation equality, keeping first-appearance
    // order; each group becomes one unit-weight child set.
    std::vector<double> unique_obs;
    std::vector<int> group_of(width);
    for (int i = 0; i < width; ++i) {
        int g = -1;
        for (std::size_t j = 0; j < unique_obs.size(); ++j) {
            if (unique_obs[j] == outcomes[i].observation) {
                g = static_cast<int>(j);
                break;
            }
        }
        if (g < 0) {
            g = static_cast<int>(unique_obs.size());
            unique_obs.push_back(outcomes[i].observation);
        }
        group_of[i] = g;
    }

    // Each unique child is expanded once; duplicate observations share the
    // resulting value estimate.
    std::vector<double> group_value(unique_obs.size());
    for (std::size_t g = 0; g < unique_obs.size(); ++g) {
        WeightedParticleSet child;
        child.depth = depth + 1;
        for (int i = 0; i < width; ++i) {
            if (group_of[i] == static_cast<int>(g)) {
                child.particles.push_back({outcomes[i].next_state, 1.0});
            }
        }
        record_child(stats, child.size());
        if (stats != nullptr && child.size() > 1) ++stats->poss_collisions;
        group_value[g] = estimate_v(problem, config, child, depth + 1, rng, stats);
    }

    double sum = 0.0;
    for (int i = 0; i < width; ++i) {
        sum += outcomes[i].reward + config.discount * group_value[group_of[i]];
    }
    return sum / width;
}

double powss_estimate_q(const ProblemDefinition& problem, const SolverConfig& config,
                        const WeightedParticleSet& belief, int action, int depth, Rng& rng,
                        SolverStats* stats) {
    assert(depth < config.horizon);
    assert(belief.size() == config.width);
    const int width = config.width;

    std::vector<GenerativeOutcome> outcomes;
    outcomes.reserve(width);
    for (int i = 0; i < width; ++i) {
        outcomes.push_back(problem.generative(belief.particles[i].state, action, rng));
    }

    if (depth == config.horizon - 1) {
        // Leaf form: the SN estimate of the mean reward under the belief.
        double num = 0.0;
        double den = 0.0;
        for (int i = 0; i < width; ++i) {
            num += belief.particles[i].weight * outcomes[i].reward;
            den += belief.particles[i].weight;
        }
        if (den <= 0.0) throw ZeroTotalWeight{};
        return num / den;
    }

    double num = 0.0;
    double den = 0.0;
    for (int j = 0; j < width; ++j) {
        // Child for o_j: every successor, reweighted by its likelihood of
        // having produced o_j. Duplicate observations each key their own
        // child (probability zero for continuous O).
        WeightedParticleSet child;
        child.depth = depth + 1;
        child.particles.reserve(width);
        double child_total = 0.0;
        for (int i = 0; i < width; ++i) {
            const double w = belief.particles[i].weight *
                             problem.obs_density(action, outcomes[i].next_state,
                                                 outcomes[j].observation);
            child.particles.push_back({outcomes[i].next_state, w});
            child_total += w;
        }
        if (child_total <= 0.0) throw ZeroTotalWeight{};
        record_child(stats, child.size());

        const double v = estimate_v(problem, config, child, depth + 1, rng, stats);
        const double wj = belief.particles[j].weight;
        num += wj * (outcomes[j].reward + config.discount * v);
        den += wj;
    }
    if (den <= 0.0) throw ZeroTotalWeight{};
    return num / den;
}

std::vector<double> qmdp_q_values(const ProblemDefinition& problem, const ExactBelief& belief) {
    const ExplicitModel& model = problem.model.value();
    const int n = model.state_count;
    const int actions = problem.action_count;

    // Finite-horizon value iteration on states, backwards from V_D = 0.
    std::vector<double> v_next(n, 0.0);
    std::vector<std::vector<double>> q(n, std::vector<double>(actions, 0.0));
    for (int t = problem.horizon - 1; t >= 0; --t) {
        std::vector<double> v(n, 0.0);
        for (int s = 0; s < n; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < actions; ++a) {
                double continuation = 0.0;
                const std::vector<double> row = model.transition(s, a);
                for (int sp = 0; sp < n; ++sp) continuation += row[sp] * v_next[sp];
                q[s][a] = model.reward(s, a) + problem.discount * continuation;
                best = std::max(best, q[s][a]);
            }
            v[s] = best;
        }
        v_next = std::move(v);
    }

    std::vector<double> result(actions, 0.0);
    for (int a = 0; a < actions; ++a) {
        for (int s = 0; s < n; ++s) result[a] += belief.probabilities[s] * q[s][a];
    }
    return result;
}

namespace {

std::vector<double> oracle_q(const ProblemDefinition& problem, const ExplicitModel& model,
                             const ExactBelief& belief, int depth) {
    const int n = model.state_count;
    const int actions = problem.action_count;
    std::vector<double> q(actions, 0.0);

    for (int a = 0; a < actions; ++a) {
        double expected_reward = 0.0;
        for (int s = 0; s < n; ++s) expected_reward += belief.probabilities[s] * model.reward(s, a);
        q[a] = expected_reward;
        if (depth + 1 >= problem.horizon) continue;

        std::vector<double> predicted(n, 0.0);
        for (int s = 0; s < n; ++s) {
            if (belief.probabilities[s] == 0.0) continue;
            const std::vector<double> row = model.transition(s, a);
            for (int sp = 0; sp < n; ++sp) predicted[sp] += row[sp] * belief.probabilities[s];
        }

        for (int bin = 0; bin < model.obs_bin_count; ++bin) {
            const double rep = model.obs_bin_rep(a, bin);
            const double len = model.obs_bin_length(a, bin);
            ExactBelief next;
            next.probabilities.resize(n);
            double mass = 0.0;
            for (int sp = 0; sp < n; ++sp) {
                const double v = predicted[sp] * problem.obs_density(a, sp, rep) * len;
                next.probabilities[sp] = v;
                mass += v;
            }
            if (mass <= 0.0) continue;
            for (double& v : next.probabilities) v /= mass;

            const std::vector<double> child_q = oracle_q(problem, model, next, depth + 1);
            const double child_v = *std::max_element(child_q.begin(), child_q.end());
            q[a] += problem.discount * mass * child_v;
        }
    }
    return q;
}

}  // namespace

std::vector<double> exact_q_values(const ProblemDefinition& problem, const ExactBelief& belief,
                                   int depth, std::int64_t node_budget) {
    const ExplicitModel& model = problem.model.value();
    if (!model.has_bins()) {
        throw DomainError("exact oracle requires a lossless observation discretization");
    }
    assert(depth < problem.horizon);

    const double levels = problem.horizon - depth;
    const double nodes = std::pow(static_cast<double>(model.obs_bin_count) * problem.action_count,
                                  levels);
    if (nodes > static_cast<double>(node_budget)) {
        throw IntractableSize("oracle expectimax exceeds node budget");
    }
    return oracle_q(problem, model, belief, depth);
}

}  // namespace powss
