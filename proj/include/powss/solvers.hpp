#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "powss/belief.hpp"
#include "powss/problem.hpp"

namespace powss {

enum class SolverKind { Poss, Powss };

struct SolverConfig {
    int width = 1;                       // C
    SolverKind kind = SolverKind::Powss;
    double discount = 0.0;               // copied from the problem
    int horizon = 1;                     // copied from the problem
};

SolverConfig make_config(const ProblemDefinition& problem, SolverKind kind, int width);

// Root Q estimates with the argmax; ties break toward the lowest index.
struct QEstimates {
    std::vector<double> per_action;
    int best_action = 0;
    double value = 0.0;
};

// Optional instrumentation for invariant checks; filled when non-null.
struct SolverStats {
    long long nodes = 0;               // belief sets constructed below the root
    long long poss_collisions = 0;     // POSS child sets with more than one particle
    int min_child_particles = std::numeric_limits<int>::max();
    int max_child_particles = 0;
};

// Entry point: samples C root particles from the problem's initial belief,
// estimates Q for every action at depth 0 in action-index order (each call
// consumes the rng stream sequentially), returns all estimates plus the
// argmax. Deterministic given (problem, config, seed).
QEstimates select_action(const ProblemDefinition& problem, const SolverConfig& config, Rng& rng,
                         SolverStats* stats = nullptr);

// Same, but the root particles are drawn from an explicit belief (closed loop).
QEstimates select_action_from(const ProblemDefinition& problem, const SolverConfig& config,
                              const ExactBelief& belief, Rng& rng, SolverStats* stats = nullptr);

// 0 at or beyond the horizon, otherwise the max over actions of the
// configured EstimateQ.
double estimate_v(const ProblemDefinition& problem, const SolverConfig& config,
                  const WeightedParticleSet& belief, int depth, Rng& rng,
                  SolverStats* stats = nullptr);

// Unweighted sparse sampling step: C generative draws (cycling particle
// indices when the set is smaller than C), children grouped by exact
// observation equality with unit weights, plain average of the returns.
double poss_estimate_q(const ProblemDefinition& problem, const SolverConfig& config,
                       const WeightedParticleSet& belief, int action, int depth, Rng& rng,
                       SolverStats* stats = nullptr);

// Weighted step: one draw per particle; each sampled observation o_j keys a
// child holding all C successors reweighted by w_i * Z(o_j|a,s_i'); returns
// the self-normalized weighted average.
double powss_estimate_q(const ProblemDefinition& problem, const SolverConfig& config,
                        const WeightedParticleSet& belief, int action, int depth, Rng& rng,
                        SolverStats* stats = nullptr);

// Q_MDP(b, a) = E_{s~b}[Q_MDP(s, a)] with Q_MDP from finite-horizon dynamic
// programming on the fully observable relaxation.
std::vector<double> qmdp_q_values(const ProblemDefinition& problem, const ExactBelief& belief);

// Exhaustive finite-horizon expectimax over (action, observation-bin) with
// exact Bayesian updates; exact for problems whose observation density is
// piecewise constant over the declared bins. Throws IntractableSize when
// (bins * actions)^(D - depth) exceeds the node budget.
std::vector<double> exact_q_values(const ProblemDefinition& problem, const ExactBelief& belief,
                                   int depth, std::int64_t node_budget = 100'000'000);

}  // namespace powss
