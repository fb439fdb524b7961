#pragma once

#include <vector>

#include "powss/problem.hpp"

namespace powss {

struct Particle {
    State state;
    double weight;
};

// Belief particle set: ordered (state, weight) pairs at a given tree depth.
// Weights are nonnegative; a zero-total set is an error state, never a value.
struct WeightedParticleSet {
    std::vector<Particle> particles;
    int depth = 0;

    int size() const { return static_cast<int>(particles.size()); }
    double total_weight() const;
};

// Exact belief over finite state indices; entries >= 0, sum to 1.
struct ExactBelief {
    std::vector<double> probabilities;
};

// Draws C particles i.i.d. from the problem's initial belief, each with
// weight 1/C, at depth 0.
WeightedParticleSet sample_initial_particles(const ProblemDefinition& problem, int width, Rng& rng);

// Same, but drawing from an explicit finite-state belief (used by the
// closed-loop harness, which replans from the current filtered belief).
WeightedParticleSet sample_particles_from_belief(const ExactBelief& belief, int width, Rng& rng);

// Scales weights to sum to 1. Throws ZeroTotalWeight if they are all zero.
// The SN estimators are scale-invariant, so this never changes an estimate.
WeightedParticleSet normalize_weights(const WeightedParticleSet& set);

// b'(s') proportional to Z(o|a,s') * sum_s T(s'|s,a) b(s). Requires the
// problem's explicit model. Throws ZeroLikelihood if the posterior
// normalizer vanishes.
ExactBelief exact_bayes_update(const ProblemDefinition& problem, const ExactBelief& belief,
                               int action, double observation);

}  // namespace powss
