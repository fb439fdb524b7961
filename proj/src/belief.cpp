#include "powss/belief.hpp"

#include <cassert>

#include "powss/errors.hpp"

namespace powss {

double WeightedParticleSet::total_weight() const {
    double total = 0.0;
    for (const auto& p : particles) total += p.weight;
    return total;
}

WeightedParticleSet sample_initial_particles(const ProblemDefinition& problem, int width, Rng& rng) {
    assert(width >= 1);
    WeightedParticleSet set;
    set.depth = 0;
    set.particles.reserve(width);
    const double w = 1.0 / width;
    for (int i = 0; i < width; ++i) {
        set.particles.push_back({problem.initial_sampler(rng), w});
    }
    return set;
}

WeightedParticleSet sample_particles_from_belief(const ExactBelief& belief, int width, Rng& rng) {
    assert(width >= 1);
    WeightedParticleSet set;
    set.depth = 0;
    set.particles.reserve(width);
    const double w = 1.0 / width;
    for (int i = 0; i < width; ++i) {
        set.particles.push_back({sample_discrete(belief.probabilities, rng), w});
    }
    return set;
}

WeightedParticleSet normalize_weights(const WeightedParticleSet& set) {
    const double total = set.total_weight();
    if (total <= 0.0) throw ZeroTotalWeight{};
    WeightedParticleSet out = set;
    for (auto& p : out.particles) p.weight /= total;
    return out;
}

ExactBelief exact_bayes_update(const ProblemDefinition& problem, const ExactBelief& belief,
                               int action, double observation) {
    const ExplicitModel& model = problem.model.value();
    const int n = model.state_count;

    // Predict: m(s') = sum_s T(s'|s,a) b(s).
    std::vector<double> predicted(n, 0.0);
    for (int s = 0; s < n; ++s) {
        if (belief.probabilities[s] == 0.0) continue;
        const std::vector<double> row = model.transition(s, action);
        for (int sp = 0; sp < n; ++sp) {
            predicted[sp] += row[sp] * belief.probabilities[s];
        }
    }

    // Correct: b'(s') = Z(o|a,s') m(s') / normalizer.
    ExactBelief posterior;
    posterior.probabilities.resize(n);
    double normalizer = 0.0;
    for (int sp = 0; sp < n; ++sp) {
        const double v = predicted[sp] * problem.obs_density(action, sp, observation);
        posterior.probabilities[sp] = v;
        normalizer += v;
    }
    if (normalizer <= 0.0) throw ZeroLikelihood{};
    for (double& v : posterior.probabilities) v /= normalizer;
    return posterior;
}

}  // namespace powss
