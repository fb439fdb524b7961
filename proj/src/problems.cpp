#include "powss/problems.hpp"

#include <cmath>

#include "powss/errors.hpp"

namespace powss {

namespace {

constexpr int kTigerL = static_cast<int>(CoTigerState::TigerL);
constexpr int kTigerR = static_cast<int>(CoTigerState::TigerR);
constexpr int kDone = static_cast<int>(CoTigerState::Done);

constexpr int kOpenL = static_cast<int>(CoTigerAction::OpenL);
constexpr int kOpenR = static_cast<int>(CoTigerAction::OpenR);
constexpr int kWait = static_cast<int>(CoTigerAction::Wait);
constexpr int kListen = static_cast<int>(CoTigerAction::Listen);

constexpr double kListenCorrect = 0.85;

bool is_open(int action) { return action == kOpenL || action == kOpenR; }

double co_tiger_reward(State s, int action) {
    if (s == kDone) return 0.0;
    switch (action) {
        case kOpenL:
            return s == kTigerL ? -10.0 : 10.0;
        case kOpenR:
            return s == kTigerR ? -10.0 : 10.0;
        case kWait:
            return -1.0;
        default:
            return -2.0;  // Listen
    }
}

// Listen observation: pick the bin (correct side 85% of the time), then a
// uniform point inside it. Two rng draws per observation.
double sample_listen_obs(State s, Rng& rng) {
    const bool correct = bernoulli(kListenCorrect, rng);
    const bool left_bin = (s == kTigerL) == correct;
    const double u = uniform01(rng);
    return left_bin ? 0.5 * u : 0.5 + 0.5 * u;
}

}  // namespace

double co_tiger_obs_density(int action, State next_state, double o) {
    if (o < 0.0 || o > 1.0) throw DomainError("CO-tiger observation outside [0,1]");
    if (action != kListen || next_state == kDone) return 1.0;
    const bool left_bin = o <= 0.5;
    const bool tiger_left = next_state == kTigerL;
    return (left_bin == tiger_left) ? 2.0 * kListenCorrect : 2.0 * (1.0 - kListenCorrect);
}

ProblemDefinition co_tiger() {
    ProblemDefinition p;
    p.action_count = 4;
    p.discount = 0.95;
    p.horizon = 3;
    p.r_max = 10.0;

    p.generative = [](State s, int action, Rng& rng) -> GenerativeOutcome {
        if (s == kDone) {
            return {kDone, uniform01(rng), 0.0, true};
        }
        const double r = co_tiger_reward(s, action);
        if (is_open(action)) {
            return {kDone, uniform01(rng), r, true};
        }
        // Tiger position is static under Wait/Listen.
        const double o = (action == kListen) ? sample_listen_obs(s, rng) : uniform01(rng);
        return {s, o, r, false};
    };

    p.obs_density = [](int action, State next_state, double o) {
        return co_tiger_obs_density(action, next_state, o);
    };

    p.initial_sampler = [](Rng& rng) -> State {
        return bernoulli(0.5, rng) ? kTigerR : kTigerL;
    };

    ExplicitModel model;
    model.state_count = 3;
    model.initial_belief = {0.5, 0.5, 0.0};
    model.reward = co_tiger_reward;
    model.transition = [](State s, int action) -> std::vector<double> {
        std::vector<double> row(3, 0.0);
        if (s == kDone || is_open(action)) {
            row[kDone] = 1.0;
        } else {
            row[s] = 1.0;
        }
        return row;
    };
    model.obs_bin_count = 2;
    model.obs_bin_of = [](int /*action*/, double o) { return o <= 0.5 ? 0 : 1; };
    model.obs_bin_rep = [](int /*action*/, int bin) { return bin == 0 ? 0.25 : 0.75; };
    model.obs_bin_length = [](int /*action*/, int /*bin*/) { return 0.5; };
    p.model = std::move(model);

    return p;
}

ProblemDefinition chain_test(double gamma, int horizon) {
    ProblemDefinition p;
    p.action_count = 2;
    p.discount = gamma;
    p.horizon = horizon;
    p.r_max = 1.0;

    p.generative = [](State /*s*/, int action, Rng& rng) -> GenerativeOutcome {
        return {0, uniform01(rng), action == 1 ? 1.0 : 0.0, false};
    };
    p.obs_density = [](int /*action*/, State /*next*/, double /*o*/) { return 1.0; };
    p.initial_sampler = [](Rng& /*rng*/) -> State { return 0; };

    ExplicitModel model;
    model.state_count = 1;
    model.initial_belief = {1.0};
    model.reward = [](State /*s*/, int action) { return action == 1 ? 1.0 : 0.0; };
    model.transition = [](State /*s*/, int /*action*/) { return std::vector<double>{1.0}; };
    model.obs_bin_count = 1;
    model.obs_bin_of = [](int /*action*/, double /*o*/) { return 0; };
    model.obs_bin_rep = [](int /*action*/, int /*bin*/) { return 0.5; };
    model.obs_bin_length = [](int /*action*/, int /*bin*/) { return 1.0; };
    p.model = std::move(model);

    return p;
}

ProblemDefinition problem_by_name(const std::string& name) {
    if (name == "co-tiger") return co_tiger();
    if (name == "chain") return chain_test();
    throw DomainError("unknown problem: " + name);
}

}  // namespace powss
