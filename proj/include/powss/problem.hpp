#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "powss/rng.hpp"

namespace powss {

// States are integer indices. The bundled problems are finite-state; the
// solvers only ever pass states back into the problem's own callbacks, so
// an index is all they need.
using State = int;

// One draw (s', o, r) from the generative model G. Observations live in a
// subset of the reals (CO-tiger uses [0,1]). The terminal flag is advisory:
// the planners ignore it (termination is modelled with an absorbing state),
// the closed-loop harness uses it to stop episodes early.
struct GenerativeOutcome {
    State next_state;
    double observation;
    double reward;
    bool terminal = false;
};

// Explicitly evaluable model pieces available for finite-state problems.
// They enable the exact Bayesian filter, QMDP, and the exhaustive oracle;
// the sampling solvers never touch them.
struct ExplicitModel {
    int state_count = 0;
    std::vector<double> initial_belief;

    // R(s, a), deterministic.
    std::function<double(State, int)> reward;
    // T(.|s, a) as a dense row over successor states.
    std::function<std::vector<double>(State, int)> transition;

    // Lossless observation discretization: present only when the observation
    // density is piecewise constant over the bins for every (action, state).
    int obs_bin_count = 0;
    std::function<int(int, double)> obs_bin_of;        // (action, o) -> bin
    std::function<double(int, int)> obs_bin_rep;       // (action, bin) -> representative o
    std::function<double(int, int)> obs_bin_length;    // (action, bin) -> bin length

    bool has_bins() const { return obs_bin_count > 0; }
};

// Behavioral contract for a POMDP: generative step G, observation density Z,
// action count |A|, initial belief sampler, discount, horizon, reward bound.
struct ProblemDefinition {
    int action_count = 0;
    double discount = 0.0;  // gamma in [0, 1)
    int horizon = 0;        // D
    double r_max = 0.0;     // bound on |R|

    std::function<GenerativeOutcome(State, int, Rng&)> generative;
    std::function<double(int, State, double)> obs_density;  // Z(o | a, s')
    std::function<State(Rng&)> initial_sampler;

    std::optional<ExplicitModel> model;

    double v_max() const { return r_max / (1.0 - discount); }
};

}  // namespace powss
