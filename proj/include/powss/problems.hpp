#pragma once

#include <string>

#include "powss/problem.hpp"

namespace powss {

// Continuous-observation tiger. Two doors, one hides a tiger; observations
// in [0,1]. Opening the wrong door costs -10, the safe door pays +10, Wait
// costs -1, Listen costs -2 and is informative 85% of the time. gamma = 0.95,
// D = 3. Termination is an absorbing Done state (reward 0, uniform dummy
// observation), which keeps all particle weights positive.
enum class CoTigerState : int { TigerL = 0, TigerR = 1, Done = 2 };
enum class CoTigerAction : int { OpenL = 0, OpenR = 1, Wait = 2, Listen = 3 };

ProblemDefinition co_tiger();

// Z(o | a, s') for CO-tiger. Wait and post-terminal observations are
// uniform on [0,1]; Listen is 1.7 on the correct half-interval and 0.3 on
// the other, with o = 0.5 belonging to the left bin. Throws DomainError for
// o outside [0,1].
double co_tiger_obs_density(int action, State next_state, double o);

// Deterministic single-state smoke test: two actions with rewards 0 and 1,
// uniform dummy observation. Every solver at every width returns exactly
// sum_{d<D} gamma^d for the reward-1 action.
ProblemDefinition chain_test(double gamma = 0.5, int horizon = 3);

// Lookup by CLI name: "co-tiger" or "chain".
ProblemDefinition problem_by_name(const std::string& name);

}  // namespace powss
