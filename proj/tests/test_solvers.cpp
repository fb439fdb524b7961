#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "powss/belief.hpp"
#include "powss/errors.hpp"
#include "powss/problems.hpp"
#include "powss/solvers.hpp"

using namespace powss;

namespace {

constexpr int kWait = static_cast<int>(CoTigerAction::Wait);
constexpr int kListen = static_cast<int>(CoTigerAction::Listen);
constexpr int kDone = static_cast<int>(CoTigerState::Done);

// Two-state, two-action, two-observation toy with D = 2. Observations are
// embedded as the reals 0.25 / 0.75 with unit-length bins, so the density
// values are the point masses. The second action's constant reward sits
// below the first action's range, so the depth-1 max never binds and the
// mean-accuracy checks are free of max-operator bias.
struct ToyDiscrete {
    static constexpr double kObsCorrect = 0.8;  // Z(o matches s' | s')
    static constexpr double kFlip = 0.3;        // action 1 flips the state
    static constexpr double kGamma = 0.9;

    static double reward(State s, int a) {
        if (a == 1) return -1.2;
        return s == 0 ? 1.0 : -1.0;
    }

    static ProblemDefinition make() {
        ProblemDefinition p;
        p.action_count = 2;
        p.discount = kGamma;
        p.horizon = 2;
        p.r_max = 1.2;
        p.obs_density = [](int /*a*/, State sp, double o) {
            const bool left = o < 0.5;
            return (left == (sp == 0)) ? kObsCorrect : 1.0 - kObsCorrect;
        };
        p.generative = [](State s, int a, Rng& rng) -> GenerativeOutcome {
            State sp = s;
            if (a == 1 && bernoulli(kFlip, rng)) sp = 1 - s;
            const double o = bernoulli(sp == 0 ? kObsCorrect : 1.0 - kObsCorrect, rng)
                                 ? 0.25
                                 : 0.75;
            return {sp, o, reward(s, a), false};
        };
        p.initial_sampler = [](Rng& rng) -> State { return bernoulli(0.4, rng) ? 1 : 0; };

        ExplicitModel model;
        model.state_count = 2;
        model.initial_belief = {0.6, 0.4};
        model.reward = reward;
        model.transition = [](State s, int a) {
            std::vector<double> row(2, 0.0);
            if (a == 1) {
                row[s] = 1.0 - kFlip;
                row[1 - s] = kFlip;
            } else {
                row[s] = 1.0;
            }
            return row;
        };
        model.obs_bin_count = 2;
        model.obs_bin_of = [](int, double o) { return o < 0.5 ? 0 : 1; };
        model.obs_bin_rep = [](int, int bin) { return bin == 0 ? 0.25 : 0.75; };
        model.obs_bin_length = [](int, int) { return 1.0; };
        p.model = std::move(model);
        return p;
    }

    // Independent brute-force expectimax over the two observation outcomes,
    // written directly from the Bellman recursion.
    static double exact_q0(const std::array<double, 2>& belief, int action) {
        const ProblemDefinition p = make();
        std::array<double, 2> predicted{};
        for (int s = 0; s < 2; ++s) {
            const auto row = p.model->transition(s, action);
            for (int sp = 0; sp < 2; ++sp) predicted[sp] += row[sp] * belief[s];
        }
        double q = belief[0] * reward(0, action) + belief[1] * reward(1, action);
        for (const double o : {0.25, 0.75}) {
            double mass = 0.0;
            std::array<double, 2> next{};
            for (int sp = 0; sp < 2; ++sp) {
                next[sp] = predicted[sp] * p.obs_density(action, sp, o);
                mass += next[sp];
            }
            for (double& v : next) v /= mass;
            double best = -1e9;
            for (int a2 = 0; a2 < 2; ++a2) {
                best = std::max(best, next[0] * reward(0, a2) + next[1] * reward(1, a2));
            }
            q += kGamma * mass * best;
        }
        return q;
    }
};

}  // namespace

TEST_CASE("estimate_v is zero at and beyond the horizon") {
    const ProblemDefinition tiger = co_tiger();
    const SolverConfig config = make_config(tiger, SolverKind::Powss, 4);
    Rng rng(1);
    WeightedParticleSet set = sample_initial_particles(tiger, 4, rng);
    CHECK(estimate_v(tiger, config, set, tiger.horizon, rng) == 0.0);
    CHECK(estimate_v(tiger, config, set, tiger.horizon + 3, rng) == 0.0);
}

TEST_CASE("all-Done belief has value zero below the horizon") {
    const ProblemDefinition tiger = co_tiger();
    const SolverConfig config = make_config(tiger, SolverKind::Powss, 3);
    WeightedParticleSet set;
    set.depth = 1;
    set.particles = {{kDone, 1.0 / 3}, {kDone, 1.0 / 3}, {kDone, 1.0 / 3}};
    Rng rng(2);
    CHECK(estimate_v(tiger, config, set, 1, rng) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("QMDP values on CO-tiger") {
    const ProblemDefinition tiger = co_tiger();
    const ExactBelief uniform{{0.5, 0.5, 0.0}};
    const auto q = qmdp_q_values(tiger, uniform);
    CHECK(q[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(q[1] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(q[kWait] == doctest::Approx(8.5).epsilon(1e-9));
    CHECK(q[kListen] == doctest::Approx(7.5).epsilon(1e-9));

    const ExactBelief known{{1.0, 0.0, 0.0}};
    CHECK(qmdp_q_values(tiger, known)[1] == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("exact oracle reproduces the known optimal values") {
    const ProblemDefinition tiger = co_tiger();
    const ExactBelief uniform{{0.5, 0.5, 0.0}};
    const auto q = exact_q_values(tiger, uniform, 0);
    CHECK(std::abs(q[kListen] - 4.65) <= 0.005);
    CHECK(std::abs(q[kWait] - 3.42) <= 0.005);
    CHECK(std::abs(q[0]) <= 1e-12);
    CHECK(std::abs(q[1]) <= 1e-12);
}

TEST_CASE("oracle at the last step is the immediate reward") {
    const ProblemDefinition tiger = co_tiger();
    const ExactBelief uniform{{0.5, 0.5, 0.0}};
    const auto q = exact_q_values(tiger, uniform, tiger.horizon - 1);
    CHECK(q[kListen] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(q[kWait] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("oracle opens the likely-safe door from a confident belief") {
    const ProblemDefinition tiger = co_tiger();
    const ExactBelief confident{{0.85, 0.15, 0.0}};
    const auto q = exact_q_values(tiger, confident, 1);
    double best = q[0];
    for (double v : q) best = std::max(best, v);
    CHECK(best == doctest::Approx(7.0).epsilon(1e-9));  // 0.85*10 - 0.15*10
    CHECK(q[1] == doctest::Approx(7.0).epsilon(1e-9));  // OpenR
}

TEST_CASE("oracle refuses when the tree exceeds the node budget") {
    const ProblemDefinition tiger = co_tiger();
    const ExactBelief uniform{{0.5, 0.5, 0.0}};
    CHECK_THROWS_AS(exact_q_values(tiger, uniform, 0, 10), IntractableSize);
}

TEST_CASE("POSS Wait and Listen estimates are exact for every width and seed") {
    const ProblemDefinition tiger = co_tiger();
    for (int width : {1, 3, 8, 20}) {
        const SolverConfig config = make_config(tiger, SolverKind::Poss, width);
        for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
            Rng rng(seed);
            const QEstimates est = select_action(tiger, config, rng);
            CHECK(est.per_action[kWait] == doctest::Approx(8.5).epsilon(1e-12));
            CHECK(est.per_action[kListen] == doctest::Approx(7.5).epsilon(1e-12));
        }
    }
}

TEST_CASE("POSS picks Wait at moderate width") {
    const ProblemDefinition tiger = co_tiger();
    const SolverConfig config = make_config(tiger, SolverKind::Poss, 20);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(seed);
        CHECK(select_action(tiger, config, rng).best_action == kWait);
    }
}

TEST_CASE("POWSS with a single particle reproduces the QMDP values") {
    const ProblemDefinition tiger = co_tiger();
    const SolverConfig config = make_config(tiger, SolverKind::Powss, 1);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const QEstimates est = select_action(tiger, config, rng);
        CHECK(est.per_action[kWait] == doctest::Approx(8.5).epsilon(1e-12));
        CHECK(est.per_action[kListen] == doctest::Approx(7.5).epsilon(1e-12));
    }
}

TEST_CASE("chain values are exact under both solvers at every width") {
    const ProblemDefinition chain = chain_test(0.5, 3);
    for (SolverKind kind : {SolverKind::Poss, SolverKind::Powss}) {
        for (int width : {1, 2, 7, 16}) {
            const SolverConfig config = make_config(chain, kind, width);
            Rng rng(31 + width);
            const QEstimates est = select_action(chain, config, rng);
            CHECK(est.per_action[1] == doctest::Approx(1.75).epsilon(1e-12));
            CHECK(est.per_action[0] == doctest::Approx(0.75).epsilon(1e-12));
            CHECK(est.best_action == 1);
        }
    }

    const ProblemDefinition flat = chain_test(0.0, 1);
    const SolverConfig config = make_config(flat, SolverKind::Powss, 3);
    Rng rng(0);
    const QEstimates est = select_action(flat, config, rng);
    CHECK(est.per_action[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.per_action[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("single-action problem always selects action 0") {
    ProblemDefinition p = chain_test(0.5, 2);
    p.action_count = 1;
    const SolverConfig config = make_config(p, SolverKind::Poss, 4);
    Rng rng(8);
    CHECK(select_action(p, config, rng).best_action == 0);
}

TEST_CASE("identical seeds give bit-identical estimates") {
    const ProblemDefinition tiger = co_tiger();
    for (SolverKind kind : {SolverKind::Poss, SolverKind::Powss}) {
        const SolverConfig config = make_config(tiger, kind, 10);
        Rng rng1(777), rng2(777);
        const QEstimates a = select_action(tiger, config, rng1);
        const QEstimates b = select_action(tiger, config, rng2);
        REQUIRE(a.per_action.size() == b.per_action.size());
        for (std::size_t i = 0; i < a.per_action.size(); ++i) {
            CHECK(a.per_action[i] == b.per_action[i]);
        }
        CHECK(a.best_action == b.best_action);
    }
}

TEST_CASE("POWSS estimates are invariant under root weight scaling") {
    const ProblemDefinition tiger = co_tiger();
    const SolverConfig config = make_config(tiger, SolverKind::Powss, 8);
    Rng init(5);
    const WeightedParticleSet root = sample_initial_particles(tiger, 8, init);
    for (double scale : {1e-6, 0.5, 3.0, 1e7}) {
        WeightedParticleSet scaled = root;
        for (auto& p : scaled.particles) p.weight *= scale;
        for (int a = 0; a < 4; ++a) {
            Rng rng1(123), rng2(123);
            const double q0 = powss_estimate_q(tiger, config, root, a, 0, rng1);
            const double q1 = powss_estimate_q(tiger, config, scaled, a, 0, rng2);
            CHECK(q1 == doctest::Approx(q0).epsilon(1e-12));
        }
    }
}

TEST_CASE("estimates never exceed V_max in magnitude") {
    const ProblemDefinition tiger = co_tiger();
    const double v_max = tiger.v_max();
    for (SolverKind kind : {SolverKind::Poss, SolverKind::Powss}) {
        const SolverConfig config = make_config(tiger, kind, 12);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Rng rng(seed);
            const QEstimates est = select_action(tiger, config, rng);
            for (double q : est.per_action) CHECK(std::abs(q) <= v_max);
            CHECK(std::abs(est.value) <= v_max);
        }
    }
}

TEST_CASE("POWSS child sets always hold exactly C particles") {
    const ProblemDefinition tiger = co_tiger();
    for (int width : {1, 4, 9}) {
        const SolverConfig config = make_config(tiger, SolverKind::Powss, width);
        SolverStats stats;
        Rng rng(17);
        select_action(tiger, config, rng, &stats);
        CHECK(stats.nodes > 0);
        CHECK(stats.min_child_particles == width);
        CHECK(stats.max_child_particles == width);
    }
}

TEST_CASE("POSS children are singletons under continuous observations") {
    const ProblemDefinition tiger = co_tiger();
    const SolverConfig config = make_config(tiger, SolverKind::Poss, 25);
    SolverStats stats;
    Rng rng(23);
    select_action(tiger, config, rng, &stats);
    CHECK(stats.nodes > 0);
    CHECK(stats.poss_collisions == 0);
    CHECK(stats.max_child_particles == 1);
}

TEST_CASE("POSS leaf estimate is an unbiased mean reward") {
    // Horizon-1 CO-tiger: the root estimate is the plain average of door
    // rewards, whose belief expectation is 0.
    ProblemDefinition tiger = co_tiger();
    tiger.horizon = 1;
    const SolverConfig config = make_config(tiger, SolverKind::Poss, 10);
    const int runs = 10000;
    std::vector<double> qs(runs);
    for (int i = 0; i < runs; ++i) {
        Rng rng(1000 + i);
        qs[i] = select_action(tiger, config, rng).per_action[0];
    }
    double mean = 0.0;
    for (double q : qs) mean += q;
    mean /= runs;
    double ss = 0.0;
    for (double q : qs) ss += (q - mean) * (q - mean);
    const double se = std::sqrt(ss / (runs - 1)) / std::sqrt(static_cast<double>(runs));
    CHECK(std::abs(mean - 0.0) <= 3.0 * se);
}

TEST_CASE("oracle agrees with the hand-written toy recursion") {
    const ProblemDefinition toy = ToyDiscrete::make();
    const ExactBelief belief{{0.6, 0.4}};
    const auto q = exact_q_values(toy, belief, 0);
    for (int a = 0; a < 2; ++a) {
        CHECK(q[a] == doctest::Approx(ToyDiscrete::exact_q0({0.6, 0.4}, a)).epsilon(1e-12));
    }
}

TEST_CASE("POSS converges on the discrete-observation toy") {
    const ProblemDefinition toy = ToyDiscrete::make();
    const SolverConfig config = make_config(toy, SolverKind::Poss, 10000);
    const int runs = 40;
    for (int a = 0; a < 2; ++a) {
        std::vector<double> qs(runs);
        for (int i = 0; i < runs; ++i) {
            Rng rng(5000 + i);
            const WeightedParticleSet root = sample_initial_particles(toy, config.width, rng);
            qs[i] = poss_estimate_q(toy, config, root, a, 0, rng);
        }
        double mean = 0.0;
        for (double q : qs) mean += q;
        mean /= runs;
        double ss = 0.0;
        for (double q : qs) ss += (q - mean) * (q - mean);
        const double se = std::sqrt(ss / (runs - 1)) / std::sqrt(static_cast<double>(runs));
        const double truth = ToyDiscrete::exact_q0({0.6, 0.4}, a);
        CHECK(std::abs(mean - truth) <= 3.0 * se);
    }
}

TEST_CASE("POWSS is mean-accurate on the toy at moderate width") {
    const ProblemDefinition toy = ToyDiscrete::make();
    const SolverConfig config = make_config(toy, SolverKind::Powss, 32);
    const int runs = 10000;
    for (int a = 0; a < 2; ++a) {
        std::vector<double> qs(runs);
        for (int i = 0; i < runs; ++i) {
            Rng rng(90000 + i);
            const WeightedParticleSet root = sample_initial_particles(toy, config.width, rng);
            qs[i] = powss_estimate_q(toy, config, root, a, 0, rng);
        }
        double mean = 0.0;
        for (double q : qs) mean += q;
        mean /= runs;
        double ss = 0.0;
        for (double q : qs) ss += (q - mean) * (q - mean);
        const double se = std::sqrt(ss / (runs - 1)) / std::sqrt(static_cast<double>(runs));
        const double truth = ToyDiscrete::exact_q0({0.6, 0.4}, a);
        CHECK(std::abs(mean - truth) <= 3.0 * se);
    }
}
