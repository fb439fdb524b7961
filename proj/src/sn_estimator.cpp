#include "powss/sn_estimator.hpp"

#include <cassert>
#include <cmath>

#include "powss/errors.hpp"

namespace powss {

double sn_estimate(std::span<const double> weights, std::span<const double> values) {
    if (weights.size() != values.size()) throw LengthMismatch{};
    if (weights.empty()) throw LengthMismatch{};
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        num += weights[i] * values[i];
        den += weights[i];
    }
    if (den <= 0.0) throw ZeroTotalWeight{};
    return num / den;
}

double sn_bias_bound(double f_inf, double d_inf, std::int64_t n) {
    assert(n >= 1 && d_inf >= 1.0);
    return f_inf * d_inf / std::sqrt(static_cast<double>(n));
}

double concentration_t(double lambda, std::int64_t n, double f_inf, double d_inf) {
    return lambda / (f_inf * d_inf) - 1.0 / std::sqrt(static_cast<double>(n));
}

double concentration_failure_bound(double lambda, std::int64_t n, double f_inf, double d_inf) {
    const double t = concentration_t(lambda, n, f_inf, d_inf);
    if (t <= 0.0) {
        throw InvalidRegime("t(lambda, N) <= 0: N too small for the requested lambda");
    }
    return 3.0 * std::exp(-static_cast<double>(n) * t * t);
}

double empirical_d_inf(std::span<const double> raw_weights) {
    if (raw_weights.empty()) throw ZeroTotalWeight{};
    double total = 0.0;
    double max_w = 0.0;
    for (double w : raw_weights) {
        total += w;
        if (w > max_w) max_w = w;
    }
    if (total <= 0.0) throw ZeroTotalWeight{};
    return static_cast<double>(raw_weights.size()) * max_w / total;
}

double t_max_of(double lambda, double v_max, double d_inf_max, std::uint64_t width) {
    return lambda / (3.0 * v_max * d_inf_max) - 1.0 / std::sqrt(static_cast<double>(width));
}

double union_bound_log(double lambda, double v_max, double d_inf_max, std::uint64_t width,
                       int depth, int action_count) {
    const double t = t_max_of(lambda, v_max, d_inf_max, width);
    const double c = static_cast<double>(width);
    return std::log(3.0 * action_count) + depth * std::log(3.0 * action_count * c) - c * t * t;
}

BoundsReport theorem2_constants(double epsilon, double gamma, double r_max, int depth,
                                int action_count, double d_inf_max) {
    assert(epsilon > 0.0 && gamma >= 0.0 && gamma < 1.0 && r_max > 0.0);
    assert(depth >= 1 && action_count >= 1 && d_inf_max >= 1.0);

    BoundsReport report;
    report.epsilon = epsilon;
    report.d_inf_max = d_inf_max;
    report.v_max = r_max / (1.0 - gamma);
    report.lambda = epsilon * (1.0 - gamma) * (1.0 - gamma) / 5.0;
    report.delta = report.lambda / (report.v_max * depth * (1.0 - gamma) * (1.0 - gamma));

    report.alpha_sequence.resize(depth);
    report.alpha_sequence[depth - 1] = report.lambda;
    for (int d = depth - 2; d >= 0; --d) {
        report.alpha_sequence[d] = report.lambda + gamma * report.alpha_sequence[d + 1];
    }

    // Validity threshold: t_max(lambda, C) > 0 iff C > (3 V_max d_inf / lambda)^2.
    const double threshold = 3.0 * report.v_max * d_inf_max / report.lambda;
    std::uint64_t lo = static_cast<std::uint64_t>(std::floor(threshold * threshold)) + 1;
    while (t_max_of(report.lambda, report.v_max, d_inf_max, lo) <= 0.0) ++lo;

    const double log_delta = std::log(report.delta);
    const auto satisfied = [&](std::uint64_t c) {
        return union_bound_log(report.lambda, report.v_max, d_inf_max, c, depth, action_count) <=
               log_delta;
    };

    // The union-bound log is unimodal in C on the valid region (it rises near
    // the threshold where t is tiny, then the exp term dominates). If the
    // first valid C does not already satisfy the inequality, the satisfying
    // set is an upper tail: double until inside it, then binary search for
    // its first element.
    std::uint64_t width = lo;
    if (!satisfied(width)) {
        std::uint64_t hi = width;
        do {
            width = hi;
            hi *= 2;
        } while (!satisfied(hi));
        // invariant: width unsatisfied, hi satisfied
        while (hi - width > 1) {
            const std::uint64_t mid = width + (hi - width) / 2;
            if (satisfied(mid)) {
                hi = mid;
            } else {
                width = mid;
            }
        }
        width = hi;
    }

    report.min_width = width;
    report.t_max = t_max_of(report.lambda, report.v_max, d_inf_max, width);
    return report;
}

}  // namespace powss
