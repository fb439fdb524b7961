#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace powss {

// Self-normalized importance-sampling estimate: sum(w_i f_i) / sum(w_i).
// Throws LengthMismatch or ZeroTotalWeight.
double sn_estimate(std::span<const double> weights, std::span<const double> values);

// Bound on the SN estimator bias: |f|_inf * d_inf / sqrt(n).
double sn_bias_bound(double f_inf, double d_inf, std::int64_t n);

// t(lambda, N) = lambda / (|f|_inf * d_inf) - 1/sqrt(N). May be <= 0; the
// concentration bound is only valid when it is positive.
double concentration_t(double lambda, std::int64_t n, double f_inf, double d_inf);

// 3 * exp(-N * t^2), the failure probability of the concentration bound.
// May exceed 1 (clamp for reporting). Throws InvalidRegime when t <= 0.
double concentration_failure_bound(double lambda, std::int64_t n, double f_inf, double d_inf);

// Empirical proxy for the infinite Renyi divergence: N * max(w) / sum(w).
// Equals 1 iff all weights are equal; a lower bound on the essential sup.
double empirical_d_inf(std::span<const double> raw_weights);

// Constants from the near-optimality guarantee for a requested accuracy
// epsilon: lambda, delta, V_max, the alpha recursion, and the smallest
// width C for which the union-bound inequality holds.
struct BoundsReport {
    double epsilon = 0.0;
    double lambda = 0.0;
    double delta = 0.0;
    double t_max = 0.0;      // t_max(lambda, C) evaluated at min_width
    double d_inf_max = 1.0;
    double v_max = 0.0;
    std::uint64_t min_width = 0;
    std::vector<double> alpha_sequence;  // alpha_sequence[d] = alpha_d, d = 0..D-1
};

// t_max(lambda, C) = lambda / (3 V_max d_inf_max) - 1/sqrt(C).
double t_max_of(double lambda, double v_max, double d_inf_max, std::uint64_t width);

// log of 3|A| (3|A|C)^D exp(-C t_max^2); the width C satisfies the guarantee
// when this is <= log(delta).
double union_bound_log(double lambda, double v_max, double d_inf_max, std::uint64_t width,
                       int depth, int action_count);

BoundsReport theorem2_constants(double epsilon, double gamma, double r_max, int depth,
                                int action_count, double d_inf_max);

}  // namespace powss
