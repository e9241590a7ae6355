#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace raysearch {

inline constexpr double kFormulaTol = 1e-9;
inline constexpr double kOptimizerTol = 1e-6;

/// Turn radius of stage i in the deterministic single-robot cycle:
/// (w/(w-1))^i for i >= 0, 0 for i < 0.
double radius_f(int w, int i);

/// Smallest deterministic competitive ratio for w paths and lambda robots:
/// lambda + 2 (w-lambda+1)^(w-lambda+1) / (w-lambda)^(w-lambda) when
/// lambda < w, and exactly w when lambda = w (one robot per path).
double det_ratio(int w, int lambda);

/// The objective (r^w - 1) / ((r - 1) ln r) whose minimizer over r > 1 is
/// the randomized strategy's radius growth rate.
double rate_objective(int w, double r);

/// Unique minimizer of rate_objective over r > 1, to absolute tolerance
/// tol. Deterministic: the upper bracket is doubled while the objective is
/// still decreasing at its right edge, then golden-section reduction.
double solve_rw(int w, double tol = kOptimizerTol);

/// Minimum value of rate_objective, i.e. rate_objective(w, solve_rw(w)).
double c_w(int w, double tol = kOptimizerTol);

/// Expected competitive ratio bound of the randomized single-robot cycle:
/// 1 + (2/w) c_w(w) for w >= 2; 1 for w = 1 (walk straight).
double rand_single_bound(int w, double tol = kOptimizerTol);

/// Randomized multi-robot bound:
/// (1/w) ((lambda-1) + sqrt((w-lambda+1) rand_single_bound(w-lambda+1)))^2.
double rand_multi_bound(int w, int lambda, double tol = kOptimizerTol);

/// Speed parameter of the randomized multi-robot strategy: the roaming
/// robot travels speed_v units per unit traveled by each pinned robot.
double speed_v(int w, int lambda, double tol = kOptimizerTol);

/// Closed-form quantities for one (w, lambda) pair. r_w_prime is absent
/// when lambda = w (the one-path subproblem has no growth rate).
struct AnalyticReport {
    int w = 2;
    int lambda = 1;
    double det_ratio = 0.0;
    std::optional<double> r_w_prime{};
    double rand_single = 0.0;
    double rand_multi_bound = 0.0;
    double speed_v = 0.0;
    double c_w = 0.0;
};

AnalyticReport analyze(int w, int lambda, double tol = kOptimizerTol);

/// A positive sequence given as an explicit prefix (s_0 = 1 required)
/// continued by a geometric tail of the given rate. rate > 1 guarantees
/// s_i -> infinity. The default is the pure geometric sequence s_i = rate^i.
struct GeometricTailSequence {
    std::vector<double> prefix{1.0};
    double rate = 2.0;

    double value(std::size_t i) const;
};

/// Membership check for the strategy-rate sequence class with window w:
/// s_0 = 1, positive entries, s_{i+w} > s_i for all i, divergence.
void validate(const GeometricTailSequence& seq, int w);

/// The discounted sum  epsilon * sum_i (s_i + ... + s_{i+w-1}) / s_i^(1+eps).
/// Prefix terms are summed explicitly; the geometric tail is accumulated in
/// closed form, so the truncation error is below trunc_tol by construction.
double g_functional(int w, double epsilon, const GeometricTailSequence& seq,
                    double trunc_tol = kFormulaTol);

struct AmGmBound {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Both sides of the chained mean inequality
///   sum_k x_k / x_{k-1}^(1+eps)  >=
///   (m/(1+eps)^m) * (x_m^((1/(1+eps))^m) / x_0)^(E_eps(m))
/// with E_eps(m) = eps (1+eps)^m / ((1+eps)^m - 1) and m = xs.size() - 1.
AmGmBound amgm_chain(double epsilon, std::span<const double> xs);

} // namespace raysearch
