#include "raysearch/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "raysearch/analytic.hpp"

namespace raysearch {

namespace {

constexpr double kMaxPosition = 1e300;
constexpr int kHardHorizonCap = 1 << 23;

void check_common(int w, int horizon) {
    if (w < 2) throw std::domain_error("plan: w must be >= 2");
    if (horizon < 1) throw std::domain_error("plan: horizon must be >= 1");
}

void check_radius(double radius) {
    if (!std::isfinite(radius) || radius > kMaxPosition)
        throw std::domain_error("plan: horizon too large, stage radius overflows");
}

// One robot per path, all advancing in lockstep; round t advances every
// robot from 2^(t-1) to 2^t (round 0 from the origin to 1). Robot k takes
// path k for k < lambda, robot lambda takes path 0, optionally remapped by
// a permutation.
void emit_straight_walk(ExplorationPlan& plan, const std::vector<int>* sigma) {
    const int w = plan.w;
    check_radius(std::ldexp(1.0, plan.horizon - 1));
    double from = 0.0;
    for (int t = 0; t < plan.horizon; ++t) {
        const double to = std::ldexp(1.0, t);
        for (int robot = 1; robot <= w; ++robot) {
            const int slot = robot == w ? 0 : robot;
            const int path = sigma ? (*sigma)[static_cast<std::size_t>(slot)] : slot;
            plan.segments.push_back({robot, path, from, to, t});
        }
        from = to;
    }
}

} // namespace

ExplorationPlan det_single_plan(int w, int horizon) {
    check_common(w, horizon);
    check_radius(radius_f(w, horizon - 1));

    ExplorationPlan plan;
    plan.w = w;
    plan.lambda = 1;
    plan.horizon = horizon;
    plan.meta.strategy = "det-single";
    plan.segments.reserve(static_cast<std::size_t>(horizon) * 2);
    for (int i = 0; i < horizon; ++i) {
        const int path = i % w;
        const double radius = radius_f(w, i);
        plan.segments.push_back({1, path, 0.0, radius});
        plan.segments.push_back({1, path, radius, 0.0});
    }
    return plan;
}

ExplorationPlan det_multi_plan(int w, int lambda, int horizon) {
    check_common(w, horizon);
    if (lambda < 1 || lambda > w) throw std::domain_error("plan: lambda must be in [1, w]");
    if (lambda == 1) return det_single_plan(w, horizon);

    ExplorationPlan plan;
    plan.w = w;
    plan.lambda = lambda;
    plan.horizon = horizon;
    plan.meta.strategy = "det-multi";

    if (lambda == w) {
        emit_straight_walk(plan, nullptr);
        return plan;
    }

    const int wp = w - lambda + 1;
    check_radius(radius_f(wp, horizon - 1));

    // Robot lambda's path cycle: {0, lambda, lambda+1, ..., w-1}.
    std::vector<int> cycle;
    cycle.push_back(0);
    for (int p = lambda; p < w; ++p) cycle.push_back(p);

    int tag = 0;
    for (int i = 0; i < horizon; ++i) {
        const int p = cycle[static_cast<std::size_t>(i % wp)];
        const double r1 = radius_f(wp, i - wp);     // solo leg target
        const double r2 = radius_f(wp, i - wp + 1); // parallel advance target
        const double r3 = radius_f(wp, i);          // round radius
        if (r1 > 0.0) plan.segments.push_back({lambda, p, 0.0, r1});
        if (r2 > r1) {
            for (int k = 1; k < lambda; ++k) plan.segments.push_back({k, k, r1, r2, tag});
            plan.segments.push_back({lambda, p, r1, r2, tag});
            ++tag;
        }
        if (r3 > r2) plan.segments.push_back({lambda, p, r2, r3});
        plan.segments.push_back({lambda, p, r3, 0.0});
    }
    return plan;
}

ExplorationPlan rand_single_plan_params(int w, std::vector<int> sigma, double epsilon, int horizon,
                                        std::optional<std::uint64_t> seed) {
    check_common(w, horizon);
    if (static_cast<int>(sigma.size()) != w)
        throw std::domain_error("plan: sigma must be a permutation of {0..w-1}");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::domain_error("plan: epsilon must lie in [0, 1)");

    const double rate = solve_rw(w);
    check_radius(std::pow(rate, epsilon + (horizon - 1)));

    ExplorationPlan plan;
    plan.w = w;
    plan.lambda = 1;
    plan.horizon = horizon;
    plan.meta.strategy = "rand-single";
    plan.meta.sigma = sigma;
    plan.meta.epsilon = epsilon;
    plan.meta.rate = rate;
    plan.meta.seed = seed;
    plan.segments.reserve(static_cast<std::size_t>(horizon) * 2);
    for (int j = 0; j < horizon; ++j) {
        const int path = sigma[static_cast<std::size_t>(j % w)];
        const double radius = std::pow(rate, epsilon + j);
        plan.segments.push_back({1, path, 0.0, radius});
        plan.segments.push_back({1, path, radius, 0.0});
    }
    return plan;
}

ExplorationPlan rand_single_plan(int w, RandomSource rng, int horizon) {
    check_common(w, horizon);
    auto sigma = rng.permutation(w);
    const double epsilon = rng.uniform01();
    return rand_single_plan_params(w, std::move(sigma), epsilon, horizon, rng.seed());
}

ExplorationPlan rand_multi_plan_params(int w, int lambda, std::vector<int> sigma,
                                       std::vector<int> inner_sigma, double epsilon, int horizon,
                                       double group_fraction, std::optional<std::uint64_t> seed) {
    check_common(w, horizon);
    if (lambda < 2 || lambda >= w)
        throw std::domain_error("plan: parameter replay requires 1 < lambda < w");
    if (static_cast<int>(sigma.size()) != w)
        throw std::domain_error("plan: sigma must be a permutation of {0..w-1}");
    if (!(group_fraction > 0.0 && group_fraction <= 1.0))
        throw std::domain_error("plan: group_fraction must lie in (0, 1]");

    const int wp = w - lambda + 1;
    if (static_cast<int>(inner_sigma.size()) != wp)
        throw std::domain_error("plan: inner_sigma must be a permutation of {0..w'-1}");
    if (!(epsilon >= 0.0 && epsilon < 1.0))
        throw std::domain_error("plan: epsilon must lie in [0, 1)");

    const double rate = solve_rw(wp);
    const double v = speed_v(w, lambda);
    check_radius(std::pow(rate, epsilon + (horizon - 1)));

    // Paths not taken by pinned robots, in outer-permutation order.
    std::vector<int> remaining;
    remaining.push_back(sigma[0]);
    for (int i = lambda; i < w; ++i) remaining.push_back(sigma[static_cast<std::size_t>(i)]);

    ExplorationPlan plan;
    plan.w = w;
    plan.lambda = lambda;
    plan.horizon = horizon;
    plan.meta.strategy = "rand-multi";
    plan.meta.sigma = sigma;
    plan.meta.inner_sigma = inner_sigma;
    plan.meta.epsilon = epsilon;
    plan.meta.rate = rate;
    plan.meta.speed = v;
    plan.meta.seed = seed;

    const int chunks = static_cast<int>(std::ceil(1.0 / group_fraction));
    double pinned_pos = 0.0;
    int tag = 0;
    for (int j = 0; j < horizon; ++j) {
        const int path = remaining[static_cast<std::size_t>(inner_sigma[static_cast<std::size_t>(j % wp)])];
        const double d = std::pow(rate, epsilon + j);
        const double delta = (d / chunks) / v; // pinned advance per group
        for (int leg = 0; leg < 2; ++leg) {
            for (int k = 0; k < chunks; ++k) {
                const double a = d * (static_cast<double>(k) / chunks);
                const double b = d * (static_cast<double>(k + 1) / chunks);
                for (int robot = 1; robot < lambda; ++robot) {
                    plan.segments.push_back({robot, sigma[static_cast<std::size_t>(robot)],
                                             pinned_pos, pinned_pos + delta, tag});
                }
                if (leg == 0)
                    plan.segments.push_back({lambda, path, a, b, tag});
                else
                    plan.segments.push_back({lambda, path, d - a, d - b, tag});
                pinned_pos += delta;
                ++tag;
            }
        }
    }
    return plan;
}

ExplorationPlan rand_multi_plan(int w, int lambda, RandomSource rng, int horizon,
                                double group_fraction) {
    check_common(w, horizon);
    if (lambda < 1 || lambda > w) throw std::domain_error("plan: lambda must be in [1, w]");
    if (lambda == 1) return rand_single_plan(w, rng, horizon);

    if (lambda == w) {
        auto sigma = rng.permutation(w);
        ExplorationPlan plan;
        plan.w = w;
        plan.lambda = lambda;
        plan.horizon = horizon;
        plan.meta.strategy = "rand-multi";
        plan.meta.sigma = sigma;
        plan.meta.speed = 1.0;
        plan.meta.seed = rng.seed();
        emit_straight_walk(plan, &sigma);
        return plan;
    }

    auto sigma = rng.permutation(w);
    auto inner = rng.permutation(w - lambda + 1);
    const double epsilon = rng.uniform01();
    return rand_multi_plan_params(w, lambda, std::move(sigma), std::move(inner), epsilon, horizon,
                                  group_fraction, rng.seed());
}

bool is_randomized(StrategyKind kind) {
    return kind == StrategyKind::rand_single || kind == StrategyKind::rand_multi;
}

std::string to_string(StrategyKind kind) {
    switch (kind) {
    case StrategyKind::det_single: return "det-single";
    case StrategyKind::det_multi: return "det-multi";
    case StrategyKind::rand_single: return "rand-single";
    case StrategyKind::rand_multi: return "rand-multi";
    }
    return "unknown";
}

StrategyKind strategy_from_string(const std::string& name) {
    if (name == "det-single") return StrategyKind::det_single;
    if (name == "det-multi") return StrategyKind::det_multi;
    if (name == "rand-single") return StrategyKind::rand_single;
    if (name == "rand-multi") return StrategyKind::rand_multi;
    throw std::domain_error("unknown strategy: " + name);
}

ExplorationPlan make_plan(const StrategySpec& spec, int horizon) {
    switch (spec.kind) {
    case StrategyKind::det_single: return det_single_plan(spec.w, horizon);
    case StrategyKind::det_multi: return det_multi_plan(spec.w, spec.lambda, horizon);
    case StrategyKind::rand_single: return rand_single_plan(spec.w, RandomSource(spec.seed), horizon);
    case StrategyKind::rand_multi:
        return rand_multi_plan(spec.w, spec.lambda, RandomSource(spec.seed), horizon,
                               spec.group_fraction);
    }
    throw std::domain_error("unknown strategy kind");
}

namespace {

int stages_to_reach(double growth, double target, int slack) {
    if (target <= 1.0) return 1 + slack;
    const int stages = static_cast<int>(std::ceil(std::log(target) / std::log(growth)));
    return std::max(stages, 1) + slack;
}

} // namespace

int max_horizon(const StrategySpec& spec) {
    const double limit = std::log(kMaxPosition);
    double growth = 2.0;
    switch (spec.kind) {
    case StrategyKind::det_single: growth = static_cast<double>(spec.w) / (spec.w - 1); break;
    case StrategyKind::det_multi: {
        if (spec.lambda == spec.w) break;
        const int wp = spec.w - std::max(spec.lambda, 1) + 1;
        growth = static_cast<double>(wp) / (wp - 1);
        break;
    }
    case StrategyKind::rand_single: growth = solve_rw(spec.w); break;
    case StrategyKind::rand_multi: {
        if (spec.lambda == spec.w) break;
        growth = solve_rw(spec.w - std::max(spec.lambda, 1) + 1);
        break;
    }
    }
    const double stages = std::floor(limit / std::log(growth)) - 1.0;
    return static_cast<int>(std::clamp(stages, 1.0, static_cast<double>(kHardHorizonCap)));
}

int initial_horizon(const StrategySpec& spec, double distance) {
    const double n = std::max(distance, 1.0);
    int guess = 1;
    switch (spec.kind) {
    case StrategyKind::det_single:
        guess = stages_to_reach(static_cast<double>(spec.w) / (spec.w - 1), n, spec.w + 2);
        break;
    case StrategyKind::det_multi: {
        if (spec.lambda == spec.w) {
            guess = stages_to_reach(2.0, n, 2);
            break;
        }
        const int wp = spec.w - spec.lambda + 1;
        guess = stages_to_reach(static_cast<double>(wp) / (wp - 1), n, 2 * wp + 2);
        break;
    }
    case StrategyKind::rand_single:
        guess = stages_to_reach(solve_rw(spec.w), n, spec.w + 2);
        break;
    case StrategyKind::rand_multi: {
        if (spec.lambda == spec.w) {
            guess = stages_to_reach(2.0, n, 2);
            break;
        }
        const int wp = spec.w - spec.lambda + 1;
        const double v = speed_v(spec.w, spec.lambda);
        guess = stages_to_reach(solve_rw(wp), v * n, wp + 3);
        break;
    }
    }
    return std::min(guess, max_horizon(spec));
}

} // namespace raysearch
