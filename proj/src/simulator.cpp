#include "raysearch/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <thread>

namespace raysearch {

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 16) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

int worker_count() {
    if (const char* env = std::getenv("RAYSEARCH_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hw, 1u, 16u));
}

SimResult run(const ExplorationPlan& plan, const GoalPlacement& goal) {
    auto truncated = truncate_at_goal(plan.as_trace(), goal);
    const double ratio = truncated.ledger.total / goal.distance;
    return SimResult{goal, std::move(truncated.ledger), ratio};
}

TruncationResult run_truncation(const StrategySpec& spec, const GoalPlacement& goal) {
    validate(goal, spec.w);
    int horizon = initial_horizon(spec, goal.distance);
    const int cap = max_horizon(spec);
    for (;;) {
        const ExplorationPlan plan = make_plan(spec, horizon);
        try {
            return truncate_at_goal(plan.as_trace(), goal);
        } catch (const horizon_error&) {
            if (horizon >= cap) throw;
            horizon = std::min(horizon * 2, cap);
        }
    }
}

SimResult run(const StrategySpec& spec, const GoalPlacement& goal) {
    auto truncated = run_truncation(spec, goal);
    const double ratio = truncated.ledger.total / goal.distance;
    return SimResult{goal, std::move(truncated.ledger), ratio};
}

WorstCaseResult worst_case_ratio_det(int w, int lambda, double n_max, double offset) {
    if (!(n_max >= 2.0)) throw std::domain_error("worst_case_ratio_det: n_max must be >= 2");
    if (!(offset > 0.0)) throw std::domain_error("worst_case_ratio_det: offset must be > 0");

    StrategySpec spec{lambda == 1 ? StrategyKind::det_single : StrategyKind::det_multi, w, lambda};

    // Grow the horizon until every path has been searched past n_max, so
    // every candidate below the cap is discoverable within this one plan.
    const int cap = max_horizon(spec);
    int horizon = initial_horizon(spec, n_max);
    ExplorationPlan plan;
    for (;;) {
        plan = make_plan(spec, horizon);
        std::vector<double> extent(static_cast<std::size_t>(w), 0.0);
        for (const Segment& s : plan.segments)
            extent[static_cast<std::size_t>(s.path)] =
                std::max(extent[static_cast<std::size_t>(s.path)], std::max(s.from_pos, s.to_pos));
        const double min_extent = *std::min_element(extent.begin(), extent.end());
        if (min_extent > n_max || horizon >= cap) break;
        horizon = std::min(horizon * 2, cap);
    }

    const Trace trace = plan.as_trace();
    validate(trace);

    // Adversarial candidates: just past every frontier where some robot's
    // outward progress pauses or reverses.
    std::set<std::pair<int, double>> candidates;
    for (const Segment& s : plan.segments) {
        if (!s.outward()) continue;
        const double d = s.to_pos + offset;
        if (d >= 1.0 && d <= n_max) candidates.insert({s.path, d});
    }

    WorstCaseResult result;
    for (const auto& [path, distance] : candidates) {
        const GoalPlacement goal{path, distance};
        const auto truncated = truncate_at_goal_unchecked(w, plan.lambda, plan.segments, goal);
        const double ratio = truncated.ledger.total / distance;
        result.evaluated.emplace_back(goal, ratio);
        if (ratio > result.sup_ratio) {
            result.sup_ratio = ratio;
            result.argmax = goal;
        }
    }
    if (result.evaluated.empty())
        throw std::domain_error("worst_case_ratio_det: no candidate goals below n_max");
    return result;
}

RatioEstimate expected_ratio_mc(int w, int lambda, const GoalPlacement& goal, int trials,
                                std::uint64_t seed, double group_fraction) {
    if (trials < 1) throw std::domain_error("expected_ratio_mc: trials must be >= 1");
    validate(goal, w);

    std::vector<double> ratios(static_cast<std::size_t>(trials), 0.0);
    auto run_range = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            StrategySpec spec{lambda == 1 ? StrategyKind::rand_single : StrategyKind::rand_multi,
                              w, lambda, RandomSource::derive_seed(seed, static_cast<std::uint64_t>(i)),
                              group_fraction};
            ratios[static_cast<std::size_t>(i)] = run(spec, goal).ratio;
        }
    };

    const int workers = std::min(worker_count(), trials);
    if (workers <= 1 || trials < 256) {
        run_range(0, trials);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        const int chunk = (trials + workers - 1) / workers;
        for (int t = 0; t < workers; ++t) {
            const int begin = t * chunk;
            const int end = std::min(begin + chunk, trials);
            if (begin >= end) break;
            pool.emplace_back(run_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    const double mean = pairwise_sum(ratios) / trials;
    double half = 0.0;
    if (trials > 1) {
        std::vector<double> sq(ratios.size());
        for (std::size_t i = 0; i < ratios.size(); ++i)
            sq[i] = (ratios[i] - mean) * (ratios[i] - mean);
        const double var = pairwise_sum(sq) / (trials - 1);
        half = 1.959963984540054 * std::sqrt(var / trials);
    }
    return RatioEstimate{mean, mean - half, mean + half, trials, seed};
}

GoalFamily GoalFamily::geometric(double first, double factor, double n_max) {
    if (!(first >= 1.0)) throw std::domain_error("goal family: first distance must be >= 1");
    if (!(factor > 1.0)) throw std::domain_error("goal family: factor must be > 1");
    GoalFamily family;
    for (double n = first; n <= n_max; n *= factor) family.distances.push_back(n);
    if (family.distances.empty())
        throw std::domain_error("goal family: empty grid");
    return family;
}

double competitive_fit(const StrategySpec& spec, const GoalFamily& family, int trials) {
    if (family.distances.empty()) throw std::domain_error("competitive_fit: empty goal family");
    double sup = 0.0;
    for (double n : family.distances) {
        double value = 0.0;
        if (is_randomized(spec.kind)) {
            value = expected_ratio_mc(spec.w, spec.lambda, GoalPlacement{0, n}, trials, spec.seed,
                                      spec.group_fraction)
                        .point;
        } else {
            value = worst_case_ratio_det(spec.w, spec.lambda, std::max(n, 2.0)).sup_ratio;
        }
        sup = std::max(sup, value);
    }
    return sup;
}

} // namespace raysearch
