#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "raysearch/core.hpp"
#include "raysearch/strategies.hpp"

namespace raysearch {

struct SimResult {
    GoalPlacement goal;
    CostLedger ledger;
    double ratio = 0.0;
};

/// Executes a fixed plan against a goal; throws horizon_error if the plan
/// ends before discovery.
SimResult run(const ExplorationPlan& plan, const GoalPlacement& goal);

/// Generates the plan from the spec and retries with a doubled horizon
/// (same seed, so randomized plans extend consistently) until the goal is
/// found or the horizon cap is hit.
SimResult run(const StrategySpec& spec, const GoalPlacement& goal);

/// Same auto-extension as run(spec, goal) but keeps the truncated trace.
TruncationResult run_truncation(const StrategySpec& spec, const GoalPlacement& goal);

struct WorstCaseResult {
    double sup_ratio = 0.0;
    GoalPlacement argmax;
    /// Every adversarial candidate goal with its simulated ratio.
    std::vector<std::pair<GoalPlacement, double>> evaluated;
};

/// Adversarial sweep for the deterministic strategy: places a goal just
/// past every turn extent and every parallel-advance frontier (offset
/// defaults to +1) up to n_max, and returns the worst ratio.
WorstCaseResult worst_case_ratio_det(int w, int lambda, double n_max, double offset = 1.0);

struct RatioEstimate {
    double point = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo mean competitive ratio of the randomized strategy against a
/// fixed goal, with a 95% normal-approximation interval. Trial i draws its
/// seed as substream i of `seed`; the reduction is pairwise, so results are
/// identical regardless of worker count.
RatioEstimate expected_ratio_mc(int w, int lambda, const GoalPlacement& goal, int trials,
                                std::uint64_t seed,
                                double group_fraction = kDefaultGroupFraction);

struct GoalFamily {
    std::vector<double> distances;

    static GoalFamily geometric(double first, double factor, double n_max);
};

/// Supremum of the (worst-case for deterministic, expected for randomized)
/// ratio over a family of goal distances; the empirical competitive ratio.
double competitive_fit(const StrategySpec& spec, const GoalFamily& family, int trials = 10000);

/// Deterministic pairwise sum (fixed reduction tree, independent of any
/// parallel execution order).
double pairwise_sum(std::span<const double> values);

/// Worker count for embarrassingly parallel sweeps; the RAYSEARCH_WORKERS
/// environment variable overrides the hardware default.
int worker_count();

} // namespace raysearch
