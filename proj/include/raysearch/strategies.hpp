#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "raysearch/core.hpp"
#include "raysearch/random.hpp"

namespace raysearch {

/// Strategy name plus the drawn parameters, recorded for reproducibility.
struct PlanMeta {
    std::string strategy;
    std::optional<std::vector<int>> sigma{};
    std::optional<std::vector<int>> inner_sigma{};
    std::optional<double> epsilon{};
    std::optional<double> rate{};
    std::optional<double> speed{};
    std::optional<std::uint64_t> seed{};

    friend bool operator==(const PlanMeta&, const PlanMeta&) = default;
};

/// A finite, ordered stream of motion segments generated by a strategy up
/// to a horizon (stages for single-robot cycles, rounds otherwise).
/// Deterministic plans are identical across calls with equal inputs;
/// randomized plans are identical across calls with equal seeds.
struct ExplorationPlan {
    int w = 2;
    int lambda = 1;
    int horizon = 0;
    std::vector<Segment> segments;
    PlanMeta meta;

    Trace as_trace() const { return Trace{w, lambda, segments}; }

    friend bool operator==(const ExplorationPlan&, const ExplorationPlan&) = default;
};

/// Fraction of the roaming robot's current stage radius used as the
/// maximum parallel-group length in the randomized multi-robot plan.
/// Smaller values tighten the speed-ratio discretization error.
inline constexpr double kDefaultGroupFraction = 1.0 / 128.0;

/// Single robot, fixed cyclic order; stage i is an out-and-back on path
/// i mod w to radius_f(w, i).
ExplorationPlan det_single_plan(int w, int horizon);

/// Robots 1..lambda-1 pinned to paths 1..lambda-1 and only ever advancing;
/// robot lambda cycles paths {0, lambda, ..., w-1}. Round i: solo leg to
/// radius_f(w', i-w'), a parallel advance of all robots to
/// radius_f(w', i+1-w'), then a solo leg to radius_f(w', i) and a return.
/// lambda = 1 degenerates to det_single_plan; lambda = w walks one robot
/// per path straight out (doubling advance rounds).
ExplorationPlan det_multi_plan(int w, int lambda, int horizon);

/// Randomized single-robot cycle: a drawn permutation sigma and phase
/// epsilon in [0,1); stage j explores path sigma(j mod w) out to
/// r_w^(epsilon + j) and returns.
ExplorationPlan rand_single_plan(int w, RandomSource rng, int horizon);

/// Deterministic replay of rand_single_plan with the randomness injected.
ExplorationPlan rand_single_plan_params(int w, std::vector<int> sigma, double epsilon, int horizon,
                                        std::optional<std::uint64_t> seed = {});

/// Randomized multi-robot strategy: an outer permutation assigns pinned
/// robots to paths; robot lambda runs the single-robot cycle over the
/// remaining w-lambda+1 paths. Motion is emitted as parallel groups in
/// which robot lambda accrues speed_v(w, lambda) distance per unit of each
/// pinned robot; group lengths are capped at group_fraction times the
/// current stage radius.
ExplorationPlan rand_multi_plan(int w, int lambda, RandomSource rng, int horizon,
                                double group_fraction = kDefaultGroupFraction);

/// Deterministic replay of rand_multi_plan with the randomness injected.
ExplorationPlan rand_multi_plan_params(int w, int lambda, std::vector<int> sigma,
                                       std::vector<int> inner_sigma, double epsilon, int horizon,
                                       double group_fraction = kDefaultGroupFraction,
                                       std::optional<std::uint64_t> seed = {});

enum class StrategyKind { det_single, det_multi, rand_single, rand_multi };

bool is_randomized(StrategyKind kind);
std::string to_string(StrategyKind kind);
StrategyKind strategy_from_string(const std::string& name);

/// Everything needed to regenerate a plan at any horizon.
struct StrategySpec {
    StrategyKind kind = StrategyKind::det_single;
    int w = 2;
    int lambda = 1;
    std::uint64_t seed = 0;
    double group_fraction = kDefaultGroupFraction;
};

ExplorationPlan make_plan(const StrategySpec& spec, int horizon);

/// First-guess horizon for discovering a goal at the given distance;
/// callers extend (by doubling) if discovery still fails.
int initial_horizon(const StrategySpec& spec, double distance);

/// Largest horizon whose stage radii stay comfortably inside double range.
int max_horizon(const StrategySpec& spec);

} // namespace raysearch
