#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace raysearch {

/// Thrown when a trace or plan violates the motion model (discontinuity,
/// path change away from the origin, reused parallel-group tag, ...).
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a plan runs out before the goal can be discovered.
class horizon_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The adversary's hidden goal: a path index in [0, w) and a distance >= 1
/// from the origin.
struct GoalPlacement {
    int path = 0;
    double distance = 1.0;
};

void validate(const GoalPlacement& goal, int w);

/// One motion of one robot along one path. Robots are 1-based, paths
/// 0-based. Segments sharing a parallel_group tag execute simultaneously
/// at equal speed.
struct Segment {
    int robot = 1;
    int path = 0;
    double from_pos = 0.0;
    double to_pos = 0.0;
    std::optional<int> parallel_group{};

    double length() const { return to_pos >= from_pos ? to_pos - from_pos : from_pos - to_pos; }
    bool outward() const { return to_pos > from_pos; }

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// An executed motion history. Invariants: every robot starts at the
/// origin (position 0), each segment starts where that robot's previous
/// segment ended, and a robot changes path only at position 0.
struct Trace {
    int w = 2;
    int lambda = 1;
    std::vector<Segment> segments;

    friend bool operator==(const Trace&, const Trace&) = default;
};

void validate(const Trace& trace);

struct Discovery {
    std::size_t segment_index = 0;
    double position = 0.0;

    friend bool operator==(const Discovery&, const Discovery&) = default;
};

/// Exact per-robot cost accounting for an executed trace.
struct CostLedger {
    std::vector<double> per_robot_distance;
    double total = 0.0;
    std::optional<Discovery> discovery{};

    friend bool operator==(const CostLedger&, const CostLedger&) = default;
};

/// Sum of segment lengths. Validates the trace first.
double total_cost(const Trace& trace);

/// Maximum position reached on `path` by any robot; 0 if never visited.
double searched_extent(const Trace& trace, int path);

struct TruncationResult {
    Trace trace;
    CostLedger ledger;
};

/// Cuts a plan (given as a trace) at the first instant any robot's
/// position on goal.path reaches goal.distance. Within a parallel group
/// all members move simultaneously at equal speed, so each accrues the
/// same partial advance at the cutoff (capped by its own segment length).
TruncationResult truncate_at_goal(const Trace& plan, const GoalPlacement& goal);

/// Variant that skips re-validation; callers must pass a validated trace.
TruncationResult truncate_at_goal_unchecked(int w, int lambda, std::span<const Segment> segments,
                                            const GoalPlacement& goal);

} // namespace raysearch
