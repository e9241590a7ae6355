#pragma once

#include <vector>

#include "raysearch/strategies.hpp"

namespace raysearch {

enum class RunMode {
    fresh_replay, // rerun the algorithm from scratch up to run_amount steps
    resume,       // continue the slot's current algorithm for run_amount more steps
};

/// One scheduling decision: run `basic_algorithm` in memory slot `slot`.
struct ScheduleEvent {
    int slot = 1;            // memory area, 1-based like robots
    int basic_algorithm = 0; // 0-based like paths
    double run_amount = 0.0; // computation steps
    RunMode mode = RunMode::fresh_replay;

    friend bool operator==(const ScheduleEvent&, const ScheduleEvent&) = default;
};

/// A plan reinterpreted as time-slicing w candidate procedures across
/// lambda memory areas. A slot resumes an algorithm only when it was the
/// last one run there and its frontier matches; otherwise the event replays
/// from scratch (run_amount then counts the replayed steps too).
/// Return-to-origin motion has no computation analogue and emits nothing,
/// which is why computation_total and travel_total are both reported and
/// never claimed equal.
struct SwitchSchedule {
    int slots = 1;
    std::vector<ScheduleEvent> events;
    double computation_total = 0.0;
    double travel_total = 0.0;
};

SwitchSchedule export_schedule(const ExplorationPlan& plan);

} // namespace raysearch
