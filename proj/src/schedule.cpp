#include "raysearch/schedule.hpp"

namespace raysearch {

SwitchSchedule export_schedule(const ExplorationPlan& plan) {
    const Trace trace = plan.as_trace();
    validate(trace);

    SwitchSchedule schedule;
    schedule.slots = plan.lambda;
    schedule.travel_total = 0.0;

    struct SlotState {
        int algorithm = -1;
        double frontier = 0.0;
    };
    std::vector<SlotState> slots(static_cast<std::size_t>(plan.lambda));

    for (const Segment& seg : plan.segments) {
        schedule.travel_total += seg.length();
        if (!seg.outward()) continue;

        SlotState& slot = slots[static_cast<std::size_t>(seg.robot - 1)];
        ScheduleEvent event;
        event.slot = seg.robot;
        event.basic_algorithm = seg.path;
        if (slot.algorithm == seg.path && slot.frontier == seg.from_pos) {
            event.mode = RunMode::resume;
            event.run_amount = seg.to_pos - seg.from_pos;
        } else {
            event.mode = RunMode::fresh_replay;
            event.run_amount = seg.to_pos; // replays [0, from] then advances
        }
        slot.algorithm = seg.path;
        slot.frontier = seg.to_pos;
        schedule.computation_total += event.run_amount;
        schedule.events.push_back(event);
    }
    return schedule;
}

} // namespace raysearch
