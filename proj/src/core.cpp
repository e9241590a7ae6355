#include "raysearch/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace raysearch {

namespace {

struct RobotState {
    double pos = 0.0;
    int path = -1; // -1: still at the origin, no path committed
};

struct Event {
    std::size_t begin = 0;
    std::size_t end = 0; // half-open range into the segment list
};

std::string seg_context(std::size_t index) {
    return " (segment " + std::to_string(index) + ")";
}

// Splits the segment stream into execution events: a single untagged
// segment, or a maximal run of consecutive segments sharing one tag.
// A tag value may not reappear once its run has ended.
std::vector<Event> split_events(std::span<const Segment> segments) {
    std::vector<Event> events;
    std::unordered_set<int> closed_tags;
    std::size_t i = 0;
    while (i < segments.size()) {
        if (!segments[i].parallel_group) {
            events.push_back({i, i + 1});
            ++i;
            continue;
        }
        const int tag = *segments[i].parallel_group;
        if (closed_tags.count(tag) != 0) {
            throw validation_error("parallel_group tag " + std::to_string(tag) +
                                   " reused in a non-consecutive run" + seg_context(i));
        }
        std::size_t j = i + 1;
        while (j < segments.size() && segments[j].parallel_group &&
               *segments[j].parallel_group == tag) {
            ++j;
        }
        closed_tags.insert(tag);
        events.push_back({i, j});
        i = j;
    }
    return events;
}

void validate_stream(int w, int lambda, std::span<const Segment> segments) {
    if (w < 2) throw validation_error("trace: w must be >= 2");
    if (lambda < 1 || lambda > w) throw validation_error("trace: lambda must be in [1, w]");

    std::vector<RobotState> state(static_cast<std::size_t>(lambda));
    const auto events = split_events(segments);
    std::vector<int> seen_in_event;
    for (const auto& ev : events) {
        seen_in_event.clear();
        for (std::size_t k = ev.begin; k < ev.end; ++k) {
            const Segment& s = segments[k];
            if (s.robot < 1 || s.robot > lambda)
                throw validation_error("robot index out of [1, lambda]" + seg_context(k));
            if (s.path < 0 || s.path >= w)
                throw validation_error("path index out of [0, w)" + seg_context(k));
            if (!std::isfinite(s.from_pos) || !std::isfinite(s.to_pos) || s.from_pos < 0.0 ||
                s.to_pos < 0.0)
                throw validation_error("positions must be finite and >= 0" + seg_context(k));
            if (std::find(seen_in_event.begin(), seen_in_event.end(), s.robot) !=
                seen_in_event.end())
                throw validation_error("robot appears twice in one parallel group" +
                                       seg_context(k));
            seen_in_event.push_back(s.robot);

            RobotState& rs = state[static_cast<std::size_t>(s.robot - 1)];
            if (s.from_pos != rs.pos)
                throw validation_error("discontinuity: segment starts at " +
                                       std::to_string(s.from_pos) + ", robot is at " +
                                       std::to_string(rs.pos) + seg_context(k));
            if (rs.path != -1 && rs.path != s.path && rs.pos != 0.0)
                throw validation_error("path change away from the origin" + seg_context(k));
            rs.pos = s.to_pos;
            rs.path = s.path;
        }
    }
}

} // namespace

void validate(const GoalPlacement& goal, int w) {
    if (goal.path < 0 || goal.path >= w)
        throw std::domain_error("goal path must be in [0, w)");
    if (!std::isfinite(goal.distance) || goal.distance < 1.0)
        throw std::domain_error("goal distance must be finite and >= 1");
}

void validate(const Trace& trace) { validate_stream(trace.w, trace.lambda, trace.segments); }

double total_cost(const Trace& trace) {
    validate(trace);
    double sum = 0.0;
    for (const Segment& s : trace.segments) sum += s.length();
    return sum;
}

double searched_extent(const Trace& trace, int path) {
    if (path < 0 || path >= trace.w) throw std::domain_error("searched_extent: path out of [0, w)");
    validate(trace);
    double extent = 0.0;
    for (const Segment& s : trace.segments) {
        if (s.path != path) continue;
        extent = std::max(extent, std::max(s.from_pos, s.to_pos));
    }
    return extent;
}

TruncationResult truncate_at_goal_unchecked(int w, int lambda, std::span<const Segment> segments,
                                            const GoalPlacement& goal) {
    validate(goal, w);

    TruncationResult result;
    result.trace.w = w;
    result.trace.lambda = lambda;
    result.ledger.per_robot_distance.assign(static_cast<std::size_t>(lambda), 0.0);

    auto& out = result.trace.segments;
    auto& dist = result.ledger.per_robot_distance;
    const double g = goal.distance;

    const auto events = split_events(segments);
    for (const auto& ev : events) {
        // Advance (in robot-motion distance) at which the goal is first hit
        // within this event, if at all.
        double cut = std::numeric_limits<double>::infinity();
        std::size_t hit = ev.end;
        for (std::size_t k = ev.begin; k < ev.end; ++k) {
            const Segment& s = segments[k];
            if (s.path != goal.path) continue;
            const double lo = std::min(s.from_pos, s.to_pos);
            const double hi = std::max(s.from_pos, s.to_pos);
            if (lo <= g && g <= hi) {
                const double adv = std::abs(g - s.from_pos);
                if (adv < cut) {
                    cut = adv;
                    hit = k;
                }
            }
        }

        if (hit == ev.end) {
            for (std::size_t k = ev.begin; k < ev.end; ++k) {
                out.push_back(segments[k]);
                dist[static_cast<std::size_t>(segments[k].robot - 1)] += segments[k].length();
            }
            continue;
        }

        // Equal-speed cutoff: every member advances min(cut, own length).
        for (std::size_t k = ev.begin; k < ev.end; ++k) {
            Segment s = segments[k];
            const double adv = std::min(cut, s.length());
            const double dir = s.to_pos >= s.from_pos ? 1.0 : -1.0;
            s.to_pos = k == hit ? g : s.from_pos + dir * adv;
            dist[static_cast<std::size_t>(s.robot - 1)] += adv;
            out.push_back(s);
            if (k == hit) result.ledger.discovery = Discovery{out.size() - 1, g};
        }
        double total = 0.0;
        for (double d : dist) total += d;
        result.ledger.total = total;
        return result;
    }

    throw horizon_error("goal unreachable within horizon");
}

TruncationResult truncate_at_goal(const Trace& plan, const GoalPlacement& goal) {
    validate(plan);
    return truncate_at_goal_unchecked(plan.w, plan.lambda, plan.segments, goal);
}

} // namespace raysearch
