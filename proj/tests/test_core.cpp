#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "raysearch/core.hpp"
#include "raysearch/random.hpp"
#include "raysearch/strategies.hpp"

using namespace raysearch;

namespace {

// The single-robot doubling cycle on two paths, four stages, as raw
// segments: radii 1, 2, 4, 8 alternating between paths 0 and 1.
Trace doubling_trace(int stages) {
    Trace t{2, 1, {}};
    for (int i = 0; i < stages; ++i) {
        const double r = std::pow(2.0, i);
        t.segments.push_back({1, i % 2, 0.0, r});
        t.segments.push_back({1, i % 2, r, 0.0});
    }
    return t;
}

} // namespace

TEST_CASE("total_cost basics") {
    CHECK(total_cost(Trace{2, 1, {}}) == 0.0);

    Trace out_and_back{2, 1, {{1, 0, 0.0, 1.0}, {1, 0, 1.0, 0.0}}};
    CHECK(total_cost(out_and_back) == 2.0);

    // Stages 0..3 of the two-path doubling cycle truncated at goal (1, 3):
    // 2 + 4 + 8 + 3 = 17, hand-traced.
    Trace t = doubling_trace(3);
    t.segments.push_back({1, 1, 0.0, 3.0});
    CHECK(total_cost(t) == 17.0);
}

TEST_CASE("trace validation rejects broken motion") {
    // discontinuity
    Trace jump{2, 1, {{1, 0, 0.0, 1.0}, {1, 0, 0.5, 0.0}}};
    CHECK_THROWS_AS(total_cost(jump), validation_error);

    // path change away from the origin
    Trace teleport{2, 1, {{1, 0, 0.0, 1.0}, {1, 1, 1.0, 2.0}}};
    CHECK_THROWS_AS(total_cost(teleport), validation_error);

    // robot out of range
    Trace ghost{2, 1, {{2, 0, 0.0, 1.0}}};
    CHECK_THROWS_AS(total_cost(ghost), validation_error);

    // same robot twice in one parallel group
    Trace doubled{2, 2, {{1, 0, 0.0, 1.0, 0}, {1, 0, 1.0, 2.0, 0}}};
    CHECK_THROWS_AS(total_cost(doubled), validation_error);

    // reused group tag after the run closed
    Trace reused{3, 2,
                 {{1, 0, 0.0, 1.0, 0}, {2, 1, 0.0, 1.0, 0}, {1, 0, 1.0, 2.0}, {2, 1, 1.0, 2.0, 0}}};
    CHECK_THROWS_AS(total_cost(reused), validation_error);

    // negative position
    Trace negative{2, 1, {{1, 0, 0.0, -1.0}}};
    CHECK_THROWS_AS(total_cost(negative), validation_error);

    // first segment must start at the origin
    Trace midair{2, 1, {{1, 0, 1.0, 2.0}}};
    CHECK_THROWS_AS(total_cost(midair), validation_error);
}

TEST_CASE("searched_extent") {
    CHECK(searched_extent(Trace{2, 1, {}}, 0) == 0.0);

    Trace t = doubling_trace(3);
    t.segments.push_back({1, 1, 0.0, 3.0});
    CHECK(searched_extent(t, 0) == 4.0); // max of 1, 4
    CHECK(searched_extent(t, 1) == 3.0); // max of 2, 3

    CHECK_THROWS_AS(searched_extent(t, 2), std::domain_error);
    CHECK_THROWS_AS(searched_extent(t, -1), std::domain_error);
}

TEST_CASE("truncate_at_goal single robot") {
    // One robot walking path 0 forever (approximated by a long leg).
    Trace walker{2, 1, {{1, 0, 0.0, 100.0}}};
    auto r = truncate_at_goal(walker, GoalPlacement{0, 5.0});
    CHECK(r.ledger.total == 5.0);
    CHECK(r.trace.segments.size() == 1);
    CHECK(r.trace.segments[0].to_pos == 5.0);
    REQUIRE(r.ledger.discovery.has_value());
    CHECK(r.ledger.discovery->segment_index == 0);
    CHECK(r.ledger.discovery->position == 5.0);

    // Doubling cycle, goal (1, 3): cost 17, found in stage 3.
    auto plan = doubling_trace(6);
    auto cut = truncate_at_goal(plan, GoalPlacement{1, 3.0});
    CHECK(cut.ledger.total == 17.0);
    CHECK(cut.trace.segments.size() == 7);
    CHECK(searched_extent(cut.trace, 1) == 3.0);

    CHECK_THROWS_AS(truncate_at_goal(plan, GoalPlacement{0, 1000.0}), horizon_error);
}

TEST_CASE("truncate_at_goal equal-speed parallel groups") {
    // Three robots advancing together; the middle one hits the goal first.
    Trace group{3, 3,
                {{1, 0, 0.0, 4.0, 7}, {2, 1, 0.0, 4.0, 7}, {3, 2, 0.0, 4.0, 7}}};
    auto r = truncate_at_goal(group, GoalPlacement{1, 2.5});
    CHECK(r.ledger.total == 7.5);
    CHECK(r.ledger.per_robot_distance == std::vector<double>{2.5, 2.5, 2.5});
    REQUIRE(r.ledger.discovery.has_value());
    CHECK(r.ledger.discovery->segment_index == 1);

    // Members shorter than the cutoff advance only their own length.
    Trace uneven{3, 2, {{1, 0, 0.0, 1.0, 3}, {2, 1, 0.0, 4.0, 3}}};
    auto u = truncate_at_goal(uneven, GoalPlacement{1, 3.0});
    CHECK(u.ledger.per_robot_distance == std::vector<double>{1.0, 3.0});
    CHECK(u.ledger.total == 4.0);
}

TEST_CASE("goal placement validation") {
    Trace t = doubling_trace(4);
    CHECK_THROWS_AS(truncate_at_goal(t, GoalPlacement{0, 0.5}), std::domain_error);
    CHECK_THROWS_AS(truncate_at_goal(t, GoalPlacement{5, 2.0}), std::domain_error);
    CHECK_THROWS_AS(truncate_at_goal(t, GoalPlacement{-1, 2.0}), std::domain_error);
}

TEST_CASE("cost additivity over concatenation") {
    RandomSource rng(20240811);
    for (int trial = 0; trial < 50; ++trial) {
        const int w = 2 + rng.uniform_int(3);
        const int horizon = 2 + rng.uniform_int(6);
        auto plan = det_single_plan(w, horizon);
        const auto& segs = plan.segments;

        // Split at a stage boundary so both halves are valid traces on
        // their own robot state... the second half starts at the origin.
        const std::size_t split = 2 * static_cast<std::size_t>(1 + rng.uniform_int(horizon - 1));
        Trace whole{w, 1, segs};
        Trace first{w, 1, {segs.begin(), segs.begin() + static_cast<std::ptrdiff_t>(split)}};
        Trace second{w, 1, {segs.begin() + static_cast<std::ptrdiff_t>(split), segs.end()}};
        CHECK(total_cost(whole) ==
              doctest::Approx(total_cost(first) + total_cost(second)).epsilon(1e-12));
    }
}

TEST_CASE("searched_extent monotone under extension") {
    for (int horizon = 1; horizon <= 12; ++horizon) {
        auto shorter = det_single_plan(3, horizon).as_trace();
        auto longer = det_single_plan(3, horizon + 1).as_trace();
        for (int p = 0; p < 3; ++p)
            CHECK(searched_extent(longer, p) >= searched_extent(shorter, p));
    }
}

TEST_CASE("truncation cost never exceeds the full plan cost") {
    RandomSource rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const int w = 2 + rng.uniform_int(3);
        auto plan = det_single_plan(w, 10);
        const double full = total_cost(plan.as_trace());
        const int path = rng.uniform_int(w);
        const double reach = searched_extent(plan.as_trace(), path);
        const double n = 1.0 + (reach - 1.0) * rng.uniform01();
        auto cut = truncate_at_goal(plan.as_trace(), GoalPlacement{path, n});
        CHECK(cut.ledger.total <= full);
        CHECK(searched_extent(cut.trace, path) == n);
    }
}
