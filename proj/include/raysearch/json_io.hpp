#pragma once

#include <json.hpp>

#include "raysearch/analytic.hpp"
#include "raysearch/core.hpp"
#include "raysearch/schedule.hpp"
#include "raysearch/sequences.hpp"
#include "raysearch/simulator.hpp"
#include "raysearch/strategies.hpp"

// JSON shapes for CLI output and round-tripping. Field names match the
// struct members; optional members are omitted when absent. ordered_json
// keeps emission order fixed so identical inputs produce identical bytes.

namespace raysearch {

using json = nlohmann::ordered_json;

void to_json(json& j, const GoalPlacement& goal);
void from_json(const json& j, GoalPlacement& goal);

void to_json(json& j, const Segment& segment);
void from_json(const json& j, Segment& segment);

void to_json(json& j, const Trace& trace);
void from_json(const json& j, Trace& trace);

void to_json(json& j, const Discovery& discovery);
void from_json(const json& j, Discovery& discovery);

void to_json(json& j, const CostLedger& ledger);
void from_json(const json& j, CostLedger& ledger);

void to_json(json& j, const PlanMeta& meta);
void from_json(const json& j, PlanMeta& meta);

void to_json(json& j, const ExplorationPlan& plan);
void from_json(const json& j, ExplorationPlan& plan);

void to_json(json& j, const SimResult& result);
void from_json(const json& j, SimResult& result);

void to_json(json& j, const RatioEstimate& estimate);
void from_json(const json& j, RatioEstimate& estimate);

void to_json(json& j, const AnalyticReport& report);

void to_json(json& j, const ScheduleEvent& event);
void to_json(json& j, const SwitchSchedule& schedule);

void to_json(json& j, const WitnessResult& witness);

} // namespace raysearch
