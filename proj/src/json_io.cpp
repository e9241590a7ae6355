#include "raysearch/json_io.hpp"

namespace raysearch {

void to_json(json& j, const GoalPlacement& goal) {
    j = json{{"path", goal.path}, {"distance", goal.distance}};
}

void from_json(const json& j, GoalPlacement& goal) {
    j.at("path").get_to(goal.path);
    j.at("distance").get_to(goal.distance);
}

void to_json(json& j, const Segment& segment) {
    j = json{{"robot", segment.robot},
             {"path", segment.path},
             {"from_pos", segment.from_pos},
             {"to_pos", segment.to_pos}};
    if (segment.parallel_group) j["parallel_group"] = *segment.parallel_group;
}

void from_json(const json& j, Segment& segment) {
    j.at("robot").get_to(segment.robot);
    j.at("path").get_to(segment.path);
    j.at("from_pos").get_to(segment.from_pos);
    j.at("to_pos").get_to(segment.to_pos);
    segment.parallel_group.reset();
    if (j.contains("parallel_group") && !j.at("parallel_group").is_null())
        segment.parallel_group = j.at("parallel_group").get<int>();
}

void to_json(json& j, const Trace& trace) {
    j = json{{"w", trace.w}, {"lambda", trace.lambda}, {"segments", trace.segments}};
}

void from_json(const json& j, Trace& trace) {
    j.at("w").get_to(trace.w);
    j.at("lambda").get_to(trace.lambda);
    j.at("segments").get_to(trace.segments);
}

void to_json(json& j, const Discovery& discovery) {
    j = json{{"segment_index", discovery.segment_index}, {"position", discovery.position}};
}

void from_json(const json& j, Discovery& discovery) {
    j.at("segment_index").get_to(discovery.segment_index);
    j.at("position").get_to(discovery.position);
}

void to_json(json& j, const CostLedger& ledger) {
    j = json{{"per_robot_distance", ledger.per_robot_distance}, {"total", ledger.total}};
    if (ledger.discovery)
        j["discovery"] = *ledger.discovery;
    else
        j["discovery"] = nullptr;
}

void from_json(const json& j, CostLedger& ledger) {
    j.at("per_robot_distance").get_to(ledger.per_robot_distance);
    j.at("total").get_to(ledger.total);
    ledger.discovery.reset();
    if (j.contains("discovery") && !j.at("discovery").is_null())
        ledger.discovery = j.at("discovery").get<Discovery>();
}

void to_json(json& j, const PlanMeta& meta) {
    j = json{{"strategy", meta.strategy}};
    if (meta.sigma) j["sigma"] = *meta.sigma;
    if (meta.inner_sigma) j["inner_sigma"] = *meta.inner_sigma;
    if (meta.epsilon) j["epsilon"] = *meta.epsilon;
    if (meta.rate) j["rate"] = *meta.rate;
    if (meta.speed) j["speed"] = *meta.speed;
    if (meta.seed) j["seed"] = *meta.seed;
}

void from_json(const json& j, PlanMeta& meta) {
    meta = PlanMeta{};
    j.at("strategy").get_to(meta.strategy);
    if (j.contains("sigma")) meta.sigma = j.at("sigma").get<std::vector<int>>();
    if (j.contains("inner_sigma")) meta.inner_sigma = j.at("inner_sigma").get<std::vector<int>>();
    if (j.contains("epsilon")) meta.epsilon = j.at("epsilon").get<double>();
    if (j.contains("rate")) meta.rate = j.at("rate").get<double>();
    if (j.contains("speed")) meta.speed = j.at("speed").get<double>();
    if (j.contains("seed")) meta.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(json& j, const ExplorationPlan& plan) {
    j = json{{"w", plan.w},
             {"lambda", plan.lambda},
             {"horizon", plan.horizon},
             {"meta", plan.meta},
             {"segments", plan.segments}};
}

void from_json(const json& j, ExplorationPlan& plan) {
    j.at("w").get_to(plan.w);
    j.at("lambda").get_to(plan.lambda);
    j.at("horizon").get_to(plan.horizon);
    j.at("meta").get_to(plan.meta);
    j.at("segments").get_to(plan.segments);
}

void to_json(json& j, const SimResult& result) {
    j = json{{"goal", result.goal}, {"ledger", result.ledger}, {"ratio", result.ratio}};
}

void from_json(const json& j, SimResult& result) {
    j.at("goal").get_to(result.goal);
    j.at("ledger").get_to(result.ledger);
    j.at("ratio").get_to(result.ratio);
}

void to_json(json& j, const RatioEstimate& estimate) {
    j = json{{"point", estimate.point},
             {"ci_low", estimate.ci_low},
             {"ci_high", estimate.ci_high},
             {"trials", estimate.trials},
             {"seed", estimate.seed}};
}

void from_json(const json& j, RatioEstimate& estimate) {
    j.at("point").get_to(estimate.point);
    j.at("ci_low").get_to(estimate.ci_low);
    j.at("ci_high").get_to(estimate.ci_high);
    j.at("trials").get_to(estimate.trials);
    j.at("seed").get_to(estimate.seed);
}

void to_json(json& j, const AnalyticReport& report) {
    j = json{{"w", report.w}, {"lambda", report.lambda}, {"det_ratio", report.det_ratio}};
    if (report.r_w_prime)
        j["r_w_prime"] = *report.r_w_prime;
    else
        j["r_w_prime"] = nullptr;
    j["rand_single"] = report.rand_single;
    j["rand_multi_bound"] = report.rand_multi_bound;
    j["speed_v"] = report.speed_v;
    j["c_w"] = report.c_w;
}

void to_json(json& j, const ScheduleEvent& event) {
    j = json{{"slot", event.slot},
             {"basic_algorithm", event.basic_algorithm},
             {"run_amount", event.run_amount},
             {"mode", event.mode == RunMode::resume ? "resume" : "fresh-replay"}};
}

void to_json(json& j, const SwitchSchedule& schedule) {
    j = json{{"slots", schedule.slots},
             {"events", schedule.events},
             {"computation_total", schedule.computation_total},
             {"travel_total", schedule.travel_total}};
}

void to_json(json& j, const WitnessResult& witness) {
    j = json{{"j_star", witness.j_star}, {"s_j", witness.s_j}, {"h_j_star", witness.h_j_star}};
}

} // namespace raysearch
