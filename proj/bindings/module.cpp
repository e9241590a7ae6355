#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "raysearch/analytic.hpp"
#include "raysearch/cli.hpp"
#include "raysearch/core.hpp"
#include "raysearch/json_io.hpp"
#include "raysearch/schedule.hpp"
#include "raysearch/sequences.hpp"
#include "raysearch/simulator.hpp"
#include "raysearch/strategies.hpp"

namespace py = pybind11;
using namespace raysearch;

namespace {

template <typename T> std::string json_repr(const T& value) {
    json j = value;
    return j.dump();
}

} // namespace

PYBIND11_MODULE(_raysearch, m) {
    m.doc() = "Multi-robot ray search: strategies, simulation, and bounds";

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<horizon_error>(m, "HorizonError", PyExc_RuntimeError);
    py::register_exception<insufficient_horizon_error>(m, "InsufficientHorizonError",
                                                       PyExc_RuntimeError);

    // ---- core ------------------------------------------------------------
    py::class_<GoalPlacement>(m, "GoalPlacement")
        .def(py::init<int, double>(), py::arg("path"), py::arg("distance"))
        .def_readwrite("path", &GoalPlacement::path)
        .def_readwrite("distance", &GoalPlacement::distance)
        .def("__repr__", &json_repr<GoalPlacement>);

    py::class_<Segment>(m, "Segment")
        .def(py::init([](int robot, int path, double from_pos, double to_pos,
                         std::optional<int> group) {
                 return Segment{robot, path, from_pos, to_pos, group};
             }),
             py::arg("robot"), py::arg("path"), py::arg("from_pos"), py::arg("to_pos"),
             py::arg("parallel_group") = std::nullopt)
        .def_readwrite("robot", &Segment::robot)
        .def_readwrite("path", &Segment::path)
        .def_readwrite("from_pos", &Segment::from_pos)
        .def_readwrite("to_pos", &Segment::to_pos)
        .def_readwrite("parallel_group", &Segment::parallel_group)
        .def("length", &Segment::length)
        .def("__repr__", &json_repr<Segment>);

    py::class_<Trace>(m, "Trace")
        .def(py::init<int, int, std::vector<Segment>>(), py::arg("w"), py::arg("lambda_"),
             py::arg("segments"))
        .def_readwrite("w", &Trace::w)
        .def_readwrite("lambda_", &Trace::lambda)
        .def_readwrite("segments", &Trace::segments)
        .def("__repr__", &json_repr<Trace>);

    py::class_<Discovery>(m, "Discovery")
        .def_readonly("segment_index", &Discovery::segment_index)
        .def_readonly("position", &Discovery::position)
        .def("__repr__", &json_repr<Discovery>);

    py::class_<CostLedger>(m, "CostLedger")
        .def_readonly("per_robot_distance", &CostLedger::per_robot_distance)
        .def_readonly("total", &CostLedger::total)
        .def_readonly("discovery", &CostLedger::discovery)
        .def("__repr__", &json_repr<CostLedger>);

    py::class_<TruncationResult>(m, "TruncationResult")
        .def_readonly("trace", &TruncationResult::trace)
        .def_readonly("ledger", &TruncationResult::ledger);

    m.def("total_cost", &total_cost, py::arg("trace"));
    m.def("searched_extent", &searched_extent, py::arg("trace"), py::arg("path"));
    m.def("truncate_at_goal", &truncate_at_goal, py::arg("plan"), py::arg("goal"));

    // ---- analytic ----------------------------------------------------------
    m.def("radius_f", &radius_f, py::arg("w"), py::arg("i"));
    m.def("det_ratio", &det_ratio, py::arg("w"), py::arg("lambda_"));
    m.def("rate_objective", &rate_objective, py::arg("w"), py::arg("r"));
    m.def("solve_rw", &solve_rw, py::arg("w"), py::arg("tol") = kOptimizerTol);
    m.def("c_w", &c_w, py::arg("w"), py::arg("tol") = kOptimizerTol);
    m.def("rand_single_bound", &rand_single_bound, py::arg("w"), py::arg("tol") = kOptimizerTol);
    m.def("rand_multi_bound", &rand_multi_bound, py::arg("w"), py::arg("lambda_"),
          py::arg("tol") = kOptimizerTol);
    m.def("speed_v", &speed_v, py::arg("w"), py::arg("lambda_"), py::arg("tol") = kOptimizerTol);

    py::class_<AnalyticReport>(m, "AnalyticReport")
        .def_readonly("w", &AnalyticReport::w)
        .def_readonly("lambda_", &AnalyticReport::lambda)
        .def_readonly("det_ratio", &AnalyticReport::det_ratio)
        .def_readonly("r_w_prime", &AnalyticReport::r_w_prime)
        .def_readonly("rand_single", &AnalyticReport::rand_single)
        .def_readonly("rand_multi_bound", &AnalyticReport::rand_multi_bound)
        .def_readonly("speed_v", &AnalyticReport::speed_v)
        .def_readonly("c_w", &AnalyticReport::c_w)
        .def("__repr__", &json_repr<AnalyticReport>);
    m.def("analyze", &analyze, py::arg("w"), py::arg("lambda_"), py::arg("tol") = kOptimizerTol);

    py::class_<GeometricTailSequence>(m, "GeometricTailSequence")
        .def(py::init([](std::vector<double> prefix, double rate) {
                 return GeometricTailSequence{std::move(prefix), rate};
             }),
             py::arg("prefix") = std::vector<double>{1.0}, py::arg("rate") = 2.0)
        .def_readwrite("prefix", &GeometricTailSequence::prefix)
        .def_readwrite("rate", &GeometricTailSequence::rate)
        .def("value", &GeometricTailSequence::value, py::arg("i"));
    m.def("g_functional", &g_functional, py::arg("w"), py::arg("epsilon"), py::arg("seq"),
          py::arg("trunc_tol") = kFormulaTol);

    py::class_<AmGmBound>(m, "AmGmBound")
        .def_readonly("lhs", &AmGmBound::lhs)
        .def_readonly("rhs", &AmGmBound::rhs);
    m.def(
        "amgm_chain",
        [](double epsilon, const std::vector<double>& xs) { return amgm_chain(epsilon, xs); },
        py::arg("epsilon"), py::arg("xs"));

    // ---- strategies ---------------------------------------------------------
    py::class_<RandomSource>(m, "RandomSource")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("seed", &RandomSource::seed)
        .def("uniform01", &RandomSource::uniform01)
        .def("uniform_int", &RandomSource::uniform_int, py::arg("bound"))
        .def("permutation", &RandomSource::permutation, py::arg("n"))
        .def_static("derive_seed", &RandomSource::derive_seed, py::arg("seed"), py::arg("index"));

    py::class_<PlanMeta>(m, "PlanMeta")
        .def_readonly("strategy", &PlanMeta::strategy)
        .def_readonly("sigma", &PlanMeta::sigma)
        .def_readonly("inner_sigma", &PlanMeta::inner_sigma)
        .def_readonly("epsilon", &PlanMeta::epsilon)
        .def_readonly("rate", &PlanMeta::rate)
        .def_readonly("speed", &PlanMeta::speed)
        .def_readonly("seed", &PlanMeta::seed)
        .def("__repr__", &json_repr<PlanMeta>);

    py::class_<ExplorationPlan>(m, "ExplorationPlan")
        .def_readonly("w", &ExplorationPlan::w)
        .def_readonly("lambda_", &ExplorationPlan::lambda)
        .def_readonly("horizon", &ExplorationPlan::horizon)
        .def_readonly("segments", &ExplorationPlan::segments)
        .def_readonly("meta", &ExplorationPlan::meta)
        .def("as_trace", &ExplorationPlan::as_trace)
        .def("__repr__", [](const ExplorationPlan& p) {
            return "<ExplorationPlan " + p.meta.strategy + " w=" + std::to_string(p.w) +
                   " lambda=" + std::to_string(p.lambda) + " segments=" +
                   std::to_string(p.segments.size()) + ">";
        });

    m.def("det_single_plan", &det_single_plan, py::arg("w"), py::arg("horizon"));
    m.def("det_multi_plan", &det_multi_plan, py::arg("w"), py::arg("lambda_"), py::arg("horizon"));
    m.def(
        "rand_single_plan",
        [](int w, std::uint64_t seed, int horizon) {
            return rand_single_plan(w, RandomSource(seed), horizon);
        },
        py::arg("w"), py::arg("seed"), py::arg("horizon"));
    m.def(
        "rand_multi_plan",
        [](int w, int lambda, std::uint64_t seed, int horizon, double group_fraction) {
            return rand_multi_plan(w, lambda, RandomSource(seed), horizon, group_fraction);
        },
        py::arg("w"), py::arg("lambda_"), py::arg("seed"), py::arg("horizon"),
        py::arg("group_fraction") = kDefaultGroupFraction);
    m.def("rand_single_plan_params", &rand_single_plan_params, py::arg("w"), py::arg("sigma"),
          py::arg("epsilon"), py::arg("horizon"), py::arg("seed") = std::nullopt);
    m.def("rand_multi_plan_params", &rand_multi_plan_params, py::arg("w"), py::arg("lambda_"),
          py::arg("sigma"), py::arg("inner_sigma"), py::arg("epsilon"), py::arg("horizon"),
          py::arg("group_fraction") = kDefaultGroupFraction, py::arg("seed") = std::nullopt);

    // ---- simulator -----------------------------------------------------------
    py::class_<SimResult>(m, "SimResult")
        .def_readonly("goal", &SimResult::goal)
        .def_readonly("ledger", &SimResult::ledger)
        .def_readonly("ratio", &SimResult::ratio)
        .def("__repr__", &json_repr<SimResult>);

    py::class_<WorstCaseResult>(m, "WorstCaseResult")
        .def_readonly("sup_ratio", &WorstCaseResult::sup_ratio)
        .def_readonly("argmax", &WorstCaseResult::argmax)
        .def_readonly("evaluated", &WorstCaseResult::evaluated);

    py::class_<RatioEstimate>(m, "RatioEstimate")
        .def_readonly("point", &RatioEstimate::point)
        .def_readonly("ci_low", &RatioEstimate::ci_low)
        .def_readonly("ci_high", &RatioEstimate::ci_high)
        .def_readonly("trials", &RatioEstimate::trials)
        .def_readonly("seed", &RatioEstimate::seed)
        .def("__repr__", &json_repr<RatioEstimate>);

    m.def(
        "run",
        [](const ExplorationPlan& plan, const GoalPlacement& goal) { return run(plan, goal); },
        py::arg("plan"), py::arg("goal"));
    m.def(
        "run_strategy",
        [](const std::string& strategy, int w, int lambda, const GoalPlacement& goal,
           std::uint64_t seed, double group_fraction) {
            StrategySpec spec{strategy_from_string(strategy), w, lambda, seed, group_fraction};
            return run(spec, goal);
        },
        py::arg("strategy"), py::arg("w"), py::arg("lambda_"), py::arg("goal"),
        py::arg("seed") = 0, py::arg("group_fraction") = kDefaultGroupFraction);
    m.def("worst_case_ratio_det", &worst_case_ratio_det, py::arg("w"), py::arg("lambda_"),
          py::arg("n_max"), py::arg("offset") = 1.0,
          py::call_guard<py::gil_scoped_release>());
    m.def("expected_ratio_mc", &expected_ratio_mc, py::arg("w"), py::arg("lambda_"),
          py::arg("goal"), py::arg("trials"), py::arg("seed"),
          py::arg("group_fraction") = kDefaultGroupFraction,
          py::call_guard<py::gil_scoped_release>());

    // ---- sequences -----------------------------------------------------------
    py::class_<WSequence>(m, "WSequence")
        .def(py::init([](std::vector<double> h, std::vector<int> a, int w) {
                 return WSequence{std::move(h), std::move(a), w};
             }),
             py::arg("h"), py::arg("a"), py::arg("w"))
        .def_readwrite("h", &WSequence::h)
        .def_readwrite("a", &WSequence::a)
        .def_readwrite("w", &WSequence::w);

    py::class_<CyclicSequence>(m, "CyclicSequence")
        .def(py::init([](std::vector<double> s, int w) {
                 return CyclicSequence{std::move(s), w};
             }),
             py::arg("s"), py::arg("w"))
        .def_readwrite("s", &CyclicSequence::s)
        .def_readwrite("w", &CyclicSequence::w);

    py::class_<RatioTable>(m, "RatioTable")
        .def_readonly("values", &RatioTable::values)
        .def_readonly("unresolved", &RatioTable::unresolved);

    py::class_<WitnessResult>(m, "WitnessResult")
        .def_readonly("j_star", &WitnessResult::j_star)
        .def_readonly("s_j", &WitnessResult::s_j)
        .def_readonly("h_j_star", &WitnessResult::h_j_star)
        .def("__repr__", &json_repr<WitnessResult>);

    m.def("qualifies_as_prefix", &qualifies_as_prefix, py::arg("seq"));
    m.def("ratio_H", &ratio_H, py::arg("seq"));
    m.def("ratio_S", &ratio_S, py::arg("seq"));
    m.def("cyclic_convert", &cyclic_convert, py::arg("seq"));
    m.def("witness_check", &witness_check, py::arg("seq"), py::arg("j"));
    m.def("cyclic_ratio_target", &cyclic_ratio_target, py::arg("w"));
    m.def("limsup_gap", &limsup_gap, py::arg("seq"), py::arg("window"));
    m.def("geometric_s_limit", &geometric_s_limit, py::arg("w"), py::arg("rate"),
          py::arg("tol") = 1e-7);

    // ---- schedule ------------------------------------------------------------
    py::enum_<RunMode>(m, "RunMode")
        .value("fresh_replay", RunMode::fresh_replay)
        .value("resume", RunMode::resume);

    py::class_<ScheduleEvent>(m, "ScheduleEvent")
        .def_readonly("slot", &ScheduleEvent::slot)
        .def_readonly("basic_algorithm", &ScheduleEvent::basic_algorithm)
        .def_readonly("run_amount", &ScheduleEvent::run_amount)
        .def_readonly("mode", &ScheduleEvent::mode)
        .def("__repr__", &json_repr<ScheduleEvent>);

    py::class_<SwitchSchedule>(m, "SwitchSchedule")
        .def_readonly("slots", &SwitchSchedule::slots)
        .def_readonly("events", &SwitchSchedule::events)
        .def_readonly("computation_total", &SwitchSchedule::computation_total)
        .def_readonly("travel_total", &SwitchSchedule::travel_total);

    m.def("export_schedule", &export_schedule, py::arg("plan"));

    // ---- cli -------------------------------------------------------------------
    m.def(
        "cli_run",
        [](const std::vector<std::string>& args) {
            const auto result = cli::run(args);
            return py::make_tuple(result.exit_code, result.out, result.err);
        },
        py::arg("args"), "Run a CLI invocation in-process; returns (exit_code, stdout, stderr)");

#ifdef RAYSEARCH_VERSION
    m.attr("__version__") = RAYSEARCH_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
