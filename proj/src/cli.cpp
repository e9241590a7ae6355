#include "raysearch/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "raysearch/json_io.hpp"

namespace raysearch::cli {

namespace {

constexpr int kSchemaVersion = 1;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json error_body(const std::string& type, const std::string& message) {
    return json{{"schema", kSchemaVersion}, {"error", {{"type", type}, {"message", message}}}};
}

// CSV cells use the JSON shortest round-trip representation of doubles so
// reruns are byte-identical.
std::string csv_number(double v) { return json(v).dump(); }

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, sep)) out.push_back(item);
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& tok : split(text, ',')) out.push_back(std::stoi(tok));
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& tok : split(text, ',')) out.push_back(std::stod(tok));
    return out;
}

StrategySpec build_spec(const std::string& strategy, int w, int lambda, std::uint64_t seed,
                        double group_fraction, bool seed_given) {
    StrategySpec spec;
    spec.kind = strategy_from_string(strategy);
    spec.w = w;
    spec.lambda = lambda;
    spec.seed = seed;
    spec.group_fraction = group_fraction;
    if (is_randomized(spec.kind) && !seed_given)
        throw std::domain_error("--seed is required for randomized strategies");
    return spec;
}

json report_payload(const AnalyticReport& report) {
    json payload{{"schema", kSchemaVersion}};
    const json body = report;
    for (const auto& [key, value] : body.items()) payload[key] = value;
    return payload;
}

// ---------------------------------------------------------------- seq input

struct SeqInput {
    bool cyclic = false;
    WSequence wseq;
    CyclicSequence cseq;
};

SeqInput parse_seq_json(const json& j, int w_flag) {
    SeqInput input;
    const int w = j.contains("w") ? j.at("w").get<int>() : w_flag;
    if (w < 2) throw std::domain_error("seq: provide --w >= 2 or a \"w\" field in the file");
    if (j.contains("s")) {
        input.cyclic = true;
        input.cseq = CyclicSequence{j.at("s").get<std::vector<double>>(), w};
        return input;
    }
    if (j.contains("h") && j.contains("a")) {
        input.wseq = WSequence{j.at("h").get<std::vector<double>>(),
                               j.at("a").get<std::vector<int>>(), w};
        return input;
    }
    throw std::domain_error("seq: JSON input needs either \"s\" or both \"h\" and \"a\"");
}

SeqInput parse_seq_csv(std::istream& in, int w_flag) {
    if (w_flag < 2) throw std::domain_error("seq: --w is required for CSV input");
    std::string line;
    if (!std::getline(in, line)) throw std::domain_error("seq: empty CSV input");
    auto header = split(line, ',');
    for (auto& cell : header) {
        cell.erase(std::remove_if(cell.begin(), cell.end(), ::isspace), cell.end());
    }

    int col_h = -1, col_a = -1, col_s = -1;
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "h") col_h = static_cast<int>(c);
        if (header[c] == "a") col_a = static_cast<int>(c);
        if (header[c] == "s") col_s = static_cast<int>(c);
    }

    SeqInput input;
    if (col_s >= 0) {
        input.cyclic = true;
        input.cseq.w = w_flag;
    } else if (col_h >= 0 && col_a >= 0) {
        input.wseq.w = w_flag;
    } else {
        throw std::domain_error("seq: CSV header must contain columns (h, a) or s");
    }

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (input.cyclic) {
            input.cseq.s.push_back(std::stod(cells.at(static_cast<std::size_t>(col_s))));
        } else {
            input.wseq.h.push_back(std::stod(cells.at(static_cast<std::size_t>(col_h))));
            input.wseq.a.push_back(std::stoi(cells.at(static_cast<std::size_t>(col_a))));
        }
    }
    return input;
}

// ------------------------------------------------------------- subcommands

struct SweepRow {
    int w = 0;
    int lambda = 0;
    double n = 0.0;
    double ratio = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::optional<std::uint64_t> seed{};
};

std::string emit_sweep(const std::vector<SweepRow>& rows, const std::string& format) {
    std::string out;
    if (format == "csv") {
        out += "w,lambda,n,ratio,ci_low,ci_high,seed\n";
        for (const auto& row : rows) {
            out += std::to_string(row.w) + "," + std::to_string(row.lambda) + "," +
                   csv_number(row.n) + "," + csv_number(row.ratio) + "," +
                   csv_number(row.ci_low) + "," + csv_number(row.ci_high) + ",";
            if (row.seed) out += std::to_string(*row.seed);
            out += "\n";
        }
        return out;
    }
    for (const auto& row : rows) { // JSON Lines
        json j{{"w", row.w},           {"lambda", row.lambda},   {"n", row.n},
               {"ratio", row.ratio},   {"ci_low", row.ci_low},   {"ci_high", row.ci_high}};
        if (row.seed)
            j["seed"] = *row.seed;
        else
            j["seed"] = nullptr;
        out += j.dump() + "\n";
    }
    return out;
}

} // namespace

RunResult run(const std::vector<std::string>& args) {
    RunResult result;

    CLI::App app{"Multi-robot ray search: strategies, simulation, and bounds"};
    app.require_subcommand(1);

    // --- ratio ------------------------------------------------------------
    auto* ratio_cmd = app.add_subcommand("ratio", "Closed-form ratios and bounds for (w, lambda)");
    int ratio_w = 2, ratio_lambda = 1;
    double ratio_tol = kOptimizerTol;
    ratio_cmd->add_option("--w", ratio_w, "Number of paths")->required();
    ratio_cmd->add_option("--lambda", ratio_lambda, "Number of robots")->required();
    ratio_cmd->add_option("--tol", ratio_tol, "Optimizer tolerance");
    ratio_cmd->callback([&] {
        result.out = dump(report_payload(analyze(ratio_w, ratio_lambda, ratio_tol)));
    });

    // --- plan ---------------------------------------------------------------
    auto* plan_cmd = app.add_subcommand("plan", "Generate an exploration plan");
    std::string plan_strategy = "det-single";
    int plan_w = 2, plan_lambda = 1, plan_horizon = 1;
    std::uint64_t plan_seed = 0;
    double plan_gf = kDefaultGroupFraction;
    plan_cmd->add_option("--strategy", plan_strategy,
                         "det-single|det-multi|rand-single|rand-multi")->required();
    plan_cmd->add_option("--w", plan_w, "Number of paths")->required();
    plan_cmd->add_option("--lambda", plan_lambda, "Number of robots");
    plan_cmd->add_option("--horizon", plan_horizon, "Stages/rounds to generate")->required();
    auto* plan_seed_opt = plan_cmd->add_option("--seed", plan_seed, "Random seed");
    plan_cmd->add_option("--group-fraction", plan_gf, "Max parallel-group length fraction");
    plan_cmd->callback([&] {
        const auto spec = build_spec(plan_strategy, plan_w, plan_lambda, plan_seed, plan_gf,
                                     plan_seed_opt->count() > 0);
        json payload{{"schema", kSchemaVersion}, {"plan", make_plan(spec, plan_horizon)}};
        result.out = dump(payload);
    });

    // --- simulate -----------------------------------------------------------
    auto* sim_cmd = app.add_subcommand("simulate", "Run a strategy against one goal");
    std::string sim_strategy = "det-single";
    int sim_w = 2, sim_lambda = 1, sim_path = 0, sim_horizon = 0;
    double sim_n = 1.0, sim_gf = kDefaultGroupFraction;
    std::uint64_t sim_seed = 0;
    bool sim_emit_trace = false;
    sim_cmd->add_option("--strategy", sim_strategy,
                        "det-single|det-multi|rand-single|rand-multi")->required();
    sim_cmd->add_option("--w", sim_w, "Number of paths")->required();
    sim_cmd->add_option("--lambda", sim_lambda, "Number of robots");
    sim_cmd->add_option("--path", sim_path, "Goal path")->required();
    sim_cmd->add_option("--n", sim_n, "Goal distance")->required();
    auto* sim_seed_opt = sim_cmd->add_option("--seed", sim_seed, "Random seed");
    sim_cmd->add_option("--horizon", sim_horizon, "Fixed horizon (default: auto-extend)");
    sim_cmd->add_option("--group-fraction", sim_gf, "Max parallel-group length fraction");
    sim_cmd->add_flag("--emit-trace", sim_emit_trace, "Include the truncated trace");
    sim_cmd->callback([&] {
        const auto spec = build_spec(sim_strategy, sim_w, sim_lambda, sim_seed, sim_gf,
                                     sim_seed_opt->count() > 0);
        const GoalPlacement goal{sim_path, sim_n};
        TruncationResult truncated;
        if (sim_horizon > 0) {
            const auto plan = make_plan(spec, sim_horizon);
            truncated = truncate_at_goal(plan.as_trace(), goal);
        } else {
            truncated = run_truncation(spec, goal);
        }
        json payload{{"schema", kSchemaVersion},
                     {"strategy", to_string(spec.kind)},
                     {"w", sim_w},
                     {"lambda", sim_lambda},
                     {"result",
                      SimResult{goal, truncated.ledger, truncated.ledger.total / goal.distance}}};
        if (sim_emit_trace) payload["trace"] = truncated.trace;
        result.out = dump(payload);
    });

    // --- adversary ------------------------------------------------------------
    auto* adv_cmd = app.add_subcommand("adversary", "Worst-case goal sweep (deterministic)");
    int adv_w = 2, adv_lambda = 1;
    double adv_nmax = 2.0, adv_offset = 1.0;
    bool adv_list = false;
    adv_cmd->add_option("--w", adv_w, "Number of paths")->required();
    adv_cmd->add_option("--lambda", adv_lambda, "Number of robots")->required();
    adv_cmd->add_option("--n-max", adv_nmax, "Largest candidate goal distance")->required();
    adv_cmd->add_option("--offset", adv_offset, "Offset past each frontier (default 1)");
    adv_cmd->add_flag("--list-candidates", adv_list, "Include every evaluated candidate");
    adv_cmd->callback([&] {
        const auto worst = worst_case_ratio_det(adv_w, adv_lambda, adv_nmax, adv_offset);
        json payload{{"schema", kSchemaVersion},
                     {"w", adv_w},
                     {"lambda", adv_lambda},
                     {"n_max", adv_nmax},
                     {"offset", adv_offset},
                     {"sup_ratio", worst.sup_ratio},
                     {"argmax_goal", worst.argmax},
                     {"det_ratio", det_ratio(adv_w, adv_lambda)},
                     {"candidates", worst.evaluated.size()}};
        if (adv_list) {
            json rows = json::array();
            for (const auto& [goal, ratio] : worst.evaluated)
                rows.push_back(json{{"goal", goal}, {"ratio", ratio}});
            payload["evaluated"] = rows;
        }
        result.out = dump(payload);
    });

    // --- mc ---------------------------------------------------------------
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo expected ratio (randomized)");
    int mc_w = 2, mc_lambda = 1, mc_path = 0, mc_trials = 1;
    double mc_n = 1.0, mc_gf = kDefaultGroupFraction;
    std::uint64_t mc_seed = 0;
    mc_cmd->add_option("--w", mc_w, "Number of paths")->required();
    mc_cmd->add_option("--lambda", mc_lambda, "Number of robots")->required();
    mc_cmd->add_option("--path", mc_path, "Goal path");
    mc_cmd->add_option("--n", mc_n, "Goal distance")->required();
    mc_cmd->add_option("--trials", mc_trials, "Number of trials")->required();
    mc_cmd->add_option("--seed", mc_seed, "Master seed")->required();
    mc_cmd->add_option("--group-fraction", mc_gf, "Max parallel-group length fraction");
    mc_cmd->callback([&] {
        const auto estimate =
            expected_ratio_mc(mc_w, mc_lambda, GoalPlacement{mc_path, mc_n}, mc_trials, mc_seed, mc_gf);
        json payload{{"schema", kSchemaVersion},
                     {"w", mc_w},
                     {"lambda", mc_lambda},
                     {"goal", GoalPlacement{mc_path, mc_n}},
                     {"estimate", estimate},
                     {"rand_multi_bound", rand_multi_bound(mc_w, mc_lambda)}};
        result.out = dump(payload);
    });

    // --- seq ---------------------------------------------------------------
    auto* seq_cmd = app.add_subcommand("seq", "Ratio tables and gap reports for sequences");
    std::string seq_input, seq_format = "json";
    int seq_w = 0, seq_window = 50, seq_witness = 0;
    seq_cmd->add_option("--input", seq_input, "CSV or JSON file (columns i,h,a or i,s)")
        ->required();
    seq_cmd->add_option("--w", seq_w, "Window w (required for CSV input)");
    seq_cmd->add_option("--window", seq_window, "Trailing window for the limsup proxy");
    seq_cmd->add_option("--witness", seq_witness, "Run the witness construction at index j");
    seq_cmd->add_option("--format", seq_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    seq_cmd->callback([&] {
        std::ifstream file(seq_input);
        if (!file) throw std::domain_error("seq: cannot open " + seq_input);
        SeqInput input;
        if (seq_input.size() >= 5 && seq_input.substr(seq_input.size() - 5) == ".json") {
            json j;
            file >> j;
            input = parse_seq_json(j, seq_w);
        } else {
            input = parse_seq_csv(file, seq_w);
        }

        const CyclicSequence cyclic = input.cyclic ? input.cseq : cyclic_convert(input.wseq);
        const auto ratios = ratio_S(cyclic);
        const int window = std::min<int>(seq_window, static_cast<int>(ratios.size()));

        if (seq_format == "csv") {
            std::string out;
            if (input.cyclic) {
                out += "i,S\n";
                for (std::size_t i = 0; i < ratios.size(); ++i)
                    out += std::to_string(i + 1) + "," + csv_number(ratios[i]) + "\n";
            } else {
                out += "i,H\n";
                for (const auto& [i, value] : ratio_H(input.wseq).values)
                    out += std::to_string(i) + "," + csv_number(value) + "\n";
            }
            result.out = out;
            return;
        }

        json payload{{"schema", kSchemaVersion},
                     {"input", input.cyclic ? "cyclic" : "w-sequence"},
                     {"w", cyclic.w},
                     {"length", input.cyclic ? input.cseq.s.size() : input.wseq.h.size()}};
        if (!input.cyclic) {
            const auto table = ratio_H(input.wseq);
            json h_rows = json::array();
            for (const auto& [i, value] : table.values)
                h_rows.push_back(json{{"i", i}, {"value", value}});
            payload["H"] = h_rows;
            payload["unresolved"] = table.unresolved;
            payload["S_sorted"] = ratios;
            if (seq_witness > 0) payload["witness"] = witness_check(input.wseq, seq_witness);
        } else {
            payload["S"] = ratios;
        }
        payload["window"] = window;
        payload["target"] = cyclic_ratio_target(cyclic.w);
        payload["limsup_gap"] = limsup_gap(cyclic, window);
        result.out = dump(payload);
    });

    // --- gfun ---------------------------------------------------------------
    auto* gfun_cmd = app.add_subcommand("gfun", "Discounted-sum functional on a geometric spec");
    int gfun_w = 2;
    double gfun_eps = 1e-6, gfun_rate = 2.0, gfun_tol = kFormulaTol;
    std::string gfun_prefix;
    gfun_cmd->add_option("--w", gfun_w, "Window w")->required();
    gfun_cmd->add_option("--epsilon", gfun_eps, "Discount epsilon > 0")->required();
    gfun_cmd->add_option("--rate", gfun_rate, "Geometric tail rate > 1")->required();
    gfun_cmd->add_option("--prefix", gfun_prefix, "Explicit prefix values, e.g. 1,2,4");
    gfun_cmd->add_option("--trunc-tol", gfun_tol, "Truncation error bound");
    gfun_cmd->callback([&] {
        GeometricTailSequence seq;
        seq.rate = gfun_rate;
        if (!gfun_prefix.empty()) seq.prefix = parse_double_list(gfun_prefix);
        const double value = g_functional(gfun_w, gfun_eps, seq, gfun_tol);
        json payload{{"schema", kSchemaVersion},
                     {"w", gfun_w},
                     {"epsilon", gfun_eps},
                     {"rate", gfun_rate},
                     {"prefix_length", seq.prefix.size()},
                     {"value", value},
                     {"r_w", solve_rw(gfun_w)},
                     {"c_w", c_w(gfun_w)}};
        result.out = dump(payload);
    });

    // --- schedule ---------------------------------------------------------
    auto* sched_cmd = app.add_subcommand("schedule", "Export a plan as a memory-slot schedule");
    std::string sched_strategy = "det-single";
    int sched_w = 2, sched_lambda = 1, sched_horizon = 1;
    std::uint64_t sched_seed = 0;
    double sched_gf = kDefaultGroupFraction;
    sched_cmd->add_option("--strategy", sched_strategy,
                          "det-single|det-multi|rand-single|rand-multi")->required();
    sched_cmd->add_option("--w", sched_w, "Number of basic algorithms")->required();
    sched_cmd->add_option("--lambda", sched_lambda, "Number of memory slots");
    sched_cmd->add_option("--horizon", sched_horizon, "Stages/rounds to generate")->required();
    auto* sched_seed_opt = sched_cmd->add_option("--seed", sched_seed, "Random seed");
    sched_cmd->add_option("--group-fraction", sched_gf, "Max parallel-group length fraction");
    sched_cmd->callback([&] {
        const auto spec = build_spec(sched_strategy, sched_w, sched_lambda, sched_seed, sched_gf,
                                     sched_seed_opt->count() > 0);
        const auto plan = make_plan(spec, sched_horizon);
        json payload{{"schema", kSchemaVersion},
                     {"strategy", to_string(spec.kind)},
                     {"meta", plan.meta},
                     {"schedule", export_schedule(plan)}};
        result.out = dump(payload);
    });

    // --- sweep ---------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "Ratio grids over w, lambda, n");
    std::string sweep_strategy = "det", sweep_w_list = "2", sweep_lambda_list = "1",
                sweep_format = "csv";
    double sweep_n_first = 2.0, sweep_n_factor = 2.0, sweep_n_max = 2.0;
    int sweep_trials = 10000, sweep_path = 0;
    std::uint64_t sweep_seed = 0;
    sweep_cmd->add_option("--strategy", sweep_strategy, "det|rand")
        ->check(CLI::IsMember({"det", "rand"}));
    sweep_cmd->add_option("--w-list", sweep_w_list, "Comma-separated w values")->required();
    sweep_cmd->add_option("--lambda-list", sweep_lambda_list, "Comma-separated lambda values")
        ->required();
    sweep_cmd->add_option("--n-first", sweep_n_first, "First goal distance (>= 2)");
    sweep_cmd->add_option("--n-factor", sweep_n_factor, "Geometric grid factor");
    sweep_cmd->add_option("--n-max", sweep_n_max, "Largest goal distance")->required();
    sweep_cmd->add_option("--trials", sweep_trials, "Trials per randomized grid point");
    sweep_cmd->add_option("--path", sweep_path, "Goal path for randomized rows");
    auto* sweep_seed_opt = sweep_cmd->add_option("--seed", sweep_seed, "Master seed (rand)");
    sweep_cmd->add_option("--format", sweep_format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->callback([&] {
        const bool randomized = sweep_strategy == "rand";
        if (randomized && sweep_seed_opt->count() == 0)
            throw std::domain_error("--seed is required for randomized sweeps");
        const auto family = GoalFamily::geometric(sweep_n_first, sweep_n_factor, sweep_n_max);

        std::vector<SweepRow> rows;
        for (int w : parse_int_list(sweep_w_list)) {
            for (int lambda : parse_int_list(sweep_lambda_list)) {
                if (lambda < 1 || lambda > w) continue;
                for (double n : family.distances)
                    rows.push_back(SweepRow{w, lambda, n});
            }
        }
        if (rows.empty()) throw std::domain_error("sweep: empty grid");

        // Rows are independent; fan out, then emit in grid order.
        std::atomic<std::size_t> cursor{0};
        auto work = [&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= rows.size()) return;
                SweepRow& row = rows[i];
                if (randomized) {
                    const auto seed = RandomSource::derive_seed(sweep_seed, i);
                    const auto est = expected_ratio_mc(row.w, row.lambda,
                                                       GoalPlacement{sweep_path, row.n},
                                                       sweep_trials, seed);
                    row.ratio = est.point;
                    row.ci_low = est.ci_low;
                    row.ci_high = est.ci_high;
                    row.seed = seed;
                } else {
                    const auto worst =
                        worst_case_ratio_det(row.w, row.lambda, std::max(row.n, 2.0));
                    row.ratio = worst.sup_ratio;
                    row.ci_low = worst.sup_ratio;
                    row.ci_high = worst.sup_ratio;
                }
            }
        };
        const int workers = std::min<int>(worker_count(), static_cast<int>(rows.size()));
        if (workers <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < workers; ++t) pool.emplace_back(work);
            for (auto& th : pool) th.join();
        }

        std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
            return std::tie(a.w, a.lambda, a.n) < std::tie(b.w, b.lambda, b.n);
        });
        result.out = emit_sweep(rows, sweep_format);
    });

    // ------------------------------------------------------------------------
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("raysearch");
    for (const auto& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        result.exit_code = 0;
    } catch (const CLI::CallForHelp&) {
        result.out = app.help();
        result.exit_code = 0;
    } catch (const CLI::CallForAllHelp&) {
        result.out = app.help("", CLI::AppFormatMode::All);
        result.exit_code = 0;
    } catch (const CLI::ParseError& e) {
        result.err = dump(error_body("usage", e.what()));
        result.exit_code = 2;
    } catch (const horizon_error& e) {
        result.err = dump(error_body("horizon", e.what()));
        result.exit_code = 4;
    } catch (const insufficient_horizon_error& e) {
        result.err = dump(error_body("insufficient-horizon", e.what()));
        result.exit_code = 4;
    } catch (const validation_error& e) {
        result.err = dump(error_body("validation", e.what()));
        result.exit_code = 3;
    } catch (const std::domain_error& e) {
        result.err = dump(error_body("domain", e.what()));
        result.exit_code = 3;
    } catch (const std::exception& e) {
        result.err = dump(error_body("internal", e.what()));
        result.exit_code = 1;
    }
    return result;
}

} // namespace raysearch::cli
