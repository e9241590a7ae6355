// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code; finite-horizon proxies state
// their scales explicitly.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "raysearch/cli.hpp"
#include "raysearch/json_io.hpp"

using namespace raysearch;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

struct Criterion {
    int id;
    std::string label;
    bool passed;
    double seconds;
};

std::vector<Criterion> g_results;

void record(int id, const std::string& label, bool passed, double seconds) {
    g_results.push_back({id, label, passed, seconds});
    if (!passed) ++g_failures;
    std::printf("[%s] criterion %2d: %s (%.2fs)\n", passed ? "PASS" : "FAIL", id, label.c_str(),
                seconds);
    std::fflush(stdout);
}

void run_criterion(int id, const std::string& label, const std::function<bool()>& body) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body();
    } catch (const std::exception& e) {
        g_notes.push_back("criterion " + std::to_string(id) + " threw: " + e.what());
        ok = false;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    record(id, label, ok, seconds);
}

bool note_unless(bool condition, const std::string& message) {
    if (!condition) g_notes.push_back(message);
    return condition;
}

// --------------------------------------------------------------- criteria

bool criterion1() {
    const auto start = std::chrono::steady_clock::now();
    const auto result = cli::run({"adversary", "--w", "2", "--lambda", "1", "--n-max", "4096"});
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!note_unless(result.exit_code == 0, "adversary CLI failed: " + result.err)) return false;
    const auto payload = json::parse(result.out);
    const double sup = payload.at("sup_ratio").get<double>();
    bool ok = note_unless(std::abs(sup - 9.0) / 9.0 <= 0.01,
                          "sup ratio " + std::to_string(sup) + " not within 1% of 9");
    ok &= note_unless(seconds < 1.0, "adversary took " + std::to_string(seconds) + "s (>= 1s)");
    return ok;
}

bool criterion2_and_3() {
    // Runs both the 1%-convergence check (criterion 2) and the
    // upper-bound property on every candidate (criterion 3).
    const std::array<std::pair<int, int>, 4> cases{{{3, 1}, {3, 2}, {4, 2}, {5, 3}}};
    bool ok2 = true, ok3 = true;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [w, lambda] : cases) {
        const double bound = det_ratio(w, lambda);
        const auto worst = worst_case_ratio_det(w, lambda, 1e4);
        ok2 &= note_unless(std::abs(worst.sup_ratio - bound) / bound <= 0.01,
                           "(" + std::to_string(w) + "," + std::to_string(lambda) + ") sup " +
                               std::to_string(worst.sup_ratio) + " not within 1% of " +
                               std::to_string(bound));
        for (const auto& [goal, ratio] : worst.evaluated) {
            if (goal.distance < 2.0) continue;
            if (ratio > bound + 1e-9) {
                ok3 = false;
                g_notes.push_back("(" + std::to_string(w) + "," + std::to_string(lambda) +
                                  ") goal at " + std::to_string(goal.distance) + " has ratio " +
                                  std::to_string(ratio) + " > " + std::to_string(bound));
            }
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ok2 &= note_unless(seconds < 10.0, "criterion 2 sweep took " + std::to_string(seconds) + "s");
    record(2, "general-lambda sup ratios within 1% of the closed form at n_max = 1e4", ok2,
           seconds);
    record(3, "every adversarial candidate stays below the deterministic bound", ok3, 0.0);
    return true;
}

bool criterion4() {
    // 1e-6-step grid oracle over (1, 20].
    const double oracle_r2 = oracles::grid_min_rate(2, 1e-6, 1.0, 20.0);
    const double r2 = solve_rw(2, 1e-6);
    bool ok = note_unless(oracle_r2 >= 3.5910 && oracle_r2 <= 3.5912,
                          "grid oracle r_2 = " + std::to_string(oracle_r2));
    ok &= note_unless(r2 >= 3.5910 && r2 <= 3.5912, "solve_rw(2) = " + std::to_string(r2));
    ok &= note_unless(std::abs(r2 - oracle_r2) <= 2e-6,
                      "solver and grid oracle disagree: " + std::to_string(r2) + " vs " +
                          std::to_string(oracle_r2));
    const double bound = rand_single_bound(2);
    ok &= note_unless(bound >= 4.5910 && bound <= 4.5912,
                      "rand_single_bound(2) = " + std::to_string(bound));
    for (int w = 2; w <= 10; ++w) {
        const double lhs = rand_single_bound(w);
        const double rhs = 1.0 + (2.0 / w) * c_w(w);
        ok &= note_unless(std::abs(lhs - rhs) <= 1e-9,
                          "identity breaks at w = " + std::to_string(w));
    }
    return ok;
}

bool criterion5() {
    const auto start = std::chrono::steady_clock::now();
    const auto result = cli::run({"mc", "--w", "2", "--lambda", "1", "--n", "10000", "--trials",
                                  "100000", "--seed", "20240810"});
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!note_unless(result.exit_code == 0, "mc CLI failed: " + result.err)) return false;
    const auto estimate = json::parse(result.out).at("estimate");
    const double point = estimate.at("point").get<double>();
    const double width = estimate.at("ci_high").get<double>() - estimate.at("ci_low").get<double>();
    bool ok = note_unless(std::abs(point - 4.5911) / 4.5911 <= 0.05,
                          "mc point " + std::to_string(point) + " not within 5% of 4.5911");
    ok &= note_unless(width < 0.05, "CI width " + std::to_string(width) + " >= 0.05");
    ok &= note_unless(seconds < 60.0, "mc took " + std::to_string(seconds) + "s");
    return ok;
}

bool criterion6() {
    const std::array<std::pair<int, int>, 3> cases{{{3, 2}, {4, 2}, {4, 3}}};
    bool ok = true;
    for (const auto& [w, lambda] : cases) {
        const double bound = rand_multi_bound(w, lambda);
        const auto estimate =
            expected_ratio_mc(w, lambda, GoalPlacement{0, 1e4}, 5000, 987654321 + w * 10 + lambda);
        ok &= note_unless(estimate.point <= bound + 0.1,
                          "(" + std::to_string(w) + "," + std::to_string(lambda) + ") mc " +
                              std::to_string(estimate.point) + " above bound " +
                              std::to_string(bound) + " + 0.1");
    }
    for (int w = 2; w <= 10; ++w)
        for (int lambda = 1; lambda < w; ++lambda)
            ok &= note_unless(rand_multi_bound(w, lambda) < det_ratio(w, lambda),
                              "randomized bound not below deterministic at (" +
                                  std::to_string(w) + "," + std::to_string(lambda) + ")");
    return ok;
}

bool criterion7() {
    bool ok = true;
    for (int w : {2, 3, 4, 5}) {
        double best_rate = 0.0, best_value = 0.0;
        bool first = true;
        for (double rate = 1.001; rate <= 5.0 + 1e-12; rate += 1e-3) {
            const double computed = geometric_s_limit(w, rate, 1e-7);
            const double analytic = std::pow(rate, w) / (rate - 1.0);
            if (std::abs(computed - analytic) > 1e-6) {
                ok = note_unless(false, "S-limit mismatch at w=" + std::to_string(w) +
                                            " rate=" + std::to_string(rate) + ": " +
                                            std::to_string(computed - analytic));
                break;
            }
            if (first || computed < best_value) {
                best_value = computed;
                best_rate = rate;
                first = false;
            }
        }
        const double opt_rate = static_cast<double>(w) / (w - 1);
        const double target = cyclic_ratio_target(w);
        ok &= note_unless(std::abs(best_rate - opt_rate) <= 1e-3,
                          "grid argmin " + std::to_string(best_rate) + " away from " +
                              std::to_string(opt_rate));
        ok &= note_unless(best_value >= target - 1e-6 && best_value <= target + 1e-4,
                          "grid min value " + std::to_string(best_value) + " vs target " +
                              std::to_string(target));
    }
    return ok;
}

bool criterion8() {
    RandomSource rng(777000777);
    int violations = 0, verified = 0, unresolved = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int w = 2 + trial % 3;
        WSequence seq;
        seq.w = w;
        double level = 1.0;
        for (int i = 0; i < 200; ++i) {
            level *= 0.9 + 0.5 * rng.uniform01();
            seq.h.push_back(level * (0.5 + rng.uniform01()));
            seq.a.push_back(rng.uniform_int(w));
        }

        auto sorted = seq.h;
        std::sort(sorted.begin(), sorted.end());
        std::vector<double> sums_h(seq.h.size() + 1, 0.0), sums_s(seq.h.size() + 1, 0.0);
        for (std::size_t i = 0; i < seq.h.size(); ++i) {
            sums_h[i + 1] = sums_h[i] + seq.h[i];
            sums_s[i + 1] = sums_s[i] + sorted[i];
        }

        for (int j = 1; j + w - 1 <= 200; ++j) {
            try {
                const auto witness = witness_check(seq, j);
                ++verified;
                // Independent recomputation of both sides.
                const double s_direct =
                    sums_s[static_cast<std::size_t>(j + w - 1)] /
                    sorted[static_cast<std::size_t>(j - 1)];
                int j_next = -1;
                for (int t = witness.j_star + 1; t <= 200; ++t) {
                    if (seq.a[static_cast<std::size_t>(t - 1)] ==
                        seq.a[static_cast<std::size_t>(witness.j_star - 1)]) {
                        j_next = t;
                        break;
                    }
                }
                if (j_next < 0) {
                    ++violations;
                    continue;
                }
                const double h_direct = sums_h[static_cast<std::size_t>(j_next - 1)] /
                                        seq.h[static_cast<std::size_t>(witness.j_star - 1)];
                if (s_direct > h_direct * (1.0 + 1e-9)) ++violations;
            } catch (const insufficient_horizon_error&) {
                ++unresolved;
            }
        }
    }
    bool ok = note_unless(violations == 0,
                          std::to_string(violations) + " witness counterexamples");
    ok &= note_unless(verified > 0, "no index resolved at all");
    g_notes.push_back("witness sweep: " + std::to_string(verified) + " verified, " +
                      std::to_string(unresolved) + " unresolved");
    return ok;
}

bool criterion9() {
    RandomSource rng(1234509876);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int m = 1 + rng.uniform_int(8);
        const double eps = 1e-9 + rng.uniform01();
        std::vector<double> xs(static_cast<std::size_t>(m) + 1);
        for (auto& x : xs) x = 1e-6 + 100.0 * rng.uniform01();
        const auto bound = amgm_chain(eps, xs);
        if (bound.lhs < bound.rhs * (1.0 - 1e-12)) ++violations;
    }
    return note_unless(violations == 0, std::to_string(violations) + " mean-chain violations");
}

bool criterion10() {
    bool ok = true;
    for (int w : {2, 3}) {
        const double c = c_w(w);
        const double rw = solve_rw(w);
        double at_opt = std::numeric_limits<double>::infinity();
        for (double rate = 1.001; rate <= 5.0 + 1e-12; rate += 1e-3) {
            const double value = g_functional(w, 1e-6, GeometricTailSequence{{1.0}, rate});
            if (value < c - 1e-3) {
                ok = note_unless(false, "G below C at w=" + std::to_string(w) +
                                            " rate=" + std::to_string(rate));
                break;
            }
            if (std::abs(rate - rw) <= 5e-4) at_opt = std::min(at_opt, value);
        }
        ok &= note_unless(std::abs(at_opt - c) <= 1e-3,
                          "G at the optimal rate differs from C by " + std::to_string(at_opt - c));
    }
    return ok;
}

bool criterion11() {
    // In-process byte-identity for every randomized subcommand.
    const std::vector<std::vector<std::string>> invocations{
        {"mc", "--w", "3", "--lambda", "2", "--n", "200", "--trials", "300", "--seed", "42"},
        {"plan", "--strategy", "rand-single", "--w", "3", "--horizon", "5", "--seed", "42"},
        {"plan", "--strategy", "rand-multi", "--w", "4", "--lambda", "2", "--horizon", "4",
         "--seed", "42"},
        {"simulate", "--strategy", "rand-multi", "--w", "3", "--lambda", "2", "--path", "1",
         "--n", "50", "--seed", "42"},
        {"sweep", "--strategy", "rand", "--w-list", "2,3", "--lambda-list", "1,2", "--n-max",
         "32", "--trials", "64", "--seed", "42"},
        {"schedule", "--strategy", "rand-single", "--w", "2", "--horizon", "4", "--seed", "42"},
    };
    bool ok = true;
    for (const auto& args : invocations) {
        const auto first = cli::run(args);
        const auto second = cli::run(args);
        ok &= note_unless(first.exit_code == 0,
                          "subcommand " + args[0] + " failed: " + first.err);
        ok &= note_unless(first.out == second.out && first.err == second.err,
                          "subcommand " + args[0] + " is not byte-identical across reruns");
    }

    // Spawned-binary check when the build system provides the CLI path.
    if (const char* bin = std::getenv("RAYSEARCH_CLI_BIN")) {
        const std::string command = std::string(bin) +
                                    " mc --w 2 --lambda 1 --n 100 --trials 200 --seed 7 2>/dev/null";
        auto capture = [&]() {
            std::string out;
            FILE* pipe = popen(command.c_str(), "r");
            if (!pipe) return out;
            char buffer[4096];
            std::size_t got = 0;
            while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, got);
            pclose(pipe);
            return out;
        };
        const std::string first = capture();
        const std::string second = capture();
        ok &= note_unless(!first.empty() && first == second,
                          "spawned CLI output differs across reruns");
    }
    return ok;
}

} // namespace

int main() {
    run_criterion(1, "two-path single-robot adversary within 1% of 9 in under 1s", criterion1);
    criterion2_and_3();
    run_criterion(4, "growth rate and single-robot bound against the 1e-6 grid oracle",
                  criterion4);
    run_criterion(5, "10^5-trial Monte Carlo within 5% of 4.5911, CI width < 0.05", criterion5);
    run_criterion(6, "randomized multi-robot means below their bounds; bounds beat deterministic",
                  criterion6);
    run_criterion(7, "geometric S-limits match r^w/(r-1), minimized at w/(w-1)", criterion7);
    run_criterion(8, "witness construction: zero counterexamples on 100 random prefixes",
                  criterion8);
    run_criterion(9, "chained mean inequality holds on 1000 random tuples", criterion9);
    run_criterion(10, "discounted-sum functional stays above C_w with equality at r_w",
                  criterion10);
    run_criterion(11, "randomized subcommands rerun byte-identically", criterion11);

    for (const auto& note : g_notes) std::printf("  note: %s\n", note.c_str());
    std::printf("%d/%zu criteria passed\n", static_cast<int>(g_results.size()) - g_failures,
                g_results.size());
    return g_failures == 0 ? 0 : 1;
}
