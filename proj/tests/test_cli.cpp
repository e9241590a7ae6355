#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "raysearch/cli.hpp"
#include "raysearch/json_io.hpp"

using namespace raysearch;

namespace {

json parse_out(const cli::RunResult& result) {
    REQUIRE(result.exit_code == 0);
    REQUIRE(!result.out.empty());
    return json::parse(result.out);
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content) {
        path = std::string("raysearch_test_") + name;
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("ratio subcommand") {
    const auto result = cli::run({"ratio", "--w", "2", "--lambda", "1"});
    const auto j = parse_out(result);
    CHECK(j["schema"] == 1);
    CHECK(j["det_ratio"] == 9.0);
    CHECK(j["rand_single"].get<double>() == doctest::Approx(4.59112).epsilon(1e-4));
    CHECK(j["r_w_prime"].get<double>() == doctest::Approx(3.59112).epsilon(1e-4));

    const auto full = parse_out(cli::run({"ratio", "--w", "3", "--lambda", "3"}));
    CHECK(full["det_ratio"] == 3.0);
    CHECK(full["r_w_prime"].is_null());
}

TEST_CASE("plan subcommand round-trips through JSON") {
    const auto result = cli::run({"plan", "--strategy", "rand-multi", "--w", "4", "--lambda", "2",
                                  "--horizon", "3", "--seed", "99"});
    const auto j = parse_out(result);
    const ExplorationPlan parsed = j["plan"].get<ExplorationPlan>();
    const ExplorationPlan direct = rand_multi_plan(4, 2, RandomSource(99), 3);
    CHECK(parsed == direct);

    // Deterministic plans refuse nothing; randomized plans demand a seed.
    const auto missing = cli::run({"plan", "--strategy", "rand-single", "--w", "2", "--horizon", "2"});
    CHECK(missing.exit_code == 3);
    CHECK(json::parse(missing.err)["error"]["type"] == "domain");
}

TEST_CASE("simulate subcommand") {
    const auto result = cli::run({"simulate", "--strategy", "det-single", "--w", "2", "--path",
                                  "1", "--n", "3"});
    const auto j = parse_out(result);
    CHECK(j["result"]["ledger"]["total"] == 17.0);
    CHECK(j["result"]["ratio"].get<double>() == doctest::Approx(17.0 / 3.0).epsilon(1e-12));
    CHECK(!j.contains("trace"));

    const auto with_trace =
        parse_out(cli::run({"simulate", "--strategy", "det-single", "--w", "2", "--path", "1",
                            "--n", "3", "--emit-trace"}));
    const Trace trace = with_trace["trace"].get<Trace>();
    CHECK(searched_extent(trace, 1) == 3.0);

    // Fixed horizon too short: horizon error, exit 4.
    const auto short_run = cli::run({"simulate", "--strategy", "det-single", "--w", "2", "--path",
                                     "0", "--n", "100", "--horizon", "2"});
    CHECK(short_run.exit_code == 4);
    CHECK(json::parse(short_run.err)["error"]["type"] == "horizon");
}

TEST_CASE("adversary subcommand") {
    const auto j = parse_out(
        cli::run({"adversary", "--w", "2", "--lambda", "1", "--n-max", "1024"}));
    CHECK(j["sup_ratio"].get<double>() == doctest::Approx((9.0 * 512 - 1) / 513.0).epsilon(1e-12));
    CHECK(j["det_ratio"] == 9.0);
    CHECK(j["argmax_goal"]["distance"] == 513.0);
    CHECK(!j.contains("evaluated"));

    const auto listed = parse_out(cli::run(
        {"adversary", "--w", "2", "--lambda", "1", "--n-max", "64", "--list-candidates"}));
    CHECK(listed["evaluated"].is_array());
    CHECK(listed["evaluated"].size() == listed["candidates"].get<std::size_t>());
}

TEST_CASE("mc subcommand reruns byte-identically") {
    const std::vector<std::string> args{"mc",      "--w",    "2",  "--lambda", "1",
                                        "--n",     "500",    "--trials", "400",
                                        "--seed",  "7"};
    const auto first = cli::run(args);
    const auto second = cli::run(args);
    CHECK(first.exit_code == 0);
    CHECK(first.out == second.out);
    const auto j = json::parse(first.out);
    CHECK(j["estimate"]["trials"] == 400);
    CHECK(j["estimate"]["seed"] == 7);
    CHECK(j["estimate"]["point"].get<double>() > 1.0);
}

TEST_CASE("seq subcommand with CSV and JSON input") {
    TempFile csv("seq.csv", "i,h,a\n1,1.0,0\n2,2.0,1\n3,4.0,0\n4,8.0,1\n");
    const auto j = parse_out(cli::run({"seq", "--input", csv.path, "--w", "2"}));
    CHECK(j["input"] == "w-sequence");
    CHECK(j["H"][0]["value"] == 3.0);
    CHECK(j["H"][1]["value"] == 3.5);
    CHECK(j["unresolved"] == json::array({3, 4}));
    CHECK(j["target"] == 4.0);

    TempFile cyc("seq_s.json", R"({"w": 2, "s": [1, 2, 4, 8, 16, 32]})");
    const auto s = parse_out(cli::run({"seq", "--input", cyc.path, "--window", "2"}));
    CHECK(s["input"] == "cyclic");
    CHECK(s["S"].size() == 5);
    CHECK(s["S"][4].get<double>() == doctest::Approx(3.9375).epsilon(1e-12));
    CHECK(s["limsup_gap"].get<double>() == doctest::Approx(3.9375 - 4.0).epsilon(1e-12));

    const auto csv_out = cli::run({"seq", "--input", csv.path, "--w", "2", "--format", "csv"});
    CHECK(csv_out.exit_code == 0);
    CHECK(csv_out.out.rfind("i,H\n", 0) == 0);

    const auto witness =
        parse_out(cli::run({"seq", "--input", csv.path, "--w", "2", "--witness", "1"}));
    CHECK(witness["witness"]["s_j"].get<double>() <=
          witness["witness"]["h_j_star"].get<double>() * (1 + 1e-12));

    const auto missing = cli::run({"seq", "--input", "no_such_file.csv", "--w", "2"});
    CHECK(missing.exit_code == 3);
}

TEST_CASE("gfun subcommand") {
    const auto j = parse_out(
        cli::run({"gfun", "--w", "2", "--epsilon", "1", "--rate", "2"}));
    CHECK(j["value"] == 6.0);

    const auto prefixed = parse_out(cli::run(
        {"gfun", "--w", "2", "--epsilon", "0.5", "--rate", "2", "--prefix", "1,1.5,2.5"}));
    CHECK(prefixed["prefix_length"] == 3);
    CHECK(prefixed["value"].get<double>() > 0.0);

    const auto bad = cli::run({"gfun", "--w", "2", "--epsilon", "1", "--rate", "0.5"});
    CHECK(bad.exit_code == 3);
}

TEST_CASE("schedule subcommand") {
    const auto j = parse_out(cli::run(
        {"schedule", "--strategy", "det-single", "--w", "2", "--horizon", "3"}));
    CHECK(j["schedule"]["slots"] == 1);
    CHECK(j["schedule"]["events"].size() == 3);
    CHECK(j["schedule"]["events"][2]["mode"] == "fresh-replay");
    CHECK(j["schedule"]["computation_total"] == 7.0);
    CHECK(j["schedule"]["travel_total"] == 14.0);
}

TEST_CASE("sweep subcommand emits stable CSV") {
    const std::vector<std::string> args{"sweep",      "--strategy", "det",  "--w-list", "2,3",
                                        "--lambda-list", "1,2",     "--n-max", "64"};
    const auto first = cli::run(args);
    const auto second = cli::run(args);
    REQUIRE(first.exit_code == 0);
    CHECK(first.out == second.out);
    CHECK(first.out.rfind("w,lambda,n,ratio,ci_low,ci_high,seed\n", 0) == 0);

    // All four (w, lambda) combos are valid here, times 6 grid points.
    const auto lines = std::count(first.out.begin(), first.out.end(), '\n');
    CHECK(lines == 1 + 4 * 6);

    const auto rand = cli::run({"sweep", "--strategy", "rand", "--w-list", "2", "--lambda-list",
                                "1", "--n-max", "16", "--trials", "50", "--seed", "3",
                                "--format", "json"});
    REQUIRE(rand.exit_code == 0);
    // JSON Lines: one parseable object per line.
    std::size_t rows = 0, start = 0;
    while (start < rand.out.size()) {
        const auto end = rand.out.find('\n', start);
        const auto row = json::parse(rand.out.substr(start, end - start));
        CHECK(row["seed"].is_number());
        start = end + 1;
        ++rows;
    }
    CHECK(rows == 4);

    const auto seedless = cli::run({"sweep", "--strategy", "rand", "--w-list", "2",
                                    "--lambda-list", "1", "--n-max", "16"});
    CHECK(seedless.exit_code == 3);
}

TEST_CASE("usage errors return machine-readable JSON") {
    const auto unknown = cli::run({"frobnicate"});
    CHECK(unknown.exit_code == 2);
    CHECK(json::parse(unknown.err)["error"]["type"] == "usage");

    const auto missing = cli::run({"ratio", "--w", "2"});
    CHECK(missing.exit_code == 2);

    const auto bad_range = cli::run({"ratio", "--w", "3", "--lambda", "9"});
    CHECK(bad_range.exit_code == 3);
    CHECK(json::parse(bad_range.err)["error"]["type"] == "domain");

    const auto help = cli::run({"--help"});
    CHECK(help.exit_code == 0);
    CHECK(!help.out.empty());
}
