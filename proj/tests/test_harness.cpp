#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sandlab/harness.hpp"
#include "sandlab/parallel.hpp"
#include "sandlab/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace sandlab;
using namespace sandlab::harness;

TEST_CASE("counter rng is a pure function of its key") {
    CounterRng a(1, 2, 3), b(1, 2, 3), c(1, 2, 4);
    CHECK(a.next() == b.next());
    CHECK(a.next() == b.next());
    CHECK(CounterRng(1, 2, 3).next() != c.next());

    CounterRng r(9, 9, 9);
    for (int i = 0; i < 1000; ++i) CHECK(r.below(6) < 6);
}

TEST_CASE("fit_line and fit_loglog") {
    const LineFit f = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r2 == doctest::Approx(1.0));

    std::vector<std::pair<double, double>> pts;
    for (double n : {8.0, 16.0, 32.0, 64.0}) pts.emplace_back(n, 3.0 * std::pow(n, 2.5));
    const FitResult fit = fit_loglog("synthetic", pts, 2.5, 0.1);
    CHECK(fit.slope == doctest::Approx(2.5));
    CHECK(fit.pass);

    const FitResult off = fit_loglog("synthetic", pts, 3.5, 0.1);
    CHECK_FALSE(off.pass);
    CHECK_THROWS_AS(fit_loglog("bad", {{2.0, 0.0}, {4.0, 1.0}}, 1, 1), std::invalid_argument);
}

TEST_CASE("report serialization") {
    LemmaReport r = make_report("demo", Json{{"n", 4}}, Rational(1, 3), Rational(1, 2), false);
    CHECK(r.pass);
    const Json j = r.to_json();
    CHECK(j["lhs"] == "1/3");
    CHECK(j["rhs"] == "1/2");

    const std::string csv = reports_to_csv({r});
    CHECK(csv.find("lemma_id,param_json,lhs,rhs,pass,margin") == 0);
    CHECK(csv.find("demo,\"{\"\"n\"\":4}\",1/3,1/2,true,") != std::string::npos);
}

TEST_CASE("scc oracle frozen counts") {
    const auto grid = recurrent_states_by_scc(GridShape(2, 2));
    CHECK(grid.size() == 256);
    CHECK(std::count(grid.begin(), grid.end(), 1) == 192);

    const auto path = recurrent_states_by_scc(GridShape(3, 1));
    CHECK(path.size() == 8);
    CHECK(std::count(path.begin(), path.end(), 1) == 4);
}

TEST_CASE("config codes round trip") {
    const GridShape g(2, 2);
    for (std::uint64_t code = 0; code < stable_state_count(g); code += 17) {
        CHECK(code_from_config(config_from_code(g, code)) == code);
    }
}

TEST_CASE("parallel_for is index deterministic and propagates errors") {
    std::vector<int> out(100, 0);
    parallel_for(100, 4, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
    for (int i = 0; i < 100; ++i) CHECK(out[static_cast<std::size_t>(i)] == i * i);
    CHECK_THROWS_AS(
        parallel_for(8, 4, [](std::size_t i) { if (i == 5) throw std::runtime_error("boom"); }),
        std::runtime_error);
}

TEST_CASE("suite reports are byte identical under a fixed seed") {
    SuiteConfig cfg;
    cfg.suite = "dimd";
    cfg.n_grid = {4, 6};
    cfg.d = 3;
    cfg.seed = 7;
    const std::string a = run_suite(cfg).dump();
    const std::string b = run_suite(cfg).dump();
    CHECK(a == b);

    cfg.jobs = 4;  // scheduling must not leak into the bytes
    const std::string c = run_suite(cfg).dump();
    CHECK(a == c);
}

TEST_CASE("suite config validation") {
    SuiteConfig cfg;
    cfg.suite = "electro";
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);  // empty grid
    cfg.n_grid = {8, 4};
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);  // not ascending
    cfg.n_grid = {4};
    cfg.suite = "unknown";
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
}

namespace {

int run_cli(std::vector<std::string> args) {
    std::vector<char*> argv;
    static std::string prog = "sandpile-lab";
    argv.push_back(prog.data());
    for (auto& a : args) argv.push_back(a.data());
    return cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("cli dispatch and exit codes") {
    CHECK(run_cli({"--definitely-not-a-flag"}) == 2);
    CHECK(run_cli({"drive"}) == 2);  // missing --n
    CHECK(run_cli({"simulate", "--n", "0", "--d", "2"}) == 2);

    const auto out = std::filesystem::temp_directory_path() / "sandlab_cli_test.json";
    std::filesystem::remove(out);
    CHECK(run_cli({"drive", "--n", "4", "--d", "2", "--site", "1,1", "--out", out.string()}) == 0);
    std::ifstream is(out);
    REQUIRE(is.good());
    Json j;
    is >> j;
    CHECK(j["recurrent_at"].get<std::uint64_t>() > 0);
    CHECK(j.contains("total_topplings"));
    CHECK(j.contains("wall_time"));
    CHECK(j["site"] == Json::array({1, 1}));
    std::filesystem::remove(out);
}

TEST_CASE("cli fit emits a verdict exit code") {
    const auto out = std::filesystem::temp_directory_path() / "sandlab_fit_test.json";
    CHECK(run_cli({"fit", "--quantity", "tcl", "--n", "6,8,12", "--d", "2", "--out",
                   out.string()}) == 0);
    std::filesystem::remove(out);
}

TEST_CASE("cli simulate reports conservation data") {
    const auto out = std::filesystem::temp_directory_path() / "sandlab_sim_test.json";
    CHECK(run_cli({"simulate", "--n", "2", "--d", "2", "--site", "1,1", "--grains", "4",
                   "--out", out.string()}) == 0);
    std::ifstream is(out);
    Json j;
    is >> j;
    CHECK(j["config"] == Json::array({0, 1, 1, 0}));
    CHECK(j["grains_to_sink"].get<std::uint64_t>() == 2);
    CHECK(j["grains_added"].get<std::uint64_t>() ==
          j["grains_remaining"].get<std::uint64_t>() +
              j["grains_to_sink"].get<std::uint64_t>());
    std::filesystem::remove(out);
}

TEST_CASE("cli render writes frames") {
    const auto dir = std::filesystem::temp_directory_path() / "sandlab_cli_frames";
    std::filesystem::remove_all(dir);
    CHECK(run_cli({"render", "--n", "8", "--d", "2", "--site", "1,1", "--checkpoints",
                   "16,64", "--out", dir.string()}) == 0);
    CHECK(std::filesystem::exists(dir / "frame_16.ppm"));
    CHECK(std::filesystem::exists(dir / "frame_64.ppm"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("jobs environment override") {
    setenv("SANDPILE_LAB_JOBS", "3", 1);
    CHECK(effective_jobs(1) == 3);
    setenv("SANDPILE_LAB_JOBS", "junk", 1);
    CHECK_THROWS_AS(effective_jobs(1), std::invalid_argument);
    unsetenv("SANDPILE_LAB_JOBS");
    CHECK(effective_jobs(2) == 2);
}
