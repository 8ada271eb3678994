#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "afl/errors.hpp"
#include "afl/scenario.hpp"

using namespace afl;
using namespace afl::scenario;

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::vector<double>& col(const ScenarioResult& r, const char* name) {
    const auto* c = r.series.column(name);
    REQUIRE(c != nullptr);
    return *c;
}

}  // namespace

TEST_CASE("parse_angle") {
    CHECK(parse_angle("0.5") == 0.5);
    CHECK(parse_angle("pi") == doctest::Approx(kPi));
    CHECK(parse_angle("pi/4") == doctest::Approx(kPi / 4));
    CHECK(parse_angle("2*pi/5") == doctest::Approx(2 * kPi / 5));
    CHECK(parse_angle(" 3pi/4 ") == doctest::Approx(3 * kPi / 4));
    CHECK_THROWS_AS(parse_angle("pi*4"), ConfigError);
    CHECK_THROWS_AS(parse_angle("pi/0"), ConfigError);
    CHECK_THROWS_AS(parse_angle("abc"), ConfigError);
}

TEST_CASE("parse_config") {
    const auto cfg = parse_config(
        "# comment\n"
        "name = demo\n"
        "model.kind = xy\n"
        "model.N = 4\n"
        "model.J = 0.5   ; trailing comment\n"
        "theta = pi/3\n"
        "run.t_max = 20\n"
        "run.n_points = 11\n"
        "run.engines = closed_form, oracle\n"
        "tol.conservation = 1e-8\n");
    CHECK(cfg.name == "demo");
    REQUIRE(std::holds_alternative<channels::XYChain>(cfg.model));
    CHECK(std::get<channels::XYChain>(cfg.model).N == 4);
    CHECK(std::get<channels::XYChain>(cfg.model).J == 0.5);
    CHECK(cfg.theta == doctest::Approx(kPi / 3));
    CHECK(cfg.n_points == 11);
    CHECK(cfg.engines.closed_form);
    CHECK(cfg.engines.oracle);
    CHECK(cfg.tol.conservation == 1e-8);

    CHECK(parse_config("model.kind = jc\ntheta = 0\nrun.t_max = 2pi\n").t_max == doctest::Approx(2 * kPi));

    CHECK_THROWS_AS(parse_config("model.kind = jc\ntheta = 0\nrun.t_max = 1\nbogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model.kind = jc\nrun.t_max = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model.kind = qed\ntheta = 0\nrun.t_max = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model.kind = jc\ntheta = 0\nrun.t_max = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model.kind = jc\ntheta = 0\nrun.t_max = 1\nrun.n_points = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model.kind = jc\ntheta = 4\nrun.t_max = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model.kind = jc\ntheta = 0\nrun.t_max = 1\nmodel.g = -2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model.kind = jc\ntheta 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model.kind = se\ntheta = 0\nrun.t_max = 1\nrun.engines = oracle\noracle.modes = 10\n"),
                    ConfigError);
}

TEST_CASE("bundled scenarios") {
    const auto& all = list_scenarios();
    CHECK(all.size() == 15);
    for (const char* name : {"fig2a", "fig2b", "fig2c", "fig2d", "fig4a", "fig4b", "fig4c", "fig4d", "fig5a", "fig5b",
                             "fig5c", "fig5d", "se-local-max", "jc-transfer", "xy-n10-crosscheck"}) {
        CHECK(find_scenario(name) != nullptr);
    }
    for (const auto& s : all) CHECK_NOTHROW(parse_config(s.config_text));

    const auto fig2a = parse_config(find_scenario("fig2a")->config_text);
    CHECK_FALSE(PreparationAngle(fig2a.theta).moon_dominant());
    for (const char* name : {"fig5a", "fig5b", "fig5c", "fig5d"}) {
        const auto cfg = parse_config(find_scenario(name)->config_text);
        CHECK(std::get<channels::XYChain>(cfg.model).N == 10);
    }
    CHECK(find_scenario("nope") == nullptr);
}

TEST_CASE("run_scenario: JC, theta = pi/4, both engines") {
    auto cfg = parse_config(find_scenario("fig4c")->config_text);
    const auto r = run_scenario(cfg);
    CHECK(r.passed());
    CHECK(r.series.names == std::vector<std::string>{"time", "p", "K_A_closed", "K_a_closed", "K_M", "K_A_oracle",
                                                     "K_a_oracle", "res_conservation", "res_signed"});
    const auto& kA = col(r, "K_A_closed");
    const auto& kAo = col(r, "K_A_oracle");
    const auto& kao = col(r, "K_a_oracle");
    const auto& ka = col(r, "K_a_closed");
    for (std::size_t i = 0; i < kA.size(); ++i) {
        CHECK(std::abs(kA[i] - kAo[i]) < 1e-9);
        CHECK(std::abs(ka[i] - kao[i]) < 1e-9);
    }
    // 401 points on [0, 2 pi]: index 50 is g t = pi/4, 100 is pi/2, 200 is pi
    CHECK(kA[0] == doctest::Approx(2.0));
    CHECK(kA[100] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(kA[200] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ka[100] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(kA[50] - ka[50]) < 1e-12);
}

TEST_CASE("run_scenario: SE on the Moon side decays monotonically") {
    const auto r = run_scenario(parse_config(find_scenario("fig2d")->config_text));
    CHECK(r.passed());
    const auto& kA = col(r, "K_A_closed");
    for (std::size_t i = 1; i < kA.size(); ++i) CHECK(kA[i] <= kA[i - 1]);
    CHECK(r.series.column("K_A_oracle") == nullptr);
}

TEST_CASE("run_scenario: trivial preparations") {
    for (const char* kind : {"se", "jc", "xy"}) {
        // theta = 0: no Moon entanglement, but A and a still entangle dynamically
        auto r = run_scenario(parse_config(std::string("model.kind = ") + kind +
                                           "\ntheta = 0\nrun.t_max = 5\nrun.n_points = 50\n"
                                           "run.engines = closed_form\n"));
        CHECK(r.passed());
        for (double v : col(r, "K_M")) CHECK(v == 1.0);
        CHECK(col(r, "K_A_closed").front() == doctest::Approx(1.0));
        CHECK(*std::max_element(col(r, "K_A_closed").begin(), col(r, "K_A_closed").end()) > 1.5);
        // QubitDominant: unsigned relation is not asserted, column omitted
        CHECK(r.series.column("res_conservation") == nullptr);
        CHECK(r.series.column("res_signed") != nullptr);

        // theta = pi/2: nothing is excited, every K stays 1
        r = run_scenario(parse_config(std::string("model.kind = ") + kind +
                                      "\ntheta = pi/2\nrun.t_max = 5\nrun.n_points = 50\n"
                                      "run.engines = closed_form\n"));
        CHECK(r.passed());
        for (const char* c : {"K_A_closed", "K_a_closed", "K_M"}) {
            for (double v : col(r, c)) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
        }
    }
}

TEST_CASE("run_scenario: oracle-only run") {
    auto cfg = parse_config("model.kind = xy\nmodel.N = 4\ntheta = 1.2\nrun.t_max = 10\nrun.n_points = 30\n"
                            "run.engines = oracle\n");
    const auto r = run_scenario(cfg);
    CHECK(r.passed());
    CHECK(r.series.column("K_A_closed") == nullptr);
    CHECK(r.series.column("K_A_oracle") != nullptr);
    CHECK(r.metadata.at("oracle.frame").find("lab frame") != std::string::npos);
}

TEST_CASE("CSV formatting and determinism") {
    KSeries s;
    s.add("time", {0.0, 0.1});
    s.add("K_M", {1.0 / 3.0, 2.0});
    CHECK(format_csv(s) == "time,K_M\n0,0.33333333333333331\n0.10000000000000001,2\n");

    const auto cfg = parse_config(find_scenario("jc-transfer")->config_text);
    CHECK(format_csv(run_scenario(cfg).series) == format_csv(run_scenario(cfg).series));
}

TEST_CASE("write_outputs") {
    const auto dir = std::filesystem::temp_directory_path() / "afl_test_outputs";
    std::filesystem::remove_all(dir);
    auto cfg = parse_config("name = tiny\nmodel.kind = jc\ntheta = pi/3\nrun.t_max = 1\nrun.n_points = 3\n");
    const auto r = run_scenario(cfg);
    const auto paths = write_outputs(r, dir);
    CHECK(std::filesystem::exists(paths.csv));
    CHECK(std::filesystem::exists(paths.json));
    std::ifstream in(paths.json);
    std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(body.find("\"pass\": true") != std::string::npos);
    CHECK(body.find("\"model.kind\": \"jc\"") != std::string::npos);

    // a regular file where the directory should be
    const auto blocker = dir / "blocker";
    std::ofstream(blocker) << "x";
    CHECK_THROWS_AS(write_outputs(r, blocker / "sub"), IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("verify_all rejects unknown profiles") {
    CHECK_THROWS_AS(verify_all("lenient"), ConfigError);
}
