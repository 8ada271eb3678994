// afl: run, list and verify amplitude-flow scenarios.
//
// Exit status: 0 all checks pass, 1 invariant failure, 2 config/usage error,
// 3 I/O failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "afl/errors.hpp"
#include "afl/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using namespace afl::scenario;

ScenarioConfig resolve_config(const std::string& arg) {
    if (fs::exists(arg)) return load_config(arg);
    if (const auto* bundled = find_scenario(arg)) return parse_config(bundled->config_text);
    throw afl::ConfigError("no config file or bundled scenario named '" + arg + "'");
}

fs::path resolve_output_dir(const std::string& flag, const ScenarioConfig& cfg) {
    if (!flag.empty()) return flag;
    if (cfg.output_dir) return *cfg.output_dir;
    if (const char* env = std::getenv("AFL_OUT_DIR"); env && *env) return env;
    return "out";
}

int run_command(const std::string& config_arg, const std::string& out_flag, int points, const std::string& engine) {
    ScenarioConfig cfg;
    try {
        cfg = resolve_config(config_arg);
        if (points > 0) cfg.n_points = points;
        if (engine == "closed") cfg.engines = {true, false};
        else if (engine == "oracle") cfg.engines = {false, true};
        else if (engine == "both") cfg.engines = {true, true};
        cfg.validate();
    } catch (const afl::Error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    ScenarioResult result;
    try {
        result = run_scenario(cfg);
    } catch (const afl::Error& e) {
        std::cerr << "run failed: " << e.what() << "\n";
        return 1;
    }

    try {
        const auto paths = write_outputs(result, resolve_output_dir(out_flag, cfg));
        std::cout << "wrote " << paths.csv.string() << "\n" << "wrote " << paths.json.string() << "\n";
    } catch (const afl::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    }

    for (const auto& c : result.checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " max=" << c.max_value
                  << " threshold=" << c.threshold << "\n";
    }
    return result.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Amplitude-flow entanglement laboratory"};
    app.require_subcommand(1);

    std::string config_arg, out_dir, engine;
    int points = 0;
    auto* run = app.add_subcommand("run", "Run a scenario config (file path or bundled name)");
    run->add_option("config", config_arg, "Config file or bundled scenario name")->required();
    run->add_option("--out", out_dir, "Output directory (default: config output.dir, $AFL_OUT_DIR, ./out)");
    run->add_option("--points", points, "Override run.n_points")->check(CLI::Range(2, 1000000));
    run->add_option("--engine", engine, "Engines to evaluate")->check(CLI::IsMember({"closed", "oracle", "both"}));

    auto* list = app.add_subcommand("list", "List bundled scenarios");

    std::string profile = "strict";
    auto* verify = app.add_subcommand("verify", "Run the invariant lattice for one tolerance profile");
    verify->add_option("--profile", profile, "strict | oracle | se-discretized")
        ->check(CLI::IsMember({"strict", "oracle", "se-discretized"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*run) return run_command(config_arg, out_dir, points, engine);

    if (*list) {
        for (const auto& s : list_scenarios()) std::cout << s.name << "\t" << s.description << "\n";
        return 0;
    }

    if (*verify) {
        try {
            const auto report = verify_all(profile);
            std::cout << format_report(report);
            return report.passed() ? 0 : 1;
        } catch (const afl::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        } catch (const afl::Error& e) {
            std::cerr << "verify failed: " << e.what() << "\n";
            return 1;
        }
    }
    return 2;
}
