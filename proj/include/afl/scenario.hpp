// scenario.hpp: config-driven trajectory runs, CSV/JSON export and the
// one-shot verification lattice behind `afl run` / `afl list` / `afl verify`.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "afl/channels.hpp"
#include "afl/schmidt.hpp"

namespace afl::scenario {

struct Tolerances {
    double conservation = 1e-9;         // closed-form unsigned relation
    double signed_conservation = 1e-10;
    double restriction = 1e-9;
    double engine_agreement = 1e-9;     // |K_closed - K_oracle|, JC and XY
    double oracle_conservation = 1e-7;  // JC and XY oracle
    double se_relative = 2e-2;          // SE oracle K_A vs closed form, relative
    double se_conservation = 2e-2;      // SE oracle relation residual
    double rank = 1e-10;                // third Gram eigenvalue
    double moon_constancy = 1e-10;
    double norm_drift = 1e-11;
};

struct Engines {
    bool closed_form = true;
    bool oracle = false;
};

struct ScenarioConfig {
    std::string name = "scenario";
    channels::ChannelModel model = channels::JaynesCummings{};
    double theta = 0.0;
    double t_max = 1.0;
    int n_points = 201;
    Engines engines;
    int oracle_modes = 400;                    // SE only
    std::optional<double> oracle_bandwidth;    // SE only; default 40 gamma_A
    std::optional<std::filesystem::path> output_dir;
    Tolerances tol;
    std::map<std::string, std::string> raw;    // parsed key/values, echoed in the sidecar

    void validate() const;
};

// Flat `key = value` text, dotted keys, '#' or ';' comments. Angles accept
// plain numbers or forms like "pi/4", "2*pi/5", "3pi/4". ConfigError on any
// unknown key, bad value or missing required key.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

double parse_angle(std::string_view text);

struct BundledScenario {
    std::string name;
    std::string description;
    std::string config_text;
};

const std::vector<BundledScenario>& list_scenarios();
const BundledScenario* find_scenario(std::string_view name);

// One named column per CSV field; absent engines leave their columns out.
struct KSeries {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    const std::vector<double>* column(std::string_view name) const;
    void add(std::string name, std::vector<double> values);
};

struct CheckResult {
    std::string name;
    double max_value = 0.0;
    double threshold = 0.0;
    std::size_t samples = 0;
    bool pass = true;
};

struct ScenarioResult {
    ScenarioConfig config;
    KSeries series;
    std::vector<CheckResult> checks;
    std::map<std::string, std::string> metadata;
    bool passed() const;
};

ScenarioResult run_scenario(const ScenarioConfig& config);

// Fixed formatting: 17 significant digits, '.' separator, '\n' endings.
std::string format_csv(const KSeries& series);
std::string format_sidecar(const ScenarioResult& result);

struct OutputPaths {
    std::filesystem::path csv;
    std::filesystem::path json;
};

// Writes <dir>/<name>.csv and <dir>/<name>.json; IoError on failure.
OutputPaths write_outputs(const ScenarioResult& result, const std::filesystem::path& dir);

struct VerifyReport {
    std::string profile;
    std::vector<CheckResult> checks;
    double seconds = 0.0;
    bool passed() const;
};

// Profiles: "strict" (closed forms), "oracle" (JC + XY dual engine),
// "se-discretized" (SE flat-grid oracle inside its validity window).
VerifyReport verify_all(std::string_view profile);

std::string format_report(const VerifyReport& report);

}  // namespace afl::scenario
