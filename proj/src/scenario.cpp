#include "afl/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "afl/errors.hpp"
#include "afl/invariants.hpp"
#include "afl/oracle.hpp"

namespace afl::scenario {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, const std::string& key) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError("key '" + key + "': expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text, const std::string& key) {
    text = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc{}) throw IoError("failed to format number");
    return std::string(buf, ptr);
}

// Running maximum for one named check.
struct Tracker {
    std::string name;
    double threshold = 0.0;
    double max_value = 0.0;
    std::size_t samples = 0;

    void add(double v) {
        // NaN must fail the check, so it poisons the maximum.
        if (std::isnan(v) || v > max_value || std::isnan(max_value)) max_value = v;
        ++samples;
    }
    CheckResult result() const {
        return {name, max_value, threshold, samples, samples == 0 || max_value <= threshold};
    }
};

}  // namespace

double parse_angle(std::string_view text) {
    text = trim(text);
    const auto pi_pos = text.find("pi");
    if (pi_pos == std::string_view::npos) return parse_number(text, "angle");

    double numerator = 1.0;
    auto head = trim(text.substr(0, pi_pos));
    if (!head.empty()) {
        if (head.back() == '*') head = trim(head.substr(0, head.size() - 1));
        numerator = parse_number(head, "angle");
    }
    double denominator = 1.0;
    auto tail = trim(text.substr(pi_pos + 2));
    if (!tail.empty()) {
        if (tail.front() != '/') throw ConfigError("cannot parse angle '" + std::string(text) + "'");
        denominator = parse_number(tail.substr(1), "angle");
        if (denominator == 0.0) throw ConfigError("angle denominator is zero");
    }
    return numerator * kPi / denominator;
}

void ScenarioConfig::validate() const {
    if (!(t_max > 0.0)) throw ConfigError("run.t_max must be > 0");
    if (n_points < 2) throw ConfigError("run.n_points must be >= 2");
    if (!engines.closed_form && !engines.oracle) throw ConfigError("at least one engine must be selected");
    try {
        channels::validate(model);
        PreparationAngle{theta};
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    if (engines.oracle && channels::kind_of(model) == channels::ModelKind::SpontaneousEmission) {
        const auto& se = std::get<channels::SpontaneousEmission>(model);
        const double bw = oracle_bandwidth.value_or(40.0 * se.gamma_A);
        if (oracle_modes < 50 || bw < 20.0 * se.gamma_A) {
            throw ConfigError("oracle grid needs oracle.modes >= 50 and oracle.bandwidth >= 20 gamma_A");
        }
    }
}

ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig cfg;
    std::map<std::string, std::string> kv;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        kv[key] = value;
    }

    const auto take = [&kv](const std::string& key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    const auto require = [&take](const std::string& key) {
        auto v = take(key);
        if (!v) throw ConfigError("missing required key '" + key + "'");
        return *v;
    };

    static const std::vector<std::string> known = {
        "name", "model.kind", "model.gamma_A", "model.omega_A", "model.g", "model.N", "model.J", "theta",
        "run.t_max", "run.n_points", "run.engines", "oracle.modes", "oracle.bandwidth", "output.dir",
        "tol.conservation", "tol.signed_conservation", "tol.restriction", "tol.engine_agreement",
        "tol.oracle_conservation", "tol.se_relative", "tol.se_conservation", "tol.rank",
        "tol.moon_constancy", "tol.norm_drift"};
    for (const auto& [key, value] : kv) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("unknown key '" + key + "'");
        }
    }

    if (auto v = take("name")) cfg.name = *v;

    const std::string kind = require("model.kind");
    const auto number_or = [&](const std::string& key, double fallback) {
        auto v = take(key);
        return v ? parse_number(*v, key) : fallback;
    };
    if (kind == "se") {
        channels::SpontaneousEmission m;
        m.gamma_A = number_or("model.gamma_A", 1.0);
        m.omega_A = number_or("model.omega_A", 0.0);
        cfg.model = m;
    } else if (kind == "jc") {
        channels::JaynesCummings m;
        m.g = number_or("model.g", 1.0);
        m.omega_A = number_or("model.omega_A", 0.0);
        cfg.model = m;
    } else if (kind == "xy") {
        channels::XYChain m;
        if (auto v = take("model.N")) m.N = parse_int(*v, "model.N");
        m.J = number_or("model.J", 1.0);
        cfg.model = m;
    } else {
        throw ConfigError("model.kind must be one of se, jc, xy; got '" + kind + "'");
    }

    cfg.theta = parse_angle(require("theta"));
    {
        auto t_max = require("run.t_max");
        // t_max also accepts pi forms ("2pi") since JC runs are naturally in units of pi/g.
        cfg.t_max = t_max.find("pi") != std::string::npos ? parse_angle(t_max) : parse_number(t_max, "run.t_max");
    }
    if (auto v = take("run.n_points")) cfg.n_points = parse_int(*v, "run.n_points");
    if (auto v = take("run.engines")) {
        cfg.engines = {false, false};
        std::string_view list = *v;
        while (!list.empty()) {
            const auto comma = list.find(',');
            const auto item = trim(list.substr(0, comma));
            list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
            if (item == "closed_form" || item == "closed") cfg.engines.closed_form = true;
            else if (item == "oracle") cfg.engines.oracle = true;
            else if (item == "both") cfg.engines = {true, true};
            else throw ConfigError("unknown engine '" + std::string(item) + "'");
        }
    }
    if (auto v = take("oracle.modes")) cfg.oracle_modes = parse_int(*v, "oracle.modes");
    if (auto v = take("oracle.bandwidth")) cfg.oracle_bandwidth = parse_number(*v, "oracle.bandwidth");
    if (auto v = take("output.dir")) cfg.output_dir = *v;

    auto& tol = cfg.tol;
    tol.conservation = number_or("tol.conservation", tol.conservation);
    tol.signed_conservation = number_or("tol.signed_conservation", tol.signed_conservation);
    tol.restriction = number_or("tol.restriction", tol.restriction);
    tol.engine_agreement = number_or("tol.engine_agreement", tol.engine_agreement);
    tol.oracle_conservation = number_or("tol.oracle_conservation", tol.oracle_conservation);
    tol.se_relative = number_or("tol.se_relative", tol.se_relative);
    tol.se_conservation = number_or("tol.se_conservation", tol.se_conservation);
    tol.rank = number_or("tol.rank", tol.rank);
    tol.moon_constancy = number_or("tol.moon_constancy", tol.moon_constancy);
    tol.norm_drift = number_or("tol.norm_drift", tol.norm_drift);

    cfg.raw = std::move(kv);
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    auto cfg = parse_config(buf.str());
    if (!cfg.raw.count("name")) cfg.name = path.stem().string();
    return cfg;
}

const std::vector<BundledScenario>& list_scenarios() {
    static const std::vector<BundledScenario> scenarios = [] {
        std::vector<BundledScenario> out;
        const auto add = [&out](std::string name, std::string description, std::string body) {
            out.push_back({name, std::move(description), "name = " + name + "\n" + body});
        };
        const std::vector<std::pair<std::string, std::string>> angles = {
            {"a", "pi/8"}, {"b", "pi/6"}, {"c", "pi/4"}, {"d", "pi/3"}};
        for (const auto& [panel, theta] : angles) {
            add("fig2" + panel, "spontaneous emission, theta = " + theta + ", gamma t in [0, 6]",
                "model.kind = se\nmodel.gamma_A = 1\ntheta = " + theta +
                    "\nrun.t_max = 6\nrun.n_points = 401\nrun.engines = closed_form\n");
        }
        for (const auto& [panel, theta] : angles) {
            add("fig4" + panel, "Jaynes-Cummings, theta = " + theta + ", g t in [0, 2 pi]",
                "model.kind = jc\nmodel.g = 1\ntheta = " + theta +
                    "\nrun.t_max = 2pi\nrun.n_points = 401\nrun.engines = both\n");
        }
        for (const auto& [panel, theta] : angles) {
            add("fig5" + panel, "XY chain N = 10, theta = " + theta + ", J t in [0, 50]",
                "model.kind = xy\nmodel.N = 10\nmodel.J = 1\ntheta = " + theta +
                    "\nrun.t_max = 50\nrun.n_points = 1001\nrun.engines = both\n");
        }
        add("se-local-max", "spontaneous emission with cos^2 > sin^2: interior maximum of K_A",
            "model.kind = se\nmodel.gamma_A = 1\ntheta = pi/10\nrun.t_max = 8\nrun.n_points = 401\n"
            "run.engines = closed_form\n");
        add("jc-transfer", "Jaynes-Cummings full transfer of K_M to the cavity at g t = pi/2",
            "model.kind = jc\nmodel.g = 1\ntheta = pi/3\nrun.t_max = pi\nrun.n_points = 401\nrun.engines = both\n");
        add("xy-n10-crosscheck", "XY chain N = 10, closed form against the dense oracle over J t in [0, 200]",
            "model.kind = xy\nmodel.N = 10\nmodel.J = 1\ntheta = 2pi/5\nrun.t_max = 200\nrun.n_points = 1000\n"
            "run.engines = both\n");
        return out;
    }();
    return scenarios;
}

const BundledScenario* find_scenario(std::string_view name) {
    for (const auto& s : list_scenarios()) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

const std::vector<double>* KSeries::column(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return &columns[i];
    }
    return nullptr;
}

void KSeries::add(std::string name, std::vector<double> values) {
    if (!columns.empty() && values.size() != rows()) throw InvalidInputError("column length mismatch");
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

bool ScenarioResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
    config.validate();
    const PreparationAngle theta(config.theta);
    const Branch branch = theta.branch();
    const auto kind = channels::kind_of(config.model);
    const bool is_se = kind == channels::ModelKind::SpontaneousEmission;
    const auto& tol = config.tol;
    const double k_moon = moon_weight(theta);

    ScenarioResult result;
    result.config = config;
    auto& meta = result.metadata;
    meta["model"] = channels::to_string(kind);
    meta["branch"] = to_string(branch);
    meta["theta"] = format_double(config.theta);
    meta["K_M"] = format_double(k_moon);

    const auto n = static_cast<std::size_t>(config.n_points);
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i) {
        times[i] = config.t_max * static_cast<double>(i) / static_cast<double>(n - 1);
    }

    std::vector<double> p_closed, ka_closed, kA_closed;
    std::vector<double> p_oracle, kA_oracle, ka_oracle, kM_oracle;
    std::vector<bool> in_window(n, true);

    Tracker closed_cons{"closed.conservation", tol.conservation};
    Tracker closed_restrict{"closed.restriction", tol.restriction};
    Tracker closed_signed{"closed.signed", tol.signed_conservation};
    Tracker closed_core{"closed.schmidt_engine", tol.engine_agreement};
    Tracker oracle_rank{"oracle.rank", tol.rank};
    Tracker oracle_norm{"oracle.norm_drift", tol.norm_drift};
    Tracker oracle_moon{"oracle.moon_constancy", tol.moon_constancy};
    Tracker oracle_signed{"oracle.signed", tol.signed_conservation};
    Tracker oracle_cons{"oracle.conservation", is_se ? tol.se_conservation : tol.oracle_conservation};
    Tracker agreement{is_se ? "oracle.vs_closed_relative" : "oracle.vs_closed", is_se ? tol.se_relative
                                                                                       : tol.engine_agreement};

    if (config.engines.closed_form) {
        const channels::ChannelEngine engine(config.model);
        p_closed.resize(n);
        kA_closed.resize(n);
        ka_closed.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const FlowCoordinate p = engine.flow(times[i]);
            p_closed[i] = p.value();
            kA_closed[i] = closed_form_KA(p, theta);
            ka_closed[i] = closed_form_Ka(p, theta);
            const auto rep = invariants::relation_report(times[i], p, theta, kA_closed[i], ka_closed[i], k_moon, kind);
            closed_signed.add(rep.signed_residual);
            if (branch == Branch::MoonDominant) {
                closed_cons.add(rep.conservation_residual);
                closed_restrict.add(std::max(rep.restrict_A_residual, rep.restrict_a_residual));
            }
            // Same snapshot through the generic Schmidt machinery.
            const auto snap = engine.snapshot(theta, times[i]);
            closed_core.add(std::max({std::abs(schmidt_weight(snap, BipartitionCut::QubitVsRest) - kA_closed[i]),
                                      std::abs(schmidt_weight(snap, BipartitionCut::PartnerVsRest) - ka_closed[i]),
                                      std::abs(schmidt_weight(snap, BipartitionCut::MoonVsRest) - k_moon)}));
        }
    }

    if (config.engines.oracle) {
        channels::ChannelModel oracle_model = config.model;
        if (is_se) {
            auto se = std::get<channels::SpontaneousEmission>(config.model);
            const double bw = config.oracle_bandwidth.value_or(40.0 * se.gamma_A);
            se.mode_grid = oracle::flat_mode_grid(config.oracle_modes, bw, se.gamma_A, se.omega_A);
            const double limit = oracle::se_validity_limit(*se.mode_grid, se.gamma_A);
            meta["oracle.modes"] = std::to_string(config.oracle_modes);
            meta["oracle.bandwidth"] = format_double(bw);
            meta["oracle.spacing"] = format_double(bw / config.oracle_modes);
            meta["oracle.coupling"] = format_double(se.mode_grid->gs.front());
            meta["oracle.recurrence_time"] = format_double(oracle::recurrence_time(*se.mode_grid));
            meta["oracle.validity_limit"] = format_double(limit);
            std::size_t inside = 0;
            for (std::size_t i = 0; i < n; ++i) {
                in_window[i] = times[i] <= limit;
                inside += in_window[i] ? 1 : 0;
            }
            meta["oracle.points_in_window"] = std::to_string(inside);
            oracle_model = se;
        }
        meta["oracle.frame"] = oracle::frame_convention(oracle_model);

        const oracle::OracleEngine engine(oracle_model);
        p_oracle.resize(n);
        kA_oracle.resize(n);
        ka_oracle.resize(n);
        kM_oracle.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto pt = engine.evaluate(theta, times[i]);
            p_oracle[i] = pt.p;
            kA_oracle[i] = pt.K_A;
            ka_oracle[i] = pt.K_a;
            kM_oracle[i] = pt.K_M;
            oracle_rank.add(pt.max_third_eigenvalue);
            oracle_norm.add(pt.norm_drift);
            oracle_moon.add(std::abs(pt.K_M - k_moon));
            const FlowCoordinate p(pt.p);
            oracle_signed.add(invariants::signed_conservation_residual(p, theta));
            if (!in_window[i]) continue;
            if (branch == Branch::MoonDominant) {
                oracle_cons.add(invariants::conservation_residual(pt.K_A, pt.K_a, pt.K_M, branch));
            }
            if (config.engines.closed_form) {
                if (is_se) {
                    agreement.add(std::abs(pt.K_A - kA_closed[i]) / kA_closed[i]);
                } else {
                    agreement.add(std::max(std::abs(pt.K_A - kA_closed[i]), std::abs(pt.K_a - ka_closed[i])));
                }
            }
        }
    }

    auto& series = result.series;
    series.add("time", times);
    series.add("p", config.engines.closed_form ? p_closed : p_oracle);
    if (config.engines.closed_form) {
        series.add("K_A_closed", kA_closed);
        series.add("K_a_closed", ka_closed);
    }
    series.add("K_M", config.engines.closed_form ? std::vector<double>(n, k_moon) : kM_oracle);
    if (config.engines.oracle) {
        series.add("K_A_oracle", kA_oracle);
        series.add("K_a_oracle", ka_oracle);
    }
    const auto& kA = config.engines.closed_form ? kA_closed : kA_oracle;
    const auto& ka = config.engines.closed_form ? ka_closed : ka_oracle;
    const auto& pp = config.engines.closed_form ? p_closed : p_oracle;
    if (branch == Branch::MoonDominant) {
        std::vector<double> res(n);
        for (std::size_t i = 0; i < n; ++i) res[i] = invariants::conservation_residual(kA[i], ka[i], k_moon, branch);
        series.add("res_conservation", std::move(res));
    }
    std::vector<double> signed_res(n);
    for (std::size_t i = 0; i < n; ++i) {
        signed_res[i] = invariants::signed_conservation_residual(FlowCoordinate(pp[i]), theta);
    }
    series.add("res_signed", std::move(signed_res));

    if (config.engines.closed_form) {
        for (const auto* t : {&closed_cons, &closed_restrict, &closed_signed, &closed_core}) {
            if (t->samples > 0) result.checks.push_back(t->result());
        }
    }
    if (config.engines.oracle) {
        for (const auto* t : {&oracle_rank, &oracle_norm, &oracle_moon, &oracle_signed, &oracle_cons, &agreement}) {
            if (t->samples > 0) result.checks.push_back(t->result());
        }
    }
    return result;
}

std::string format_csv(const KSeries& series) {
    std::string out;
    for (std::size_t c = 0; c < series.names.size(); ++c) {
        if (c) out += ',';
        out += series.names[c];
    }
    out += '\n';
    for (std::size_t r = 0; r < series.rows(); ++r) {
        for (std::size_t c = 0; c < series.columns.size(); ++c) {
            if (c) out += ',';
            out += format_double(series.columns[c][r]);
        }
        out += '\n';
    }
    return out;
}

std::string format_sidecar(const ScenarioResult& result) {
    nlohmann::ordered_json j;
    j["name"] = result.config.name;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : result.config.raw) cfg[k] = v;
    j["config"] = cfg;
    j["resolved"] = {{"theta", result.config.theta},
                     {"t_max", result.config.t_max},
                     {"n_points", result.config.n_points},
                     {"engines",
                      {{"closed_form", result.config.engines.closed_form}, {"oracle", result.config.engines.oracle}}}};
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto& [k, v] : result.metadata) meta[k] = v;
    j["metadata"] = meta;
    j["columns"] = result.series.names;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : result.checks) {
        checks.push_back({{"name", c.name},
                          {"max", c.max_value},
                          {"threshold", c.threshold},
                          {"samples", c.samples},
                          {"pass", c.pass}});
    }
    j["checks"] = checks;
    j["pass"] = result.passed();
    return j.dump(2) + "\n";
}

OutputPaths write_outputs(const ScenarioResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    OutputPaths paths{dir / (result.config.name + ".csv"), dir / (result.config.name + ".json")};
    const auto write = [](const std::filesystem::path& p, const std::string& body) {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + p.string() + "' for writing");
        out << body;
        out.flush();
        if (!out) throw IoError("failed writing '" + p.string() + "'");
    };
    write(paths.csv, format_csv(result.series));
    write(paths.json, format_sidecar(result));
    return paths;
}

bool VerifyReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

struct LatticeModel {
    std::string tag;
    channels::ChannelModel model;
    double t_max;
};

void merge_checks(std::vector<CheckResult>& into, const std::string& prefix, const std::vector<CheckResult>& from) {
    for (const auto& c : from) {
        const std::string name = prefix + "/" + c.name;
        auto it = std::find_if(into.begin(), into.end(), [&](const CheckResult& x) { return x.name == name; });
        if (it == into.end()) {
            into.push_back(c);
            into.back().name = name;
            continue;
        }
        it->max_value = std::max(it->max_value, c.max_value);
        it->samples += c.samples;
        it->pass = it->pass && c.pass;
    }
}

}  // namespace

VerifyReport verify_all(std::string_view profile) {
    const auto start = std::chrono::steady_clock::now();
    VerifyReport report;
    report.profile = std::string(profile);

    const std::vector<double> thetas = {0.0,          kPi / 8.0, kPi / 6.0,       kPi / 4.0,
                                        kPi / 3.0,    2.0 * kPi / 5.0, kPi / 2.0, 3.0 * kPi / 4.0};
    std::vector<LatticeModel> models;
    Engines engines;
    int n_points = 200;

    if (profile == "strict") {
        models = {{"se", channels::SpontaneousEmission{1.0, 0.0, std::nullopt}, 10.0},
                  {"jc", channels::JaynesCummings{1.0, 0.0}, 2.0 * kPi},
                  {"xy1", channels::XYChain{1, 1.0}, 50.0},
                  {"xy4", channels::XYChain{4, 1.0}, 50.0},
                  {"xy10", channels::XYChain{10, 1.0}, 50.0}};
        engines = {true, false};
    } else if (profile == "oracle") {
        models = {{"jc", channels::JaynesCummings{1.0, 0.0}, 2.0 * kPi},
                  {"xy1", channels::XYChain{1, 1.0}, 50.0},
                  {"xy4", channels::XYChain{4, 1.0}, 50.0},
                  {"xy10", channels::XYChain{10, 1.0}, 50.0}};
        engines = {true, true};
    } else if (profile == "se-discretized") {
        models = {{"se", channels::SpontaneousEmission{1.0, 0.0, std::nullopt}, 5.0}};
        engines = {true, true};
        n_points = 101;
    } else {
        throw ConfigError("unknown verify profile '" + std::string(profile) +
                          "' (expected strict, oracle or se-discretized)");
    }

    for (const auto& lm : models) {
        for (double theta : thetas) {
            ScenarioConfig cfg;
            cfg.name = lm.tag;
            cfg.model = lm.model;
            cfg.theta = theta;
            cfg.t_max = lm.t_max;
            cfg.n_points = n_points;
            cfg.engines = engines;
            if (profile == "oracle") cfg.tol.engine_agreement = cfg.tol.oracle_conservation;
            merge_checks(report.checks, lm.tag, run_scenario(cfg).checks);
        }
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string format_report(const VerifyReport& report) {
    nlohmann::ordered_json j;
    j["profile"] = report.profile;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"max", c.max_value},
                          {"threshold", c.threshold},
                          {"samples", c.samples},
                          {"pass", c.pass}});
    }
    j["checks"] = checks;
    j["seconds"] = report.seconds;
    j["pass"] = report.passed();
    return j.dump(2) + "\n";
}

}  // namespace afl::scenario
