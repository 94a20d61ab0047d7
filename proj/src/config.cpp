#include "stratlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stratlab {

namespace {

using nlohmann::json;

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path + ": expected a number");
    return v.get<double>();
}

std::size_t as_count(const json& v, const std::string& path) {
    if (!v.is_number_unsigned())
        throw ConfigError(path + ": expected a non-negative integer");
    return v.get<std::size_t>();
}

bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) throw ConfigError(path + ": expected a boolean");
    return v.get<bool>();
}

std::vector<double> as_number_list(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path + ": expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

// walk an object section, dispatching known keys and warning on the rest
template <class Handler>
void walk_section(const json& sec, const std::string& prefix,
                  const std::vector<std::string>& known, Handler handle,
                  std::vector<std::string>& warnings) {
    if (!sec.is_object()) throw ConfigError(prefix + ": expected an object");
    for (auto it = sec.begin(); it != sec.end(); ++it) {
        const std::string path = prefix + "." + it.key();
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            warnings.push_back("unknown key " + path);
            continue;
        }
        handle(it.key(), it.value(), path);
    }
}

void check(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}

}  // namespace

RunConfig parse_config_text(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root: expected an object");

    RunConfig cfg;
    const std::vector<std::string> top_known = {"grid",       "physics", "time",
                                                "initial_data", "window", "q_list",
                                                "output_dir"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (std::find(top_known.begin(), top_known.end(), it.key()) ==
            top_known.end())
            cfg.warnings.push_back("unknown key " + it.key());
    }

    if (doc.contains("grid"))
        walk_section(
            doc["grid"], "grid", {"n", "box_length"},
            [&](const std::string& k, const json& v, const std::string& path) {
                if (k == "n") cfg.n = as_count(v, path);
                else cfg.box_length = as_number(v, path);
            },
            cfg.warnings);

    if (doc.contains("physics"))
        walk_section(
            doc["physics"], "physics", {"nu", "nu_prime", "epsilons"},
            [&](const std::string& k, const json& v, const std::string& path) {
                if (k == "nu") cfg.nu = as_number(v, path);
                else if (k == "nu_prime") cfg.nu_prime = as_number(v, path);
                else cfg.epsilons = as_number_list(v, path);
            },
            cfg.warnings);

    if (doc.contains("time"))
        walk_section(
            doc["time"], "time", {"dt", "t_final", "sample_stride"},
            [&](const std::string& k, const json& v, const std::string& path) {
                if (k == "dt") cfg.dt = as_number(v, path);
                else if (k == "t_final") cfg.t_final = as_number(v, path);
                else cfg.sample_stride = as_count(v, path);
            },
            cfg.warnings);

    if (doc.contains("initial_data"))
        walk_section(
            doc["initial_data"], "initial_data",
            {"seed", "spectrum_peak", "amplitude_strat", "amplitude_osc",
             "theta_profile", "exclude_degenerate_line"},
            [&](const std::string& k, const json& v, const std::string& path) {
                if (k == "seed") cfg.ic.seed = as_count(v, path);
                else if (k == "spectrum_peak")
                    cfg.ic.spectrum_peak = as_number(v, path);
                else if (k == "amplitude_strat")
                    cfg.ic.amplitude_strat = as_number(v, path);
                else if (k == "amplitude_osc")
                    cfg.ic.amplitude_osc = as_number(v, path);
                else if (k == "exclude_degenerate_line")
                    cfg.ic.exclude_degenerate_line = as_bool(v, path);
                else {
                    // storage-order modes; entries are re or [re, im]
                    if (!v.is_array())
                        throw ConfigError(path + ": expected an array");
                    cfg.ic.theta_profile.clear();
                    for (std::size_t i = 0; i < v.size(); ++i) {
                        const std::string p =
                            path + "[" + std::to_string(i) + "]";
                        const json& e = v[i];
                        if (e.is_number())
                            cfg.ic.theta_profile.emplace_back(e.get<double>(), 0.0);
                        else if (e.is_array() && e.size() == 2)
                            cfg.ic.theta_profile.emplace_back(
                                as_number(e[0], p), as_number(e[1], p));
                        else
                            throw ConfigError(p + ": expected re or [re, im]");
                    }
                }
            },
            cfg.warnings);

    if (doc.contains("window"))
        walk_section(
            doc["window"], "window", {"m", "M"},
            [&](const std::string& k, const json& v, const std::string& path) {
                if (k == "m") cfg.trunc_m = as_number(v, path);
                else cfg.trunc_M = as_number(v, path);
            },
            cfg.warnings);

    if (doc.contains("q_list")) cfg.q_list = as_number_list(doc["q_list"], "q_list");
    if (doc.contains("output_dir")) {
        if (!doc["output_dir"].is_string())
            throw ConfigError("output_dir: expected a string");
        cfg.output_dir = doc["output_dir"].get<std::string>();
    }

    check(cfg.n >= 8, "grid.n: need at least 8 points per axis");
    check(cfg.box_length > 0.0, "grid.box_length: must be positive");
    check(cfg.nu > 0.0, "physics.nu: must be positive");
    check(cfg.nu_prime > 0.0, "physics.nu_prime: must be positive");
    check(!cfg.epsilons.empty(), "physics.epsilons: must not be empty");
    for (double e : cfg.epsilons)
        check(e > 0.0, "physics.epsilons: entries must be positive");
    check(cfg.dt > 0.0, "time.dt: must be positive");
    check(cfg.t_final > 0.0, "time.t_final: must be positive");
    check(cfg.sample_stride >= 1, "time.sample_stride: must be at least 1");
    check(cfg.ic.spectrum_peak > 0.0, "initial_data.spectrum_peak: must be positive");
    check(cfg.ic.amplitude_strat >= 0.0,
          "initial_data.amplitude_strat: must be non-negative");
    check(cfg.ic.amplitude_osc >= 0.0,
          "initial_data.amplitude_osc: must be non-negative");
    check(cfg.trunc_m > 0.0 && cfg.trunc_M > 0.0,
          "window: exponents must be positive");
    check(3.0 * cfg.trunc_M + cfg.trunc_m < 1.0,
          "window: need 3 M + m < 1 for a nonempty admissible range");
    check(!cfg.q_list.empty(), "q_list: must not be empty");
    for (double q : cfg.q_list)
        check(q >= 1.0, "q_list: entries must be at least 1");
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_to_text(const RunConfig& d) {
    json profile = json::array();
    for (const complex_t& z : d.ic.theta_profile)
        profile.push_back({z.real(), z.imag()});
    json doc;
    doc["grid"] = {{"n", d.n}, {"box_length", d.box_length}};
    doc["physics"] = {
        {"nu", d.nu}, {"nu_prime", d.nu_prime}, {"epsilons", d.epsilons}};
    doc["time"] = {{"dt", d.dt},
                   {"t_final", d.t_final},
                   {"sample_stride", d.sample_stride}};
    doc["initial_data"] = {{"seed", d.ic.seed},
                           {"spectrum_peak", d.ic.spectrum_peak},
                           {"amplitude_strat", d.ic.amplitude_strat},
                           {"amplitude_osc", d.ic.amplitude_osc},
                           {"theta_profile", profile},
                           {"exclude_degenerate_line", d.ic.exclude_degenerate_line}};
    doc["window"] = {{"m", d.trunc_m}, {"M", d.trunc_M}};
    doc["q_list"] = d.q_list;
    doc["output_dir"] = d.output_dir;
    return doc.dump(2) + "\n";
}

std::string default_config_text() { return config_to_text(RunConfig{}); }

}  // namespace stratlab
