// config.cpp: JSON configuration, presets and per-point model resolution

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

#include "corrwitness/cli.hpp"

namespace corrwitness::cli {

using nlohmann::json;

namespace {

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object())
        throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            known = known || key == a;
        if (!known)
            throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

double number(const json& j, const std::string& key) {
    if (!j.is_number())
        throw ConfigError("'" + key + "' must be a number");
    const double x = j.get<double>();
    if (!std::isfinite(x))
        throw ConfigError("'" + key + "' must be finite");
    return x;
}

std::vector<double> number_list(const json& j, const std::string& key) {
    if (!j.is_array())
        throw ConfigError("'" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : j)
        out.push_back(number(x, key));
    return out;
}

BathSpec parse_bath(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ConfigError("bath must be an object with a string 'type'");
    const auto type = j["type"].get<std::string>();
    if (type == "ohmic") {
        require_keys(j, "bath", {"type", "s", "omega_c"});
        if (!j.contains("s") || !j.contains("omega_c"))
            throw ConfigError("ohmic bath needs 's' and 'omega_c'");
        return OhmicBath{number(j["s"], "s"), number(j["omega_c"], "omega_c")};
    }
    if (type == "discrete") {
        require_keys(j, "bath", {"type", "modes"});
        if (!j.contains("modes") || !j["modes"].is_array() || j["modes"].empty())
            throw ConfigError("discrete bath needs a nonempty 'modes' array");
        DiscreteBath bath;
        for (const auto& m : j["modes"]) {
            require_keys(m, "bath mode", {"g", "omega"});
            if (!m.contains("g") || !m.contains("omega"))
                throw ConfigError("each mode needs 'g' and 'omega'");
            bath.modes.push_back({number(m["g"], "g"), number(m["omega"], "omega")});
        }
        return bath;
    }
    throw ConfigError("unknown bath type '" + type + "'");
}

json bath_to_json(const BathSpec& bath) {
    if (const auto* o = std::get_if<OhmicBath>(&bath))
        return {{"type", "ohmic"}, {"s", o->s}, {"omega_c", o->omega_c}};
    json modes = json::array();
    for (const auto& m : std::get<DiscreteBath>(bath).modes)
        modes.push_back({{"g", m.g}, {"omega", m.omega}});
    return {{"type", "discrete"}, {"modes", modes}};
}

RunConfig parse_object(const json& root) {
    if (root.is_object() && root.contains("manifest_version")) {
        if (!root.contains("config"))
            throw ConfigError("manifest has no 'config' section");
        return parse_object(root["config"]);
    }
    require_keys(root, "config", {"scenario", "e0", "e1", "temperature", "omega_p", "field_prefactor",
                                  "t_max", "n_steps", "bath", "sweep", "quadrature", "plots"});
    if (!root.contains("bath"))
        throw ConfigError("config needs a 'bath' section");
    if (!root.contains("temperature") && !(root.contains("sweep") && root["sweep"].contains("temperatures")))
        throw ConfigError("config needs 'temperature' or 'sweep.temperatures'");

    RunConfig c;
    if (root.contains("scenario")) {
        if (!root["scenario"].is_string())
            throw ConfigError("'scenario' must be a string");
        c.scenario = root["scenario"].get<std::string>();
    }
    auto& m = c.model;
    if (root.contains("e0")) m.e0 = number(root["e0"], "e0");
    if (root.contains("e1")) m.e1 = number(root["e1"], "e1");
    if (root.contains("omega_p")) m.omega_p = number(root["omega_p"], "omega_p");
    if (root.contains("field_prefactor")) m.field_prefactor = number(root["field_prefactor"], "field_prefactor");
    if (root.contains("t_max")) m.t_max = number(root["t_max"], "t_max");
    if (root.contains("n_steps")) {
        if (!root["n_steps"].is_number_integer() || root["n_steps"].get<long long>() < 0)
            throw ConfigError("'n_steps' must be a nonnegative integer");
        m.n_steps = root["n_steps"].get<std::size_t>();
    }
    m.bath = parse_bath(root["bath"]);
    if (root.contains("sweep")) {
        const auto& s = root["sweep"];
        require_keys(s, "sweep", {"temperatures", "couplings"});
        if (s.contains("temperatures")) c.sweep.temperatures = number_list(s["temperatures"], "temperatures");
        if (s.contains("couplings")) c.sweep.couplings = number_list(s["couplings"], "couplings");
        if ((s.contains("temperatures") && c.sweep.temperatures.empty()) ||
            (s.contains("couplings") && c.sweep.couplings.empty()))
            throw ConfigError("sweep axes must not be empty");
    }
    c.temperature = root.contains("temperature") ? number(root["temperature"], "temperature")
                                                 : c.sweep.temperatures.front();
    m.beta = beta_from_temperature(c.temperature);
    if (root.contains("quadrature")) {
        const auto& q = root["quadrature"];
        require_keys(q, "quadrature", {"rel_tol", "abs_tol", "max_subdivisions", "panel_policy"});
        if (q.contains("rel_tol")) c.quadrature.rel_tol = number(q["rel_tol"], "rel_tol");
        if (q.contains("abs_tol")) c.quadrature.abs_tol = number(q["abs_tol"], "abs_tol");
        if (q.contains("max_subdivisions")) {
            if (!q["max_subdivisions"].is_number_integer() || q["max_subdivisions"].get<long long>() < 1)
                throw ConfigError("'max_subdivisions' must be a positive integer");
            c.quadrature.max_subdivisions = q["max_subdivisions"].get<std::size_t>();
        }
        if (q.contains("panel_policy")) {
            const auto p = q["panel_policy"].is_string() ? q["panel_policy"].get<std::string>() : "";
            if (p == "oscillation_aware")
                c.quadrature.panel_policy = numerics::PanelPolicy::oscillation_aware;
            else if (p == "fixed")
                c.quadrature.panel_policy = numerics::PanelPolicy::fixed;
            else
                throw ConfigError("'panel_policy' must be \"oscillation_aware\" or \"fixed\"");
        }
    }
    if (root.contains("plots")) {
        if (!root["plots"].is_boolean())
            throw ConfigError("'plots' must be true or false");
        c.plots = root["plots"].get<bool>();
    }
    c.validate();
    return c;
}

RunConfig figure(const std::string& name, double kbt, std::vector<double> couplings, double t_max,
                 std::size_t n_steps) {
    RunConfig c;
    c.scenario = name;
    c.temperature = kbt;
    c.model.e0 = 0.0;
    c.model.e1 = 1.0;
    c.model.omega_p = 1.0;
    c.model.field_prefactor = 1.0;
    c.model.t_max = t_max;
    c.model.n_steps = n_steps;
    c.model.bath = OhmicBath{couplings.front(), 0.2};
    if (couplings.size() > 1)
        c.sweep.couplings = std::move(couplings);
    c.model.beta = beta_from_temperature(kbt);
    return c;
}

} // namespace

std::vector<double> RunConfig::temperatures() const {
    return sweep.temperatures.empty() ? std::vector<double>{temperature} : sweep.temperatures;
}

std::vector<double> RunConfig::couplings() const {
    if (!sweep.couplings.empty())
        return sweep.couplings;
    if (const auto* o = std::get_if<OhmicBath>(&model.bath))
        return {o->s};
    return {0.0};
}

void RunConfig::validate() const {
    if (scenario.empty())
        throw ConfigError("'scenario' must not be empty");
    if (!sweep.couplings.empty() && !std::holds_alternative<OhmicBath>(model.bath))
        throw ConfigError("sweep.couplings applies to ohmic baths only");
    if (model.n_steps < 3)
        throw ConfigError("n_steps must be >= 3");
    for (double t : temperatures())
        if (!std::isfinite(t) || t < 0.0)
            throw ConfigError("temperatures must be finite and >= 0");
    for (double s : sweep.couplings)
        if (!std::isfinite(s) || s < 0.0)
            throw ConfigError("couplings must be finite and >= 0");
    try {
        quadrature.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    for (double t : temperatures())
        for (double s : couplings())
            point_model(*this, t, s).validate();
}

ModelConfig point_model(const RunConfig& config, double temperature, double s) {
    ModelConfig m = config.model;
    m.beta = beta_from_temperature(temperature);
    if (auto* o = std::get_if<OhmicBath>(&m.bath))
        o->s = s;
    return m;
}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_object(root);
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const RunConfig& c, int indent) {
    json j;
    j["scenario"] = c.scenario;
    j["e0"] = c.model.e0;
    j["e1"] = c.model.e1;
    j["temperature"] = c.temperature;
    j["omega_p"] = c.model.omega_p;
    j["field_prefactor"] = c.model.field_prefactor;
    j["t_max"] = c.model.t_max;
    j["n_steps"] = c.model.n_steps;
    j["bath"] = bath_to_json(c.model.bath);
    if (!c.sweep.empty()) {
        json s = json::object();
        if (!c.sweep.temperatures.empty()) s["temperatures"] = c.sweep.temperatures;
        if (!c.sweep.couplings.empty()) s["couplings"] = c.sweep.couplings;
        j["sweep"] = s;
    }
    j["quadrature"] = {
        {"rel_tol", c.quadrature.rel_tol},
        {"abs_tol", c.quadrature.abs_tol},
        {"max_subdivisions", c.quadrature.max_subdivisions},
        {"panel_policy", c.quadrature.panel_policy == numerics::PanelPolicy::fixed ? "fixed"
                                                                                    : "oscillation_aware"},
    };
    j["plots"] = c.plots;
    return j.dump(indent);
}

std::vector<std::string> preset_names() {
    return {"fig1", "fig2", "fig3", "fig4a", "fig4b", "fig4c", "fig4"};
}

RunConfig preset(const std::string& name) {
    // single-coupling dipole runs span [0, 100]; the coupling sweeps span [0, 60]
    if (name == "fig1") return figure(name, 10.0, {1.0}, 100.0, 2001);
    if (name == "fig2") return figure(name, 1.0, {1.0}, 100.0, 2001);
    if (name == "fig3") return figure(name, 0.2, {1.0}, 100.0, 2001);
    const std::vector<double> s{1.0, 0.1, 0.05};
    if (name == "fig4a") return figure(name, 10.0, s, 60.0, 1201);
    if (name == "fig4b") return figure(name, 1.0, s, 60.0, 1201);
    if (name == "fig4c") return figure(name, 0.2, s, 60.0, 1201);
    if (name == "fig4") {
        auto c = figure(name, 10.0, s, 60.0, 1201);
        c.sweep.temperatures = {10.0, 1.0, 0.2};
        return c;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

Fault parse_fault(const std::string& name) {
    if (name.empty() || name == "none")
        return Fault::none;
    if (name == "psi2-phase-sign")
        return Fault::psi2_phase_sign;
    throw ConfigError("unknown fault '" + name + "'");
}

} // namespace corrwitness::cli
