#include "tstdp/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tstdp/errors.hpp"

namespace tstdp {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& message) {
    throw ConfigError("config error in " + where + ": " + message);
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) fail(where, "unknown key \"" + key + "\"");
    }
}

const json* find(const json& obj, const std::string& key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& value, const std::string& where, const std::string& key) {
    if (!value.is_number()) fail(where, "\"" + key + "\" must be a number");
    return value.get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback,
                 const std::string& where) {
    const json* v = find(obj, key);
    return v ? as_number(*v, where, key) : fallback;
}

int count_or(const json& obj, const std::string& key, int fallback, const std::string& where) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer() || v->get<int>() < 1) {
        fail(where, "\"" + key + "\" must be a positive integer");
    }
    return v->get<int>();
}

bool bool_or(const json& obj, const std::string& key, bool fallback, const std::string& where) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(where, "\"" + key + "\" must be a boolean");
    return v->get<bool>();
}

std::vector<double> number_array(const json& value, const std::string& where,
                                 const std::string& key) {
    if (!value.is_array() || value.empty()) fail(where, "\"" + key + "\" must be a non-empty array");
    std::vector<double> out;
    for (const json& item : value) out.push_back(as_number(item, where, key));
    return out;
}

// Accepts the model-unit key or its bias-current alias, never both. Time
// constants carry an _ms suffix in either spelling.
TripletParams parse_triplet_params(const json& obj, const std::string& where) {
    if (!obj.is_object()) fail(where, "parameter block must be an object");
    TripletParams params;
    std::set<std::string> allowed;
    for (int k = 0; k < kParamCount; ++k) {
        const ParamId id = kAllParams[k];
        const std::string suffix = is_amplitude(id) ? "" : "_ms";
        const std::string model_key = std::string(param_name(id)) + suffix;
        const std::string alias_key = std::string(bias_alias(id)) + suffix;
        allowed.insert(model_key);
        allowed.insert(alias_key);
        const json* model = find(obj, model_key);
        const json* alias = find(obj, alias_key);
        if (model && alias) {
            fail(where, "\"" + model_key + "\" and its alias \"" + alias_key +
                            "\" cannot both be set");
        }
        const json* chosen = model ? model : alias;
        if (!chosen) continue;
        const double raw = as_number(*chosen, where, model ? model_key : alias_key);
        set_param(params, id, is_amplitude(id) ? raw : raw * 1e-3);
    }
    check_keys(obj, allowed, where);
    try {
        params.validate();
    } catch (const std::exception& err) {
        fail(where, err.what());
    }
    return params;
}

PairParams parse_pair_params(const json& obj, const std::string& where, double* tau_s,
                             bool with_tau_s) {
    if (!obj.is_object()) fail(where, "parameter block must be an object");
    std::set<std::string> allowed = {"a_plus", "a_minus", "tau_plus_ms", "tau_minus_ms"};
    if (with_tau_s) allowed.insert("tau_s_ms");
    check_keys(obj, allowed, where);
    PairParams params;
    params.a_plus = number_or(obj, "a_plus", 0.0, where);
    params.a_minus = number_or(obj, "a_minus", 0.0, where);
    params.tau_plus = number_or(obj, "tau_plus_ms", params.tau_plus * 1e3, where) * 1e-3;
    params.tau_minus = number_or(obj, "tau_minus_ms", params.tau_minus * 1e3, where) * 1e-3;
    if (params.a_plus < 0 || params.a_minus < 0 || !(params.tau_plus > 0) ||
        !(params.tau_minus > 0)) {
        fail(where, "amplitudes must be >= 0 and time constants > 0");
    }
    if (with_tau_s) {
        *tau_s = number_or(obj, "tau_s_ms", 34.0, where) * 1e-3;
        if (!(*tau_s > 0)) fail(where, "tau_s_ms must be > 0");
    }
    return params;
}

RuleSpec parse_rule(const json& obj) {
    const std::string where = "section \"rule\"";
    if (!obj.is_object()) fail(where, "must be an object");
    check_keys(obj, {"type", "params"}, where);
    const json* type = find(obj, "type");
    if (!type || !type->is_string()) fail(where, "needs a string \"type\"");
    const json* params = find(obj, "params");
    if (!params) fail(where, "needs a \"params\" block");

    const std::string name = type->get<std::string>();
    if (name == "triplet") return parse_triplet_params(*params, where + ".params");
    if (name == "pair") return parse_pair_params(*params, where + ".params", nullptr, false);
    if (name == "suppressive") {
        SuppressionParams sp;
        sp.pair = parse_pair_params(*params, where + ".params", &sp.tau_s, true);
        return sp;
    }
    fail(where, "\"type\" must be one of pair, triplet, suppressive");
}

ParamMask parse_mask(const json& value, std::string* mask_name, const std::string& where) {
    if (value.is_string()) {
        const std::string name = value.get<std::string>();
        *mask_name = name;
        if (name == "full") return full_mask();
        if (name == "visual-cortex") return visual_cortex_mask();
        if (name == "hippocampal") return hippocampal_mask();
        fail(where, "unknown mask \"" + name + "\"");
    }
    if (!value.is_array()) fail(where, "\"mask\" must be a name or an array of parameter names");
    ParamMask mask;
    mask.fill(false);
    for (const json& item : value) {
        if (!item.is_string()) fail(where, "mask entries must be parameter names");
        const std::string name = item.get<std::string>();
        bool found = false;
        for (int k = 0; k < kParamCount; ++k) {
            if (name == param_name(kAllParams[k]) || name == bias_alias(kAllParams[k])) {
                mask[k] = true;
                found = true;
                break;
            }
        }
        if (!found) fail(where, "unknown parameter \"" + name + "\" in mask");
    }
    *mask_name = "custom";
    return mask;
}

std::vector<double> ms_to_s(std::vector<double> grid) {
    for (double& v : grid) v *= 1e-3;
    return grid;
}

} // namespace

RunConfig parse_config(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(origin + ": " + err.what());
    }
    if (!root.is_object()) throw ConfigError(origin + ": top level must be an object");

    RunConfig cfg;
    cfg.raw_text = text;
    cfg.bcm.sweep.rho_post_grid = default_rho_post_grid();

    const std::string top = "\"" + origin + "\"";
    check_keys(root,
               {"version", "seed", "out_dir", "rule", "window", "freq", "triplet", "quad", "six",
                "bcm", "fit", "mc"},
               top);

    const json* version = find(root, "version");
    if (!version || !version->is_number_integer()) fail(top, "needs an integer \"version\"");
    if (version->get<int>() != 1) fail(top, "unsupported config version");

    if (const json* seed = find(root, "seed")) {
        if (!seed->is_number_unsigned() && !seed->is_number_integer()) {
            fail(top, "\"seed\" must be an integer");
        }
        cfg.seed = seed->get<std::uint64_t>();
    }
    if (const json* out = find(root, "out_dir")) {
        if (!out->is_string()) fail(top, "\"out_dir\" must be a string");
        cfg.out_dir = out->get<std::string>();
    }

    const json* rule = find(root, "rule");
    if (!rule) fail(top, "needs a \"rule\" section");
    cfg.rule = parse_rule(*rule);

    if (const json* w = find(root, "window")) {
        const std::string where = "section \"window\"";
        check_keys(*w, {"dt_grid_ms", "dt_min_ms", "dt_max_ms", "dt_step_ms", "rho_hz", "n_pairs",
                        "trials"},
                   where);
        if (const json* grid = find(*w, "dt_grid_ms")) {
            cfg.window.dt_grid = ms_to_s(number_array(*grid, where, "dt_grid_ms"));
        } else {
            const double lo = number_or(*w, "dt_min_ms", -100.0, where);
            const double hi = number_or(*w, "dt_max_ms", 100.0, where);
            const double step = number_or(*w, "dt_step_ms", 5.0, where);
            if (!(step > 0) || hi < lo) fail(where, "need dt_step_ms > 0 and dt_max_ms >= dt_min_ms");
            cfg.window.dt_grid.clear();
            for (double ms = lo; ms <= hi + 1e-9; ms += step) {
                if (std::abs(ms) * 1e-3 < kResolutionFloor) continue; // dt = 0 is rejected
                cfg.window.dt_grid.push_back(ms * 1e-3);
            }
        }
        cfg.window.rho = number_or(*w, "rho_hz", 1.0, where);
        cfg.window.n_pairs = count_or(*w, "n_pairs", 60, where);
        cfg.window.trials = count_or(*w, "trials", 1, where);
    }

    if (const json* f = find(root, "freq")) {
        const std::string where = "section \"freq\"";
        check_keys(*f, {"dt_ms", "rho_grid_hz", "n_pairs", "trials"}, where);
        if (const json* dts = find(*f, "dt_ms")) {
            cfg.freq.dt_set = ms_to_s(dts->is_array() ? number_array(*dts, where, "dt_ms")
                                                      : std::vector<double>{as_number(*dts, where,
                                                                                      "dt_ms")});
        }
        if (const json* grid = find(*f, "rho_grid_hz")) {
            cfg.freq.rho_grid = number_array(*grid, where, "rho_grid_hz");
        }
        cfg.freq.n_pairs = count_or(*f, "n_pairs", 60, where);
        cfg.freq.trials = count_or(*f, "trials", 1, where);
    }

    if (const json* t = find(root, "triplet")) {
        const std::string where = "section \"triplet\"";
        check_keys(*t, {"kind", "points_ms", "rho_hz", "n", "trials"}, where);
        if (const json* kind = find(*t, "kind")) {
            if (!kind->is_string()) fail(where, "\"kind\" must be a string");
            try {
                cfg.triplet.kind = triplet_kind_from_string(kind->get<std::string>());
            } catch (const ProtocolError& err) {
                fail(where, err.what());
            }
        }
        if (const json* pts = find(*t, "points_ms")) {
            if (!pts->is_array() || pts->empty()) fail(where, "\"points_ms\" must be a non-empty array");
            cfg.triplet.points.clear();
            for (const json& item : *pts) {
                if (!item.is_array() || item.size() != 2) {
                    fail(where, "\"points_ms\" entries must be [dt1_ms, dt2_ms] pairs");
                }
                cfg.triplet.points.push_back({as_number(item[0], where, "points_ms") * 1e-3,
                                              as_number(item[1], where, "points_ms") * 1e-3});
            }
        }
        cfg.triplet.rho = number_or(*t, "rho_hz", 1.0, where);
        cfg.triplet.n = count_or(*t, "n", 60, where);
        cfg.triplet.trials = count_or(*t, "trials", 1, where);
    }

    if (const json* q = find(root, "quad")) {
        const std::string where = "section \"quad\"";
        check_keys(*q, {"dt_ms", "t_grid_ms", "rho_hz", "n", "trials"}, where);
        cfg.quad.dt = number_or(*q, "dt_ms", 5.0, where) * 1e-3;
        if (const json* grid = find(*q, "t_grid_ms")) {
            cfg.quad.t_grid = ms_to_s(number_array(*grid, where, "t_grid_ms"));
        }
        cfg.quad.rho = number_or(*q, "rho_hz", 1.0, where);
        cfg.quad.n = count_or(*q, "n", 60, where);
        cfg.quad.trials = count_or(*q, "trials", 1, where);
    }

    if (const json* s = find(root, "six")) {
        const std::string where = "section \"six\"";
        check_keys(*s, {"dt1_ms", "dt2_ms", "rho_hz", "n"}, where);
        cfg.six.gap1 = number_or(*s, "dt1_ms", 5.0, where) * 1e-3;
        cfg.six.gap2 = number_or(*s, "dt2_ms", 5.0, where) * 1e-3;
        cfg.six.rho = number_or(*s, "rho_hz", 0.2, where);
        cfg.six.n = count_or(*s, "n", 60, where);
    }

    if (const json* b = find(root, "bcm")) {
        const std::string where = "section \"bcm\"";
        check_keys(*b, {"rho_pre_hz", "rho_post_grid_hz", "duration_s", "trials",
                        "a3_plus_values", "presynaptic"},
                   where);
        cfg.bcm.sweep.rho_pre = number_or(*b, "rho_pre_hz", 10.0, where);
        if (const json* grid = find(*b, "rho_post_grid_hz")) {
            cfg.bcm.sweep.rho_post_grid = number_array(*grid, where, "rho_post_grid_hz");
        }
        cfg.bcm.sweep.duration = number_or(*b, "duration_s", 100.0, where);
        cfg.bcm.sweep.trials = count_or(*b, "trials", 10, where);
        if (const json* values = find(*b, "a3_plus_values")) {
            cfg.bcm.a3_plus_values = number_array(*values, where, "a3_plus_values");
        }
        cfg.bcm.presynaptic = bool_or(*b, "presynaptic", false, where);
    }

    if (const json* f = find(root, "fit")) {
        const std::string where = "section \"fit\"";
        check_keys(*f, {"mask", "initial", "tol_x", "tol_f", "max_iter", "n_starts"}, where);
        if (const json* mask = find(*f, "mask")) {
            cfg.fit.mask = parse_mask(*mask, &cfg.fit.mask_name, where);
        }
        if (const json* initial = find(*f, "initial")) {
            cfg.fit.initial = parse_triplet_params(*initial, where + ".initial");
            cfg.fit.has_initial = true;
        }
        cfg.fit.tol_x = number_or(*f, "tol_x", 1e-6, where);
        cfg.fit.tol_f = number_or(*f, "tol_f", 1e-6, where);
        cfg.fit.max_iter = count_or(*f, "max_iter", 2000, where);
        cfg.fit.n_starts = count_or(*f, "n_starts", 1, where);
    }

    if (const json* m = find(root, "mc")) {
        const std::string where = "section \"mc\"";
        check_keys(*m, {"sigma_v_mv", "v_scale_mv", "n_runs", "retune"}, where);
        cfg.mc.spec.sigma_v = number_or(*m, "sigma_v_mv", 30.0, where) * 1e-3;
        cfg.mc.spec.v_scale = number_or(*m, "v_scale_mv", 32.0, where) * 1e-3;
        if (cfg.mc.spec.sigma_v < 0 || !(cfg.mc.spec.v_scale > 0)) {
            fail(where, "sigma_v_mv must be >= 0 and v_scale_mv > 0");
        }
        cfg.mc.spec.n_runs = count_or(*m, "n_runs", 1000, where);
        cfg.mc.retune = bool_or(*m, "retune", false, where);
    }

    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str(), path.string());
}

TripletParams require_triplet(const RuleSpec& rule, const std::string& command) {
    if (const TripletParams* params = std::get_if<TripletParams>(&rule)) return *params;
    throw ConfigError("config error: the \"" + command + "\" command needs rule.type "
                      "\"triplet\"");
}

} // namespace tstdp
