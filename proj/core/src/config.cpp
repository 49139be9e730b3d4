#include "fluxlab/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fluxlab {

using nlohmann::json;

WavePacket ExperimentConfig::packet() const {
    WavePacket p(components);
    return normalize ? p.normalized() : p;
}

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Validator {
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& msg) {
        errors.push_back(path + ": " + msg);
    }

    bool check_keys(const json& obj, const std::string& path,
                    const std::set<std::string>& allowed) {
        bool ok = true;
        for (const auto& item : obj.items()) {
            if (!allowed.count(item.key())) {
                fail(path.empty() ? item.key() : path + "." + item.key(), "unknown key");
                ok = false;
            }
        }
        return ok;
    }

    bool number(const json& j, const std::string& path, double& out) {
        if (!j.is_number()) {
            fail(path, "expected a number");
            return false;
        }
        out = j.get<double>();
        if (!std::isfinite(out)) {
            fail(path, "must be finite");
            return false;
        }
        return true;
    }

    bool vec3(const json& j, const std::string& path, Vec3& out) {
        if (!j.is_array() || j.size() != 3) {
            fail(path, "expected an array of 3 numbers");
            return false;
        }
        double c[3];
        for (int i = 0; i < 3; ++i)
            if (!number(j[i], path + "[" + std::to_string(i) + "]", c[i])) return false;
        out = {c[0], c[1], c[2]};
        return true;
    }
};

void parse_component(Validator& v, const json& j, const std::string& path,
                     std::vector<GaussianComponent>& out) {
    if (!j.is_object()) {
        v.fail(path, "expected an object");
        return;
    }
    v.check_keys(j, path, {"amplitude", "center", "wavevector", "width"});
    GaussianComponent c;
    if (j.contains("amplitude")) {
        const json& a = j["amplitude"];
        if (a.is_number()) {
            c.amplitude = Complex(a.get<double>(), 0.0);
        } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
            c.amplitude = Complex(a[0].get<double>(), a[1].get<double>());
        } else {
            v.fail(path + ".amplitude", "expected a number or [re, im]");
        }
    }
    if (j.contains("center")) v.vec3(j["center"], path + ".center", c.center);
    if (j.contains("wavevector")) v.vec3(j["wavevector"], path + ".wavevector", c.wavevector);
    if (j.contains("width")) {
        double w;
        if (v.number(j["width"], path + ".width", w)) {
            if (w > 0.0)
                c.width = w;
            else
                v.fail(path + ".width", "must be positive");
        }
    } else {
        v.fail(path + ".width", "required");
    }
    out.push_back(c);
}

void parse_positive_list(Validator& v, const json& j, const std::string& path, bool increasing,
                         std::vector<double>& out) {
    if (!j.is_array() || j.empty()) {
        v.fail(path, "expected a non-empty array of numbers");
        return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) {
        double x;
        if (!v.number(j[i], path + "[" + std::to_string(i) + "]", x)) return;
        if (!(x > 0.0)) {
            v.fail(path + "[" + std::to_string(i) + "]", "must be positive");
            return;
        }
        if (increasing && i > 0 && !(x > out.back())) {
            v.fail(path, "values must be strictly increasing");
            return;
        }
        out.push_back(x);
    }
}

ParseOutcome parse_json(const json& root) {
    Validator v;
    ExperimentConfig cfg;

    if (!root.is_object()) {
        v.fail("(root)", "config must be a JSON object");
        return {std::nullopt, v.errors};
    }

    v.check_keys(root, "",
                 {"kind", "label", "packet", "cone", "radii", "times", "window", "t_start",
                  "fas_t_start", "r_min", "with_fas_distance", "tolerances", "quadrature",
                  "ensemble"});

    static const std::set<std::string> kinds = {"fas-scan", "sict", "bohm", "remainder", "window"};
    if (!root.contains("kind") || !root["kind"].is_string() ||
        !kinds.count(root["kind"].get<std::string>())) {
        v.fail("kind", "required; one of fas-scan, sict, bohm, remainder, window");
    } else {
        cfg.kind = root["kind"].get<std::string>();
    }

    if (root.contains("label")) {
        if (!root["label"].is_string()) {
            v.fail("label", "expected a string");
        } else {
            cfg.label = root["label"].get<std::string>();
            if (cfg.label.find_first_not_of(
                    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_") !=
                std::string::npos)
                v.fail("label", "may contain only letters, digits, '-' and '_'");
        }
    }

    if (!root.contains("packet") || !root["packet"].is_object()) {
        v.fail("packet", "required object");
    } else {
        const json& p = root["packet"];
        v.check_keys(p, "packet", {"components", "normalize"});
        if (p.contains("normalize")) {
            if (p["normalize"].is_boolean())
                cfg.normalize = p["normalize"].get<bool>();
            else
                v.fail("packet.normalize", "expected a boolean");
        }
        if (!p.contains("components") || !p["components"].is_array() || p["components"].empty()) {
            v.fail("packet.components", "required non-empty array");
        } else {
            const json& cs = p["components"];
            for (std::size_t i = 0; i < cs.size(); ++i)
                parse_component(v, cs[i], "packet.components[" + std::to_string(i) + "]",
                                cfg.components);
        }
    }

    if (root.contains("cone")) {
        const json& c = root["cone"];
        if (!c.is_object()) {
            v.fail("cone", "expected an object");
        } else {
            v.check_keys(c, "cone", {"axis", "half_angle_deg"});
            Vec3 axis{0, 0, 1};
            bool axis_ok = true;
            if (c.contains("axis"))
                axis_ok = v.vec3(c["axis"], "cone.axis", axis);
            else
                v.fail("cone.axis", "required");
            double deg = 0.0;
            bool deg_ok = false;
            if (c.contains("half_angle_deg"))
                deg_ok = v.number(c["half_angle_deg"], "cone.half_angle_deg", deg);
            else
                v.fail("cone.half_angle_deg", "required");
            if (deg_ok && !(deg > 0.0 && deg <= 180.0)) {
                v.fail("cone.half_angle_deg", "must be in (0, 180]");
                deg_ok = false;
            }
            if (axis_ok && norm(axis) == 0.0) {
                v.fail("cone.axis", "must be nonzero");
                axis_ok = false;
            }
            if (axis_ok && deg_ok) cfg.cone = make_cone(axis, deg * kPi / 180.0);
        }
    }

    if (root.contains("radii")) parse_positive_list(v, root["radii"], "radii", true, cfg.radii);
    if (root.contains("times")) parse_positive_list(v, root["times"], "times", true, cfg.times);

    if (root.contains("window")) {
        const json& w = root["window"];
        double t1 = 0, t2 = 0;
        if (!w.is_array() || w.size() != 2 || !v.number(w[0], "window[0]", t1) ||
            !v.number(w[1], "window[1]", t2)) {
            v.fail("window", "expected [t1, t2]");
        } else if (!(t1 <= t2)) {
            v.fail("window", "needs t1 <= t2");
        } else {
            cfg.window = {t1, t2};
        }
    }

    auto opt_number = [&](const json& obj, const char* key, const std::string& path, double& out,
                          auto&& predicate, const char* what) {
        if (!obj.contains(key)) return;
        double x;
        if (v.number(obj[key], path, x)) {
            if (predicate(x))
                out = x;
            else
                v.fail(path, what);
        }
    };

    opt_number(root, "t_start", "t_start", cfg.t_start,
               [](double x) { return x >= 0.0; }, "must be >= 0");
    opt_number(root, "fas_t_start", "fas_t_start", cfg.fas_t_start,
               [](double x) { return x > 0.0; }, "must be positive");
    opt_number(root, "r_min", "r_min", cfg.r_min,
               [](double x) { return x >= 0.0; }, "must be >= 0");

    if (root.contains("with_fas_distance")) {
        if (root["with_fas_distance"].is_boolean())
            cfg.with_fas_distance = root["with_fas_distance"].get<bool>();
        else
            v.fail("with_fas_distance", "expected a boolean");
    }

    if (root.contains("tolerances")) {
        const json& t = root["tolerances"];
        if (!t.is_object()) {
            v.fail("tolerances", "expected an object");
        } else {
            v.check_keys(t, "tolerances", {"epsilon_tail", "time_tol", "radial_tol", "ode_rel_tol"});
            opt_number(t, "epsilon_tail", "tolerances.epsilon_tail", cfg.epsilon_tail,
                       [](double x) { return x > 0.0 && x < 1.0; }, "must be in (0, 1)");
            opt_number(t, "time_tol", "tolerances.time_tol", cfg.time_tol,
                       [](double x) { return x > 0.0; }, "must be positive");
            opt_number(t, "radial_tol", "tolerances.radial_tol", cfg.radial_tol,
                       [](double x) { return x > 0.0; }, "must be positive");
            opt_number(t, "ode_rel_tol", "tolerances.ode_rel_tol", cfg.ode_rel_tol,
                       [](double x) { return x > 0.0; }, "must be positive");
        }
    }

    if (root.contains("quadrature")) {
        const json& q = root["quadrature"];
        if (!q.is_object()) {
            v.fail("quadrature", "expected an object");
        } else {
            v.check_keys(q, "quadrature", {"cap_order"});
            if (q.contains("cap_order")) {
                if (!q["cap_order"].is_number_integer()) {
                    v.fail("quadrature.cap_order", "expected an integer");
                } else {
                    const long o = q["cap_order"].get<long>();
                    if (o < 4 || o > 512)
                        v.fail("quadrature.cap_order", "must be in [4, 512]");
                    else
                        cfg.cap_order = static_cast<int>(o);
                }
            }
        }
    }

    if (root.contains("ensemble")) {
        const json& e = root["ensemble"];
        if (!e.is_object()) {
            v.fail("ensemble", "expected an object");
        } else {
            v.check_keys(e, "ensemble", {"n", "seed", "t_budget"});
            if (e.contains("n")) {
                if (!e["n"].is_number_integer() || e["n"].get<long long>() < 100)
                    v.fail("ensemble.n", "must be an integer >= 100");
                else
                    cfg.ensemble_n = e["n"].get<std::size_t>();
            }
            if (e.contains("seed")) {
                if (!e["seed"].is_number_integer() || e["seed"].get<long long>() < 0)
                    v.fail("ensemble.seed", "must be a non-negative integer");
                else
                    cfg.seed = e["seed"].get<std::uint64_t>();
            }
            if (e.contains("t_budget")) {
                double tb;
                if (v.number(e["t_budget"], "ensemble.t_budget", tb)) cfg.t_budget = tb;
            }
        }
    }

    // Kind-specific requirements.
    if (!cfg.kind.empty()) {
        const bool needs_cone =
            cfg.kind == "fas-scan" || cfg.kind == "sict" || cfg.kind == "bohm";
        if (needs_cone && !cfg.cone) v.fail("cone", "required for kind " + cfg.kind);
        const bool needs_radii =
            cfg.kind == "fas-scan" || cfg.kind == "bohm" || cfg.kind == "window";
        if (needs_radii && cfg.radii.empty()) v.fail("radii", "required for kind " + cfg.kind);
        if (cfg.kind == "sict" && cfg.times.empty()) v.fail("times", "required for kind sict");
        if (cfg.kind == "window" && !root.contains("window"))
            v.fail("window", "required for kind window");
    }

    if (!v.errors.empty()) return {std::nullopt, v.errors};
    return {cfg, {}};
}

}  // namespace

ParseOutcome parse_config_text(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        return {std::nullopt, {std::string("(syntax) ") + e.what()}};
    }
    return parse_json(root);
}

ParseOutcome parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {std::nullopt, {"cannot open config file: " + path}};
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace fluxlab
