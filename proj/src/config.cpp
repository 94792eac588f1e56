#include "sq/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string>

#include "sq/hermite.hpp"

namespace sq {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void require_object(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where + " must be a JSON object");
}

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) fail("unknown key \"" + it.key() + "\" in " + where);
    }
}

template <typename T>
T take(const json& sec, const std::string& where, const char* key, T dflt) {
    if (!sec.contains(key)) return dflt;
    try {
        return sec.at(key).get<T>();
    } catch (const json::exception&) {
        fail(where + "." + std::string(key) + " has the wrong type");
    }
}

template <typename T>
T take_required(const json& sec, const std::string& where, const char* key) {
    if (!sec.contains(key)) fail(where + " is missing required key \"" + key + "\"");
    try {
        return sec.at(key).get<T>();
    } catch (const json::exception&) {
        fail(where + "." + std::string(key) + " has the wrong type");
    }
}

Scheme parse_scheme(const std::string& s) {
    if (s == "split") return Scheme::Split;
    if (s == "direct") return Scheme::Direct;
    fail("trajectory.scheme must be \"split\" or \"direct\", got \"" + s + "\"");
}

InitKind parse_init(const std::string& s) {
    if (s == "gff") return InitKind::Gff;
    if (s == "zero") return InitKind::Zero;
    fail("trajectory.init must be \"gff\" or \"zero\", got \"" + s + "\"");
}

}  // namespace

RunConfig parse_config(const json& j) {
    require_object(j, "config");
    check_keys(j, "config",
               {"grid", "noise", "nonlinearity", "trajectory", "diagnostics", "outputs", "besov",
                "oracle"});
    for (const char* req : {"grid", "nonlinearity", "trajectory"}) {
        if (!j.contains(req)) fail(std::string("missing required section \"") + req + "\"");
    }

    RunConfig c;

    {
        const json& g = j.at("grid");
        require_object(g, "grid");
        check_keys(g, "grid", {"dim", "n"});
        c.grid.dim = take_required<int>(g, "grid", "dim");
        c.grid.n = take_required<int>(g, "grid", "n");
    }

    if (j.contains("noise")) {
        const json& s = j.at("noise");
        require_object(s, "noise");
        check_keys(s, "noise", {"beta"});
        c.noise.beta = take<double>(s, "noise", "beta", 0.0);
    }

    {
        const json& s = j.at("nonlinearity");
        require_object(s, "nonlinearity");
        check_keys(s, "nonlinearity", {"coeffs", "wick", "nonlocal"});
        c.nl.coeffs = take<std::vector<double>>(s, "nonlinearity", "coeffs", {});
        c.nl.wick = take<bool>(s, "nonlinearity", "wick", false);
        if (s.contains("nonlocal")) {
            const json& nn = s.at("nonlocal");
            require_object(nn, "nonlinearity.nonlocal");
            check_keys(nn, "nonlinearity.nonlocal", {"ell", "rcoeffs"});
            NonlocalSpec nlc;
            nlc.ell = take<int>(nn, "nonlinearity.nonlocal", "ell", 1);
            nlc.rcoeffs = take<std::vector<double>>(nn, "nonlinearity.nonlocal", "rcoeffs", {});
            c.nl.nonlocal = nlc;
        }
    }

    {
        const json& s = j.at("trajectory");
        require_object(s, "trajectory");
        check_keys(s, "trajectory",
                   {"dt", "t_end", "burn_in", "stride", "chains", "seed", "scheme", "init",
                    "sigma2_override"});
        c.traj.dt = take_required<double>(s, "trajectory", "dt");
        c.traj.t_end = take_required<double>(s, "trajectory", "t_end");
        c.traj.burn_in = take<double>(s, "trajectory", "burn_in", c.traj.burn_in);
        c.traj.stride = take<double>(s, "trajectory", "stride", c.traj.stride);
        c.chains = take<int>(s, "trajectory", "chains", 1);
        c.traj.seed = take<uint64_t>(s, "trajectory", "seed", c.traj.seed);
        c.traj.scheme = parse_scheme(take<std::string>(s, "trajectory", "scheme", "split"));
        c.init = parse_init(take<std::string>(s, "trajectory", "init", "gff"));
        if (s.contains("sigma2_override")) {
            c.traj.sigma2_override = take_required<double>(s, "trajectory", "sigma2_override");
        }
    }

    if (j.contains("diagnostics")) {
        const json& s = j.at("diagnostics");
        require_object(s, "diagnostics");
        check_keys(s, "diagnostics", {"phis", "k_max", "mode_cut"});
        c.phi_labels = take<std::vector<std::string>>(s, "diagnostics", "phis", {});
        c.k_max = take<int>(s, "diagnostics", "k_max", 0);
        c.mode_cut = take<int>(s, "diagnostics", "mode_cut", c.mode_cut);
    }

    if (j.contains("outputs")) {
        const json& s = j.at("outputs");
        require_object(s, "outputs");
        check_keys(s, "outputs", {"dir", "formats"});
        c.out_dir = take<std::string>(s, "outputs", "dir", c.out_dir);
        c.formats = take<std::vector<std::string>>(s, "outputs", "formats", c.formats);
        for (const auto& f : c.formats) {
            if (f != "csv" && f != "json") fail("outputs.formats entries must be \"csv\" or \"json\"");
        }
    }

    if (j.contains("besov")) {
        const json& s = j.at("besov");
        require_object(s, "besov");
        check_keys(s, "besov", {"alpha", "grids"});
        c.besov_alpha = take<double>(s, "besov", "alpha", c.besov_alpha);
        c.besov_grids = take<std::vector<int>>(s, "besov", "grids", c.besov_grids);
    }

    if (j.contains("oracle")) {
        const json& s = j.at("oracle");
        require_object(s, "oracle");
        check_keys(s, "oracle", {"samples", "thin", "burn", "step", "seed", "mass"});
        c.mala.samples = take<int>(s, "oracle", "samples", c.mala.samples);
        c.mala.thin = take<int>(s, "oracle", "thin", c.mala.thin);
        c.mala.burn = take<int>(s, "oracle", "burn", c.mala.burn);
        c.mala.step = take<double>(s, "oracle", "step", c.mala.step);
        c.mala.seed = take<uint64_t>(s, "oracle", "seed", c.mala.seed);
        c.mala_mass = take<double>(s, "oracle", "mass", c.mala_mass);
    }

    try {
        c.grid.validate();
        c.noise.validate();
        c.nl.validate();
        c.traj.validate();
        c.mala.validate();
    } catch (const std::exception& e) {
        fail(e.what());
    }
    if (c.chains < 1) fail("trajectory.chains must be positive");
    if (c.k_max < 0 || c.k_max > kHermiteMaxDegree) fail("diagnostics.k_max out of range");
    if (c.mode_cut < 0) fail("diagnostics.mode_cut must be nonnegative");
    if (c.mala_mass <= 0.0) fail("oracle.mass must be positive");
    for (int n : c.besov_grids) {
        TorusGrid g{c.grid.dim, n};
        try {
            g.validate();
        } catch (const std::exception& e) {
            fail(std::string("besov.grids: ") + e.what());
        }
    }
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("config file " + path + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

void apply_override(json& j, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        fail("override must look like section.key=value, got \"" + assignment + "\"");
    }
    std::string path = assignment.substr(0, eq);
    std::string text = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(text);
    } catch (const json::exception&) {
        value = text;  // bare strings stay strings
    }

    json* node = &j;
    size_t pos = 0;
    while (true) {
        size_t dot = path.find('.', pos);
        std::string part = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (part.empty()) fail("override path has an empty component: \"" + path + "\"");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            break;
        }
        node = &(*node)[part];
        if (!node->is_object() && !node->is_null()) {
            fail("override path \"" + path + "\" descends into a non-object");
        }
        pos = dot + 1;
    }
}

json resolved_json(const RunConfig& c) {
    json j;
    j["grid"] = {{"dim", c.grid.dim}, {"n", c.grid.n}};
    j["noise"] = {{"beta", c.noise.beta}};
    j["nonlinearity"] = {{"coeffs", c.nl.coeffs}, {"wick", c.nl.wick}};
    if (c.nl.nonlocal && !c.nl.nonlocal->trivial()) {
        j["nonlinearity"]["nonlocal"] = {{"ell", c.nl.nonlocal->ell},
                                         {"rcoeffs", c.nl.nonlocal->rcoeffs}};
    }
    j["trajectory"] = {
        {"dt", c.traj.dt},
        {"t_end", c.traj.t_end},
        {"burn_in", c.traj.burn_in},
        {"stride", c.traj.stride},
        {"chains", c.chains},
        {"seed", c.traj.seed},
        {"scheme", c.traj.scheme == Scheme::Split ? "split" : "direct"},
        {"init", c.init == InitKind::Gff ? "gff" : "zero"},
    };
    if (c.traj.sigma2_override) j["trajectory"]["sigma2_override"] = *c.traj.sigma2_override;
    j["diagnostics"] = {{"phis", c.phi_labels}, {"k_max", c.k_max}, {"mode_cut", c.mode_cut}};
    j["outputs"] = {{"dir", c.out_dir}, {"formats", c.formats}};
    j["besov"] = {{"alpha", c.besov_alpha}, {"grids", c.besov_grids}};
    j["oracle"] = {{"samples", c.mala.samples}, {"thin", c.mala.thin},     {"burn", c.mala.burn},
                   {"step", c.mala.step},       {"seed", c.mala.seed},     {"mass", c.mala_mass}};
    return j;
}

json make_manifest(const RunConfig& c, double sigma2, double stability) {
    json m;
    m["version"] = kVersion;
    m["config"] = resolved_json(c);
    m["sigma2_renorm"] = sigma2;
    m["stability_dt_drift_slope"] = stability;
    return m;
}

}  // namespace sq
