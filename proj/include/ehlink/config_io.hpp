// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "ehlink/common.hpp"
#include "ehlink/harness.hpp"
#include "ehlink/system.hpp"

namespace ehlink::config_io {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline LinkGeometry geometry_from_json(const nlohmann::json& j, double v) {
    if (j.contains("uniform")) {
        auto arr = j.at("uniform");
        return LinkGeometry::uniform(arr.at(0).get<double>(), arr.at(1).get<double>(), v);
    }
    if (j.contains("deterministic"))
        return LinkGeometry::fixed(j.at("deterministic").get<double>(), v);
    throw ConfigError("geometry: need 'uniform': [lo,hi] or 'deterministic': d");
}

inline nlohmann::json geometry_to_json(const LinkGeometry& g) {
    nlohmann::json j;
    if (g.is_uniform())
        j["uniform"] = {g.lo, g.hi};
    else
        j["deterministic"] = g.d;
    return j;
}

} // namespace detail

inline SystemConfig config_from_json(const nlohmann::json& j) {
    if (j.value("version", 0) != kSchemaVersion)
        throw ConfigError("config: missing or unsupported schema version (expect 1)");
    SystemConfig cfg;
    if (j.contains("eh")) {
        const auto& e = j.at("eh");
        const std::string mode = e.value("mode", "PS");
        const std::string model = e.value("model", "L");
        require(mode == "PS" || mode == "DA", "config: eh.mode must be PS or DA");
        require(model == "L" || model == "NL", "config: eh.model must be L or NL");
        cfg.eh.mode = mode == "PS" ? EhMode::PS : EhMode::DA;
        cfg.eh.model = model == "L" ? EhModel::L : EhModel::NL;
        cfg.eh.rho = e.value("rho", cfg.eh.rho);
        cfg.eh.eta = e.value("eta", cfg.eh.eta);
        if (e.contains("p_th_db"))
            cfg.eh.p_th = db_to_linear(e.at("p_th_db").get<double>());
        else
            cfg.eh.p_th = e.value("p_th", cfg.eh.p_th);
        cfg.eh.n_r = e.value("n_r", cfg.eh.n_r);
        cfg.eh.n_eh = e.value("n_eh", cfg.eh.n_eh);
        cfg.eh.n_ip = e.value("n_ip", cfg.eh.n_ip);
    }
    if (j.contains("modulation")) {
        const auto& m = j.at("modulation");
        cfg.mod = ModulationParams::square_qam(m.value("m_order", 4));
        cfg.mod.a = m.value("a", cfg.mod.a);
        cfg.mod.b = m.value("b", cfg.mod.b);
    }
    const double v = j.contains("geometry")
                         ? j.at("geometry").value("pathloss_exponent", 2.7)
                         : 2.7;
    if (j.contains("geometry")) {
        const auto& g = j.at("geometry");
        if (g.contains("sr")) cfg.geom_sr = detail::geometry_from_json(g.at("sr"), v);
        if (g.contains("rd")) cfg.geom_rd = detail::geometry_from_json(g.at("rd"), v);
    }
    cfg.geom_sr.v = v;
    cfg.geom_rd.v = v;
    if (j.contains("fading")) {
        const auto& f = j.at("fading");
        cfg.fading.omega_h = f.value("omega_h", 1.0);
        cfg.fading.omega_g = f.value("omega_g", 1.0);
        cfg.fading.n0 = f.value("n0", 1.0);
    }
    cfg.ps_db = j.value("ps_db", cfg.ps_db);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.validate();
    return cfg;
}

inline nlohmann::json config_to_json(const SystemConfig& cfg) {
    nlohmann::json j;
    j["version"] = kSchemaVersion;
    j["eh"] = {{"mode", cfg.eh.mode == EhMode::PS ? "PS" : "DA"},
               {"model", cfg.eh.model == EhModel::L ? "L" : "NL"},
               {"rho", cfg.eh.rho},
               {"eta", cfg.eh.eta},
               {"p_th", cfg.eh.p_th},
               {"n_r", cfg.eh.n_r},
               {"n_eh", cfg.eh.n_eh},
               {"n_ip", cfg.eh.n_ip}};
    j["modulation"] = {{"m_order", cfg.mod.m_order}, {"a", cfg.mod.a}, {"b", cfg.mod.b}};
    j["geometry"] = {{"sr", detail::geometry_to_json(cfg.geom_sr)},
                     {"rd", detail::geometry_to_json(cfg.geom_rd)},
                     {"pathloss_exponent", cfg.geom_sr.v}};
    j["fading"] = {{"omega_h", cfg.fading.omega_h},
                   {"omega_g", cfg.fading.omega_g},
                   {"n0", cfg.fading.n0}};
    j["ps_db"] = cfg.ps_db;
    j["seed"] = cfg.seed;
    return j;
}

inline SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    try {
        return config_from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config schema error in " + path + ": " + e.what());
    }
}

inline void save_config(const SystemConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << config_to_json(cfg).dump(2) << '\n';
}

} // namespace ehlink::config_io
