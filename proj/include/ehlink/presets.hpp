// SPDX-License-Identifier: Apache-2.0
//
// Named experiment presets reproducing the reference result figures. Each
// preset expands to sweeps plus optional rho-optimization, Gauss-Chebyshev
// order, or distance-gap studies, all derived from the shared defaults
// (4-QAM, N_r = 4, rho = 0.8, eta = 0.7, P_th = 40 dB, d ~ U(1,3), v = 2.7).
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ehlink/harness.hpp"

namespace ehlink::presets {

struct RhoOptTask {
    std::string name; // output stem
    SystemConfig base;
    EhModel model = EhModel::L;
    harness::Axis axis = harness::Axis::ps_db;
    std::vector<double> axis_grid;
    std::vector<double> rho_grid;
};

struct ApproxErrorTask {
    std::string name;
    SystemConfig base;
    std::vector<int> chi_grid;
};

struct LambdaTask {
    std::string name;
    SystemConfig base;
    EhModel model = EhModel::L;
    std::vector<double> d_grid;
};

struct Preset {
    std::string name;
    std::string description;
    std::vector<std::pair<std::string, harness::SweepSpec>> sweeps; // (output stem, spec)
    std::vector<RhoOptTask> rho_opts;
    std::vector<ApproxErrorTask> approx_errors;
    std::vector<LambdaTask> lambdas;
};

namespace detail {

inline SystemConfig defaults() {
    SystemConfig cfg;
    cfg.eh.mode = EhMode::PS;
    cfg.eh.model = EhModel::L;
    cfg.eh.rho = 0.8;
    cfg.eh.eta = 0.7;
    cfg.eh.p_th = db_to_linear(40.0);
    cfg.eh.n_r = 4;
    cfg.eh.n_eh = 1;
    cfg.eh.n_ip = 3;
    cfg.mod = ModulationParams::square_qam(4);
    cfg.geom_sr = LinkGeometry::uniform(1.0, 3.0, 2.7);
    cfg.geom_rd = LinkGeometry::uniform(1.0, 3.0, 2.7);
    cfg.fading = FadingStats{1.0, 1.0, 1.0};
    cfg.ps_db = 30.0;
    cfg.seed = 20240917;
    return cfg;
}

inline SystemConfig da(SystemConfig cfg, int n_eh, int n_ip) {
    cfg.eh.mode = EhMode::DA;
    cfg.eh.n_eh = n_eh;
    cfg.eh.n_ip = n_ip;
    cfg.eh.n_r = n_eh + n_ip;
    return cfg;
}

inline std::vector<double> linspace_step(double lo, double hi, double step) {
    std::vector<double> g;
    for (double x = lo; x <= hi + 1e-9; x += step) g.push_back(x);
    return g;
}

inline harness::SweepSpec sweep(SystemConfig base, harness::Axis axis,
                                std::vector<double> grid, bool with_mc = true) {
    harness::SweepSpec s;
    s.base = std::move(base);
    s.axis = axis;
    s.grid = std::move(grid);
    if (with_mc)
        s.evaluators = {harness::Evaluator::analytic_L, harness::Evaluator::analytic_NL,
                        harness::Evaluator::mc_L, harness::Evaluator::mc_NL};
    else
        s.evaluators = {harness::Evaluator::analytic_L, harness::Evaluator::analytic_NL};
    return s;
}

} // namespace detail

inline std::vector<std::string> preset_names() {
    return {"fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"};
}

inline Preset make_preset(const std::string& name) {
    using harness::Axis;
    using detail::da;
    using detail::defaults;
    using detail::linspace_step;
    using detail::sweep;
    Preset p;
    p.name = name;
    SystemConfig base = defaults();

    if (name == "fig3") {
        p.description = "BER vs P_s, PS(rho=0.8) and DA splits of N_r=4, L/NL";
        auto ps_grid = linspace_step(0.0, 60.0, 5.0);
        p.sweeps.emplace_back("fig3_ps", sweep(base, Axis::ps_db, ps_grid));
        p.sweeps.emplace_back("fig3_da_1_3", sweep(da(base, 1, 3), Axis::ps_db, ps_grid));
        p.sweeps.emplace_back("fig3_da_2_2", sweep(da(base, 2, 2), Axis::ps_db, ps_grid));
        p.sweeps.emplace_back("fig3_da_3_1", sweep(da(base, 3, 1), Axis::ps_db, ps_grid));
    } else if (name == "fig4") {
        p.description = "optimized rho vs P_s for N_r = 1 and 5, and U(1,2) variant";
        auto ps_grid = linspace_step(0.0, 60.0, 5.0);
        auto rho_grid = linspace_step(0.05, 0.95, 0.05);
        for (int nr : {1, 5}) {
            SystemConfig cfg = base;
            cfg.eh.n_r = nr;
            for (EhModel model : {EhModel::L, EhModel::NL}) {
                RhoOptTask t;
                t.name = "fig4_nr" + std::to_string(nr) +
                         (model == EhModel::L ? "_L" : "_NL");
                t.base = cfg;
                t.model = model;
                t.axis_grid = ps_grid;
                t.rho_grid = rho_grid;
                p.rho_opts.push_back(std::move(t));
            }
        }
        SystemConfig narrow = base;
        narrow.geom_sr = LinkGeometry::uniform(1.0, 2.0, 2.7);
        narrow.geom_rd = LinkGeometry::uniform(1.0, 2.0, 2.7);
        RhoOptTask t;
        t.name = "fig4_u12_L";
        t.base = narrow;
        t.model = EhModel::L;
        t.axis_grid = ps_grid;
        t.rho_grid = rho_grid;
        p.rho_opts.push_back(std::move(t));
    } else if (name == "fig5") {
        p.description = "Gauss-Chebyshev order trade-off Lambda(chi) at P_t = 30 dB";
        ApproxErrorTask t;
        t.name = "fig5_lambda_chi";
        t.base = da(base, 1, 3);
        t.base.ps_db = 30.0;
        t.chi_grid = {1, 2, 3, 4, 5, 6, 8, 10, 12, 14, 16, 18, 20};
        p.approx_errors.push_back(std::move(t));
    } else if (name == "fig6") {
        p.description = "BER vs N_ip at P_t = 60 dB, N_eh = 1 and 2, DA vs PS";
        SystemConfig cfg = base;
        cfg.ps_db = 60.0;
        auto nip_grid = linspace_step(1.0, 7.0, 1.0);
        p.sweeps.emplace_back("fig6_da_neh1", sweep(da(cfg, 1, 1), Axis::n_ip, nip_grid));
        p.sweeps.emplace_back("fig6_da_neh2", sweep(da(cfg, 2, 1), Axis::n_ip, nip_grid));
        p.sweeps.emplace_back("fig6_ps", sweep(cfg, Axis::n_r, linspace_step(2.0, 9.0, 1.0)));
    } else if (name == "fig7") {
        p.description = "BER vs rho at P_s = 40 and 60 dB, N_eh=4 N_ip=2, d ~ U(1,2)";
        SystemConfig cfg = base;
        cfg.geom_sr = LinkGeometry::uniform(1.0, 2.0, 2.7);
        cfg.geom_rd = LinkGeometry::uniform(1.0, 2.0, 2.7);
        cfg.eh.n_r = 6;
        auto rho_grid = linspace_step(0.05, 0.95, 0.05);
        for (double ps : {40.0, 60.0}) {
            SystemConfig c = cfg;
            c.ps_db = ps;
            p.sweeps.emplace_back("fig7_ps" + std::to_string(static_cast<int>(ps)),
                                  sweep(c, Axis::rho, rho_grid));
            p.sweeps.emplace_back("fig7_da" + std::to_string(static_cast<int>(ps)),
                                  sweep(da(c, 4, 2), Axis::rho, rho_grid));
        }
    } else if (name == "fig8") {
        p.description = "BER vs deterministic distance at P_t = 50 dB vs the U(1,3) reference";
        SystemConfig cfg = base;
        cfg.ps_db = 50.0;
        auto d_grid = linspace_step(1.0, 3.0, 0.1);
        p.sweeps.emplace_back("fig8_ps", sweep(cfg, Axis::distance, d_grid));
        p.sweeps.emplace_back("fig8_da_3_1", sweep(da(cfg, 3, 1), Axis::distance, d_grid));
        // uniform-distance reference values (single-point sweeps)
        p.sweeps.emplace_back("fig8_ps_uniform_ref",
                              sweep(cfg, Axis::ps_db, {cfg.ps_db}));
        p.sweeps.emplace_back("fig8_da_3_1_uniform_ref",
                              sweep(da(cfg, 3, 1), Axis::ps_db, {cfg.ps_db}));
    } else if (name == "fig9") {
        p.description = "distance gap lambda(d) at P_s = 40 and 50 dB, P_th = 30 dB";
        SystemConfig cfg = base;
        cfg.eh.p_th = db_to_linear(30.0);
        auto d_grid = linspace_step(1.1, 2.9, 0.05);
        for (double ps : {40.0, 50.0}) {
            for (EhModel model : {EhModel::L, EhModel::NL}) {
                for (bool is_ps : {true, false}) {
                    SystemConfig c = is_ps ? cfg : da(cfg, 3, 1);
                    c.ps_db = ps;
                    LambdaTask t;
                    t.name = std::string("fig9_") + (is_ps ? "ps" : "da_3_1") + "_" +
                             (model == EhModel::L ? "L" : "NL") + "_p" +
                             std::to_string(static_cast<int>(ps));
                    t.base = c;
                    t.model = model;
                    t.d_grid = d_grid;
                    p.lambdas.push_back(std::move(t));
                }
            }
        }
    } else if (name == "fig10") {
        p.description = "BER vs N_r at P_t = 50 dB; PS at per-point optimal rho, DA with N_ip=1";
        SystemConfig cfg = base;
        cfg.ps_db = 50.0;
        for (EhModel model : {EhModel::L, EhModel::NL}) {
            RhoOptTask t;
            t.name = std::string("fig10_ps_rhoopt_") + (model == EhModel::L ? "L" : "NL");
            t.base = cfg;
            t.model = model;
            t.axis = harness::Axis::n_r;
            t.axis_grid = linspace_step(1.0, 8.0, 1.0);
            t.rho_grid = linspace_step(0.05, 0.95, 0.05);
            p.rho_opts.push_back(std::move(t));
        }
        SystemConfig dacfg = da(cfg, 1, 1);
        p.sweeps.emplace_back("fig10_da_nip1",
                              sweep(dacfg, Axis::n_r, linspace_step(2.0, 8.0, 1.0)));
    } else {
        throw ConfigError("unknown preset: " + name +
                          " (available: fig3 fig4 fig5 fig6 fig7 fig8 fig9 fig10)");
    }
    return p;
}

// Execute every part of a preset, writing one CSV per task under out_dir.
// Returns true when any sweep row failed numerically.
inline bool run_preset(const Preset& preset, const std::string& out_dir,
                       const harness::McOptions& mc, int chi = 20,
                       std::ostream* log = nullptr) {
    namespace hn = harness;
    bool failures = false;
    auto note = [&](const std::string& s) {
        if (log) (*log) << s << '\n';
    };
    for (const auto& [stem, spec0] : preset.sweeps) {
        hn::SweepSpec spec = spec0;
        spec.mc = mc;
        spec.chi = chi;
        spec.output_path = out_dir + "/" + stem + ".csv";
        note("sweep " + stem + " -> " + spec.output_path);
        failures |= hn::run_sweep(spec).had_failures;
    }
    for (const auto& t : preset.rho_opts) {
        const std::string path = out_dir + "/" + t.name + ".csv";
        note("rho-opt " + t.name + " -> " + path);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot open output file: " + path);
        out << "axis,model,rho_opt,ber\n";
        for (double v : t.axis_grid) {
            SystemConfig cfg = hn::detail::apply_axis(t.base, t.axis, v);
            cfg.eh.model = t.model;
            auto opt = hn::optimize_rho(cfg, t.rho_grid, chi);
            out << hn::detail::fmt_double(v) << ','
                << (t.model == EhModel::L ? "L" : "NL") << ','
                << hn::detail::fmt_double(opt.rho) << ','
                << hn::detail::fmt_double(opt.ber) << '\n';
        }
    }
    for (const auto& t : preset.approx_errors) {
        const std::string path = out_dir + "/" + t.name + ".csv";
        note("approx-error " + t.name + " -> " + path);
        auto res = hn::approximation_error(t.base, t.chi_grid);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot open output file: " + path);
        out << "chi,lambda,analytic_ber,mc_ber,mc_half_width\n";
        for (const auto& row : res.rows) {
            if (!row.valid) failures = true;
            out << row.chi << ',' << (row.valid ? hn::detail::fmt_double(row.lambda) : "")
                << ',' << hn::detail::fmt_double(row.analytic_ber) << ','
                << hn::detail::fmt_double(res.mc_ber) << ','
                << hn::detail::fmt_double(res.mc_half_width) << '\n';
        }
    }
    for (const auto& t : preset.lambdas) {
        const std::string path = out_dir + "/" + t.name + ".csv";
        note("diff-lambda " + t.name + " -> " + path);
        auto rows = hn::difference_lambda(t.base, t.model, t.d_grid, chi);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ConfigError("cannot open output file: " + path);
        out << "d,lambda\n";
        for (const auto& row : rows) {
            if (!row.valid) failures = true;
            out << hn::detail::fmt_double(row.d) << ','
                << (row.valid ? hn::detail::fmt_double(row.lambda) : "") << '\n';
        }
    }
    return failures;
}

} // namespace ehlink::presets
