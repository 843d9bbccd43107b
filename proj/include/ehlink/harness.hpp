// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ehlink/analytic.hpp"
#include "ehlink/common.hpp"
#include "ehlink/montecarlo.hpp"
#include "ehlink/system.hpp"

namespace ehlink::harness {

enum class Axis { ps_db, rho, n_ip, n_eh, n_r, distance };
enum class Evaluator { analytic_L, analytic_NL, mc_L, mc_NL };

inline const char* to_string(Axis a) {
    switch (a) {
        case Axis::ps_db: return "ps_db";
        case Axis::rho: return "rho";
        case Axis::n_ip: return "n_ip";
        case Axis::n_eh: return "n_eh";
        case Axis::n_r: return "n_r";
        case Axis::distance: return "distance";
    }
    return "?";
}

inline const char* to_string(Evaluator e) {
    switch (e) {
        case Evaluator::analytic_L: return "analytic_L";
        case Evaluator::analytic_NL: return "analytic_NL";
        case Evaluator::mc_L: return "mc_L";
        case Evaluator::mc_NL: return "mc_NL";
    }
    return "?";
}

inline Axis axis_from_string(const std::string& s) {
    if (s == "ps_db") return Axis::ps_db;
    if (s == "rho") return Axis::rho;
    if (s == "n_ip") return Axis::n_ip;
    if (s == "n_eh") return Axis::n_eh;
    if (s == "n_r") return Axis::n_r;
    if (s == "distance") return Axis::distance;
    throw ConfigError("unknown axis: " + s);
}

inline Evaluator evaluator_from_string(const std::string& s) {
    if (s == "analytic_L") return Evaluator::analytic_L;
    if (s == "analytic_NL") return Evaluator::analytic_NL;
    if (s == "mc_L") return Evaluator::mc_L;
    if (s == "mc_NL") return Evaluator::mc_NL;
    throw ConfigError("unknown evaluator: " + s);
}

struct McOptions {
    std::uint64_t min_errors = 200;
    std::uint64_t max_bits = 100000000ULL;
    int n_threads = 0;
};

struct SweepSpec {
    SystemConfig base;
    Axis axis = Axis::ps_db;
    std::vector<double> grid;
    std::vector<Evaluator> evaluators;
    std::string output_path; // empty: no file written
    McOptions mc;
    int chi = 20;

    void validate() const {
        base.validate();
        require(!grid.empty(), "SweepSpec: grid must be non-empty");
        require(!evaluators.empty(), "SweepSpec: evaluator set must be non-empty");
    }
};

struct SweepRow {
    double axis_value = 0.0;
    Evaluator evaluator = Evaluator::analytic_L;
    double ber = 0.0;
    std::string flag;
    std::optional<double> half_width;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    bool had_failures = false;
};

namespace detail {

inline std::string fmt_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline SystemConfig apply_axis(SystemConfig cfg, Axis axis, double value) {
    switch (axis) {
        case Axis::ps_db:
            cfg.ps_db = value;
            break;
        case Axis::rho:
            cfg.eh.rho = value;
            break;
        case Axis::n_ip:
            require(cfg.eh.mode == EhMode::DA, "axis n_ip needs DA mode");
            cfg.eh.n_ip = static_cast<int>(std::lround(value));
            cfg.eh.n_r = cfg.eh.n_eh + cfg.eh.n_ip;
            break;
        case Axis::n_eh:
            require(cfg.eh.mode == EhMode::DA, "axis n_eh needs DA mode");
            cfg.eh.n_eh = static_cast<int>(std::lround(value));
            cfg.eh.n_r = cfg.eh.n_eh + cfg.eh.n_ip;
            break;
        case Axis::n_r:
            cfg.eh.n_r = static_cast<int>(std::lround(value));
            if (cfg.eh.mode == EhMode::DA) {
                cfg.eh.n_eh = cfg.eh.n_r - cfg.eh.n_ip; // n_ip held fixed
                require(cfg.eh.n_eh >= 1, "axis n_r: n_r - n_ip must be >= 1 under DA");
            }
            break;
        case Axis::distance:
            cfg.geom_sr = LinkGeometry::fixed(value, cfg.geom_sr.v);
            cfg.geom_rd = LinkGeometry::fixed(value, cfg.geom_rd.v);
            break;
    }
    cfg.validate();
    return cfg;
}

inline EhModel model_of(Evaluator e) {
    return (e == Evaluator::analytic_L || e == Evaluator::mc_L) ? EhModel::L : EhModel::NL;
}

inline bool is_mc(Evaluator e) {
    return e == Evaluator::mc_L || e == Evaluator::mc_NL;
}

} // namespace detail

inline void write_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: byte-identical reruns
    if (!out) throw ConfigError("cannot open output file: " + path);
    out << "axis,evaluator,ber,flag,half_width\n";
    for (const auto& r : result.rows) {
        out << detail::fmt_double(r.axis_value) << ',' << to_string(r.evaluator) << ','
            << detail::fmt_double(r.ber) << ',' << r.flag << ','
            << (r.half_width ? detail::fmt_double(*r.half_width) : std::string()) << '\n';
    }
}

// Evaluate every requested evaluator at every grid point; rows keep grid-major
// order so output is deterministic regardless of execution order.
inline SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        for (std::size_t k = 0; k < spec.evaluators.size(); ++k) {
            const Evaluator ev = spec.evaluators[k];
            SweepRow row;
            row.axis_value = spec.grid[i];
            row.evaluator = ev;
            try {
                SystemConfig cfg = detail::apply_axis(spec.base, spec.axis, spec.grid[i]);
                if (detail::is_mc(ev)) {
                    SystemConfig mc_cfg = cfg;
                    mc_cfg.eh.model = detail::model_of(ev);
                    mc_cfg.seed = montecarlo::detail::splitmix64(
                        cfg.seed ^ montecarlo::detail::splitmix64(
                                       (i + 1) * 131 + k + 7));
                    BerEstimate est = montecarlo::simulate_ber(
                        mc_cfg, spec.mc.min_errors, spec.mc.max_bits, spec.mc.n_threads);
                    row.ber = est.ber;
                    row.half_width = est.half_width_95;
                    row.flag = "sim";
                } else {
                    auto res = analytic::ber_upper_bound(cfg, detail::model_of(ev), spec.chi);
                    row.ber = res.ber;
                    row.flag = res.route == analytic::EvalRoute::closed_form ? "closed_form"
                                                                             : "fallback";
                }
            } catch (const std::exception&) {
                row.ber = std::nan("");
                row.flag = "failed";
                result.had_failures = true;
            }
            result.rows.push_back(std::move(row));
        }
    }
    if (!spec.output_path.empty()) write_csv(result, spec.output_path);
    return result;
}

// ---------------------------------------------------------------------------
// rho optimization
// ---------------------------------------------------------------------------

struct RhoOptimum {
    double rho = 0.0;
    double ber = 1.0;
};

// argmin over the grid of the analytic BER under the config's harvester model;
// ties break toward smaller rho.
inline RhoOptimum optimize_rho(const SystemConfig& config, const std::vector<double>& grid,
                               int chi = 20) {
    require(!grid.empty(), "optimize_rho: grid must be non-empty");
    require(config.eh.mode == EhMode::PS, "optimize_rho: PS mode required");
    RhoOptimum best;
    bool have = false;
    std::size_t failures = 0;
    for (double rho : grid) {
        SystemConfig cfg = config;
        cfg.eh.rho = rho;
        try {
            double ber = analytic::ber_upper_bound(cfg, cfg.eh.model, chi).ber;
            if (!have || ber < best.ber) {
                best = {rho, ber};
                have = true;
            }
        } catch (const std::exception&) {
            ++failures;
        }
    }
    if (!have) throw ConfigError("optimize_rho: evaluation failed on the whole grid");
    (void)failures;
    return best;
}

// ---------------------------------------------------------------------------
// Gauss-Chebyshev order diagnostic
// ---------------------------------------------------------------------------

struct ApproxErrorRow {
    int chi = 0;
    double lambda = 0.0;
    double analytic_ber = 0.0;
    bool valid = true;
};

struct ApproxErrorResult {
    double mc_ber = 0.0;
    double mc_half_width = 0.0;
    std::vector<ApproxErrorRow> rows;
};

// Lambda(chi) = |MC - analytic(chi)| / MC for the saturating-harvester model.
inline ApproxErrorResult approximation_error(const SystemConfig& config,
                                             const std::vector<int>& chi_grid,
                                             std::uint64_t min_errors = 1000000,
                                             std::uint64_t max_bits = 400000000ULL) {
    require(!chi_grid.empty(), "approximation_error: chi grid must be non-empty");
    SystemConfig cfg = config;
    cfg.eh.model = EhModel::NL;
    ApproxErrorResult out;
    BerEstimate est = montecarlo::simulate_ber(cfg, min_errors, max_bits);
    out.mc_ber = est.ber;
    out.mc_half_width = est.half_width_95;
    for (int chi : chi_grid) {
        ApproxErrorRow row;
        row.chi = chi;
        try {
            row.analytic_ber = analytic::ber_upper_bound(cfg, EhModel::NL, chi).ber;
            if (out.mc_ber > 0.0) {
                row.lambda = std::abs(out.mc_ber - row.analytic_ber) / out.mc_ber;
            } else {
                row.valid = false; // undefined when the MC estimate is zero
            }
        } catch (const std::exception&) {
            row.valid = false;
        }
        out.rows.push_back(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// uniform-vs-deterministic distance gap
// ---------------------------------------------------------------------------

struct LambdaRow {
    double d = 0.0;
    double lambda = 0.0;
    bool valid = true;
};

// lambda(d) = BER(uniform-distance config) - BER(both hops fixed at d).
inline std::vector<LambdaRow> difference_lambda(const SystemConfig& config, EhModel model,
                                                const std::vector<double>& d_grid,
                                                int chi = 20) {
    require(config.geom_sr.is_uniform() && config.geom_rd.is_uniform(),
            "difference_lambda: base config must use uniform geometries");
    const double uniform_ber = analytic::ber_upper_bound(config, model, chi).ber;
    std::vector<LambdaRow> rows;
    for (double d : d_grid) {
        LambdaRow row;
        row.d = d;
        try {
            SystemConfig det = config;
            det.geom_sr = LinkGeometry::fixed(d, config.geom_sr.v);
            det.geom_rd = LinkGeometry::fixed(d, config.geom_rd.v);
            row.lambda = uniform_ber - analytic::ber_upper_bound(det, model, chi).ber;
        } catch (const std::exception&) {
            row.valid = false;
        }
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// dual-path agreement report (closed form vs direct quadrature)
// ---------------------------------------------------------------------------

struct DualPathRow {
    std::string op;
    double ps_db = 0.0;
    double closed = 0.0;
    double quad = 0.0;
    double rel_gap = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool fallback_used = false;
};

// Compare each SER operation with its quadrature twin across a P_s grid at the
// default experiment parameters.
inline std::vector<DualPathRow> dual_path_report(const SystemConfig& base,
                                                 const std::vector<double>& ps_grid,
                                                 int chi = 20) {
    std::vector<DualPathRow> rows;
    auto add = [&](const char* op, double ps_db, double closed, double quad, double tol,
                   bool fb) {
        DualPathRow r;
        r.op = op;
        r.ps_db = ps_db;
        r.closed = closed;
        r.quad = quad;
        r.rel_gap = std::abs(closed - quad) / std::max(std::abs(quad), 1e-300);
        r.tolerance = tol;
        r.pass = r.rel_gap <= tol;
        r.fallback_used = fb;
        rows.push_back(std::move(r));
    };
    for (double ps_db : ps_grid) {
        SystemConfig cfg = base;
        cfg.ps_db = ps_db;
        const auto theta = channel::gamma_gamma_sum_params(channel::Link::SR, cfg);
        const auto x = channel::gamma_gamma_sum_params(channel::Link::RD, cfg);
        const double ybar = cfg.fading.ybar();
        const double d_det = 2.0;
        const double l_sr = geometry::pathloss(d_det, cfg.geom_sr.v);
        const double l_rd = geometry::pathloss(d_det, cfg.geom_rd.v);

        auto sv = analytic::ser_sr_uniform(cfg.mod, theta, cfg.geom_sr);
        add("ser_sr_uniform", ps_db, sv.value,
            analytic::ser_sr_uniform_quad(cfg.mod, theta, cfg.geom_sr), 1e-4,
            sv.route == analytic::EvalRoute::fallback);

        sv = analytic::ser_sr_deterministic(cfg.mod, theta, d_det, cfg.geom_sr.v);
        add("ser_sr_deterministic", ps_db, sv.value,
            analytic::ser_sr_deterministic_quad(cfg.mod, theta, d_det, cfg.geom_sr.v), 1e-4,
            sv.route == analytic::EvalRoute::fallback);

        sv = analytic::ser_rd_linear_uniform(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar);
        add("ser_rd_linear_uniform", ps_db, sv.value,
            analytic::ser_rd_linear_uniform_quad(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar),
            1e-4, sv.route == analytic::EvalRoute::fallback);

        sv = analytic::ser_rd_nl_uniform(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar,
                                         cfg.eh.p_th, chi);
        add("ser_rd_nl_uniform", ps_db, sv.value,
            analytic::ser_rd_nl_uniform_quad(cfg.mod, x, cfg.geom_sr, cfg.geom_rd, ybar,
                                             cfg.eh.p_th),
            5e-3, sv.route == analytic::EvalRoute::fallback);

        sv = analytic::ser_rd_linear_det(cfg.mod, x, l_sr, l_rd, ybar);
        add("ser_rd_linear_det", ps_db, sv.value,
            analytic::ser_rd_linear_det_quad(cfg.mod, x, l_sr, l_rd, ybar), 1e-4,
            sv.route == analytic::EvalRoute::fallback);

        sv = analytic::ser_rd_nl_det(cfg.mod, x, l_sr, l_rd, ybar, cfg.eh.p_th, chi);
        add("ser_rd_nl_det", ps_db, sv.value,
            analytic::ser_rd_nl_det_quad(cfg.mod, x, l_sr, l_rd, ybar, cfg.eh.p_th), 5e-3,
            sv.route == analytic::EvalRoute::fallback);
    }
    return rows;
}

} // namespace ehlink::harness
