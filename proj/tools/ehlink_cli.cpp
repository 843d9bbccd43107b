// SPDX-License-Identifier: Apache-2.0
//
// ehlink command line: sweeps, rho optimization, Gauss-Chebyshev order
// diagnostics, uniform-vs-deterministic distance gaps, and the dual-path
// verification suite.
//
// Exit codes: 0 success, 1 configuration error, 2 numerical-failure rows.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ehlink/config_io.hpp"
#include "ehlink/harness.hpp"
#include "ehlink/presets.hpp"

namespace {

using namespace ehlink;

std::vector<double> parse_grid(const std::string& s) {
    // "lo:hi:step" or comma-separated values
    std::vector<double> grid;
    if (s.find(':') != std::string::npos) {
        double lo, hi, step;
        if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0)
            throw ConfigError("grid must be lo:hi:step or v1,v2,...");
        for (double x = lo; x <= hi + 1e-9; x += step) grid.push_back(x);
    } else {
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t next = s.find(',', pos);
            if (next == std::string::npos) next = s.size();
            grid.push_back(std::stod(s.substr(pos, next - pos)));
            pos = next + 1;
        }
    }
    if (grid.empty()) throw ConfigError("empty grid");
    return grid;
}

std::vector<std::string> parse_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        if (next > pos) out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    if (out.empty()) throw ConfigError("empty list");
    return out;
}

SystemConfig load_or_default(const std::string& path) {
    if (path.empty()) return presets::detail::defaults();
    return config_io::load_config(path);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ehlink: dual-hop energy-harvesting relay BER toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, preset_name, axis_name = "ps_db";
    std::string grid_spec = "0:60:5", eval_spec = "analytic_L,analytic_NL";
    std::string model_name = "L";
    std::string chi_grid_spec = "1,2,3,4,5,6,8,10,12,14,16,18,20";
    std::uint64_t seed = 0, min_errors = 200, max_bits = 100000000ULL;
    double ps_db = std::nan("");
    int chi = 20;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config)
            cmd->add_option("config", config_path, "JSON config file (defaults when omitted)");
        cmd->add_option("--seed", seed, "override RNG seed");
        cmd->add_option("--ps-db", ps_db, "override source power [dB]");
        cmd->add_option("--chi", chi, "Gauss-Chebyshev order / series length");
        cmd->add_option("--min-errors", min_errors, "Monte-Carlo stopping: error count");
        cmd->add_option("--max-bits", max_bits, "Monte-Carlo stopping: bit budget");
    };

    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep, write CSV");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--preset", preset_name, "figure preset (fig3..fig10)");
    sweep_cmd->add_option("--axis", axis_name, "sweep axis: ps_db rho n_ip n_eh n_r distance");
    sweep_cmd->add_option("--grid", grid_spec, "grid: lo:hi:step or v1,v2,...");
    sweep_cmd->add_option("--evaluators", eval_spec,
                          "comma list of analytic_L analytic_NL mc_L mc_NL");
    sweep_cmd->add_option("--out", out_path, "output CSV file (or directory for presets)");

    auto* rho_cmd = app.add_subcommand("optimize-rho", "grid argmin of analytic BER over rho");
    add_common(rho_cmd, true);
    rho_cmd->add_option("--grid", grid_spec, "rho grid (default 0.05:0.95:0.05)");
    rho_cmd->add_option("--model", model_name, "harvester model: L or NL");

    auto* approx_cmd =
        app.add_subcommand("approx-error", "Lambda(chi) vs Monte-Carlo at the config point");
    add_common(approx_cmd, true);
    approx_cmd->add_option("--chi-grid", chi_grid_spec, "chi values");
    approx_cmd->add_option("--out", out_path, "output CSV file");

    auto* lambda_cmd = app.add_subcommand(
        "diff-lambda", "uniform-minus-deterministic BER gap across distances");
    add_common(lambda_cmd, true);
    lambda_cmd->add_option("--model", model_name, "harvester model: L or NL");
    lambda_cmd->add_option("--d-grid", grid_spec, "distance grid (default 1.1:2.9:0.05)");
    lambda_cmd->add_option("--out", out_path, "output CSV file");

    auto* verify_cmd =
        app.add_subcommand("verify", "dual-path agreement suite (closed form vs quadrature)");
    add_common(verify_cmd, false);
    verify_cmd->add_option("config", config_path, "JSON config file (defaults when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        SystemConfig cfg = load_or_default(config_path);
        if (seed != 0) cfg.seed = seed;
        if (!std::isnan(ps_db)) cfg.ps_db = ps_db;
        harness::McOptions mc{min_errors, max_bits, 0};

        if (sweep_cmd->parsed()) {
            if (!preset_name.empty()) {
                const std::string dir = out_path.empty() ? "." : out_path;
                std::filesystem::create_directories(dir);
                auto preset = presets::make_preset(preset_name);
                std::cout << preset.name << ": " << preset.description << '\n';
                bool failures = presets::run_preset(preset, dir, mc, chi, &std::cout);
                return failures ? 2 : 0;
            }
            harness::SweepSpec spec;
            spec.base = cfg;
            spec.axis = harness::axis_from_string(axis_name);
            spec.grid = parse_grid(grid_spec);
            for (const auto& name : parse_list(eval_spec))
                spec.evaluators.push_back(harness::evaluator_from_string(name));
            spec.mc = mc;
            spec.chi = chi;
            spec.output_path = out_path;
            auto result = harness::run_sweep(spec);
            if (out_path.empty()) {
                std::cout << "axis,evaluator,ber,flag,half_width\n";
                for (const auto& r : result.rows)
                    std::cout << harness::detail::fmt_double(r.axis_value) << ','
                              << harness::to_string(r.evaluator) << ','
                              << harness::detail::fmt_double(r.ber) << ',' << r.flag << ','
                              << (r.half_width ? harness::detail::fmt_double(*r.half_width)
                                               : std::string())
                              << '\n';
            }
            return result.had_failures ? 2 : 0;
        }

        if (rho_cmd->parsed()) {
            cfg.eh.model = model_name == "NL" ? EhModel::NL : EhModel::L;
            std::vector<double> grid = grid_spec == "0:60:5"
                                           ? parse_grid("0.05:0.95:0.05")
                                           : parse_grid(grid_spec);
            auto opt = harness::optimize_rho(cfg, grid, chi);
            std::cout << "rho_opt,ber\n"
                      << harness::detail::fmt_double(opt.rho) << ','
                      << harness::detail::fmt_double(opt.ber) << '\n';
            return 0;
        }

        if (approx_cmd->parsed()) {
            std::vector<int> chis;
            for (double v : parse_grid(chi_grid_spec)) chis.push_back(static_cast<int>(v));
            auto res = harness::approximation_error(cfg, chis, std::max<std::uint64_t>(
                                                                   min_errors, 200000),
                                                    std::max<std::uint64_t>(max_bits,
                                                                            200000000ULL));
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path, std::ios::binary);
                if (!file) throw ConfigError("cannot open output file: " + out_path);
                os = &file;
            }
            (*os) << "chi,lambda,analytic_ber,mc_ber,mc_half_width\n";
            bool failures = false;
            for (const auto& row : res.rows) {
                if (!row.valid) failures = true;
                (*os) << row.chi << ','
                      << (row.valid ? harness::detail::fmt_double(row.lambda) : "") << ','
                      << harness::detail::fmt_double(row.analytic_ber) << ','
                      << harness::detail::fmt_double(res.mc_ber) << ','
                      << harness::detail::fmt_double(res.mc_half_width) << '\n';
            }
            return failures ? 2 : 0;
        }

        if (lambda_cmd->parsed()) {
            EhModel model = model_name == "NL" ? EhModel::NL : EhModel::L;
            std::vector<double> grid = grid_spec == "0:60:5"
                                           ? parse_grid("1.1:2.9:0.05")
                                           : parse_grid(grid_spec);
            auto rows = harness::difference_lambda(cfg, model, grid, chi);
            std::ostream* os = &std::cout;
            std::ofstream file;
            if (!out_path.empty()) {
                file.open(out_path, std::ios::binary);
                if (!file) throw ConfigError("cannot open output file: " + out_path);
                os = &file;
            }
            (*os) << "d,lambda\n";
            bool failures = false;
            for (const auto& row : rows) {
                if (!row.valid) failures = true;
                (*os) << harness::detail::fmt_double(row.d) << ','
                      << (row.valid ? harness::detail::fmt_double(row.lambda) : "") << '\n';
            }
            return failures ? 2 : 0;
        }

        if (verify_cmd->parsed()) {
            std::vector<double> ps_grid;
            for (int i = 0; i < 12; ++i) ps_grid.push_back(5.0 * i);
            auto rows = harness::dual_path_report(cfg, ps_grid, chi);
            std::printf("%-24s %6s %13s %13s %10s %8s %s\n", "op", "ps_db", "closed",
                        "quad", "rel_gap", "tol", "status");
            int fails = 0;
            for (const auto& r : rows) {
                if (!r.pass) ++fails;
                std::printf("%-24s %6.1f %13.6e %13.6e %10.2e %8.0e %s%s\n", r.op.c_str(),
                            r.ps_db, r.closed, r.quad, r.rel_gap, r.tolerance,
                            r.pass ? "pass" : "FAIL", r.fallback_used ? " (fallback)" : "");
            }
            std::printf("%d/%zu comparisons passed\n", static_cast<int>(rows.size()) - fails,
                        rows.size());
            return fails == 0 ? 0 : 2;
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
