#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "floatsim/floatsim.hpp"

namespace fh = floatsim::harness;
namespace fx = floatsim::exact;

namespace {

enum Exit : int { ok = 0, config_error = 2, compat_error = 3, breach = 4, other = 1 };

int cmd_run(const std::string& path, const std::optional<std::string>& out) {
    fh::ScenarioConfig cfg = fh::load_config(path);
    if (out) cfg.output_dir = *out;
    const fh::RunSummary s = fh::run_scenario(cfg);
    std::cout << std::setprecision(6) << "steps " << s.steps << ", t = " << s.t_final
              << "\nmax constraint residual " << s.max_constraint_residual
              << "\nmax relative mass residual " << s.max_mass_residual
              << "\nmax Newton residual " << s.max_newton_residual << "\nwrote " << s.files.size()
              << " files to " << cfg.output_dir << '\n';
    return ok;
}

int cmd_check(const std::string& path) {
    const fh::ScenarioConfig cfg = fh::load_config(path);
    fh::Simulation sim(cfg);
    if (!sim.body()) {
        std::cout << "no body: nothing to check\n";
        return ok;
    }
    const auto& r = *sim.region();
    std::cout << "interior cells " << r.j_minus + 1 << ".." << r.j_plus - 1 << " (j- = " << r.j_minus
              << ", j+ = " << r.j_plus << ")\n"
              << sim.compatibility().message() << '\n';
    return ok;
}

int cmd_converge(const std::string& kind, std::vector<double> dxs, std::optional<double> alpha,
                 const std::string& out, bool parallel) {
    const fh::StudyKind k = fh::parse_study_kind(kind);
    if (dxs.empty()) dxs = fh::table_spacings();
    const fh::ConvergenceTable t = fh::convergence_study(k, dxs, alpha, parallel);
    std::filesystem::create_directories(out);
    auto os = fh::open_csv(std::filesystem::path(out) / "convergence.csv");
    fh::write_convergence(os, t.rows);
    std::cout << std::setw(10) << "dx" << std::setw(16) << "error" << std::setw(10) << "order\n";
    for (const auto& r : t.rows) {
        std::cout << std::setw(10) << r.dx << std::setw(16) << std::setprecision(6) << r.error
                  << std::setw(10) << std::setprecision(3) << r.order_local << '\n';
    }
    std::cout << "fitted order " << std::setprecision(4) << t.order << '\n';
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"floatsim: 1D wave / floating body simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    auto* run = app.add_subcommand("run", "run a scenario from a key = value config file");
    run->add_option("config", config_path, "config file")->required();
    run->add_option("--out", out_dir, "override output_dir");

    auto* check = app.add_subcommand("check", "check the initial data of a scenario");
    check->add_option("config", config_path, "config file")->required();

    std::string kind;
    std::vector<double> dxs;
    std::optional<double> alpha;
    std::string conv_out = ".";
    bool parallel = false;
    auto* conv = app.add_subcommand("converge", "grid refinement study against an exact solution");
    conv->add_option("kind", kind, "forced | return")->required()->check(
        CLI::IsMember({"forced", "return"}));
    conv->add_option("--dx", dxs, "spacings (default 0.00625 0.0125 0.025 0.05)");
    conv->add_option("--alpha", alpha, "dt/dx");
    conv->add_option("--out", conv_out, "directory for convergence.csv");
    conv->add_flag("--parallel", parallel, "run spacings concurrently");

    auto* oracle = app.add_subcommand("oracle", "evaluate an exact solution");
    oracle->require_subcommand(1);
    double z_c0 = 2.0, ratio = 0.5, t_end = 10.0, tol = 1e-10, h0 = 15.0;
    std::optional<std::string> oracle_out;
    auto* o_ret = oracle->add_subcommand("return", "heave ODE for the return to equilibrium");
    o_ret->add_option("--z-c0", z_c0, "initial elevation of C (m)");
    o_ret->add_option("--density-ratio", ratio, "rho_s / rho");
    o_ret->add_option("--t-end", t_end, "horizon (s)");
    o_ret->add_option("--tol", tol, "ODE tolerance");
    o_ret->add_option("--out", oracle_out, "CSV file (default stdout)");

    double amp = 3.0, time = 0.0, x_min = 0.0, x_max = 400.0, step = 1.0, crest = 100.0;
    auto* o_sol = oracle->add_subcommand("solitary", "Boussinesq solitary wave profile");
    o_sol->add_option("--amplitude", amp, "a (m)");
    o_sol->add_option("--crest", crest, "crest position at t = 0 (m)");
    o_sol->add_option("--time", time, "t (s)");
    o_sol->add_option("--x-min", x_min);
    o_sol->add_option("--x-max", x_max);
    o_sol->add_option("--dx", step);
    o_sol->add_option("--h0", h0);

    double r = 0.0;
    auto* o_tau = oracle->add_subcommand("tau0", "physical root of the contact cubic");
    o_tau->add_option("--r", r, "r = W zdot / (4 sqrt g)")->required();
    o_tau->add_option("--h0", h0);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(config_path, out_dir);
        if (*check) return cmd_check(config_path);
        if (*conv) return cmd_converge(kind, dxs, alpha, conv_out, parallel);
        if (*o_ret) {
            floatsim::PhysicalParams p;
            floatsim::HullSpec spec;
            spec.density_ratio = ratio;
            const floatsim::BodyGeometry body(p, spec);
            fx::OdeOptions opt;
            opt.tol = tol;
            const auto traj =
                fx::return_to_equilibrium_reference(body, z_c0 - body.z_c_eq(), t_end, opt);
            if (oracle_out) {
                std::ofstream os(*oracle_out);
                traj.write_csv(os);
            } else {
                traj.write_csv(std::cout);
            }
            return ok;
        }
        if (*o_sol) {
            floatsim::PhysicalParams p;
            p.h0 = h0;
            const fx::SolitaryWave w(amp, crest, p);
            std::cerr << std::setprecision(10) << "K = " << w.wavenumber() << ", c = " << w.speed()
                      << '\n';
            std::cout << std::setprecision(17) << "x,zeta,q\n";
            for (double x = x_min; x <= x_max + 1e-9 * step; x += step) {
                const auto s = w.at(x, time);
                std::cout << x << ',' << s.zeta << ',' << s.q << '\n';
            }
            return ok;
        }
        if (*o_tau) {
            floatsim::PhysicalParams p;
            p.h0 = h0;
            std::cout << std::setprecision(17) << "r0 = " << fx::critical_r(h0)
                      << "\ntau0 = " << fx::tau0(r, h0)
                      << "\nzeta_e = " << fx::tau0(r, h0) * fx::tau0(r, h0) - h0 << '\n';
            return ok;
        }
    } catch (const floatsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const floatsim::CompatibilityError& e) {
        std::cerr << "compatibility violation: " << e.what() << '\n';
        return compat_error;
    } catch (const floatsim::InvariantBreach& e) {
        std::cerr << "invariant breach: " << e.what() << '\n';
        return breach;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return other;
    }
    return ok;
}
