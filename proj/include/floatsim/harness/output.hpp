#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "floatsim/errors.hpp"
#include "floatsim/harness/config.hpp"
#include "floatsim/harness/simulation.hpp"

namespace floatsim::harness {

inline constexpr const char* kTimeseriesHeader =
    "t,delta,delta_dot,F_restor,F_added,F_DE,F_NL,E_fluid,E_solid,mass_residual,"
    "constraint_residual";
inline constexpr const char* kSnapshotHeader = "x,zeta,q,is_interior";
inline constexpr const char* kConvergenceHeader = "dx,error,order_local";

/// Output stream set up for round-trippable doubles.
inline std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os.precision(17);
    return os;
}

inline void write_timeseries_row(std::ostream& os, const Simulation& sim) {
    const Diagnostics d = sim.diagnostics();
    const ForceBreakdown& f = sim.forces();
    os << d.time << ',' << sim.delta() << ',' << sim.delta_dot() << ',' << f.restoring << ','
       << f.added << ',' << f.damping_excitation << ',' << f.nonlinear << ',' << d.fluid_energy
       << ',' << d.solid_energy << ',' << d.mass_residual << ',' << d.constraint_residual << '\n';
}

inline void write_snapshot(std::ostream& os, const Simulation& sim) {
    os << kSnapshotHeader << '\n';
    const FluidState& s = sim.state();
    const auto& region = sim.region();
    for (std::size_t j = 0; j < s.size(); ++j) {
        const int interior = region && region->is_interior(j) ? 1 : 0;
        os << sim.grid().x(j) << ',' << s.zeta[j] << ',' << s.q[j] << ',' << interior << '\n';
    }
}

inline std::string snapshot_name(double t) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "snapshot_%.3f.csv", t);
    return buf;
}

struct ConvergenceRow {
    double dx = 0.0;
    double error = 0.0;
    double order_local = std::nan("");
};

/// Rows sorted by increasing dx; order_local compares each row with the
/// previous (finer) one.
inline void write_convergence(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << kConvergenceHeader << '\n';
    for (const auto& r : rows) os << r.dx << ',' << r.error << ',' << r.order_local << '\n';
}

struct RunSummary {
    std::size_t steps = 0;
    double t_final = 0.0;
    double max_constraint_residual = 0.0;
    double max_mass_residual = 0.0;
    double max_newton_residual = 0.0;
    std::vector<std::filesystem::path> files;
};

/// Runs a scenario to t_end and writes timeseries.csv, snapshot_<t>.csv and
/// config.txt into cfg.output_dir. On an invariant breach the last good
/// state is written as a snapshot before the exception propagates.
inline RunSummary run_scenario(const ScenarioConfig& cfg) {
    Simulation sim(cfg);
    namespace fs = std::filesystem;
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    RunSummary summary;
    {
        std::ofstream os(dir / "config.txt");
        os << format_config(cfg);
        summary.files.push_back(dir / "config.txt");
    }
    const auto snapshot = [&](const Simulation& s) {
        const fs::path path = dir / snapshot_name(s.time());
        auto os = open_csv(path);
        write_snapshot(os, s);
        summary.files.push_back(path);
    };

    const fs::path ts_path = dir / "timeseries.csv";
    auto ts = open_csv(ts_path);
    summary.files.push_back(ts_path);
    ts << kTimeseriesHeader << '\n';
    write_timeseries_row(ts, sim);
    snapshot(sim);

    double next_row = cfg.output_interval;
    double next_snap = cfg.snapshot_interval;
    const double eps = 1e-9;
    const auto emit = [&](const Simulation& s) {
        if (s.time() >= next_row - eps) {
            write_timeseries_row(ts, s);
            if (cfg.output_interval > 0.0) {
                while (next_row <= s.time() + eps) next_row += cfg.output_interval;
            }
        }
        if (cfg.snapshot_interval > 0.0 && s.time() >= next_snap - eps &&
            s.time() < cfg.t_end - eps) {
            snapshot(s);
            while (next_snap <= s.time() + eps) next_snap += cfg.snapshot_interval;
        }
    };
    try {
        if (sim.fixed_dt() > 0.0) {
            sim.run_until(cfg.t_end, emit);
        } else {
            // adaptive steps are cut to land on output times
            while (sim.time() < cfg.t_end - eps) {
                double target = cfg.t_end;
                if (cfg.output_interval > 0.0) target = std::min(target, next_row);
                if (cfg.snapshot_interval > 0.0) target = std::min(target, next_snap);
                sim.run_until(target, emit);
            }
        }
    } catch (const InvariantBreach&) {
        ts.flush();
        snapshot(sim);
        throw;
    }
    snapshot(sim);

    summary.steps = sim.steps();
    summary.t_final = sim.time();
    summary.max_constraint_residual = sim.max_constraint_residual();
    summary.max_mass_residual = sim.max_mass_residual();
    summary.max_newton_residual = sim.max_newton_residual();
    return summary;
}

}  // namespace floatsim::harness
