#pragma once

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floatsim/exact.hpp"
#include "floatsim/harness/output.hpp"
#include "floatsim/harness/scenarios.hpp"
#include "floatsim/harness/simulation.hpp"

namespace floatsim::harness {

enum class StudyKind { forced, return_to_equilibrium };

inline StudyKind parse_study_kind(const std::string& s) {
    if (s == "forced") return StudyKind::forced;
    if (s == "return") return StudyKind::return_to_equilibrium;
    throw ConfigError("unknown study '" + s + "' (expected forced or return)");
}

/// Spacings of the refinement tables.
inline const std::vector<double>& table_spacings() {
    static const std::vector<double> dx = {0.00625, 0.0125, 0.025, 0.05};
    return dx;
}

/// Horizon over which errors are measured.
inline constexpr double kStudyHorizon = 10.0;

inline ScenarioConfig study_config(StudyKind kind, double dx,
                                   std::optional<double> alpha = std::nullopt) {
    ScenarioConfig c = kind == StudyKind::forced ? forced_heave(dx) : return_to_equilibrium(dx);
    if (alpha) c.alpha = *alpha;
    c.t_end = kStudyHorizon;
    return c;
}

/// L-infinity error over [0, 10 s] at one spacing.
///   forced: elevation in cell j_minus against the contact elevation of the
///           prescribed velocity;
///   return: body displacement against the heave ODE solution.
inline double study_error(StudyKind kind, double dx, std::optional<double> alpha = std::nullopt,
                          const exact::Trajectory* reference = nullptr) {
    const ScenarioConfig cfg = study_config(kind, dx, alpha);
    Simulation sim(cfg);
    const PhysicalParams& p = cfg.params;
    const BodyGeometry& body = *sim.body();
    const std::size_t jm = sim.region()->j_minus;

    std::optional<exact::Trajectory> own;
    if (kind == StudyKind::return_to_equilibrium && !reference) {
        own = exact::return_to_equilibrium_reference(body, sim.delta(), cfg.t_end + 1.0);
        reference = &*own;
    }
    const HeaveProfile prof{cfg.z_c0.value_or(body.z_c_eq()), cfg.heave_amplitude,
                            cfg.heave_period};

    const auto error_now = [&](const Simulation& s) {
        if (kind == StudyKind::forced) {
            const double v = prescribed_motion(s.time(), prof).z_dot;
            return std::abs(s.state().zeta[jm] - exact::contact_elevation(v, body.width(), p));
        }
        return std::abs(s.delta() - reference->at(s.time()).delta);
    };
    double err = error_now(sim);
    sim.run_until(cfg.t_end, [&](const Simulation& s) { err = std::max(err, error_now(s)); });
    return err;
}

/// Least-squares slope of log(error) against log(dx).
inline double fitted_order(const std::vector<ConvergenceRow>& rows) {
    if (rows.size() < 2) return std::nan("");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rows.size());
    for (const auto& r : rows) {
        const double x = std::log(r.dx), y = std::log(r.error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;  ///< ascending dx
    double order = 0.0;                ///< fitted
};

/// Runs every spacing (concurrently when `parallel`), sorts by dx and fills
/// local orders log(e_i / e_{i-1}) / log(dx_i / dx_{i-1}).
inline ConvergenceTable convergence_study(StudyKind kind, std::vector<double> dxs,
                                          std::optional<double> alpha = std::nullopt,
                                          bool parallel = false) {
    if (dxs.empty()) throw ConfigError("convergence study needs at least one dx");
    std::sort(dxs.begin(), dxs.end());
    std::vector<ConvergenceRow> rows(dxs.size());

    std::optional<exact::Trajectory> reference;
    if (kind == StudyKind::return_to_equilibrium) {
        const ScenarioConfig c = study_config(kind, dxs.front(), alpha);
        const BodyGeometry body(c.params, c.hull);
        reference = exact::return_to_equilibrium_reference(
            body, c.z_c0.value_or(body.z_c_eq()) - body.z_c_eq(), c.t_end + 1.0);
    }
    const exact::Trajectory* ref = reference ? &*reference : nullptr;

    if (parallel) {
        std::vector<std::future<double>> jobs;
        for (double dx : dxs) {
            jobs.push_back(std::async(std::launch::async,
                                      [=] { return study_error(kind, dx, alpha, ref); }));
        }
        for (std::size_t i = 0; i < dxs.size(); ++i) rows[i] = {dxs[i], jobs[i].get()};
    } else {
        for (std::size_t i = 0; i < dxs.size(); ++i) {
            rows[i] = {dxs[i], study_error(kind, dxs[i], alpha, ref)};
        }
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
        rows[i].order_local =
            std::log(rows[i].error / rows[i - 1].error) / std::log(rows[i].dx / rows[i - 1].dx);
    }
    return {rows, fitted_order(rows)};
}

}  // namespace floatsim::harness
