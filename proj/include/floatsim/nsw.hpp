#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "floatsim/core.hpp"
#include "floatsim/errors.hpp"
#include "floatsim/geometry.hpp"

namespace floatsim {

/// Momentum flux q^2/h + g h^2/2 of the nonlinear shallow water equations.
struct ShallowWaterFlux {
    double operator()(double h, double q, const PhysicalParams& p) const {
        return q * q / h + 0.5 * p.g * h * h;
    }
};

/// Momentum flux q^2/h0 + g h^2/2 of the Boussinesq system.
struct BoussinesqFlux {
    double operator()(double h, double q, const PhysicalParams& p) const {
        return q * q / p.h0 + 0.5 * p.g * h * h;
    }
};

struct CellState {
    double zeta = 0.0;
    double q = 0.0;
};

/// Ghost states beyond x = 0 and x = L.
struct GhostCells {
    CellState left;
    CellState right;
};

/// Lax-Friedrichs mass flux. The diffusive part is dropped on interfaces
/// between j_minus and j_plus. Depth jumps are taken as elevation jumps
/// (flat bottom).
inline double lf_mass_flux(const CellState& l, const CellState& r, bool interior_interface,
                           double alpha) {
    const double centred = 0.5 * (r.q + l.q);
    if (interior_interface) return centred;
    return centred - (r.zeta - l.zeta) / (2.0 * alpha);
}

/// Standard Lax-Friedrichs momentum flux.
template <class Flux = ShallowWaterFlux>
double lf_momentum_flux(const CellState& l, const CellState& r, double alpha,
                        const PhysicalParams& p, Flux flux = {}) {
    const double fl = flux(p.h0 + l.zeta, l.q, p);
    const double fr = flux(p.h0 + r.zeta, r.q, p);
    return 0.5 * (fr + fl) - (r.q - l.q) / (2.0 * alpha);
}

/// Fluxes at the N+2 interfaces x_{j+1/2}, j = -1..N. Entry k holds
/// interface j+1/2 with j = k-1.
struct InterfaceFluxes {
    std::vector<double> mass;
    std::vector<double> momentum;

    /// Interface j+1/2, for j >= -1 passed as j+1.
    double mass_right_of(std::size_t j) const { return mass[j + 1]; }
    double mass_left_of(std::size_t j) const { return mass[j]; }
    double momentum_right_of(std::size_t j) const { return momentum[j + 1]; }
    double momentum_left_of(std::size_t j) const { return momentum[j]; }
};

namespace detail {

inline CellState cell(const FluidState& s, std::size_t j) { return {s.zeta[j], s.q[j]}; }

}  // namespace detail

template <class Flux = ShallowWaterFlux>
InterfaceFluxes compute_fluxes(const FluidState& s, const GhostCells& ghosts,
                               const std::optional<InteriorRegion>& region, double alpha,
                               const PhysicalParams& p, Flux flux = {}) {
    const std::size_t n = s.size();
    InterfaceFluxes f;
    f.mass.resize(n + 1);
    f.momentum.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
        const CellState l = (k == 0) ? ghosts.left : detail::cell(s, k - 1);
        const CellState r = (k == n) ? ghosts.right : detail::cell(s, k);
        // interface j+1/2 with j = k-1 is interior iff j_minus <= j < j_plus
        const bool interior = region && k >= region->j_minus + 1 && k <= region->j_plus;
        f.mass[k] = lf_mass_flux(l, r, interior, alpha);
        f.momentum[k] = lf_momentum_flux(l, r, alpha, p, flux);
    }
    return f;
}

/// Interior pressure source over [j_minus, j_plus] (entry k is cell
/// j_minus + k). `net` is S_j - (D0 F2)_j, the part of the momentum update
/// left once the flux divergence cancels; the stepper uses it directly so the
/// cancellation is exact rather than left to rounding.
struct PressureSource {
    std::vector<double> source;
    std::vector<double> net;
};

/// S_j = (D0 F2)*_j - zdd (x - x_G)*_j
///       - g [(h_{j+} - h_{j+ - 1}) - (h_{j-} - h_{j- + 1})] / (dx sum# 1/h),
/// with starred parts and sum# taken with half weights at j_minus and j_plus.
/// `body_accel` is the second difference of the body position over levels
/// n, n+1, n+2.
inline PressureSource pressure_source_parts(const FluidState& s, const Grid& grid,
                                            const InteriorRegion& region,
                                            const InterfaceFluxes& fluxes, double body_accel,
                                            const PhysicalParams& p) {
    const std::size_t m = region.range_size();
    if (m < 5) throw ConfigError("pressure source needs at least three interior cells");
    const std::size_t jm = region.j_minus;
    const std::size_t jp = region.j_plus;
    const double dx = grid.dx();
    const double x_ref = 0.5 * (grid.x(jm) + grid.x(jp));

    const std::vector<double> depth = range_depths(s, region, p.h0);
    const HarmonicWeights weights(depth);

    std::vector<double> d0f2(m), raw(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t j = jm + k;
        d0f2[k] = (fluxes.momentum_right_of(j) - fluxes.momentum_left_of(j)) / dx;
        raw[k] = d0f2[k] - body_accel * (grid.x(j) - x_ref);
    }
    const double mean = weights.average(raw);
    const double jump = (s.zeta[jp] - s.zeta[jp - 1]) - (s.zeta[jm] - s.zeta[jm + 1]);
    const double constant = p.g * jump / (dx * weights.total());
    PressureSource out{std::vector<double>(m), std::vector<double>(m)};
    for (std::size_t k = 0; k < m; ++k) {
        out.source[k] = (raw[k] - mean) - constant;
        out.net[k] = -body_accel * (grid.x(jm + k) - x_ref) - (mean + constant);
    }
    return out;
}

inline std::vector<double> pressure_source(const FluidState& s, const Grid& grid,
                                           const InteriorRegion& region,
                                           const InterfaceFluxes& fluxes, double body_accel,
                                           const PhysicalParams& p) {
    return pressure_source_parts(s, grid, region, fluxes, body_accel, p).source;
}

/// Outcome of the discrete compatibility check on the initial data.
struct CompatibilityReport {
    bool ok = true;
    double depth_violation = 0.0;   ///< max |h0_j - h0_w,j| over interior cells
    double motion_violation = 0.0;  ///< max |h1_w,j - h0_w,j + alpha (F1 jump)|
    double tolerance = 0.0;

    double max_violation() const { return std::max(depth_violation, motion_violation); }

    std::string message() const {
        std::ostringstream os;
        os << (ok ? "compatible" : "incompatible") << ": depth mismatch " << depth_violation
           << ", first-step mismatch " << motion_violation << " (tolerance " << tolerance << ")";
        return os.str();
    }
};

/// Checks that the interior surface sits on the hull and that the first body
/// step equals the divergence of the interior mass flux. `hull0`/`hull1` are
/// hull elevations over [j_minus, j_plus] at levels 0 and 1 (end entries
/// ignored).
inline CompatibilityReport check_compatibility(const FluidState& s, const InteriorRegion& region,
                                               std::span<const double> hull0,
                                               std::span<const double> hull1, double alpha,
                                               double tolerance) {
    CompatibilityReport rep;
    rep.tolerance = tolerance;
    for (std::size_t j = region.j_minus + 1; j < region.j_plus; ++j) {
        const std::size_t k = j - region.j_minus;
        rep.depth_violation = std::max(rep.depth_violation, std::abs(s.zeta[j] - hull0[k]));
        // interior interfaces carry no diffusion: F1 jump is (q_{j+1} - q_{j-1})/2
        const double flux_jump = 0.5 * (s.q[j + 1] - s.q[j - 1]);
        rep.motion_violation =
            std::max(rep.motion_violation, std::abs((hull1[k] - hull0[k]) + alpha * flux_jump));
    }
    rep.ok = rep.max_violation() <= tolerance;
    return rep;
}

/// Hull elevations zeta_w(x_j; delta) over [j_minus, j_plus]; the two end
/// cells lie outside the hull and are set to the nearest wall value.
inline std::vector<double> hull_profile(const BodyGeometry& body, const Grid& grid,
                                        const InteriorRegion& region, double delta) {
    std::vector<double> out(region.range_size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double x = std::clamp(grid.x(region.j_minus + k), body.x_minus(), body.x_plus());
        out[k] = body.hull_elevation(x, delta);
    }
    return out;
}

inline CompatibilityReport check_compatibility(const FluidState& s, const Grid& grid,
                                               const InteriorRegion& region,
                                               const BodyGeometry& body, double delta0,
                                               double delta1, double alpha,
                                               double tolerance = 1e-12) {
    const auto h0 = hull_profile(body, grid, region, delta0);
    const auto h1 = hull_profile(body, grid, region, delta1);
    return check_compatibility(s, region, h0, h1, alpha, tolerance * body.params().h0);
}

/// Inputs of one finite-volume step.
struct StepConfig {
    const Grid* grid = nullptr;
    PhysicalParams params;
    std::optional<InteriorRegion> region;
    double dt = 0.0;
    GhostCells ghosts;
    /// Second difference of the body position over levels n, n+1, n+2.
    double body_accel = 0.0;
    double cfl_max = 0.5;
};

struct StepResult {
    FluidState next;
    double mass_flux_left = 0.0;   ///< F1 at x_{-1/2}
    double mass_flux_right = 0.0;  ///< F1 at x_{N+1/2}
    double cfl = 0.0;
};

/// alpha * max_j (|q_j/h_j| + sqrt(g h_j)).
inline double cfl_number(const FluidState& s, double alpha, const PhysicalParams& p) {
    double speed = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double h = p.h0 + s.zeta[j];
        if (!(h > 0.0)) {
            throw InvariantBreach("non-positive depth " + std::to_string(h) + " at cell " +
                                  std::to_string(j) + ", t = " + std::to_string(s.t));
        }
        speed = std::max(speed, std::abs(s.q[j] / h) + std::sqrt(p.g * h));
    }
    return alpha * speed;
}

/// U^{n+1}_j = U^n_j - alpha (F_{j+1/2} - F_{j-1/2}) + dt (0, S_j), with the
/// momentum update applied to `momentum_base` instead of q^n (the Boussinesq
/// step passes (D q^n) here and inverts D afterwards). `momentum_base_lo`
/// carries the low parts of the base for compensated states (may be empty).
template <class Flux>
StepResult advance_explicit(const FluidState& s, const StepConfig& cfg,
                            std::span<const double> momentum_base,
                            std::span<const double> momentum_base_lo, Flux flux = {}) {
    const Grid& grid = *cfg.grid;
    const PhysicalParams& p = cfg.params;
    const std::size_t n = s.size();
    if (n != grid.size()) throw std::invalid_argument("state does not match grid");
    if (!(cfg.dt > 0.0)) throw ConfigError("time step must be positive");
    const double alpha = cfg.dt / grid.dx();

    StepResult res;
    res.cfl = cfl_number(s, alpha, p);
    if (res.cfl > cfg.cfl_max * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "CFL number " << res.cfl << " exceeds limit " << cfg.cfl_max << " at t = " << s.t;
        throw InvariantBreach(os.str());
    }

    const InterfaceFluxes f = compute_fluxes(s, cfg.ghosts, cfg.region, alpha, p, flux);
    PressureSource src;
    if (cfg.region) src = pressure_source_parts(s, grid, *cfg.region, f, cfg.body_accel, p);

    const bool comp = s.compensated();
    res.next = FluidState(n);
    if (comp) res.next.enable_compensation();
    res.next.t = s.t + cfg.dt;
    for (std::size_t j = 0; j < n; ++j) {
        const double dz = -alpha * (f.mass_right_of(j) - f.mass_left_of(j));
        // in the contact range -alpha (F_{j+1/2} - F_{j-1/2}) + dt S_j = dt net_j
        const double dq = cfg.region && cfg.region->in_range(j)
                              ? cfg.dt * src.net[j - cfg.region->j_minus]
                              : -alpha * (f.momentum_right_of(j) - f.momentum_left_of(j));
        if (comp) {
            res.next.zeta[j] = s.zeta[j];
            res.next.zeta_lo[j] = s.zeta_lo[j];
            compensated_add(res.next.zeta[j], res.next.zeta_lo[j], dz);
            res.next.q[j] = momentum_base[j];
            res.next.q_lo[j] = momentum_base_lo.empty() ? 0.0 : momentum_base_lo[j];
            compensated_add(res.next.q[j], res.next.q_lo[j], dq);
        } else {
            res.next.zeta[j] = s.zeta[j] + dz;
            res.next.q[j] = momentum_base[j] + dq;
        }
        if (!(p.h0 + res.next.zeta[j] > 0.0)) {
            throw InvariantBreach("depth became non-positive at cell " + std::to_string(j) +
                                  ", t = " + std::to_string(res.next.t));
        }
    }
    res.mass_flux_left = f.mass.front();
    res.mass_flux_right = f.mass.back();
    return res;
}

/// One step of the adapted Lax-Friedrichs scheme for the shallow water
/// equations with (optionally) a floating body.
template <class Flux = ShallowWaterFlux>
StepResult step_nsw(const FluidState& s, const StepConfig& cfg, Flux flux = {}) {
    return advance_explicit(s, cfg, std::span<const double>(s.q), std::span<const double>(s.q_lo),
                            flux);
}

}  // namespace floatsim
