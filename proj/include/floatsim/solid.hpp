#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "floatsim/core.hpp"
#include "floatsim/errors.hpp"
#include "floatsim/geometry.hpp"

namespace floatsim {

enum class FluidModel { nsw, boussinesq };

// ---------------------------------------------------------------------------
// Prescribed heave
// ---------------------------------------------------------------------------

/// z(t) = z0 + (A/2)(cos(2 pi t / T) - 1): starts at rest at z0 and reaches
/// z0 - A at t = T/2.
struct HeaveProfile {
    double z0 = 0.0;
    double amplitude = 2.0;
    double period = 10.0;
};

struct Kinematics {
    double z;
    double z_dot;
    double z_ddot;
};

inline Kinematics prescribed_motion(double t, const HeaveProfile& profile) {
    if (!(profile.period > 0.0)) throw ConfigError("heave period must be positive");
    const double w = 2.0 * std::numbers::pi / profile.period;
    const double half = 0.5 * profile.amplitude;
    return {profile.z0 + half * (std::cos(w * t) - 1.0), -half * w * std::sin(w * t),
            -half * w * w * std::cos(w * t)};
}

// ---------------------------------------------------------------------------
// Body state and forces
// ---------------------------------------------------------------------------

/// Displacement from equilibrium at levels n and n+1.
struct BodyState {
    double delta_n = 0.0;
    double delta_np1 = 0.0;

    double velocity(double dt) const { return (delta_np1 - delta_n) / dt; }
};

/// Vertical force on the body split as restoring + added mass +
/// damping/excitation + nonlinear (N per metre of width).
struct ForceBreakdown {
    double restoring = 0.0;
    double added = 0.0;
    double damping_excitation = 0.0;
    double nonlinear = 0.0;

    double total() const { return restoring + added + damping_excitation + nonlinear; }
};

namespace detail {

/// Cell centres minus their discrete average, over [j_minus, j_plus].
inline std::vector<double> centred_abscissae(const Grid& grid, const InteriorRegion& region,
                                             const HarmonicWeights& w) {
    std::vector<double> x = range_abscissae(grid, region);
    const double ref = 0.5 * (x.front() + x.back());
    for (double& v : x) v -= ref;
    const double mean = w.average(x);
    for (double& v : x) v -= mean;
    return x;
}

}  // namespace detail

/// rho g (zeta_{e,+} x*_+ - zeta_{e,-} x*_-), elevations read in cells j_plus
/// and j_minus and x*_pm = x_{j_pm} - <x>.
inline double damping_excitation_force(const FluidState& s, const Grid& grid,
                                       const InteriorRegion& region, const PhysicalParams& p) {
    const auto depth = range_depths(s, region, p.h0);
    const HarmonicWeights w(depth);
    const auto xs = detail::centred_abscissae(grid, region, w);
    return p.rho * p.g * (s.zeta[region.j_plus] * xs.back() - s.zeta[region.j_minus] * xs.front());
}

/// Hull depths h_w(x_j; delta) over [j_minus, j_plus]; the two end cells take
/// the wall values (interior traces).
inline std::vector<double> hull_depths(const Grid& grid, const InteriorRegion& region,
                                       const BodyGeometry& body, double delta) {
    std::vector<double> h(region.range_size());
    for (std::size_t k = 0; k < h.size(); ++k) {
        const double x = std::clamp(grid.x(region.j_minus + k), body.x_minus(), body.x_plus());
        h[k] = body.hull_depth(x, delta);
    }
    return h;
}

namespace detail {

/// D_k = d/dx(q^2/H) by centred differences, one-sided on the end cells.
inline std::vector<double> flux_gradient(const FluidState& s, const InteriorRegion& region,
                                         std::span<const double> hw, double dx, double h0,
                                         FluidModel model) {
    const std::size_t m = hw.size();
    std::vector<double> phi(m), d(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double q = s.q[region.j_minus + k];
        phi[k] = q * q / (model == FluidModel::nsw ? hw[k] : h0);
    }
    for (std::size_t k = 0; k < m; ++k) {
        if (k == 0) d[k] = (phi[1] - phi[0]) / dx;
        else if (k + 1 == m) d[k] = (phi[m - 1] - phi[m - 2]) / dx;
        else d[k] = (phi[k + 1] - phi[k - 1]) / (2.0 * dx);
    }
    return d;
}

}  // namespace detail

/// F_NL = rho alpha <x* d/dx(q^2/h_w)>, discretised as rho dx sum# x* D / h_w
/// with D a centred difference (one-sided on the two end cells) and h_w the
/// hull depth at delta (wall values on the end cells, so the depth jump at
/// the walls never enters D). The Boussinesq variant divides q^2 by h0.
inline double nonlinear_force(const FluidState& s, const Grid& grid, const InteriorRegion& region,
                              const BodyGeometry& body, double delta, FluidModel model) {
    const auto hw = hull_depths(grid, region, body, delta);
    const HarmonicWeights w(hw);
    const auto xs = detail::centred_abscissae(grid, region, w);
    const auto d = detail::flux_gradient(s, region, hw, grid.dx(), body.params().h0, model);
    std::vector<double> integrand(hw.size());
    for (std::size_t k = 0; k < hw.size(); ++k) integrand[k] = xs[k] * d[k];
    return body.params().rho * grid.dx() * w.weighted_sum(integrand);
}

/// Right-hand side of the discrete heave equation at level n (everything
/// except the added-mass term).
inline ForceBreakdown explicit_forces(const FluidState& s, const Grid& grid,
                                      const InteriorRegion& region, const BodyGeometry& body,
                                      double delta_n, FluidModel model) {
    ForceBreakdown f;
    f.restoring = -body.stiffness() * delta_n;
    f.damping_excitation = damping_excitation_force(s, grid, region, body.params());
    f.nonlinear = nonlinear_force(s, grid, region, body, delta_n, model);
    return f;
}

/// Acceleration delta''^{n+1} from
///   (m + m_a(delta^n)) delta'' = -c delta^n + rho g (zeta_{e,+} x*_+ - zeta_{e,-} x*_-) + F_NL.
/// The added mass sits on the left (implicit).
inline double coupled_acceleration(const FluidState& s, const Grid& grid,
                                   const InteriorRegion& region, const BodyGeometry& body,
                                   double delta_n, FluidModel model) {
    const ForceBreakdown f = explicit_forces(s, grid, region, body, delta_n, model);
    return (f.restoring + f.damping_excitation + f.nonlinear) /
           (body.mass() + body.added_mass(delta_n));
}

/// Leapfrog update delta^{n+2} = 2 delta^{n+1} - delta^n + dt^2 a.
inline BodyState advance_body(const BodyState& b, double accel, double dt,
                              const BodyGeometry& body) {
    const double next = 2.0 * b.delta_np1 - b.delta_n + dt * dt * accel;
    body.require_admissible(next);
    return {b.delta_np1, next};
}

/// Force components at level n for acceleration `accel` (= delta''^{n+1}).
inline ForceBreakdown force_breakdown(const FluidState& s, const Grid& grid,
                                      const InteriorRegion& region, const BodyGeometry& body,
                                      double delta_n, double accel, FluidModel model) {
    ForceBreakdown f = explicit_forces(s, grid, region, body, delta_n, model);
    f.added = -body.added_mass(delta_n) * accel;
    return f;
}

/// Discrete H_NL = (<x/h_w> - <x><1/h_w>) delta'^2 - <d/dx(q^2/h_w)>: the
/// nonlinear part of d<q>/dt. Diagnostic only; the stepper evolves q itself.
inline double mean_discharge_nonlinear_rate(const FluidState& s, const Grid& grid,
                                            const InteriorRegion& region,
                                            const BodyGeometry& body, double delta,
                                            double delta_dot, FluidModel model) {
    const auto hw = hull_depths(grid, region, body, delta);
    const HarmonicWeights w(hw);
    const std::size_t m = hw.size();
    const std::vector<double> x = range_abscissae(grid, region);
    std::vector<double> x_over_h(m), inv_h(m);
    for (std::size_t k = 0; k < m; ++k) {
        x_over_h[k] = x[k] / hw[k];
        inv_h[k] = 1.0 / hw[k];
    }
    const auto d = detail::flux_gradient(s, region, hw, grid.dx(), body.params().h0, model);
    const double cov = w.average(x_over_h) - w.average(x) * w.average(inv_h);
    return cov * delta_dot * delta_dot - w.average(d);
}

}  // namespace floatsim
