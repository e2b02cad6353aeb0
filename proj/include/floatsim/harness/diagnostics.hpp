#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "floatsim/core.hpp"
#include "floatsim/geometry.hpp"
#include "floatsim/solid.hpp"

namespace floatsim::harness {

/// Fluid energy per unit width, trapezoidal in x:
///   NSW:        rho int (q^2/(2h) + g zeta^2 / 2)
///   Boussinesq: rho int (q^2/(2 h0) + (h0/6)(dq/dx)^2 + g zeta^2 / 2)
/// The derivative uses centred differences (one-sided at the ends).
inline double fluid_energy(const FluidState& s, const Grid& grid, const PhysicalParams& p,
                           FluidModel model) {
    const std::size_t n = s.size();
    const double dx = grid.dx();
    std::vector<double> density(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double q = s.q[j];
        const double potential = 0.5 * p.g * s.zeta[j] * s.zeta[j];
        if (model == FluidModel::nsw) {
            density[j] = 0.5 * q * q / (p.h0 + s.zeta[j]) + potential;
        } else {
            double dq = 0.0;
            if (n > 1) {
                if (j == 0) dq = (s.q[1] - s.q[0]) / dx;
                else if (j + 1 == n) dq = (s.q[n - 1] - s.q[n - 2]) / dx;
                else dq = (s.q[j + 1] - s.q[j - 1]) / (2.0 * dx);
            }
            density[j] = 0.5 * q * q / p.h0 + p.h0 / 6.0 * dq * dq + potential;
        }
    }
    return p.rho * dx * sharp_sum(density);
}

/// m g z_C + m zdot^2 / 2 with z_C = z_C,eq + delta.
inline double solid_energy(const BodyGeometry& body, double delta, double delta_dot) {
    const double m = body.mass();
    return m * body.params().g * (body.z_c_eq() + delta) + 0.5 * m * delta_dot * delta_dot;
}

/// max over interior cells of |zeta_j - zeta_w(x_j; delta)|.
inline double constraint_residual(const FluidState& s, const Grid& grid,
                                  const InteriorRegion& region, const BodyGeometry& body,
                                  double delta) {
    double r = 0.0;
    for (std::size_t j = region.j_minus + 1; j < region.j_plus; ++j) {
        const double e = (s.zeta[j] - body.hull_elevation(grid.x(j), delta)) + s.zeta_low(j);
        r = std::max(r, std::abs(e));
    }
    return r;
}

/// Plain sum of the carried elevations (high + low parts); times dx this is
/// the excess volume.
inline long double elevation_sum(const FluidState& s) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j < s.size(); ++j) {
        acc += static_cast<long double>(s.zeta[j]) + static_cast<long double>(s.zeta_low(j));
    }
    return acc;
}

/// Tracks sum_j zeta_j + (cumulative outflow) against its initial value.
/// The scheme moves volume only through the two end interfaces, so the
/// residual is pure roundoff.
class MassLedger {
public:
    MassLedger() = default;
    MassLedger(const FluidState& initial, const Grid& grid, double h0)
        : initial_(elevation_sum(initial)),
          reference_(h0 * static_cast<double>(initial.size()) + static_cast<double>(initial_)),
          dx_(grid.dx()) {}

    /// Records one step with end fluxes F1(x_{-1/2}), F1(x_{N+1/2}).
    void record(double alpha, double flux_left, double flux_right) {
        outflow_ += static_cast<long double>(alpha) *
                    (static_cast<long double>(flux_right) - static_cast<long double>(flux_left));
    }

    /// |sum zeta + outflow - initial| / (sum h at t = 0).
    double relative_residual(const FluidState& s) const {
        const long double r = elevation_sum(s) + outflow_ - initial_;
        return static_cast<double>(std::abs(r)) / reference_;
    }

    /// Current total volume sum_j h_j dx.
    double volume(const FluidState& s, double h0) const {
        return dx_ * (h0 * static_cast<double>(s.size()) + static_cast<double>(elevation_sum(s)));
    }

    /// Cumulative net volume that left through the ends.
    double outflow_volume() const { return dx_ * static_cast<double>(outflow_); }

private:
    long double initial_ = 0.0L;
    double reference_ = 1.0;
    long double outflow_ = 0.0L;
    double dx_ = 1.0;
};

/// One diagnostics entry.
struct Diagnostics {
    double time = 0.0;
    double volume = 0.0;
    double mass_residual = 0.0;
    double fluid_energy = 0.0;
    double solid_energy = 0.0;
    double constraint_residual = 0.0;
    double cfl = 0.0;

    double total_energy() const { return fluid_energy + solid_energy; }
};

}  // namespace floatsim::harness
