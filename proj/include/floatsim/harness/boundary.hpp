#pragma once

#include <cmath>
#include <numbers>

#include "floatsim/core.hpp"
#include "floatsim/harness/config.hpp"
#include "floatsim/nsw.hpp"

namespace floatsim::harness {

enum class Side { left, right };

/// Ghost state beyond one end of the domain. A sinusoidal forcing drives the
/// left end with zeta = a sin(2 pi t / T) and the incoming-characteristic
/// discharge q = zeta sqrt(g h0); every other end copies its neighbour.
inline CellState boundary_ghost(double t, const Forcing& forcing, Side side,
                                const CellState& adjacent, const PhysicalParams& p) {
    if (side == Side::left && forcing.kind == ForcingKind::sinusoidal) {
        const double zeta = forcing.amplitude * std::sin(2.0 * std::numbers::pi * t / forcing.period);
        return {zeta, zeta * std::sqrt(p.g * p.h0)};
    }
    return adjacent;
}

inline GhostCells boundary_ghosts(double t, const Forcing& forcing, const FluidState& s,
                                  const PhysicalParams& p) {
    const std::size_t n = s.size();
    return {boundary_ghost(t, forcing, Side::left, {s.zeta[0], s.q[0]}, p),
            boundary_ghost(t, forcing, Side::right, {s.zeta[n - 1], s.q[n - 1]}, p)};
}

}  // namespace floatsim::harness
