#pragma once

#include <string>
#include <vector>

#include "floatsim/harness/config.hpp"

namespace floatsim::harness {

/// Default dt/dx for runs with a body.
inline constexpr double kDefaultAlpha = 0.02;

/// Wave of amplitude 1 m and period 15 s reaching a body held at its
/// equilibrium position.
inline ScenarioConfig fixed_body_wave(double dx = 0.05) {
    ScenarioConfig c;
    c.body = BodyMode::fixed;
    c.dx = dx;
    c.alpha = kDefaultAlpha;
    c.forcing = {ForcingKind::sinusoidal, 1.0, 15.0, 0.0};
    c.t_end = 40.0;
    return c;
}

/// Body forced in heave, z(t) = z_C,eq + (A/2)(cos(2 pi t/T) - 1), A = 2 m,
/// T = 10 s, in still water.
inline ScenarioConfig forced_heave(double dx = 0.05) {
    ScenarioConfig c;
    c.body = BodyMode::prescribed;
    c.dx = dx;
    c.alpha = kDefaultAlpha;
    c.heave_amplitude = 2.0;
    c.heave_period = 10.0;
    c.t_end = 10.0;
    return c;
}

/// Free body released at rest with C at 2 m (density ratio 0.5) in still water.
inline ScenarioConfig return_to_equilibrium(double dx = 0.05) {
    ScenarioConfig c;
    c.body = BodyMode::free;
    c.dx = dx;
    c.alpha = kDefaultAlpha;
    c.z_c0 = 2.0;
    c.t_end = 10.0;
    return c;
}

/// Wave of amplitude 3.5 m and period 20 s reaching a freely floating body.
inline ScenarioConfig free_body_wave(double dx = 0.05) {
    ScenarioConfig c;
    c.body = BodyMode::free;
    c.dx = dx;
    c.alpha = kDefaultAlpha;
    c.forcing = {ForcingKind::sinusoidal, 3.5, 20.0, 0.0};
    c.t_end = 30.0;
    return c;
}

/// Boussinesq solitary wave (a = 3 m) travelling towards a free body.
inline ScenarioConfig solitary_on_free_body(double dx = 0.05) {
    ScenarioConfig c;
    c.model = FluidModel::boussinesq;
    c.body = BodyMode::free;
    c.length = 500.0;
    c.hull.x0 = 350.0;
    c.dx = dx;
    c.alpha = kDefaultAlpha;
    c.forcing = {ForcingKind::solitary, 3.0, 0.0, 150.0};
    c.t_end = 25.0;
    return c;
}

/// Boussinesq solitary wave (a = 3 m) in an empty flume, far enough from both
/// ends that the sech^2 tails are below 1e-3 m there. The time step follows
/// the CFL limit.
inline ScenarioConfig solitary_propagation(double dx = 0.1) {
    ScenarioConfig c;
    c.model = FluidModel::boussinesq;
    c.body = BodyMode::absent;
    c.length = 500.0;
    c.dx = dx;
    c.cfl_max = 0.9;
    c.forcing = {ForcingKind::solitary, 3.0, 0.0, 200.0};
    c.t_end = 5.0;
    return c;
}

struct NamedScenario {
    std::string name;
    ScenarioConfig config;
};

/// The five body scenarios at spacing dx.
inline std::vector<NamedScenario> body_scenarios(double dx = 0.05) {
    return {{"fixed_body_wave", fixed_body_wave(dx)},
            {"forced_heave", forced_heave(dx)},
            {"return_to_equilibrium", return_to_equilibrium(dx)},
            {"free_body_wave", free_body_wave(dx)},
            {"solitary_on_free_body", solitary_on_free_body(dx)}};
}

}  // namespace floatsim::harness
