#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>

#include "floatsim/bouss.hpp"
#include "floatsim/core.hpp"
#include "floatsim/errors.hpp"
#include "floatsim/exact.hpp"
#include "floatsim/geometry.hpp"
#include "floatsim/harness/boundary.hpp"
#include "floatsim/harness/config.hpp"
#include "floatsim/harness/diagnostics.hpp"
#include "floatsim/nsw.hpp"
#include "floatsim/solid.hpp"

namespace floatsim::harness {

/// Hull constraint tolerance relative to h0.
inline constexpr double kConstraintTolerance = 1e-10;
/// Compatibility tolerance relative to h0.
inline constexpr double kCompatibilityTolerance = 1e-12;

/// Coupled fluid/body time loop. Holds U^n and the body positions delta^n,
/// delta^{n+1}; each step first fixes delta^{n+2} (prescribed law or the
/// heave equation), then advances the fluid with the interior source built
/// from the second difference of the three positions.
class Simulation {
public:
    explicit Simulation(ScenarioConfig cfg)
        : cfg_(validated(std::move(cfg))), grid_(Grid::with_spacing(cfg_.length, cfg_.dx)) {
        const PhysicalParams& p = cfg_.params;
        state_ = FluidState(grid_.size());

        if (cfg_.forcing.kind == ForcingKind::solitary) {
            const exact::SolitaryWave wave(cfg_.forcing.amplitude, cfg_.forcing.center, p);
            for (std::size_t j = 0; j < grid_.size(); ++j) {
                const auto s = wave.at(grid_.x(j), 0.0);
                state_.zeta[j] = s.zeta;
                state_.q[j] = s.q;
            }
        }

        if (cfg_.body != BodyMode::absent) {
            body_.emplace(p, cfg_.hull);
            region_ = InteriorRegion::locate(grid_, body_->x_minus(), body_->x_plus());
            dt_ = *cfg_.alpha * grid_.dx();
            init_body();
        } else if (cfg_.alpha) {
            dt_ = *cfg_.alpha * grid_.dx();
        }

        if (cfg_.model == FluidModel::boussinesq) op_.emplace(grid_, p.h0, region_);
        state_.enable_compensation();
        ledger_ = MassLedger(state_, grid_, p.h0);
        if (body_) {
            compat_ = check_compatibility(state_, grid_, *region_, *body_, body_state_.delta_n,
                                          body_state_.delta_np1, *cfg_.alpha,
                                          kCompatibilityTolerance);
            if (!compat_.ok) throw CompatibilityError(compat_.message());
            constraint_ = constraint_residual(state_, grid_, *region_, *body_, body_state_.delta_n);
            max_constraint_ = constraint_;
        }
        prepare();
    }

    const ScenarioConfig& config() const noexcept { return cfg_; }
    const Grid& grid() const noexcept { return grid_; }
    const FluidState& state() const noexcept { return state_; }
    const std::optional<InteriorRegion>& region() const noexcept { return region_; }
    const std::optional<BodyGeometry>& body() const noexcept { return body_; }
    const CompatibilityReport& compatibility() const noexcept { return compat_; }

    double time() const noexcept { return state_.t; }
    std::size_t steps() const noexcept { return steps_; }
    /// Fixed time step, or 0 when it adapts to the CFL limit.
    double fixed_dt() const noexcept { return dt_; }

    double delta() const noexcept { return body_state_.delta_n; }
    /// Forward difference (delta^{n+1} - delta^n)/dt.
    double delta_dot() const noexcept { return dt_ > 0.0 ? body_state_.velocity(dt_) : 0.0; }
    /// Second difference of delta over levels n, n+1, n+2 (the acceleration
    /// used by the next step).
    double body_accel() const noexcept { return pending_accel_; }
    /// Forces at level n (zero without a body).
    const ForceBreakdown& forces() const noexcept { return forces_; }
    /// |m a - sum F| / scale for the pending free-body step (0 otherwise).
    double newton_residual() const noexcept { return newton_residual_; }

    double constraint_residual_now() const noexcept { return constraint_; }
    double max_constraint_residual() const noexcept { return max_constraint_; }
    double mass_residual() const { return ledger_.relative_residual(state_); }
    double max_mass_residual() const noexcept { return max_mass_; }
    double max_newton_residual() const noexcept { return max_newton_; }
    double last_cfl() const noexcept { return cfl_; }
    const MassLedger& ledger() const noexcept { return ledger_; }

    Diagnostics diagnostics() const {
        Diagnostics d;
        d.time = time();
        d.volume = ledger_.volume(state_, cfg_.params.h0);
        d.mass_residual = mass_residual();
        d.fluid_energy = fluid_energy(state_, grid_, cfg_.params, cfg_.model);
        if (body_) d.solid_energy = solid_energy(*body_, delta(), delta_dot());
        d.constraint_residual = constraint_;
        d.cfl = cfl_;
        return d;
    }

    /// Time step the next call to step() will use.
    double next_dt() const {
        if (dt_ > 0.0) return dt_;
        const double speed = cfl_number(state_, 1.0, cfg_.params);
        const double dt = cfg_.cfl_max * grid_.dx() / speed;
        return adaptive_cap_ ? std::min(dt, *adaptive_cap_) : dt;
    }

    /// Advances one step. Throws InvariantBreach (CFL, positivity, grounding,
    /// hull constraint); the state is left at the last good level.
    void step() {
        const PhysicalParams& p = cfg_.params;
        StepConfig sc;
        sc.grid = &grid_;
        sc.params = p;
        sc.region = region_;
        sc.dt = next_dt();
        sc.ghosts = boundary_ghosts(state_.t, cfg_.forcing, state_, p);
        sc.body_accel = pending_accel_;
        sc.cfl_max = cfg_.cfl_max;

        StepResult res = cfg_.model == FluidModel::nsw ? step_nsw(state_, sc)
                                                       : step_boussinesq(state_, sc, *op_);
        if (dt_ > 0.0) res.next.t = static_cast<double>(steps_ + 1) * dt_;

        double residual = 0.0;
        if (body_) {
            residual = constraint_residual(res.next, grid_, *region_, *body_, pending_delta_[0]);
            if (residual > kConstraintTolerance * p.h0) {
                std::ostringstream os;
                os << "hull constraint residual " << residual << " exceeds "
                   << kConstraintTolerance * p.h0 << " at t = " << res.next.t;
                throw InvariantBreach(os.str());
            }
        }

        ledger_.record(sc.dt / grid_.dx(), res.mass_flux_left, res.mass_flux_right);
        state_ = std::move(res.next);
        cfl_ = res.cfl;
        ++steps_;
        if (body_) {
            body_state_ = {pending_delta_[0], pending_delta_[1]};
            constraint_ = residual;
            max_constraint_ = std::max(max_constraint_, residual);
        }
        max_mass_ = std::max(max_mass_, mass_residual());
        prepare();
    }

    /// Steps until t >= t_end (fixed dt) or exactly t_end (adaptive dt).
    template <class Observer>
    void run_until(double t_end, Observer&& observe) {
        const double eps = 1e-9 * (dt_ > 0.0 ? dt_ : grid_.dx());
        while (time() < t_end - eps) {
            if (dt_ <= 0.0) adaptive_cap_ = t_end - time();
            step();
            adaptive_cap_.reset();
            observe(*this);
        }
    }

    void run_until(double t_end) {
        run_until(t_end, [](const Simulation&) {});
    }

private:
    static ScenarioConfig validated(ScenarioConfig c) {
        c.validate();
        return c;
    }

    void init_body() {
        const BodyGeometry& b = *body_;
        const double z_c0 = cfg_.z_c0.value_or(b.z_c_eq());
        double d0 = z_c0 - b.z_c_eq();
        double d1 = d0;
        if (cfg_.body == BodyMode::prescribed) {
            d0 = prescribed(0.0);
            d1 = prescribed(dt_);
        }
        b.require_admissible(d0);
        b.require_admissible(d1);
        body_state_ = {d0, d1};

        // Interior at rest on the hull; discharge on [j_minus, j_plus] linear
        // so that its interior divergence matches the first body step.
        const InteriorRegion& r = *region_;
        const double v = (d1 - d0) / dt_;
        for (std::size_t j = r.j_minus; j <= r.j_plus; ++j) {
            if (r.is_interior(j)) state_.zeta[j] = b.hull_elevation(grid_.x(j), d0);
            state_.q[j] = -(grid_.x(j) - b.x0()) * v;
        }
    }

    /// delta of the prescribed heave law at time t.
    double prescribed(double t) const {
        const HeaveProfile prof{cfg_.z_c0.value_or(body_->z_c_eq()), cfg_.heave_amplitude,
                                cfg_.heave_period};
        return prescribed_motion(t, prof).z - body_->z_c_eq();
    }

    /// Fixes delta^{n+2} and the forces at the current level n.
    void prepare() {
        if (!body_) return;
        const BodyGeometry& b = *body_;
        const double dn = body_state_.delta_n;
        const double dn1 = body_state_.delta_np1;
        double next = dn1;
        forces_ = explicit_forces(state_, grid_, *region_, b, dn, cfg_.model);
        const double added = b.added_mass(dn);
        switch (cfg_.body) {
        case BodyMode::fixed:
            next = dn1;
            break;
        case BodyMode::prescribed:
            next = prescribed(static_cast<double>(steps_ + 2) * dt_);
            b.require_admissible(next);
            break;
        case BodyMode::free: {
            const double a = (forces_.restoring + forces_.damping_excitation + forces_.nonlinear) /
                             (b.mass() + added);
            next = advance_body(body_state_, a, dt_, b).delta_np1;
            forces_.added = -added * a;
            const double scale = std::abs(b.mass() * a) + std::abs(forces_.restoring) +
                                 std::abs(forces_.added) + std::abs(forces_.damping_excitation) +
                                 std::abs(forces_.nonlinear);
            newton_residual_ =
                scale > 0.0 ? std::abs(b.mass() * a - forces_.total()) / scale : 0.0;
            max_newton_ = std::max(max_newton_, newton_residual_);
            break;
        }
        case BodyMode::absent:
            break;
        }
        pending_delta_ = {dn1, next};
        // consecutive positions are close, so both increments are exact
        pending_accel_ = ((next - dn1) - (dn1 - dn)) / (dt_ * dt_);
        if (cfg_.body != BodyMode::free) forces_.added = -added * pending_accel_;
    }

    ScenarioConfig cfg_;
    Grid grid_;
    FluidState state_;
    std::optional<BodyGeometry> body_;
    std::optional<InteriorRegion> region_;
    std::optional<DispersiveOperator> op_;
    MassLedger ledger_;
    CompatibilityReport compat_;
    BodyState body_state_;
    std::array<double, 2> pending_delta_{0.0, 0.0};
    double pending_accel_ = 0.0;
    ForceBreakdown forces_;
    double dt_ = 0.0;
    std::optional<double> adaptive_cap_;
    std::size_t steps_ = 0;
    double cfl_ = 0.0;
    double constraint_ = 0.0;
    double max_constraint_ = 0.0;
    double max_mass_ = 0.0;
    double newton_residual_ = 0.0;
    double max_newton_ = 0.0;
};

}  // namespace floatsim::harness
