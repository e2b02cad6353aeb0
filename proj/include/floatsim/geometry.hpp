#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "floatsim/core.hpp"
#include "floatsim/errors.hpp"
#include "floatsim/quadrature.hpp"

namespace floatsim {

enum class HullShape {
    /// Box of width 2R and height R(sqrt3 - 1) over a circular arc of radius 2R
    /// centred on the vertical through the top midpoint C, at height z_C + R.
    box_arc,
    /// Rectangle of width 2R and height R: constant draft, closed-form tests.
    rectangle,
};

struct HullSpec {
    HullShape shape = HullShape::box_arc;
    double radius = 10.0;        ///< R (m)
    double x0 = 150.0;           ///< horizontal centre (m)
    double density_ratio = 0.5;  ///< rho_s / rho
};

/// Cross-section area per unit width of the box+arc hull, R^2 (sqrt3 + 2pi/3 - 2).
inline double body_volume(double radius) {
    return radius * radius * (std::numbers::sqrt3 + 2.0 * std::numbers::pi / 3.0 - 2.0);
}

/// Equilibrium elevation of C for the box+arc hull,
/// (R/2)(1 - rho_s/rho)(sqrt3 + 2pi/3 - 2).
inline double equilibrium_elevation(double radius, double density_ratio) {
    if (!(density_ratio > 0.0 && density_ratio < 1.0)) {
        throw DomainError("density ratio must lie in (0, 1) for a floating body");
    }
    return 0.5 * radius * (1.0 - density_ratio) *
           (std::numbers::sqrt3 + 2.0 * std::numbers::pi / 3.0 - 2.0);
}

/// Rigid hull with vertical side walls at x0 -/+ R, moving vertically only.
/// All shape integrals are over [x_-, x_+] with weight 1/h_w.
///
/// `delta` everywhere is the displacement of the body from equilibrium; the
/// wetted surface is zeta_w(x; delta) = zeta_w,eq(x) + delta.
class BodyGeometry {
public:
    static constexpr double kQuadTol = 1e-10;
    /// Minimum admissible hull clearance as a fraction of h0.
    static constexpr double kMinClearance = 0.05;

    BodyGeometry(PhysicalParams params, HullSpec spec) : params_(params), spec_(spec) {
        params_.validate();
        if (!(spec_.radius > 0.0)) throw ConfigError("hull radius must be positive");
        if (!(spec_.density_ratio > 0.0 && spec_.density_ratio < 1.0)) {
            throw ConfigError("density ratio must lie in (0, 1)");
        }
        const double r = spec_.radius;
        switch (spec_.shape) {
        case HullShape::box_arc:
            volume_ = body_volume(r);
            z_c_eq_ = equilibrium_elevation(r, spec_.density_ratio);
            break;
        case HullShape::rectangle:
            volume_ = 2.0 * r * r;
            z_c_eq_ = r * (1.0 - spec_.density_ratio);
            break;
        }
        mass_ = params_.rho * spec_.density_ratio * volume_;
    }

    const PhysicalParams& params() const noexcept { return params_; }
    const HullSpec& spec() const noexcept { return spec_; }
    double radius() const noexcept { return spec_.radius; }
    double x0() const noexcept { return spec_.x0; }
    double x_minus() const noexcept { return spec_.x0 - spec_.radius; }
    double x_plus() const noexcept { return spec_.x0 + spec_.radius; }
    double width() const noexcept { return 2.0 * spec_.radius; }
    double density_ratio() const noexcept { return spec_.density_ratio; }
    double volume() const noexcept { return volume_; }
    /// rho_s * V (kg per metre of transverse width).
    double mass() const noexcept { return mass_; }
    double z_c_eq() const noexcept { return z_c_eq_; }

    /// zeta_w(x; delta). Throws DomainError outside [x_-, x_+].
    double hull_elevation(double x, double delta) const {
        const double s = offset(x);
        return hull_at_offset(s, z_c_eq_ + delta);
    }

    /// d zeta_w / dx, independent of delta.
    double hull_slope(double x) const {
        const double s = offset(x);
        if (spec_.shape == HullShape::rectangle) return 0.0;
        const double r = spec_.radius;
        return s / std::sqrt(4.0 * r * r - s * s);
    }

    double hull_depth(double x, double delta) const { return params_.h0 + hull_elevation(x, delta); }

    /// Smallest water depth under the hull (at x0 for both shapes).
    double min_depth(double delta) const {
        return params_.h0 + hull_at_offset(0.0, z_c_eq_ + delta);
    }

    bool admissible(double delta) const noexcept {
        return min_depth(delta) >= kMinClearance * params_.h0;
    }

    void require_admissible(double delta) const {
        if (!admissible(delta)) {
            throw GroundingError("hull grounding: displacement " + std::to_string(delta) +
                                 " leaves minimum depth " + std::to_string(min_depth(delta)));
        }
    }

    /// m g + rho g * int zeta_w at elevation z_c of the point C. Vanishes at
    /// z_c = z_C,eq.
    double buoyancy_residual_at(double z_c) const {
        const double r = spec_.radius;
        const double integral =
            quad::integrate([&](double s) { return hull_at_offset(s, z_c); }, -r, r, kQuadTol);
        return mass_ * params_.g + params_.rho * params_.g * integral;
    }

    double buoyancy_residual() const { return buoyancy_residual_at(z_c_eq_); }

    /// c = rho g (x_+ - x_-).
    double stiffness() const noexcept { return params_.rho * params_.g * width(); }

    /// alpha(delta) = int 1/h_w.
    double alpha(double delta) const {
        guard(delta);
        return integrate_weighted([](double) { return 1.0; }, delta);
    }

    /// Continuous average <x> with weight 1/h_w.
    double mean_x(double delta) const {
        guard(delta);
        const double a = integrate_weighted([](double) { return 1.0; }, delta);
        const double m = integrate_weighted([](double s) { return s; }, delta);
        return spec_.x0 + m / a;
    }

    /// Var(x) = <x^2> - <x>^2 with weight 1/h_w.
    double variance_x(double delta) const {
        guard(delta);
        const double a = integrate_weighted([](double) { return 1.0; }, delta);
        const double shift = mean_x(delta) - spec_.x0;
        const double v =
            integrate_weighted([shift](double s) { return (s - shift) * (s - shift); }, delta);
        return v / a;
    }

    /// m_a(delta) = rho alpha(delta) Var(x).
    double added_mass(double delta) const {
        return params_.rho * alpha(delta) * variance_x(delta);
    }

    /// beta(delta) = rho int (x-x0)/h_w d/dx((x-x0)^2/h_w).
    double beta(double delta) const {
        guard(delta);
        const double r = spec_.radius;
        const double z_c = z_c_eq_ + delta;
        const auto integrand = [&](double s) {
            const double h = params_.h0 + hull_at_offset(s, z_c);
            const double dh = slope_at_offset(s);
            const double d = 2.0 * s / h - s * s * dh / (h * h);
            return s / h * d;
        };
        return params_.rho * quad::integrate(integrand, -r, r, kQuadTol);
    }

private:
    double offset(double x) const {
        const double s = x - spec_.x0;
        const double r = spec_.radius;
        if (std::abs(s) > r * (1.0 + 1e-12)) {
            throw DomainError("abscissa " + std::to_string(x) + " lies outside the hull");
        }
        return std::clamp(s, -r, r);
    }

    double hull_at_offset(double s, double z_c) const {
        const double r = spec_.radius;
        if (spec_.shape == HullShape::rectangle) return z_c - r;
        return z_c + r - std::sqrt(4.0 * r * r - s * s);
    }

    double slope_at_offset(double s) const {
        if (spec_.shape == HullShape::rectangle) return 0.0;
        const double r = spec_.radius;
        return s / std::sqrt(4.0 * r * r - s * s);
    }

    void guard(double delta) const {
        if (!(min_depth(delta) > 0.0)) {
            throw DomainError("hull touches the bottom at displacement " + std::to_string(delta));
        }
    }

    template <class F>
    double integrate_weighted(F&& f, double delta) const {
        const double r = spec_.radius;
        const double z_c = z_c_eq_ + delta;
        return quad::integrate(
            [&](double s) { return f(s) / (params_.h0 + hull_at_offset(s, z_c)); }, -r, r,
            kQuadTol);
    }

    PhysicalParams params_;
    HullSpec spec_;
    double volume_ = 0.0;
    double z_c_eq_ = 0.0;
    double mass_ = 0.0;
};

}  // namespace floatsim
