#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "floatsim/exact.hpp"
#include "floatsim/solid.hpp"

using namespace floatsim;

namespace {

struct BodyCase {
    PhysicalParams p;
    BodyGeometry body;
    Grid grid;
    InteriorRegion region;
    FluidState s;

    explicit BodyCase(HullShape shape = HullShape::box_arc, double dx = 0.1)
        : body(p, [&] {
              HullSpec h;
              h.shape = shape;
              return h;
          }()),
          grid(Grid::with_spacing(300.0, dx)),
          region(InteriorRegion::locate(grid, body.x_minus(), body.x_plus())),
          s(grid.size()) {
        for (std::size_t j = region.j_minus + 1; j < region.j_plus; ++j) {
            s.zeta[j] = body.hull_elevation(grid.x(j), 0.0);
        }
    }
};

}  // namespace

TEST(PrescribedMotion, Values) {
    const HeaveProfile prof{4.566, 2.0, 10.0};
    const auto k0 = prescribed_motion(0.0, prof);
    const double w = 2.0 * std::numbers::pi / 10.0;
    EXPECT_DOUBLE_EQ(k0.z, 4.566);
    EXPECT_DOUBLE_EQ(k0.z_dot, 0.0);
    EXPECT_NEAR(k0.z_ddot, -1.0 * w * w, 1e-15);
    EXPECT_NEAR(prescribed_motion(5.0, prof).z, 4.566 - 2.0, 1e-14);
    EXPECT_THROW(prescribed_motion(1.0, HeaveProfile{0.0, 2.0, 0.0}), ConfigError);
}

TEST(PrescribedMotion, DerivativesMatchDifferences) {
    const HeaveProfile prof{4.566, 2.0, 10.0};
    const double h = 1e-4;
    for (double t : {0.7, 2.5, 6.1}) {
        const double zm = prescribed_motion(t - h, prof).z, z = prescribed_motion(t, prof).z,
                     zp = prescribed_motion(t + h, prof).z;
        const auto k = prescribed_motion(t, prof);
        EXPECT_NEAR((zp - zm) / (2 * h), k.z_dot, 1e-6 * std::abs(k.z_dot));
        EXPECT_NEAR((zp - 2 * z + zm) / (h * h), k.z_ddot, 1e-6 * std::abs(k.z_ddot) + 1e-7);
    }
}

TEST(NonlinearForce, ZeroDischarge) {
    BodyCase c;
    EXPECT_EQ(nonlinear_force(c.s, c.grid, c.region, c.body, 0.0, FluidModel::nsw), 0.0);
    EXPECT_EQ(nonlinear_force(c.s, c.grid, c.region, c.body, 0.0, FluidModel::boussinesq), 0.0);
}

TEST(NonlinearForce, RigidHeaveConstantDepth) {
    // q = -(x - x0) v over a flat-bottomed hull: F_NL -> 2 rho alpha v^2 Var(x) / H
    const double v = 0.4;
    const auto value = [&](double dx) {
        BodyCase c(HullShape::rectangle, dx);
        for (std::size_t j = c.region.j_minus; j <= c.region.j_plus; ++j) {
            c.s.q[j] = -(c.grid.x(j) - c.body.x0()) * v;
        }
        return nonlinear_force(c.s, c.grid, c.region, c.body, 0.0, FluidModel::nsw);
    };
    BodyCase c(HullShape::rectangle);
    const double depth = c.body.hull_depth(c.body.x0(), 0.0);
    const double exact =
        2.0 * c.p.rho * c.body.alpha(0.0) * v * v * c.body.variance_x(0.0) / depth;
    // the end cells sit one dx outside the walls: first-order offset
    const double e1 = std::abs(value(0.1) - exact), e2 = std::abs(value(0.05) - exact);
    EXPECT_LT(e1, 0.035 * exact);
    EXPECT_NEAR(e1 / e2, 2.0, 0.2);
}

TEST(NonlinearForce, FiveCellHandCase) {
    // interior {2,3,4} of a 7-cell grid, rectangle hull of half-width 1.5
    PhysicalParams p;
    HullSpec h;
    h.shape = HullShape::rectangle;
    h.radius = 1.5;
    h.x0 = 3.0;
    const BodyGeometry body(p, h);
    const Grid g(6.0, 6);
    const auto r = InteriorRegion::locate(g, 1.5, 4.5);
    FluidState s(7);
    const double q[5] = {0.5, 0.2, -0.1, -0.3, -0.6};
    for (int k = 0; k < 5; ++k) s.q[1 + k] = q[k];
    const double hw = body.hull_depth(3.0, 0.0);
    double phi[5], d[5];
    for (int k = 0; k < 5; ++k) phi[k] = q[k] * q[k] / hw;
    d[0] = phi[1] - phi[0];
    d[4] = phi[4] - phi[3];
    for (int k = 1; k < 4; ++k) d[k] = 0.5 * (phi[k + 1] - phi[k - 1]);
    // x* over cells 1..5 with half end weights and constant depth: x - 3
    double sum = 0.0;
    for (int k = 0; k < 5; ++k) sum += (k == 0 || k == 4 ? 0.5 : 1.0) * (k + 1 - 3.0) * d[k] / hw;
    EXPECT_NEAR(nonlinear_force(s, g, r, body, 0.0, FluidModel::nsw), p.rho * sum, 1e-9);
    // the Boussinesq variant divides by h0
    double sum_b = 0.0;
    double db[5], pb[5];
    for (int k = 0; k < 5; ++k) pb[k] = q[k] * q[k] / p.h0;
    db[0] = pb[1] - pb[0];
    db[4] = pb[4] - pb[3];
    for (int k = 1; k < 4; ++k) db[k] = 0.5 * (pb[k + 1] - pb[k - 1]);
    for (int k = 0; k < 5; ++k) sum_b += (k == 0 || k == 4 ? 0.5 : 1.0) * (k + 1 - 3.0) * db[k] / hw;
    EXPECT_NEAR(nonlinear_force(s, g, r, body, 0.0, FluidModel::boussinesq), p.rho * sum_b, 1e-9);
}

TEST(CoupledAcceleration, EquilibriumAndRestoring) {
    BodyCase c;
    EXPECT_EQ(coupled_acceleration(c.s, c.grid, c.region, c.body, 0.0, FluidModel::nsw), 0.0);
    const double d = 0.5;
    for (std::size_t j = c.region.j_minus + 1; j < c.region.j_plus; ++j) {
        c.s.zeta[j] = c.body.hull_elevation(c.grid.x(j), d);
    }
    const double a = coupled_acceleration(c.s, c.grid, c.region, c.body, d, FluidModel::nsw);
    EXPECT_LT(a, 0.0);
    EXPECT_NEAR(a, -c.body.stiffness() * d / (c.body.mass() + c.body.added_mass(d)), 1e-12);
}

TEST(CoupledAcceleration, SymmetricDampingBridge) {
    // equal contact elevations: rho g zeta_e (x*_+ - x*_-) = rho g zeta_e (x_+ - x_-),
    // which equals -nu(v) when zeta_e is the contact elevation of speed v
    BodyCase c(HullShape::box_arc, 0.05);
    const double v = 0.3;
    const double ze = exact::contact_elevation(v, c.body.width(), c.p);
    c.s.zeta[c.region.j_minus] = ze;
    c.s.zeta[c.region.j_plus] = ze;
    const double f = damping_excitation_force(c.s, c.grid, c.region, c.p);
    const double span = c.grid.x(c.region.j_plus) - c.grid.x(c.region.j_minus);
    EXPECT_NEAR(f, c.p.rho * c.p.g * ze * span, 1e-9 * std::abs(f));
    EXPECT_NEAR(f, -exact::damping_nu(v, c.body.width(), c.p),
                0.01 * std::abs(f));
}

TEST(AdvanceBody, Recursion) {
    BodyCase c;
    const BodyState rest{0.1, 0.1};
    EXPECT_DOUBLE_EQ(advance_body(rest, 0.0, 0.01, c.body).delta_np1, 0.1);
    EXPECT_DOUBLE_EQ(advance_body({0.1, 0.2}, 0.0, 0.01, c.body).delta_np1, 0.3);
    EXPECT_NEAR(advance_body(rest, 2.0, 0.01, c.body).delta_np1, 0.1 + 2e-4, 1e-15);
    // constant acceleration from rest: delta^n = delta^0 + a dt^2 n(n-1)/2
    const double a = -1.5, dt = 0.01;
    BodyState b{0.0, 0.0};
    for (int n = 2; n <= 50; ++n) {
        b = advance_body(b, a, dt, c.body);
        EXPECT_NEAR(b.delta_np1, a * dt * dt * n * (n - 1) / 2.0, 1e-14) << n;
    }
    EXPECT_THROW(advance_body({-8.0, -8.5}, -100.0, 0.1, c.body), GroundingError);
}

TEST(ForceBreakdown, ReturnStartAndNewtonIdentity) {
    BodyCase c;
    const double d = 2.0 - c.body.z_c_eq();
    for (std::size_t j = c.region.j_minus + 1; j < c.region.j_plus; ++j) {
        c.s.zeta[j] = c.body.hull_elevation(c.grid.x(j), d);
    }
    const double a = coupled_acceleration(c.s, c.grid, c.region, c.body, d, FluidModel::nsw);
    const auto f = force_breakdown(c.s, c.grid, c.region, c.body, d, a, FluidModel::nsw);
    EXPECT_EQ(f.damping_excitation, 0.0);
    EXPECT_EQ(f.nonlinear, 0.0);
    EXPECT_DOUBLE_EQ(f.restoring, -c.body.stiffness() * d);
    EXPECT_DOUBLE_EQ(f.added, -c.body.added_mass(d) * a);
    EXPECT_DOUBLE_EQ(f.total(), f.restoring + f.added + f.damping_excitation + f.nonlinear);
    const double scale = std::abs(f.restoring) + std::abs(f.added);
    EXPECT_LE(std::abs(c.body.mass() * a - f.total()) / scale, 1e-14);
}

TEST(ForceBreakdown, EquilibriumRestIsZero) {
    BodyCase c;
    const auto f = force_breakdown(c.s, c.grid, c.region, c.body, 0.0, 0.0, FluidModel::nsw);
    EXPECT_EQ(f.restoring, 0.0);
    EXPECT_EQ(f.added, 0.0);
    EXPECT_EQ(f.damping_excitation, 0.0);
    EXPECT_EQ(f.nonlinear, 0.0);
}

TEST(MeanDischargeRate, RigidHeaveConstantDepthVanishes) {
    // H_NL = 0 for constant depth and q linear in x: both terms vanish by symmetry
    BodyCase c(HullShape::rectangle);
    const double v = 0.2;
    for (std::size_t j = c.region.j_minus; j <= c.region.j_plus; ++j) {
        c.s.q[j] = -(c.grid.x(j) - c.body.x0()) * v;
    }
    const double h = mean_discharge_nonlinear_rate(c.s, c.grid, c.region, c.body, 0.0, v,
                                                   FluidModel::nsw);
    EXPECT_NEAR(h, 0.0, 1e-9);
}
