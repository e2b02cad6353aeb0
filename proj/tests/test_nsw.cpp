#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "floatsim/nsw.hpp"

using namespace floatsim;

namespace {

/// 7 cells on [0, 6] with the interior region {2, 3, 4} (j_minus = 1, j_plus = 5).
struct SevenCells {
    Grid grid{6.0, 6};
    InteriorRegion region = InteriorRegion::locate(grid, 1.5, 4.5);
    PhysicalParams p;
    FluidState s{7};

    SevenCells() {
        const double zeta[7] = {0.30, 0.10, -0.20, -0.25, -0.22, 0.05, -0.10};
        const double q[7] = {1.0, 0.8, 0.6, 0.4, 0.2, -0.1, 0.5};
        for (int j = 0; j < 7; ++j) {
            s.zeta[j] = zeta[j];
            s.q[j] = q[j];
        }
    }
};

/// Direct transcription of the scheme for the test states, written without
/// the library's flux, average or source helpers.
struct HandStep {
    std::vector<double> zeta, q;
};

HandStep hand_step(const FluidState& s, const GhostCells& gh, const PhysicalParams& p, double dx,
                   double dt, std::size_t jm, std::size_t jp, bool body, double zdd) {
    const std::size_t n = s.size();
    const double a = dt / dx;
    std::vector<double> zl(n + 2), ql(n + 2);
    zl[0] = gh.left.zeta;
    ql[0] = gh.left.q;
    zl[n + 1] = gh.right.zeta;
    ql[n + 1] = gh.right.q;
    for (std::size_t j = 0; j < n; ++j) {
        zl[j + 1] = s.zeta[j];
        ql[j + 1] = s.q[j];
    }
    const auto F2 = [&](std::size_t i) {
        const double h = p.h0 + zl[i];
        return ql[i] * ql[i] / h + 0.5 * p.g * h * h;
    };
    // interface between padded cells i and i+1 (grid j = i-1 and i)
    std::vector<double> f1(n + 1), f2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const long j = static_cast<long>(i) - 1;
        const bool interior = body && j >= static_cast<long>(jm) && j < static_cast<long>(jp);
        f1[i] = 0.5 * (ql[i + 1] + ql[i]) - (interior ? 0.0 : (zl[i + 1] - zl[i]) / (2 * a));
        f2[i] = 0.5 * (F2(i + 1) + F2(i)) - (ql[i + 1] - ql[i]) / (2 * a);
    }
    std::vector<double> src(n, 0.0);
    if (body) {
        double wsum = 0, d0 = 0, xm = 0;
        for (std::size_t j = jm; j <= jp; ++j) {
            const double w = (j == jm || j == jp ? 0.5 : 1.0) / (p.h0 + s.zeta[j]);
            wsum += w;
            d0 += w * (f2[j + 1] - f2[j]) / dx;
            xm += w * (j * dx);
        }
        d0 /= wsum;
        xm /= wsum;
        const double jump = (s.zeta[jp] - s.zeta[jp - 1]) - (s.zeta[jm] - s.zeta[jm + 1]);
        for (std::size_t j = jm; j <= jp; ++j) {
            src[j] = ((f2[j + 1] - f2[j]) / dx - d0) - zdd * (j * dx - xm) -
                     p.g * jump / (dx * wsum);
        }
    }
    HandStep out{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.zeta[j] = s.zeta[j] - a * (f1[j + 1] - f1[j]);
        out.q[j] = s.q[j] - a * (f2[j + 1] - f2[j]) + dt * src[j];
    }
    return out;
}

}  // namespace

TEST(Fluxes, MassFluxHandCases) {
    const double a = 0.4;
    EXPECT_DOUBLE_EQ(lf_mass_flux({0.0, 2.0}, {0.0, 4.0}, false, a), 3.0);
    EXPECT_DOUBLE_EQ(lf_mass_flux({1.0, 0.0}, {0.0, 0.0}, false, a), 1.0 / (2 * a));
    EXPECT_DOUBLE_EQ(lf_mass_flux({1.0, 0.0}, {0.0, 0.0}, true, a), 0.0);
}

TEST(Fluxes, MomentumFluxHandCase) {
    const PhysicalParams p;
    const double a = 0.3;
    const double expected = 0.5 * (9.0 / 16.0 + 9.81 * 128.0 + 9.81 * 112.5) - (1.0 / (2 * a)) * (-3.0);
    EXPECT_NEAR(lf_momentum_flux({1.0, 3.0}, {0.0, 0.0}, a, p), expected, 1e-11);
    const double bouss = 0.5 * (9.0 / 15.0 + 9.81 * 128.0 + 9.81 * 112.5) + 1.0 / (2 * a) * 3.0;
    EXPECT_NEAR(lf_momentum_flux({1.0, 3.0}, {0.0, 0.0}, a, p, BoussinesqFlux{}), bouss, 1e-11);
}

TEST(Fluxes, InteriorInterfacesAreUndiffused) {
    SevenCells c;
    const GhostCells gh{{0.0, 0.0}, {0.0, 0.0}};
    const auto f = compute_fluxes(c.s, gh, c.region, 0.25, c.p);
    ASSERT_EQ(f.mass.size(), 8u);
    for (std::size_t j = 1; j < 5; ++j) {
        EXPECT_DOUBLE_EQ(f.mass_right_of(j), 0.5 * (c.s.q[j] + c.s.q[j + 1])) << j;
    }
    EXPECT_NE(f.mass_right_of(0), 0.5 * (c.s.q[0] + c.s.q[1]));
    EXPECT_NE(f.mass_right_of(5), 0.5 * (c.s.q[5] + c.s.q[6]));
}

TEST(PressureSource, MatchesHandEvaluation) {
    SevenCells c;
    const GhostCells gh{{0.2, 0.9}, {-0.1, 0.5}};
    const double dt = 0.05, zdd = -0.7;
    const auto f = compute_fluxes(c.s, gh, c.region, dt / c.grid.dx(), c.p);
    const auto src = pressure_source(c.s, c.grid, c.region, f, zdd, c.p);
    const HandStep h = hand_step(c.s, gh, c.p, c.grid.dx(), dt, 1, 5, true, zdd);
    // recover the hand source from the hand update
    ASSERT_EQ(src.size(), 5u);
    for (std::size_t k = 0; k < 5; ++k) {
        const std::size_t j = 1 + k;
        const double flux_part = -(dt / c.grid.dx()) * (f.momentum_right_of(j) - f.momentum_left_of(j));
        const double hand = (h.q[j] - c.s.q[j] - flux_part) / dt;
        EXPECT_NEAR(src[k], hand, 1e-9) << "cell " << j;
    }
}

TEST(PressureSource, WeightedMeanIsThePressureConstant) {
    SevenCells c;
    const GhostCells gh{{0.0, 0.0}, {0.0, 0.0}};
    const auto f = compute_fluxes(c.s, gh, c.region, 0.2, c.p);
    const auto parts = pressure_source_parts(c.s, c.grid, c.region, f, 0.3, c.p);
    const auto depth = range_depths(c.s, c.region, c.p.h0);
    const HarmonicWeights w(depth);
    const double jump = (c.s.zeta[5] - c.s.zeta[4]) - (c.s.zeta[1] - c.s.zeta[2]);
    EXPECT_NEAR(w.average(parts.source), -c.p.g * jump / (c.grid.dx() * w.total()), 1e-10);
    // net = source - D0 F2
    for (std::size_t k = 0; k < 5; ++k) {
        const std::size_t j = 1 + k;
        const double d0 = (f.momentum_right_of(j) - f.momentum_left_of(j)) / c.grid.dx();
        EXPECT_NEAR(parts.net[k], parts.source[k] - d0, 1e-9);
    }
}

TEST(PressureSource, NeedsThreeInteriorCells) {
    const Grid g(6.0, 6);
    InteriorRegion r;
    r.j_minus = 2;
    r.j_plus = 5;
    FluidState s(7);
    const auto f = compute_fluxes(s, {}, r, 0.2, PhysicalParams{});
    EXPECT_THROW(pressure_source(s, g, r, f, 0.0, PhysicalParams{}), ConfigError);
}

TEST(Step, SevenCellsWithoutBody) {
    SevenCells c;
    StepConfig cfg;
    cfg.grid = &c.grid;
    cfg.dt = 0.02;
    cfg.ghosts = {{0.2, 0.9}, {-0.1, 0.5}};
    const auto res = step_nsw(c.s, cfg);
    const HandStep h = hand_step(c.s, cfg.ghosts, c.p, 1.0, cfg.dt, 0, 0, false, 0.0);
    for (std::size_t j = 0; j < 7; ++j) {
        EXPECT_NEAR(res.next.zeta[j], h.zeta[j], 1e-14) << j;
        EXPECT_NEAR(res.next.q[j], h.q[j], 1e-12) << j;
    }
    EXPECT_DOUBLE_EQ(res.next.t, 0.02);
}

TEST(Step, SevenCellsWithBody) {
    SevenCells c;
    StepConfig cfg;
    cfg.grid = &c.grid;
    cfg.region = c.region;
    cfg.dt = 0.02;
    cfg.ghosts = {{0.2, 0.9}, {-0.1, 0.5}};
    cfg.body_accel = 1.3;
    const auto res = step_nsw(c.s, cfg);
    const HandStep h = hand_step(c.s, cfg.ghosts, c.p, 1.0, cfg.dt, 1, 5, true, 1.3);
    for (std::size_t j = 0; j < 7; ++j) {
        EXPECT_NEAR(res.next.zeta[j], h.zeta[j], 1e-14) << j;
        EXPECT_NEAR(res.next.q[j], h.q[j], 1e-11) << j;
    }
}

TEST(Step, RestStateIsStationary) {
    const Grid g(10.0, 20);
    FluidState s(21);
    StepConfig cfg;
    cfg.grid = &g;
    cfg.dt = 0.01;
    const auto res = step_nsw(s, cfg);
    for (std::size_t j = 0; j < 21; ++j) {
        EXPECT_EQ(res.next.zeta[j], 0.0);
        EXPECT_EQ(res.next.q[j], 0.0);
    }
}

TEST(Step, MassTelescopes) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> z(-0.5, 0.5), q(-2.0, 2.0);
    const Grid g(40.0, 80);
    for (int trial = 0; trial < 20; ++trial) {
        FluidState s(81);
        for (std::size_t j = 0; j < 81; ++j) {
            s.zeta[j] = z(rng);
            s.q[j] = q(rng);
        }
        StepConfig cfg;
        cfg.grid = &g;
        cfg.dt = 0.01;
        cfg.ghosts = {{z(rng), q(rng)}, {z(rng), q(rng)}};
        const auto res = step_nsw(s, cfg);
        double before = 0, after = 0;
        for (std::size_t j = 0; j < 81; ++j) {
            before += s.zeta[j];
            after += res.next.zeta[j];
        }
        const double alpha = cfg.dt / g.dx();
        EXPECT_NEAR(after - before, -alpha * (res.mass_flux_right - res.mass_flux_left), 1e-12);
    }
}

TEST(Step, CflAndPositivityGuards) {
    const Grid g(10.0, 10);
    FluidState s(11);
    StepConfig cfg;
    cfg.grid = &g;
    cfg.dt = 0.1;  // alpha 0.1, speed 12.1: cfl 1.2
    EXPECT_THROW(step_nsw(s, cfg), InvariantBreach);
    s.zeta[3] = -20.0;
    cfg.dt = 0.001;
    EXPECT_THROW(step_nsw(s, cfg), InvariantBreach);
    cfg.dt = 0.0;
    s.zeta[3] = 0.0;
    EXPECT_THROW(step_nsw(s, cfg), ConfigError);
}

TEST(Step, ConstraintPreservedOnHull) {
    // interior on a fixed hull with sublattice-constant q: the surface stays put
    HullSpec spec;
    spec.x0 = 15.0;
    spec.radius = 5.0;
    const PhysicalParams p;
    const BodyGeometry body(p, spec);
    const Grid g(30.0, 60);
    const auto region = InteriorRegion::locate(g, body.x_minus(), body.x_plus());
    FluidState s(g.size());
    for (std::size_t j = region.j_minus + 1; j < region.j_plus; ++j) {
        s.zeta[j] = body.hull_elevation(g.x(j), 0.0);
    }
    for (std::size_t j = 0; j < g.size(); ++j) s.q[j] = 0.3;
    StepConfig cfg;
    cfg.grid = &g;
    cfg.region = region;
    cfg.dt = 0.01;
    cfg.ghosts = {{0.0, 0.3}, {0.0, 0.3}};
    FluidState cur = s;
    for (int n = 0; n < 50; ++n) {
        cur = step_nsw(cur, cfg).next;
        for (std::size_t j = region.j_minus + 1; j < region.j_plus; ++j) {
            ASSERT_NEAR(cur.zeta[j], s.zeta[j], 1e-12);
            ASSERT_EQ(cur.q[j + 1] - cur.q[j - 1], 0.0);
        }
    }
}

TEST(Compatibility, RestFluidAndRestBody) {
    HullSpec spec;
    const PhysicalParams p;
    const BodyGeometry body(p, spec);
    const Grid g(300.0, 3000);
    const auto region = InteriorRegion::locate(g, body.x_minus(), body.x_plus());
    FluidState s(g.size());
    for (std::size_t j = region.j_minus + 1; j < region.j_plus; ++j) {
        s.zeta[j] = body.hull_elevation(g.x(j), 0.0);
    }
    EXPECT_TRUE(check_compatibility(s, g, region, body, 0.0, 0.0, 0.02).ok);

    // moving body over a fluid at rest: violation |v| dt
    const double v = 0.5, dt = 0.002;
    const auto rep = check_compatibility(s, g, region, body, 0.0, v * dt, 0.02);
    EXPECT_FALSE(rep.ok);
    EXPECT_NEAR(rep.motion_violation, v * dt, 1e-12);
    EXPECT_NE(rep.message().find("incompatible"), std::string::npos);

    // linear q with slope -v: compatible
    for (std::size_t j = region.j_minus; j <= region.j_plus; ++j) s.q[j] = -(g.x(j) - body.x0()) * v;
    EXPECT_TRUE(check_compatibility(s, g, region, body, 0.0, v * dt, dt / g.dx()).ok);

    // surface off the hull
    s.zeta[region.j_minus + 3] += 1e-6;
    const auto bad = check_compatibility(s, g, region, body, 0.0, v * dt, dt / g.dx());
    EXPECT_FALSE(bad.ok);
    EXPECT_NEAR(bad.depth_violation, 1e-6, 1e-12);
}
