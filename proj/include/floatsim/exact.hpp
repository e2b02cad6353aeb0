#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "floatsim/core.hpp"
#include "floatsim/errors.hpp"
#include "floatsim/geometry.hpp"

namespace floatsim::exact {

// ---------------------------------------------------------------------------
// Riemann invariants and the contact-point cubic
// ---------------------------------------------------------------------------

struct RiemannInvariants {
    double right;  ///< q/h + 2(sqrt(gh) - sqrt(g h0))
    double left;   ///< q/h - 2(sqrt(gh) - sqrt(g h0))
};

inline RiemannInvariants riemann_invariants(double h, double q, const PhysicalParams& p) {
    if (!(h > 0.0)) throw DomainError("Riemann invariants need a positive depth");
    const double u = q / h;
    const double c = 2.0 * (std::sqrt(p.g * h) - std::sqrt(p.g * p.h0));
    return {u + c, u - c};
}

/// r0 = (4/27) h0^{3/2}: above it the physical root of the cubic disappears.
inline double critical_r(double h0) { return 4.0 / 27.0 * h0 * std::sqrt(h0); }

/// tau^3 - sqrt(h0) tau^2 + r.
inline double cubic(double tau, double r, double h0) {
    return tau * tau * (tau - std::sqrt(h0)) + r;
}

/// Physical root of tau^3 - sqrt(h0) tau^2 + r = 0: the branch through
/// (0, sqrt(h0)). For 0 < r < r0 this is the larger positive root, for r <= 0
/// the unique positive one. Safeguarded Newton on the bracket where the cubic
/// is increasing, with bisection fallback.
inline double tau0(double r, double h0) {
    if (!(h0 > 0.0)) throw DomainError("tau0 needs a positive rest depth");
    const double s = std::sqrt(h0);
    if (!(r < critical_r(h0))) {
        throw BranchError("tau0: r = " + std::to_string(r) + " is not below r0 = " +
                          std::to_string(critical_r(h0)) + " (velocity too large)");
    }
    if (r == 0.0) return s;

    // cubic is increasing on [2s/3, inf) and negative at 2s/3 when r < r0.
    double lo = 2.0 * s / 3.0;
    double hi = s + std::abs(r) / h0 + std::abs(r) + 1.0;
    while (cubic(hi, r, h0) <= 0.0) hi *= 2.0;

    double tau = s;
    for (int it = 0; it < 200; ++it) {
        const double f = cubic(tau, r, h0);
        if (f == 0.0) return tau;
        if (f < 0.0) lo = tau; else hi = tau;
        const double df = tau * (3.0 * tau - 2.0 * s);
        double next = (df > 0.0) ? tau - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - tau) <= 4.0 * std::numeric_limits<double>::epsilon() * tau) {
            return next;
        }
        tau = next;
    }
    return tau;
}

/// Closed-form root (sqrt(h0) + C + h0/C)/3 with
/// C = (3/2)(-4r + 2r0 + 4 sqrt(r(r - r0)))^{1/3}, principal complex branches.
/// Kept as an independent cross-check of tau0(); it selects the physical root
/// for r <= 0 but may land on another root for 0 < r < r0.
inline double tau0_closed_form(double r, double h0) {
    using cd = std::complex<double>;
    const double r0 = critical_r(h0);
    const cd radicand = -4.0 * r + 2.0 * r0 + 4.0 * std::sqrt(cd(r * (r - r0), 0.0));
    const cd c = 1.5 * std::pow(radicand, 1.0 / 3.0);
    const cd tau = (std::sqrt(h0) + c + h0 / c) / 3.0;
    return tau.real();
}

/// Body speed at which the contact cubic argument reaches r0,
/// (16/27) sqrt(g h0) h0 / (x_+ - x_-).
inline double smallness_bound(double width, const PhysicalParams& p) {
    return 16.0 / 27.0 * std::sqrt(p.g * p.h0) * p.h0 / width;
}

/// Cubic argument r = (x_+ - x_-) ddelta / (4 sqrt g) for a rigid heave.
inline double contact_argument(double delta_dot, double width, const PhysicalParams& p) {
    return width / (4.0 * std::sqrt(p.g)) * delta_dot;
}

/// Water elevation at the contact points of a body heaving at speed
/// `delta_dot` in water otherwise at rest: tau0(r)^2 - h0, evaluated as
/// (tau0 - sqrt h0)(tau0 + sqrt h0) so that it vanishes exactly at rest.
inline double contact_elevation(double delta_dot, double width, const PhysicalParams& p) {
    const double s = std::sqrt(p.h0);
    const double t = tau0(contact_argument(delta_dot, width, p), p.h0);
    return (t - s) * (t + s);
}

/// Nonlinear radiation damping nu(v) = rho g (x_+ - x_-)(h0 - tau0^2).
inline double damping_nu(double delta_dot, double width, const PhysicalParams& p) {
    return -p.rho * p.g * width * contact_elevation(delta_dot, width, p);
}

/// Linear damping coefficient rho g (x_+ - x_-)^2 / (2 sqrt(g h0)).
inline double linear_damping(double width, const PhysicalParams& p) {
    return p.rho * p.g * width * width / (2.0 * std::sqrt(p.g * p.h0));
}

// ---------------------------------------------------------------------------
// Body trajectories
// ---------------------------------------------------------------------------

struct TrajectorySample {
    double delta;
    double delta_dot;
};

/// Piecewise cubic-Hermite trajectory (t, delta, delta_dot, delta_ddot).
class Trajectory {
public:
    std::vector<double> t;
    std::vector<double> delta;
    std::vector<double> delta_dot;
    std::vector<double> delta_ddot;

    void push(double time, double d, double v, double a) {
        t.push_back(time);
        delta.push_back(d);
        delta_dot.push_back(v);
        delta_ddot.push_back(a);
    }

    std::size_t size() const noexcept { return t.size(); }
    double end_time() const { return t.empty() ? 0.0 : t.back(); }

    /// Dense output by cubic Hermite interpolation on the stored nodes.
    TrajectorySample at(double time) const {
        if (t.empty()) throw DomainError("empty trajectory");
        if (time <= t.front()) return {delta.front(), delta_dot.front()};
        if (time >= t.back()) return {delta.back(), delta_dot.back()};
        const auto it = std::upper_bound(t.begin(), t.end(), time);
        const std::size_t k = static_cast<std::size_t>(it - t.begin()) - 1;
        const double h = t[k + 1] - t[k];
        const double s = (time - t[k]) / h;
        return {hermite(s, h, delta[k], delta[k + 1], delta_dot[k], delta_dot[k + 1]),
                hermite(s, h, delta_dot[k], delta_dot[k + 1], delta_ddot[k], delta_ddot[k + 1])};
    }

    /// Local extrema of delta (sign changes of delta_dot), by linear
    /// interpolation of the crossing time.
    std::vector<double> extrema() const {
        std::vector<double> out;
        for (std::size_t k = 1; k < size(); ++k) {
            if ((delta_dot[k - 1] < 0.0 && delta_dot[k] >= 0.0) ||
                (delta_dot[k - 1] > 0.0 && delta_dot[k] <= 0.0)) {
                const double w = delta_dot[k - 1] / (delta_dot[k - 1] - delta_dot[k]);
                out.push_back(at(t[k - 1] + w * (t[k] - t[k - 1])).delta);
            }
        }
        return out;
    }

    void write_csv(std::ostream& os) const {
        os << "t,delta,delta_dot\n";
        os.precision(17);
        for (std::size_t k = 0; k < size(); ++k) {
            os << t[k] << ',' << delta[k] << ',' << delta_dot[k] << '\n';
        }
    }

private:
    static double hermite(double s, double h, double y0, double y1, double d0, double d1) {
        const double s2 = s * s;
        const double s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 +
               (s3 - s2) * h * d1;
    }
};

/// Right-hand side of a scalar second-order ODE: acceleration(delta, delta_dot).
using Acceleration = std::function<double(double, double)>;

struct OdeOptions {
    double tol = 1e-10;
    double max_step = 0.05;
};

/// Dormand-Prince 5(4) for delta'' = f(delta, delta'), mixed abs/rel error
/// control at `tol`. Every accepted step is stored in the trajectory.
inline Trajectory solve_second_order(const Acceleration& f, double delta0, double v0,
                                     double t_end, const OdeOptions& opt = {}) {
    using State = std::array<double, 2>;
    const auto rhs = [&](const State& y) -> State { return {y[1], f(y[0], y[1])}; };

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    (void)c2, (void)c3, (void)c4, (void)c5;

    Trajectory traj;
    double t = 0.0;
    State y{delta0, v0};
    State k1 = rhs(y);
    traj.push(t, y[0], y[1], k1[1]);
    double h = std::min(opt.max_step, 1e-3);

    const auto comb = [](const State& y0, double hh, std::initializer_list<std::pair<double, const State*>> terms) {
        State out = y0;
        for (const auto& [c, k] : terms) {
            out[0] += hh * c * (*k)[0];
            out[1] += hh * c * (*k)[1];
        }
        return out;
    };

    int guard = 0;
    while (t < t_end) {
        if (++guard > 10'000'000) throw NumericalError("ODE solver exceeded step budget");
        h = std::min({h, opt.max_step, t_end - t});
        try {
        const State k2 = rhs(comb(y, h, {{a21, &k1}}));
        const State k3 = rhs(comb(y, h, {{a31, &k1}, {a32, &k2}}));
        const State k4 = rhs(comb(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const State k5 = rhs(comb(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const State k6 =
            rhs(comb(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        const State y5 = comb(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const State k7 = rhs(y5);
        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double scale = opt.tol * (1.0 + std::max(std::abs(y[i]), std::abs(y5[i])));
            err = std::max(err, std::abs(e) / scale);
        }
        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7;
            traj.push(t, y[0], y[1], k1[1]);
        }
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= factor;
        } catch (const BranchError& e) {
            throw BranchError(std::string(e.what()) + " (t = " + std::to_string(t) + ")", t);
        }
        if (h < 1e-14) throw NumericalError("ODE step size underflow");
    }
    return traj;
}

/// Closed nonlinear heave ODE for the return to equilibrium of a symmetric
/// hull released at rest in still water:
///   (m + m_a(delta)) delta'' = -c delta - nu(delta') + beta(delta) delta'^2.
inline Trajectory return_to_equilibrium_reference(const BodyGeometry& body, double delta0,
                                                  double t_end, const OdeOptions& opt = {}) {
    body.require_admissible(delta0);
    const PhysicalParams& p = body.params();
    const double m = body.mass();
    const double c = body.stiffness();
    const double w = body.width();
    const Acceleration accel = [&](double d, double v) {
        body.require_admissible(d);
        const double nu = damping_nu(v, w, p);
        return (-c * d - nu + body.beta(d) * v * v) / (m + body.added_mass(d));
    };
    return solve_second_order(accel, delta0, 0.0, t_end, opt);
}

/// Damped harmonic oscillator M x'' + b x' + k x = 0 with x(0) = x0, x'(0) = 0.
struct LinearOscillator {
    double mass;
    double damping;
    double stiffness;
    double x0;

    double decay_rate() const { return damping / (2.0 * mass); }

    TrajectorySample at(double t) const {
        const double gamma = decay_rate();
        const double w0sq = stiffness / mass;
        const double disc = w0sq - gamma * gamma;
        const double e = std::exp(-gamma * t);
        if (disc > 0.0) {
            const double wd = std::sqrt(disc);
            const double cs = std::cos(wd * t), sn = std::sin(wd * t);
            const double x = x0 * e * (cs + gamma / wd * sn);
            const double v = -x0 * e * (w0sq / wd) * sn;
            return {x, v};
        }
        if (disc < 0.0) {
            const double s = std::sqrt(-disc);
            const double r1 = -gamma + s, r2 = -gamma - s;
            const double a = x0 * r2 / (r2 - r1), b = -x0 * r1 / (r2 - r1);
            return {a * std::exp(r1 * t) + b * std::exp(r2 * t),
                    a * r1 * std::exp(r1 * t) + b * r2 * std::exp(r2 * t)};
        }
        return {x0 * e * (1.0 + gamma * t), -x0 * gamma * gamma * t * e};
    }
};

/// Linearisation about equilibrium: (m + m_a(0)) delta'' = -c delta - b delta'
/// with b = rho g (x_+ - x_-)^2 / (2 sqrt(g h0)).
inline LinearOscillator linear_oscillator(const BodyGeometry& body, double delta0) {
    return {body.mass() + body.added_mass(0.0), linear_damping(body.width(), body.params()),
            body.stiffness(), delta0};
}

/// Closed-form linear trajectory sampled every `dt` up to `t_end`.
inline Trajectory linear_oscillator_reference(const BodyGeometry& body, double delta0,
                                              double t_end, double dt = 1e-3) {
    const LinearOscillator osc = linear_oscillator(body, delta0);
    Trajectory traj;
    const auto n = static_cast<std::size_t>(std::ceil(t_end / dt));
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = std::min(t_end, static_cast<double>(k) * dt);
        const auto s = osc.at(t);
        const double a = -(osc.damping * s.delta_dot + osc.stiffness * s.delta) / osc.mass;
        traj.push(t, s.delta, s.delta_dot, a);
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Boussinesq solitary wave
// ---------------------------------------------------------------------------

struct SurfaceSample {
    double zeta;
    double q;
};

/// zeta = a sech^2(K(x - c t)), q = c zeta with
/// K = sqrt(9a / (12 h0^3 + 4 a h0^2)), c = sqrt(g h0 / (1 - 4 h0^2 K^2 / 3)).
class SolitaryWave {
public:
    SolitaryWave(double amplitude, double x_crest, const PhysicalParams& p)
        : a_(amplitude), x_crest_(x_crest) {
        if (!(amplitude > 0.0)) throw DomainError("solitary wave amplitude must be positive");
        const double h0 = p.h0;
        k_ = std::sqrt(9.0 * a_ / (12.0 * h0 * h0 * h0 + 4.0 * a_ * h0 * h0));
        const double denom = 1.0 - 4.0 * h0 * h0 * k_ * k_ / 3.0;
        if (!(denom > 0.0)) throw DomainError("solitary wave speed is not real");
        c_ = std::sqrt(p.g * h0 / denom);
    }

    double amplitude() const noexcept { return a_; }
    double wavenumber() const noexcept { return k_; }
    double speed() const noexcept { return c_; }

    SurfaceSample at(double x, double t) const {
        const double sech = 1.0 / std::cosh(k_ * (x - x_crest_ - c_ * t));
        const double zeta = a_ * sech * sech;
        return {zeta, c_ * zeta};
    }

private:
    double a_;
    double x_crest_;
    double k_ = 0.0;
    double c_ = 0.0;
};

inline SurfaceSample solitary_wave(double x, double t, double amplitude, const PhysicalParams& p) {
    return SolitaryWave(amplitude, 0.0, p).at(x, t);
}

}  // namespace floatsim::exact
