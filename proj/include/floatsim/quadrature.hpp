#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "floatsim/errors.hpp"

namespace floatsim::quad {

/// Nodes and weights of the N-point Gauss-Legendre rule on [-1, 1], computed
/// once by Newton iteration on P_N.
template <int N>
struct GaussLegendreRule {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussLegendreRule() {
        for (int i = 0; i < N; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= N; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double step = p1 / dp;
                x -= step;
                if (std::abs(step) < 1e-16) break;
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    static const GaussLegendreRule& instance() {
        static const GaussLegendreRule rule;
        return rule;
    }
};

template <class F>
double gauss_legendre(F&& f, double a, double b) {
    const auto& rule = GaussLegendreRule<10>::instance();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 10; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return s * half;
}

namespace detail {

template <class F>
double adapt(F& f, double a, double b, double whole, double tol, double floor, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_legendre(f, a, mid);
    const double right = gauss_legendre(f, mid, b);
    const double refined = left + right;
    if (std::abs(refined - whole) <= std::max(tol, floor)) return refined;
    if (depth <= 0) throw NumericalError("adaptive quadrature did not converge");
    return adapt(f, a, mid, left, 0.5 * tol, floor, depth - 1) +
           adapt(f, mid, b, right, 0.5 * tol, floor, depth - 1);
}

}  // namespace detail

/// Adaptive 10-point Gauss-Legendre with interval bisection. Converged when
/// the bisected estimate agrees with the parent to rel_tol times the integral
/// of |f| (so integrals that cancel to zero still terminate), or abs_tol.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 0.0) {
    if (a == b) return 0.0;
    const double whole = gauss_legendre(f, a, b);
    const double scale = gauss_legendre([&](double x) { return std::abs(f(x)); }, a, b);
    const double tol = std::max(rel_tol * scale, abs_tol);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    return detail::adapt(f, a, b, whole, tol, floor, 40);
}

}  // namespace floatsim::quad
