#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "floatsim/core.hpp"
#include "floatsim/errors.hpp"
#include "floatsim/nsw.hpp"

namespace floatsim {

/// Momentum component of the dispersive operator, q - (h0^2/3) d2 q, where d2
/// is the centred second difference except on the band
/// [j_minus - 2, j_plus + 2] around the body and on the two end cells, where
/// it is zero. The tridiagonal factorisation is computed once.
class DispersiveOperator {
public:
    DispersiveOperator(const Grid& grid, double h0,
                       std::optional<InteriorRegion> region = std::nullopt)
        : n_(grid.size()), dx_(grid.dx()), coefficient_(h0 * h0 / 3.0), region_(region) {
        const double kappa = coefficient_ / (dx_ * dx_);
        // Thomas factorisation: modified super-diagonal and inverse pivots.
        upper_.assign(n_, 0.0);
        lower_.assign(n_, 0.0);
        inv_pivot_.assign(n_, 1.0);
        double prev_upper = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            double a = 0.0, b = 1.0, c = 0.0;
            if (!zeroed(j)) {
                a = -kappa;
                b = 1.0 + 2.0 * kappa;
                c = -kappa;
            }
            const double pivot = b - a * prev_upper;
            if (pivot == 0.0 || !std::isfinite(pivot)) {
                throw NumericalError("singular dispersive system");
            }
            lower_[j] = a;
            inv_pivot_[j] = 1.0 / pivot;
            upper_[j] = c * inv_pivot_[j];
            prev_upper = upper_[j];
        }
    }

    double coefficient() const noexcept { return coefficient_; }
    std::size_t size() const noexcept { return n_; }

    /// True where the second difference is switched off.
    bool zeroed(std::size_t j) const noexcept {
        if (j == 0 || j + 1 >= n_) return true;
        if (!region_) return false;
        const std::size_t lo = region_->j_minus >= 2 ? region_->j_minus - 2 : 0;
        return j >= lo && j <= region_->j_plus + 2;
    }

    double second_difference(std::span<const double> q, std::size_t j) const {
        if (zeroed(j)) return 0.0;
        return (q[j - 1] - 2.0 * q[j] + q[j + 1]) / (dx_ * dx_);
    }

    /// q - (h0^2/3) d2 q.
    std::vector<double> apply(std::span<const double> q) const {
        check(q);
        std::vector<double> out(n_);
        for (std::size_t j = 0; j < n_; ++j) out[j] = q[j] - coefficient_ * second_difference(q, j);
        return out;
    }

    /// Inverse of apply(). Identity rows return the right-hand side unchanged.
    std::vector<double> solve(std::span<const double> rhs) const {
        check(rhs);
        std::vector<double> x(n_);
        double prev = 0.0;
        for (std::size_t j = 0; j < n_; ++j) {
            x[j] = (rhs[j] - lower_[j] * prev) * inv_pivot_[j];
            prev = x[j];
        }
        for (std::size_t j = n_ - 1; j-- > 0;) x[j] -= upper_[j] * x[j + 1];
        return x;
    }

private:
    void check(std::span<const double> v) const {
        if (v.size() != n_) throw std::invalid_argument("dispersive operator size mismatch");
    }

    std::size_t n_;
    double dx_;
    double coefficient_;
    std::optional<InteriorRegion> region_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<double> inv_pivot_;
};

/// One step of the Boussinesq scheme: the mass update is the shallow water
/// one; the momentum update advances D q with flux q^2/h0 + g h^2/2 and the
/// same interior source, then inverts D. For compensated states the low parts
/// survive on the identity rows of D and are folded in elsewhere.
inline StepResult step_boussinesq(const FluidState& s, const StepConfig& cfg,
                                  const DispersiveOperator& op) {
    std::vector<double> base = op.apply(s.q);
    std::vector<double> base_lo;
    if (s.compensated()) {
        base_lo = s.q_lo;
        for (std::size_t j = 0; j < base.size(); ++j) {
            if (!op.zeroed(j)) {
                base[j] += base_lo[j];
                base_lo[j] = 0.0;
            }
        }
    }
    StepResult res = advance_explicit(s, cfg, std::span<const double>(base),
                                      std::span<const double>(base_lo), BoussinesqFlux{});
    if (res.next.compensated()) {
        for (std::size_t j = 0; j < base.size(); ++j) {
            if (!op.zeroed(j)) {
                res.next.q[j] += res.next.q_lo[j];
                res.next.q_lo[j] = 0.0;
            }
        }
    }
    res.next.q = op.solve(res.next.q);
    return res;
}

}  // namespace floatsim
