#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "floatsim/errors.hpp"

namespace floatsim {

/// Rest depth, gravity and water density. Defaults are the values used
/// throughout the floating-box experiments.
struct PhysicalParams {
    double h0 = 15.0;
    double g = 9.81;
    double rho = 1000.0;

    void validate() const {
        if (!(h0 > 0.0) || !(g > 0.0) || !(rho > 0.0)) {
            throw ConfigError("physical parameters must be positive (h0, g, rho)");
        }
    }
};

/// Uniform 1D mesh of [0, L] with N intervals and N+1 cells centered at
/// x_j = j*dx. The end cells are half cells.
class Grid {
public:
    Grid(double length, std::size_t intervals) : length_(length), intervals_(intervals) {
        if (!(length > 0.0) || intervals == 0) {
            throw ConfigError("grid needs a positive length and at least one interval");
        }
        dx_ = length_ / static_cast<double>(intervals_);
    }

    /// Grid whose spacing is `dx` up to rounding of L/dx to the nearest integer.
    static Grid with_spacing(double length, double dx) {
        if (!(dx > 0.0)) throw ConfigError("grid spacing must be positive");
        const double n = std::round(length / dx);
        if (n < 1.0) throw ConfigError("grid spacing larger than the domain");
        return Grid(length, static_cast<std::size_t>(n));
    }

    std::size_t size() const noexcept { return intervals_ + 1; }
    std::size_t intervals() const noexcept { return intervals_; }
    double dx() const noexcept { return dx_; }
    double length() const noexcept { return length_; }
    double x(std::size_t j) const noexcept { return static_cast<double>(j) * dx_; }

private:
    double length_;
    std::size_t intervals_;
    double dx_;
};

/// Index range of the wetted region. Cells j_minus and j_plus are the nearest
/// exterior cells; j_minus < j < j_plus are the interior cells.
struct InteriorRegion {
    std::size_t j_minus = 0;
    std::size_t j_plus = 0;
    double x_minus = 0.0;
    double x_plus = 0.0;

    /// Locate the exterior neighbours of [x_minus, x_plus] on `grid`. A node
    /// lying on a contact abscissa (to 1e-9 dx) counts as interior.
    static InteriorRegion locate(const Grid& grid, double x_minus, double x_plus) {
        if (!(x_minus < x_plus)) throw ConfigError("contact abscissae must satisfy x_- < x_+");
        constexpr double tie = 1e-9;
        const double sm = x_minus / grid.dx();
        const double sp = x_plus / grid.dx();
        const double jm = std::ceil(sm - tie) - 1.0;
        const double jp = std::floor(sp + tie) + 1.0;
        if (jm < 0.0 || jp > static_cast<double>(grid.intervals())) {
            throw ConfigError("body does not fit inside the computational domain");
        }
        InteriorRegion r;
        r.j_minus = static_cast<std::size_t>(jm);
        r.j_plus = static_cast<std::size_t>(jp);
        r.x_minus = x_minus;
        r.x_plus = x_plus;
        if (r.j_plus - r.j_minus < 4) {
            throw ConfigError("interior region needs at least three cells; refine the grid");
        }
        return r;
    }

    bool is_interior(std::size_t j) const noexcept { return j > j_minus && j < j_plus; }
    bool in_range(std::size_t j) const noexcept { return j >= j_minus && j <= j_plus; }
    /// Number of cells in [j_minus, j_plus].
    std::size_t range_size() const noexcept { return j_plus - j_minus + 1; }
};

/// Surface elevation and discharge per cell at one time level.
///
/// With compensation enabled, zeta_lo and q_lo hold the rounding error of each
/// stored value (zeta[j] + zeta_lo[j] is the carried value). Fluxes read the
/// high parts only; updates add into both, so roundoff does not random-walk
/// over long runs.
struct FluidState {
    std::vector<double> zeta;
    std::vector<double> q;
    std::vector<double> zeta_lo;
    std::vector<double> q_lo;
    double t = 0.0;

    FluidState() = default;
    explicit FluidState(std::size_t n) : zeta(n, 0.0), q(n, 0.0) {}

    std::size_t size() const noexcept { return zeta.size(); }
    double depth(std::size_t j, double h0) const noexcept { return h0 + zeta[j]; }

    bool compensated() const noexcept { return !zeta_lo.empty(); }
    void enable_compensation() {
        zeta_lo.assign(zeta.size(), 0.0);
        q_lo.assign(q.size(), 0.0);
    }
    double zeta_low(std::size_t j) const noexcept { return zeta_lo.empty() ? 0.0 : zeta_lo[j]; }
    double q_low(std::size_t j) const noexcept { return q_lo.empty() ? 0.0 : q_lo[j]; }
};

/// hi + lo += inc with the new rounding error kept in lo (TwoSum).
inline void compensated_add(double& hi, double& lo, double inc) noexcept {
    const double y = inc + lo;
    const double t = hi + y;
    const double bp = t - hi;
    lo = (hi - (t - bp)) + (y - bp);
    hi = t;
}

/// Sum with half weights on the first and last entries.
inline double sharp_sum(std::span<const double> a) {
    if (a.empty()) return 0.0;
    if (a.size() == 1) return a[0];
    double s = 0.5 * (a.front() + a.back());
    for (std::size_t k = 1; k + 1 < a.size(); ++k) s += a[k];
    return s;
}

/// Half-end-weighted harmonic weights 1/h_j over a contact range, the
/// building block of every interior average.
class HarmonicWeights {
public:
    explicit HarmonicWeights(std::span<const double> depth) : w_(depth.size()) {
        if (depth.size() < 2) throw DomainError("averaging range needs at least two cells");
        for (std::size_t k = 0; k < depth.size(); ++k) {
            if (!(depth[k] > 0.0)) {
                throw DomainError("non-positive depth in averaging range (h = " +
                                  std::to_string(depth[k]) + ")");
            }
            w_[k] = 1.0 / depth[k];
        }
        w_.front() *= 0.5;
        w_.back() *= 0.5;
        for (double w : w_) total_ += w;
    }

    /// Sum over the range of (end-halved) 1/h_j.
    double total() const noexcept { return total_; }
    double weight(std::size_t k) const noexcept { return w_[k]; }
    std::size_t size() const noexcept { return w_.size(); }

    double average(std::span<const double> f) const {
        check(f);
        double s = 0.0;
        for (std::size_t k = 0; k < w_.size(); ++k) s += w_[k] * f[k];
        return s / total_;
    }

    /// Weighted sum of f/h with half end weights (un-normalised).
    double weighted_sum(std::span<const double> f) const {
        check(f);
        double s = 0.0;
        for (std::size_t k = 0; k < w_.size(); ++k) s += w_[k] * f[k];
        return s;
    }

private:
    void check(std::span<const double> f) const {
        if (f.size() != w_.size()) throw std::invalid_argument("value/depth size mismatch");
    }

    std::vector<double> w_;
    double total_ = 0.0;
};

/// <f> = (sum# f_j/h_j) / (sum# 1/h_j) over a contact range.
inline double discrete_average(std::span<const double> f, std::span<const double> depth) {
    return HarmonicWeights(depth).average(f);
}

/// f*_j = f_j - <f>.
inline std::vector<double> oscillating_part(std::span<const double> f,
                                            std::span<const double> depth) {
    const double mean = discrete_average(f, depth);
    std::vector<double> out(f.begin(), f.end());
    for (double& v : out) v -= mean;
    return out;
}

/// Var(f) = <f^2> - <f>^2, computed as <(f*)^2> for better cancellation.
inline double discrete_variance(std::span<const double> f, std::span<const double> depth) {
    const HarmonicWeights w(depth);
    const double mean = w.average(f);
    std::vector<double> sq(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) sq[k] = (f[k] - mean) * (f[k] - mean);
    return w.average(sq);
}

/// View of a full-grid array restricted to [j_minus, j_plus].
inline std::span<const double> contact_range(std::span<const double> full,
                                             const InteriorRegion& region) {
    return full.subspan(region.j_minus, region.range_size());
}

/// Depths h0 + zeta over [j_minus, j_plus].
inline std::vector<double> range_depths(const FluidState& s, const InteriorRegion& region,
                                        double h0) {
    std::vector<double> h(region.range_size());
    for (std::size_t k = 0; k < h.size(); ++k) h[k] = h0 + s.zeta[region.j_minus + k];
    return h;
}

/// Cell centres over [j_minus, j_plus].
inline std::vector<double> range_abscissae(const Grid& grid, const InteriorRegion& region) {
    std::vector<double> x(region.range_size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = grid.x(region.j_minus + k);
    return x;
}

}  // namespace floatsim
