#pragma once

// Likelihood ratio r(y) = phi0/phi1, the posterior variable
// u(y) = p1 phi1 / (p0 phi0 + p1 phi1), and the level sets {y : u(y) = a}
// whose roots are the candidate thresholds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "biquant/density.hpp"
#include "biquant/thresholds.hpp"

namespace biquant {

inline constexpr std::size_t kDefaultGridPoints = 4096;

/// Binary-input channel: prior plus the two conditional densities, and the
/// finite window of y on which roots are searched.
class ChannelSpec {
public:
    /// Tails beyond this many (largest) standard deviations are ignored.
    static constexpr double kSearchMargin = 10.0;

    ChannelSpec(Prior prior, DensityModel phi0, DensityModel phi1)
        : prior_(prior), phi0_(std::move(phi0)), phi1_(std::move(phi1)) {
        std::tie(search_lo_, search_hi_) = default_search_domain(phi0_, phi1_);
    }

    ChannelSpec(Prior prior, DensityModel phi0, DensityModel phi1, double search_lo,
                double search_hi)
        : prior_(prior), phi0_(std::move(phi0)), phi1_(std::move(phi1)),
          search_lo_(search_lo), search_hi_(search_hi) {
        if (!(std::isfinite(search_lo) && std::isfinite(search_hi) && search_lo < search_hi))
            throw std::invalid_argument("search domain needs finite lo < hi");
        const auto [lo, hi] = default_search_domain(phi0_, phi1_);
        if (search_lo > lo || search_hi < hi)
            throw std::invalid_argument(
                "search domain must cover every component mean with a 10-stddev margin");
    }

    static std::pair<double, double> default_search_domain(const DensityModel& phi0,
                                                           const DensityModel& phi1) {
        const double sd = std::max(phi0.max_stddev(), phi1.max_stddev());
        const double lo = std::min(phi0.min_component_mean(), phi1.min_component_mean());
        const double hi = std::max(phi0.max_component_mean(), phi1.max_component_mean());
        return {lo - kSearchMargin * sd, hi + kSearchMargin * sd};
    }

    [[nodiscard]] const Prior& prior() const { return prior_; }
    [[nodiscard]] const DensityModel& phi0() const { return phi0_; }
    [[nodiscard]] const DensityModel& phi1() const { return phi1_; }
    [[nodiscard]] double search_lo() const { return search_lo_; }
    [[nodiscard]] double search_hi() const { return search_hi_; }

    /// Uniform grid of n points covering [search_lo, search_hi] inclusive.
    [[nodiscard]] double grid_point(std::size_t i, std::size_t n) const {
        if (i + 1 == n) return search_hi_;
        return search_lo_ + (search_hi_ - search_lo_) * static_cast<double>(i) /
                                static_cast<double>(n - 1);
    }

private:
    Prior prior_;
    DensityModel phi0_;
    DensityModel phi1_;
    double search_lo_ = 0.0;
    double search_hi_ = 0.0;
};

inline double log_ratio(const ChannelSpec& spec, double y) {
    return log_pdf(spec.phi0(), y) - log_pdf(spec.phi1(), y);
}

/// r(y) = phi0(y) / phi1(y), formed in log space.
inline double ratio(const ChannelSpec& spec, double y) { return std::exp(log_ratio(spec, y)); }

/// u(y) = 1 / (1 + (p0/p1) r(y)).
inline double posterior_a(const ChannelSpec& spec, double y) {
    const auto& p = spec.prior();
    return 1.0 / (1.0 + std::exp(std::log(p.p0() / p.p1()) + log_ratio(spec, y)));
}

/// r* that corresponds to level a under the one-to-one map a <-> r.
inline double ratio_for_level(const Prior& prior, double a) {
    return (prior.p1() / prior.p0()) * (1.0 - a) / a;
}

// ---------------------------------------------------------------------------
// Monotonicity and translate/log-concavity classification

enum class Monotonicity { StrictlyIncreasing, StrictlyDecreasing, NonMonotonic };

inline std::string_view to_string(Monotonicity m) {
    switch (m) {
    case Monotonicity::StrictlyIncreasing: return "StrictlyIncreasing";
    case Monotonicity::StrictlyDecreasing: return "StrictlyDecreasing";
    case Monotonicity::NonMonotonic: return "NonMonotonic";
    }
    return "?";
}

/// A numerical verdict on a finite grid, not a proof.
struct MonotonicityClass {
    Monotonicity kind = Monotonicity::NonMonotonic;
    std::size_t grid_points = 0;
    bool flat = false; // every successive difference of log r is below the strictness floor

    [[nodiscard]] bool strict() const { return kind != Monotonicity::NonMonotonic; }
};

inline constexpr double kStrictnessFloor = 1e-12;

inline MonotonicityClass classify_monotonicity(const ChannelSpec& spec,
                                               std::size_t grid_points = kDefaultGridPoints) {
    if (grid_points < 64) throw std::invalid_argument("classify_monotonicity needs >= 64 points");
    bool all_up = true, all_down = true, all_flat = true;
    double prev = log_ratio(spec, spec.grid_point(0, grid_points));
    for (std::size_t i = 1; i < grid_points; ++i) {
        const double cur = log_ratio(spec, spec.grid_point(i, grid_points));
        const double d = cur - prev;
        all_up = all_up && d > kStrictnessFloor;
        all_down = all_down && d < -kStrictnessFloor;
        all_flat = all_flat && std::abs(d) <= kStrictnessFloor;
        prev = cur;
    }
    MonotonicityClass out;
    out.grid_points = grid_points;
    out.flat = all_flat;
    if (all_up) out.kind = Monotonicity::StrictlyIncreasing;
    else if (all_down) out.kind = Monotonicity::StrictlyDecreasing;
    return out;
}

struct LogConcavityVerdict {
    bool shift_detected = false;
    double mu = 0.0; // phi1(y) == phi0(y - mu)
    bool log_concave = false;
    bool log_convex = false;
};

inline constexpr double kShiftTolerance = 1e-9;

inline LogConcavityVerdict check_log_concavity_shift(const ChannelSpec& spec,
                                                     std::size_t grid_points = kDefaultGridPoints) {
    if (grid_points < 64)
        throw std::invalid_argument("check_log_concavity_shift needs >= 64 points");
    LogConcavityVerdict v;
    const auto& m0 = spec.phi0();
    const auto& m1 = spec.phi1();
    if (m0.size() != m1.size()) return v;

    auto sorted = [](const DensityModel& m) {
        std::vector<GaussianComponent> c(m.components().begin(), m.components().end());
        std::sort(c.begin(), c.end(), [](const auto& l, const auto& r) {
            return std::tie(l.mean, l.stddev, l.weight) < std::tie(r.mean, r.stddev, r.weight);
        });
        return c;
    };
    const auto c0 = sorted(m0);
    const auto c1 = sorted(m1);
    const double mu = m1.mean() - m0.mean();
    for (std::size_t k = 0; k < c0.size(); ++k) {
        if (std::abs(c1[k].mean - (c0[k].mean + mu)) > kShiftTolerance ||
            std::abs(c1[k].stddev - c0[k].stddev) > kShiftTolerance ||
            std::abs(c1[k].weight - c0[k].weight) > kShiftTolerance)
            return v;
    }
    v.shift_detected = true;
    v.mu = mu;

    bool concave = true, convex = true;
    double l_prev = log_pdf(m0, spec.grid_point(0, grid_points));
    double l_cur = log_pdf(m0, spec.grid_point(1, grid_points));
    for (std::size_t i = 2; i < grid_points; ++i) {
        const double l_next = log_pdf(m0, spec.grid_point(i, grid_points));
        const double d2 = l_prev - 2.0 * l_cur + l_next;
        concave = concave && d2 < -kStrictnessFloor;
        convex = convex && d2 > kStrictnessFloor;
        l_prev = l_cur;
        l_cur = l_next;
    }
    v.log_concave = concave;
    v.log_convex = convex;
    return v;
}

// ---------------------------------------------------------------------------
// Level sets u(y) = a

struct LevelSet {
    double level_a = 0.0;
    ThresholdVector roots;
    std::vector<std::pair<double, double>> brackets;      // grid cells holding a crossing
    std::vector<std::pair<double, double>> tangent_cells; // |u - a| < 1e-12 at both ends, no crossing
};

inline constexpr double kLevelMargin = 1e-9;
inline constexpr double kTangencyBand = 1e-12;

inline void require_level(double a) {
    if (!(a > kLevelMargin && a < 1.0 - kLevelMargin))
        throw std::invalid_argument("level a must lie in (1e-9, 1 - 1e-9)");
}

/// Every crossing of u(y) = a on [search_lo, search_hi], sorted ascending.
/// A crossing is a change of membership in {u >= a} between neighbouring
/// grid points; each is refined by bisection to full double precision.
inline LevelSet find_level_set(const ChannelSpec& spec, double a,
                               std::size_t grid_points = kDefaultGridPoints) {
    require_level(a);
    if (grid_points < 2) throw std::invalid_argument("find_level_set needs >= 2 grid points");

    LevelSet out;
    out.level_a = a;
    std::vector<double> roots;

    double y_prev = spec.grid_point(0, grid_points);
    double d_prev = posterior_a(spec, y_prev) - a;
    for (std::size_t i = 1; i < grid_points; ++i) {
        const double y = spec.grid_point(i, grid_points);
        const double d = posterior_a(spec, y) - a;
        const bool in_prev = d_prev >= 0.0;
        if (in_prev != (d >= 0.0)) {
            out.brackets.emplace_back(y_prev, y);
            double lo = y_prev, hi = y, d_lo = d_prev, d_hi = d;
            while (true) {
                const double mid = lo + 0.5 * (hi - lo);
                if (mid <= lo || mid >= hi) break;
                const double dm = posterior_a(spec, mid) - a;
                if (dm == 0.0) {
                    lo = hi = mid;
                    d_lo = d_hi = 0.0;
                    break;
                }
                if ((dm >= 0.0) == in_prev) {
                    lo = mid;
                    d_lo = dm;
                } else {
                    hi = mid;
                    d_hi = dm;
                }
            }
            const double root = std::abs(d_lo) <= std::abs(d_hi) ? lo : hi;
            if (roots.empty() || roots.back() < root) roots.push_back(root);
        } else if (std::abs(d_prev) < kTangencyBand && std::abs(d) < kTangencyBand) {
            out.tangent_cells.emplace_back(y_prev, y);
        }
        y_prev = y;
        d_prev = d;
    }
    out.roots = ThresholdVector(std::move(roots));
    return out;
}

} // namespace biquant
