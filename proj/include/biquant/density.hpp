#pragma once

// Gaussian-mixture conditional densities phi_i(y) with closed-form interval
// masses. Everything here is an immutable value type plus pure functions.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace biquant {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct GaussianComponent {
    double mean = 0.0;
    double stddev = 1.0; // standard deviation, not variance
    double weight = 1.0;
};

inline void validate(const GaussianComponent& c) {
    if (!std::isfinite(c.mean))
        throw std::invalid_argument("component mean must be finite");
    if (!(c.stddev > 0.0) || !std::isfinite(c.stddev))
        throw std::invalid_argument("component stddev must be finite and > 0");
    if (!(c.weight > 0.0 && c.weight <= 1.0))
        throw std::invalid_argument("component weight must lie in (0, 1]");
}

/// Finite Gaussian mixture. Weights must sum to one within 1e-12.
class DensityModel {
public:
    static constexpr double kWeightTolerance = 1e-12;

    explicit DensityModel(std::vector<GaussianComponent> components)
        : components_(std::move(components)) {
        if (components_.empty())
            throw std::invalid_argument("density needs at least one component");
        double total = 0.0;
        for (const auto& c : components_) {
            validate(c);
            total += c.weight;
        }
        if (std::abs(total - 1.0) > kWeightTolerance)
            throw std::invalid_argument("component weights must sum to 1 (got " +
                                        std::to_string(total) + ")");
    }

    static DensityModel normal(double mean, double stddev) {
        return DensityModel({GaussianComponent{mean, stddev, 1.0}});
    }

    [[nodiscard]] std::span<const GaussianComponent> components() const { return components_; }
    [[nodiscard]] std::size_t size() const { return components_.size(); }

    [[nodiscard]] double mean() const {
        double m = 0.0;
        for (const auto& c : components_) m += c.weight * c.mean;
        return m;
    }
    [[nodiscard]] double min_component_mean() const {
        return std::min_element(components_.begin(), components_.end(),
                                [](auto& l, auto& r) { return l.mean < r.mean; })
            ->mean;
    }
    [[nodiscard]] double max_component_mean() const {
        return std::max_element(components_.begin(), components_.end(),
                                [](auto& l, auto& r) { return l.mean < r.mean; })
            ->mean;
    }
    [[nodiscard]] double max_stddev() const {
        return std::max_element(components_.begin(), components_.end(),
                                [](auto& l, auto& r) { return l.stddev < r.stddev; })
            ->stddev;
    }

    friend bool operator==(const DensityModel& l, const DensityModel& r) {
        return std::equal(l.components_.begin(), l.components_.end(), r.components_.begin(),
                          r.components_.end(), [](const auto& a, const auto& b) {
                              return a.mean == b.mean && a.stddev == b.stddev &&
                                     a.weight == b.weight;
                          });
    }

private:
    std::vector<GaussianComponent> components_;
};

/// Input distribution; only p0 is stored so that p0 + p1 == 1 holds exactly.
class Prior {
public:
    explicit Prior(double p0) : p0_(p0) {
        if (!(p0 > 0.0 && p0 < 1.0))
            throw std::invalid_argument("prior p0 must lie strictly inside (0, 1)");
    }
    [[nodiscard]] double p0() const { return p0_; }
    [[nodiscard]] double p1() const { return 1.0 - p0_; }

private:
    double p0_;
};

namespace detail {

inline constexpr double kLogSqrtTwoPi = 0.91893853320467274178; // log(sqrt(2 pi))

// Upper tail Q(z) = P(N(0,1) > z); exact at +-inf.
inline double upper_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }
inline double lower_tail(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// P(lo <= N(0,1) < hi) using whichever tail keeps the difference well conditioned.
inline double standard_mass(double zlo, double zhi) {
    if (zlo >= 0.0) return upper_tail(zlo) - upper_tail(zhi);
    if (zhi <= 0.0) return lower_tail(zhi) - lower_tail(zlo);
    return 1.0 - lower_tail(zlo) - upper_tail(zhi);
}

} // namespace detail

inline double pdf(const DensityModel& model, double y) {
    double total = 0.0;
    for (const auto& c : model.components()) {
        const double z = (y - c.mean) / c.stddev;
        total += c.weight * std::exp(-0.5 * z * z - detail::kLogSqrtTwoPi) / c.stddev;
    }
    return total;
}

/// log phi(y) via log-sum-exp; stays finite far in the tails where pdf() underflows.
inline double log_pdf(const DensityModel& model, double y) {
    double peak = -kInf;
    auto term = [y](const GaussianComponent& c) {
        const double z = (y - c.mean) / c.stddev;
        return std::log(c.weight) - std::log(c.stddev) - detail::kLogSqrtTwoPi - 0.5 * z * z;
    };
    for (const auto& c : model.components()) peak = std::max(peak, term(c));
    double sum = 0.0;
    for (const auto& c : model.components()) sum += std::exp(term(c) - peak);
    return peak + std::log(sum);
}

inline double cdf(const DensityModel& model, double y) {
    double total = 0.0;
    for (const auto& c : model.components())
        total += c.weight * detail::lower_tail((y - c.mean) / c.stddev);
    return total;
}

/// Probability mass of [lo, hi); either end may be infinite.
inline double interval_mass(const DensityModel& model, double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi))
        throw std::invalid_argument("interval bounds must not be NaN");
    if (lo > hi) throw std::invalid_argument("interval_mass requires lo <= hi");
    if (lo == hi) return 0.0;
    double total = 0.0;
    for (const auto& c : model.components())
        total += c.weight * detail::standard_mass((lo - c.mean) / c.stddev, (hi - c.mean) / c.stddev);
    return std::clamp(total, 0.0, 1.0);
}

/// Which alternating segments of a threshold partition to integrate.
/// Odd: (-inf,h1), [h2,h3), ...   Even: [h1,h2), [h3,h4), ...
enum class SegmentParity { Odd, Even };

inline void require_strictly_increasing(std::span<const double> thresholds) {
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!std::isfinite(thresholds[i]))
            throw std::invalid_argument("thresholds must be finite");
        if (i > 0 && !(thresholds[i - 1] < thresholds[i]))
            throw std::invalid_argument("thresholds must be strictly increasing");
    }
}

inline double partition_mass(const DensityModel& model, std::span<const double> thresholds,
                             SegmentParity parity) {
    require_strictly_increasing(thresholds);
    const std::size_t segments = thresholds.size() + 1;
    double total = 0.0;
    for (std::size_t k = (parity == SegmentParity::Odd ? 0 : 1); k < segments; k += 2) {
        const double lo = k == 0 ? -kInf : thresholds[k - 1];
        const double hi = k == thresholds.size() ? kInf : thresholds[k];
        total += interval_mass(model, lo, hi);
    }
    return std::clamp(total, 0.0, 1.0);
}

} // namespace biquant
