#pragma once

// Bisection on the stationarity function F(a) for the unique maximizing
// level a*, followed by extraction of every root of u(y) = a* as thresholds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "biquant/channel.hpp"
#include "biquant/errors.hpp"
#include "biquant/likelihood.hpp"

namespace biquant {

struct SolverConfig {
    double a_lo = 1e-6;
    double a_hi = 1.0 - 1e-6;
    double tol_a = 1e-10;
    std::size_t max_iter = 200;
    std::size_t grid_points = kDefaultGridPoints;

    void validate() const {
        if (!(a_lo > 0.0 && a_lo < a_hi && a_hi < 1.0))
            throw std::invalid_argument("solver needs 0 < a_lo < a_hi < 1");
        if (!(tol_a > 0.0)) throw std::invalid_argument("solver tol_a must be > 0");
        if (max_iter < 1) throw std::invalid_argument("solver max_iter must be >= 1");
        if (grid_points < 64) throw std::invalid_argument("solver grid_points must be >= 64");
    }
};

struct QuantizerDesign {
    double a_star = 0.0;
    double r_star = 0.0;
    ThresholdVector thresholds;
    Mapping mapping = Mapping::OddToZero;
    ChannelMatrix channel;
    double mi_bits = 0.0;
    double stationarity_residual = 0.0; // max_i |r(h_i) - r*| / r*
    std::size_t iterations = 0;
    std::vector<std::string> warnings;
};

struct StationarityReport {
    double residual = 0.0;
    std::vector<std::pair<double, double>> per_threshold; // (h_i, r(h_i))
};

inline StationarityReport stationarity_report(const ChannelSpec& spec, const ThresholdVector& h,
                                              double r_star) {
    StationarityReport out;
    for (double y : h) {
        const double r = ratio(spec, y);
        out.per_threshold.emplace_back(y, r);
        out.residual = std::max(out.residual, std::abs(r - r_star) / r_star);
    }
    return out;
}

inline StationarityReport verify_stationarity(const ChannelSpec& spec,
                                              const QuantizerDesign& design) {
    return stationarity_report(spec, design.thresholds, design.r_star);
}

/// Quantizer, channel and MI of the level-a quantizer, packaged as a design.
inline QuantizerDesign design_at_level(const ChannelSpec& spec, double a,
                                       std::size_t grid_points = kDefaultGridPoints) {
    const auto q = level_quantizer(spec, find_level_set(spec, a, grid_points));
    QuantizerDesign d;
    d.a_star = a;
    d.r_star = ratio_for_level(spec.prior(), a);
    d.thresholds = q.thresholds;
    d.mapping = q.mapping;
    d.channel = channel_matrix(spec, q.thresholds, q.mapping);
    d.mi_bits = mutual_information(spec.prior(), d.channel);
    d.stationarity_residual = stationarity_report(spec, d.thresholds, d.r_star).residual;
    return d;
}

struct Bisection {
    double a_star = 0.0;
    std::size_t iterations = 0;
};

/// Plain bisection of F on [lo, hi]; the end values must straddle zero.
inline Bisection bisect_stationarity(const ChannelSpec& spec, double lo, double hi, double tol_a,
                                     std::size_t max_iter,
                                     std::size_t grid_points = kDefaultGridPoints) {
    if (!(lo < hi)) throw std::invalid_argument("bisection bracket needs lo < hi");
    const bool lo_negative = stationarity_F(spec, lo, grid_points) < 0.0;
    if (lo_negative == (stationarity_F(spec, hi, grid_points) < 0.0))
        throw NoSignChange("bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                           "] does not straddle a zero of F");
    std::size_t iter = 0;
    while (hi - lo > tol_a) {
        if (iter == max_iter)
            throw NotConverged("bisection exceeded " + std::to_string(max_iter) + " iterations");
        const double mid = lo + 0.5 * (hi - lo);
        if ((stationarity_F(spec, mid, grid_points) < 0.0) == lo_negative) lo = mid;
        else hi = mid;
        ++iter;
    }
    return {lo + 0.5 * (hi - lo), iter};
}

namespace detail {

inline constexpr std::size_t kCoarseBracketPoints = 64;

// Scans F on a uniform grid of levels, skipping degenerate levels, and returns
// the sign-change cell with the largest |F| spread.
inline std::optional<std::pair<double, double>> scan_for_bracket(const ChannelSpec& spec,
                                                                 const SolverConfig& cfg,
                                                                 std::size_t points,
                                                                 std::vector<std::string>& warnings,
                                                                 bool& any_evaluable) {
    std::optional<std::pair<double, double>> best;
    double best_spread = -1.0;
    std::size_t cells = 0;
    std::optional<std::pair<double, double>> prev; // (a, F)
    for (std::size_t k = 0; k < points; ++k) {
        const double a = k + 1 == points ? cfg.a_hi
                                         : cfg.a_lo + (cfg.a_hi - cfg.a_lo) *
                                                          static_cast<double>(k) /
                                                          static_cast<double>(points - 1);
        const auto fn = functionals(spec, a, cfg.grid_points);
        if (is_degenerate(fn.f, fn.g)) continue;
        any_evaluable = true;
        const double F = stationarity_F(spec.prior(), a, fn.f, fn.g);
        if (prev && (prev->second < 0.0) != (F < 0.0)) {
            ++cells;
            const double spread = std::abs(F - prev->second);
            if (spread > best_spread) {
                best_spread = spread;
                best = std::make_pair(prev->first, a);
            }
        }
        prev = std::make_pair(a, F);
    }
    if (cells > 1)
        warnings.push_back("F changed sign in " + std::to_string(cells) +
                           " cells of the level scan; kept the cell with the largest |F| spread");
    return best;
}

} // namespace detail

/// Maximizes I(X;Z) over binary threshold quantizers. The number of
/// thresholds is whatever the level set u(y) = a* produces.
inline QuantizerDesign solve(const ChannelSpec& spec, const SolverConfig& cfg = {}) {
    cfg.validate();
    if (classify_monotonicity(spec, cfg.grid_points).flat)
        throw NoSignChange("channel carries no information: r(y) is constant, so I(X;Z) = 0 "
                           "for every quantizer");

    std::vector<std::string> warnings;
    bool any_evaluable = false;
    std::optional<std::pair<double, double>> bracket;
    for (std::size_t points = detail::kCoarseBracketPoints; !bracket; points *= 8) {
        bracket = detail::scan_for_bracket(spec, cfg, std::min(points, cfg.grid_points), warnings,
                                           any_evaluable);
        if (points >= cfg.grid_points) break;
    }
    if (!bracket) {
        if (!any_evaluable)
            throw DegenerateChannel("every level in [a_lo, a_hi] yields a degenerate channel");
        throw NoSignChange("F(a) keeps one sign on [a_lo, a_hi]; no interior stationary point");
    }

    const auto b = bisect_stationarity(spec, bracket->first, bracket->second, cfg.tol_a,
                                       cfg.max_iter, cfg.grid_points);
    auto design = design_at_level(spec, b.a_star, cfg.grid_points);
    design.iterations = b.iterations;
    design.warnings = std::move(warnings);
    return design;
}

/// Single-threshold optimality predicted from a strictly monotone r(y), or
/// from translate densities whose common shape is strictly log-concave or
/// log-convex.
inline bool predict_single_threshold(const ChannelSpec& spec,
                                     std::size_t grid_points = kDefaultGridPoints) {
    if (classify_monotonicity(spec, grid_points).strict()) return true;
    const auto v = check_log_concavity_shift(spec, grid_points);
    return v.shift_detected && std::abs(v.mu) > kShiftTolerance && (v.log_concave || v.log_convex);
}

} // namespace biquant
