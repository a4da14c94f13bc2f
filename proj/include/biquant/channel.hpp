#pragma once

// The 2x2 channel induced by a threshold quantizer, its mutual information,
// and the functionals f(a), g(a), F(a) of the level-a quantizer.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "biquant/density.hpp"
#include "biquant/errors.hpp"
#include "biquant/likelihood.hpp"
#include "biquant/thresholds.hpp"

namespace biquant {

/// Which alternating segments are labelled Z = 0. OddToZero sends
/// (-inf, h1), [h2, h3), ... to 0 and the rest to 1.
enum class Mapping { OddToZero, EvenToZero };

inline std::string_view to_string(Mapping m) {
    return m == Mapping::OddToZero ? "odd_to_zero" : "even_to_zero";
}

/// Diagonal of the end-to-end channel X -> Z; off-diagonals are 1 - a11, 1 - a22.
struct ChannelMatrix {
    double a11 = 1.0; // P(Z=0 | X=0)
    double a22 = 0.0; // P(Z=1 | X=1)

    friend bool operator==(const ChannelMatrix&, const ChannelMatrix&) = default;
};

inline ChannelMatrix channel_matrix(const ChannelSpec& spec, const ThresholdVector& h,
                                    Mapping mapping) {
    const auto zero = mapping == Mapping::OddToZero ? SegmentParity::Odd : SegmentParity::Even;
    const auto one = mapping == Mapping::OddToZero ? SegmentParity::Even : SegmentParity::Odd;
    return {partition_mass(spec.phi0(), h.values(), zero),
            partition_mass(spec.phi1(), h.values(), one)};
}

/// H2(p) in bits with 0 log 0 = 0.
inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

/// I(X;Z) in bits.
inline double mutual_information(const Prior& prior, const ChannelMatrix& cm) {
    const double p0 = prior.p0(), p1 = prior.p1();
    const double q0 = p0 * cm.a11 + p1 * (1.0 - cm.a22);
    const double mi =
        binary_entropy(q0) - p0 * binary_entropy(cm.a11) - p1 * binary_entropy(cm.a22);
    return std::max(mi, 0.0);
}

/// Quantizer induced by level a: thresholds at the crossings of u(y) = a,
/// labels chosen so that {u < a} maps to Z = 0.
struct LevelQuantizer {
    ThresholdVector thresholds;
    Mapping mapping = Mapping::OddToZero;
};

/// Labels each segment between level-set roots by u at its midpoint (the
/// unbounded end segments are probed at search_lo / search_hi), then merges
/// neighbours that received the same label.
inline LevelQuantizer level_quantizer(const ChannelSpec& spec, const LevelSet& level) {
    const auto& roots = level.roots;
    const double a = level.level_a;
    const std::size_t segments = roots.size() + 1;
    std::vector<bool> to_zero(segments);
    for (std::size_t k = 0; k < segments; ++k) {
        const double probe = k == 0               ? spec.search_lo()
                             : k == roots.size() ? spec.search_hi()
                                                 : 0.5 * (roots[k - 1] + roots[k]);
        to_zero[k] = posterior_a(spec, probe) < a;
    }
    std::vector<double> kept;
    for (std::size_t k = 1; k < segments; ++k)
        if (to_zero[k] != to_zero[k - 1]) kept.push_back(roots[k - 1]);
    return {ThresholdVector(std::move(kept)), to_zero[0] ? Mapping::OddToZero : Mapping::EvenToZero};
}

/// f(a) = P(Z=0 | X=0) and g(a) = P(Z=1 | X=1) for the level-a quantizer.
struct ChannelFunctionals {
    double a = 0.0;
    double f = 0.0;
    double g = 0.0;
    ThresholdVector roots;
    Mapping mapping = Mapping::OddToZero;
};

inline ChannelFunctionals functionals(const ChannelSpec& spec, double a,
                                      std::size_t grid_points = kDefaultGridPoints) {
    const auto level = find_level_set(spec, a, grid_points);
    const auto q = level_quantizer(spec, level);
    const auto cm = channel_matrix(spec, q.thresholds, q.mapping);
    return {a, cm.a11, cm.a22, q.thresholds, q.mapping};
}

inline constexpr double kClampEpsilon = 1e-12;

inline bool is_degenerate(double f, double g) {
    auto outside = [](double x) { return x <= kClampEpsilon || x >= 1.0 - kClampEpsilon; };
    return outside(f) || outside(g);
}

/// Stationarity function of I(X;Z)_a in natural logs:
///
///   F(a) = L - (1 - a) ln(f / (1 - f)) + a ln(g / (1 - g)),
///   L    = ln((p0 f + p1 (1 - g)) / (p0 (1 - f) + p1 g)),
///
/// so that dI/da = -(p0 f'(a) / (1 - a)) F(a) / ln 2. Since f' >= 0, F < 0
/// where I is rising and F > 0 where it falls; the maximizing a* is its zero.
/// This uses g'(a) = -(a p0 / ((1 - a) p1)) f'(a), which follows from
/// p1 phi1(h) (1 - a) = a p0 phi0(h) at every threshold h.
inline double stationarity_F(const Prior& prior, double a, double f, double g) {
    if (is_degenerate(f, g))
        throw DegenerateChannel("f or g within 1e-12 of {0, 1} at a = " + std::to_string(a));
    const double p0 = prior.p0(), p1 = prior.p1();
    const double logit_f = std::log(f / (1.0 - f));
    const double logit_g = std::log(g / (1.0 - g));
    const double q = std::log((p0 * f + p1 * (1.0 - g)) / (p0 * (1.0 - f) + p1 * g));
    return q - (1.0 - a) * logit_f + a * logit_g;
}

inline double stationarity_F(const ChannelSpec& spec, double a,
                             std::size_t grid_points = kDefaultGridPoints) {
    const auto fn = functionals(spec, a, grid_points);
    return stationarity_F(spec.prior(), a, fn.f, fn.g);
}

} // namespace biquant
