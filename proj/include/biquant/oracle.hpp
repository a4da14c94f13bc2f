#pragma once

// Brute-force checks that do not go through the stationarity function:
// exhaustive threshold grids, level sweeps, and finite-difference checks of
// the structural properties of f(a), g(a) and F(a).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "biquant/channel.hpp"
#include "biquant/errors.hpp"
#include "biquant/likelihood.hpp"

namespace biquant {

struct OracleResult {
    double best_mi_bits = 0.0;
    ThresholdVector best_thresholds;
    Mapping best_mapping = Mapping::OddToZero;
    std::size_t n_evaluated = 0;
    double grid_step = 0.0;
};

/// Exhaustive search over every strictly increasing n-tuple (n <= 3) of
/// points search_lo + k * step, both label mappings. Ties keep the
/// lexicographically smallest tuple.
inline OracleResult grid_search(const ChannelSpec& spec, std::size_t n_thresholds,
                                double grid_step) {
    if (n_thresholds < 1 || n_thresholds > 3)
        throw std::invalid_argument("grid_search supports 1 to 3 thresholds");
    if (!(grid_step > 0.0)) throw std::invalid_argument("grid_step must be > 0");

    const double lo = spec.search_lo();
    const auto points =
        static_cast<std::size_t>(std::floor((spec.search_hi() - lo) / grid_step + 1e-9)) + 1;
    if (points < n_thresholds) throw std::invalid_argument("grid_step too coarse for n");
    std::vector<double> ys(points), c0(points), c1(points);
    for (std::size_t k = 0; k < points; ++k) {
        ys[k] = lo + static_cast<double>(k) * grid_step;
        c0[k] = cdf(spec.phi0(), ys[k]);
        c1[k] = cdf(spec.phi1(), ys[k]);
    }

    // Mass of the odd segments (-inf,h1), [h2,h3), ... from CDF values.
    auto odd_mass = [n_thresholds](const std::vector<double>& c, const std::size_t* idx) {
        double m = n_thresholds % 2 == 0 ? 1.0 : 0.0;
        for (std::size_t k = 0; k < n_thresholds; ++k) m += (k % 2 == 0 ? 1.0 : -1.0) * c[idx[k]];
        return std::clamp(m, 0.0, 1.0);
    };

    const Prior& prior = spec.prior();
    OracleResult out;
    out.grid_step = grid_step;
    out.best_mi_bits = -1.0;
    std::size_t best_idx[3] = {0, 0, 0};

    std::size_t idx[3] = {0, 1, 2};
    while (true) {
        const double odd0 = odd_mass(c0, idx);
        const double odd1 = odd_mass(c1, idx);
        const ChannelMatrix odd_zero{odd0, 1.0 - odd1};
        const ChannelMatrix even_zero{1.0 - odd0, odd1};
        for (const auto& [cm, mapping] : {std::pair{odd_zero, Mapping::OddToZero},
                                          std::pair{even_zero, Mapping::EvenToZero}}) {
            const double mi = mutual_information(prior, cm);
            ++out.n_evaluated;
            if (mi > out.best_mi_bits) {
                out.best_mi_bits = mi;
                out.best_mapping = mapping;
                std::copy(idx, idx + 3, best_idx);
            }
        }
        // Next combination in lexicographic order.
        std::size_t pos = n_thresholds;
        while (pos > 0 && idx[pos - 1] == points - n_thresholds + (pos - 1)) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t k = pos; k < n_thresholds; ++k) idx[k] = idx[k - 1] + 1;
    }

    std::vector<double> h;
    for (std::size_t k = 0; k < n_thresholds; ++k) h.push_back(ys[best_idx[k]]);
    out.best_thresholds = ThresholdVector(std::move(h));
    out.best_mi_bits =
        mutual_information(prior, channel_matrix(spec, out.best_thresholds, out.best_mapping));
    return out;
}

struct SweepRow {
    double a = 0.0;
    double f = 0.0;
    double g = 0.0;
    double F = std::numeric_limits<double>::quiet_NaN(); // NaN on degenerate rows
    double mi_bits = 0.0;
    std::size_t n_roots = 0;
    bool degenerate = false;
};

inline std::vector<SweepRow> sweep_a(const ChannelSpec& spec, const std::vector<double>& a_grid,
                                     std::size_t grid_points = kDefaultGridPoints) {
    std::vector<SweepRow> rows;
    rows.reserve(a_grid.size());
    for (double a : a_grid) {
        const auto fn = functionals(spec, a, grid_points);
        SweepRow row;
        row.a = a;
        row.f = fn.f;
        row.g = fn.g;
        row.n_roots = fn.roots.size();
        row.mi_bits = mutual_information(spec.prior(), ChannelMatrix{fn.f, fn.g});
        row.degenerate = is_degenerate(fn.f, fn.g);
        if (!row.degenerate) row.F = stationarity_F(spec.prior(), a, fn.f, fn.g);
        rows.push_back(row);
    }
    return rows;
}

/// {start, start + step, ...} up to stop (inclusive within half a step).
inline std::vector<double> level_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(start <= stop))
        throw std::invalid_argument("level_grid needs step > 0 and start <= stop");
    std::vector<double> out;
    for (std::size_t k = 0;; ++k) {
        const double a = start + static_cast<double>(k) * step;
        if (a > stop + 0.5 * step) break;
        out.push_back(a);
    }
    return out;
}

struct LemmaCheck {
    std::string name;
    bool pass = true;
    double worst_violation = 0.0;
    bool gating = true; // informational checks are reported but do not fail verification
    std::size_t points_checked = 0;
};

struct LemmaReport {
    std::vector<LemmaCheck> checks;

    [[nodiscard]] bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const LemmaCheck& c) { return c.pass || !c.gating; });
    }
    [[nodiscard]] const LemmaCheck& at(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return c;
        throw std::out_of_range("no lemma check named " + name);
    }
};

struct LemmaTolerances {
    double derivative_relative = 1e-3;
    double monotone_slack = 1e-10;
    double sum_slack = 1e-9;
    double a_ge_b_slack = 1e-12;
    double stationarity_slack = 1e-9;
};

/// Numerical checks over a grid of levels:
///  - derivative_relation: f'(a) = -((1-a) p1 / (a p0)) g'(a) by central differences
///  - f_g_monotone:       f non-decreasing, g non-increasing
///  - f_plus_g:           f + g >= 1
///  - a_ge_b:             (p0 f + p1(1-g))(p0(1-f) + p1 g) >= p0 f(1-f) + p1 g(1-g)
///  - F_single_crossing:  F changes sign at most once
///  - F_monotone:         F non-decreasing (informational only)
/// Levels whose channel is degenerate are skipped by the F and derivative checks.
inline LemmaReport lemma_checks(const ChannelSpec& spec, const std::vector<double>& a_grid,
                                double fd_step = 1e-5,
                                std::size_t grid_points = kDefaultGridPoints,
                                const LemmaTolerances& tol = {}) {
    if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be > 0");
    for (double a : a_grid)
        if (!(a - fd_step > kLevelMargin && a + fd_step < 1.0 - kLevelMargin))
            throw std::invalid_argument("a +- fd_step must stay inside (0, 1)");

    const double p0 = spec.prior().p0(), p1 = spec.prior().p1();
    LemmaCheck deriv{"derivative_relation"}, mono{"f_g_monotone"}, sum{"f_plus_g"},
        ab{"a_ge_b"}, crossing{"F_single_crossing"}, fmono{"F_monotone"};
    fmono.gating = false;

    std::vector<double> sorted = a_grid;
    std::sort(sorted.begin(), sorted.end());

    double f_prev = 0.0, g_prev = 0.0;
    double F_prev = std::numeric_limits<double>::quiet_NaN();
    std::size_t sign_changes = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double a = sorted[i];
        const auto fn = functionals(spec, a, grid_points);
        const double f = fn.f, g = fn.g;

        ++sum.points_checked;
        sum.worst_violation = std::max(sum.worst_violation, 1.0 - (f + g));

        const double A = (p0 * f + p1 * (1.0 - g)) * (p0 * (1.0 - f) + p1 * g);
        const double B = p0 * f * (1.0 - f) + p1 * g * (1.0 - g);
        ++ab.points_checked;
        ab.worst_violation = std::max(ab.worst_violation, B - A);

        if (i > 0) {
            ++mono.points_checked;
            mono.worst_violation =
                std::max({mono.worst_violation, f_prev - f, g - g_prev});
        }
        f_prev = f;
        g_prev = g;

        const auto up = functionals(spec, a + fd_step, grid_points);
        const auto down = functionals(spec, a - fd_step, grid_points);
        const double df = (up.f - down.f) / (2.0 * fd_step);
        const double dg = (up.g - down.g) / (2.0 * fd_step);
        const double rhs = -((1.0 - a) * p1 / (a * p0)) * dg;
        const double scale = std::max(std::abs(df), std::abs(rhs));
        if (scale > 1e-9) {
            ++deriv.points_checked;
            deriv.worst_violation = std::max(deriv.worst_violation, std::abs(df - rhs) / scale);
        }

        if (is_degenerate(f, g)) continue;
        const double F = stationarity_F(spec.prior(), a, f, g);
        ++crossing.points_checked;
        ++fmono.points_checked;
        if (!std::isnan(F_prev)) {
            if ((F_prev < 0.0) != (F < 0.0)) ++sign_changes;
            fmono.worst_violation = std::max(fmono.worst_violation, F_prev - F);
        }
        F_prev = F;
    }
    crossing.worst_violation = sign_changes > 1 ? static_cast<double>(sign_changes - 1) : 0.0;

    deriv.pass = deriv.worst_violation <= tol.derivative_relative;
    mono.pass = mono.worst_violation <= tol.monotone_slack;
    sum.pass = sum.worst_violation <= tol.sum_slack;
    ab.pass = ab.worst_violation <= tol.a_ge_b_slack;
    crossing.pass = sign_changes <= 1;
    fmono.pass = fmono.worst_violation <= tol.stationarity_slack;
    return {{deriv, mono, sum, ab, crossing, fmono}};
}

} // namespace biquant
