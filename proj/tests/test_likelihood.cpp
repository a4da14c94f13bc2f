#include <gtest/gtest.h>

#include <random>

#include "biquant/likelihood.hpp"
#include "channels.hpp"

using namespace biquant;
using biquant::testing::example1;
using biquant::testing::example2;
using biquant::testing::fig5;
using biquant::testing::identical;

namespace {

// r(h) at the printed Example 2 thresholds, and the exact roots of
// u(y) = 0.412 (closed-form quadratic in y).
constexpr double kExample2RatioAtPrinted = 1.4271515687031929529;
constexpr double kExample2RootLo = -0.53741414221934191308;
constexpr double kExample2RootHi = 3.5374141422193419131;

// Roots of u(y) = 1/2 for the three-component mixture, from a 60-digit solve.
constexpr double kFig5Roots[] = {-3.67620497132141, -2.36920473829522, -0.60255432177579,
                                 0.74048456188396,  2.35213001235863,  3.76016262940697};

// Roots of u(y) = a for two Gaussians, by solving the quadratic
// ln(p0 phi0) - ln(p1 phi1) = ln((1 - a) / a).
std::vector<double> quadratic_roots(double p0, double m0, double s0, double m1, double s1,
                                    double a) {
    const double qa = 1.0 / (2 * s1 * s1) - 1.0 / (2 * s0 * s0);
    const double qb = m0 / (s0 * s0) - m1 / (s1 * s1);
    const double qc = m1 * m1 / (2 * s1 * s1) - m0 * m0 / (2 * s0 * s0) +
                      std::log(p0 / (1 - p0)) + std::log(s1 / s0) - std::log((1 - a) / a);
    if (std::abs(qa) < 1e-14) return {-qc / qb};
    const double disc = qb * qb - 4 * qa * qc;
    if (disc <= 0) return {};
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (qb + std::copysign(sq, qb));
    double r1 = q / qa, r2 = qc / q;
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

} // namespace

TEST(Ratio, Example2AtPrintedThresholds) {
    const auto spec = example2();
    EXPECT_NEAR(ratio(spec, -0.5374), kExample2RatioAtPrinted, 1e-13);
    EXPECT_NEAR(ratio(spec, 3.5374), kExample2RatioAtPrinted, 1e-13);
    EXPECT_NEAR(posterior_a(spec, -0.5374), 0.412, 2e-5);
}

TEST(Ratio, Example1IsExponential) {
    const auto spec = example1();
    for (double y : {-3.0, -0.5, 0.0, 1.0, 4.0}) EXPECT_NEAR(log_ratio(spec, y), -2.0 * y, 1e-13);
    EXPECT_DOUBLE_EQ(posterior_a(spec, 0.0), 0.5);
}

TEST(Ratio, Example2PosteriorSmallAtDomainEdges) {
    const auto spec = example2();
    EXPECT_LT(posterior_a(spec, spec.search_lo()), 0.01);
    EXPECT_LT(posterior_a(spec, spec.search_hi()), 0.01);
}

TEST(Ratio, LevelAndRatioAreOneToOne) {
    for (double p0 : {0.2, 0.5, 0.8}) {
        const ChannelSpec spec(Prior(p0), DensityModel::normal(-1.0, 2.0),
                               DensityModel::normal(0.5, 1.0));
        for (double y : {-4.0, -1.0, 0.3, 2.0}) {
            const double a = posterior_a(spec, y);
            EXPECT_NEAR(ratio_for_level(spec.prior(), a) / ratio(spec, y), 1.0, 1e-12);
        }
    }
}

TEST(ChannelSpec, DefaultDomainAndValidation) {
    const auto spec = example2();
    EXPECT_DOUBLE_EQ(spec.search_lo(), -1.0 - 10.0 * std::sqrt(5.0));
    EXPECT_DOUBLE_EQ(spec.search_hi(), 1.0 + 10.0 * std::sqrt(5.0));
    EXPECT_EQ(spec.grid_point(0, 10), spec.search_lo());
    EXPECT_EQ(spec.grid_point(9, 10), spec.search_hi());
    EXPECT_THROW(ChannelSpec(Prior(0.5), DensityModel::normal(0, 1), DensityModel::normal(0, 1),
                             -5.0, 20.0),
                 std::invalid_argument);
    EXPECT_THROW(ChannelSpec(Prior(0.5), DensityModel::normal(0, 1), DensityModel::normal(0, 1),
                             3.0, -3.0),
                 std::invalid_argument);
    EXPECT_NO_THROW(ChannelSpec(Prior(0.5), DensityModel::normal(0, 1),
                                DensityModel::normal(0, 1), -20.0, 20.0));
}

TEST(Monotonicity, ReferenceChannels) {
    EXPECT_EQ(classify_monotonicity(example1()).kind, Monotonicity::StrictlyDecreasing);
    EXPECT_EQ(classify_monotonicity(example2()).kind, Monotonicity::NonMonotonic);
    EXPECT_EQ(classify_monotonicity(fig5()).kind, Monotonicity::NonMonotonic);
    const ChannelSpec up(Prior(0.5), DensityModel::normal(2.0, 1.0), DensityModel::normal(-2.0, 1.0));
    EXPECT_EQ(classify_monotonicity(up).kind, Monotonicity::StrictlyIncreasing);
    EXPECT_TRUE(classify_monotonicity(up).strict());

    const auto flat = classify_monotonicity(identical());
    EXPECT_TRUE(flat.flat);
    EXPECT_FALSE(flat.strict());
    EXPECT_THROW(classify_monotonicity(example1(), 10), std::invalid_argument);
}

TEST(LogConcavity, TranslatesAndNonTranslates) {
    const auto v1 = check_log_concavity_shift(example1());
    EXPECT_TRUE(v1.shift_detected);
    EXPECT_NEAR(v1.mu, 2.0, 1e-12);
    EXPECT_TRUE(v1.log_concave);
    EXPECT_FALSE(v1.log_convex);

    EXPECT_FALSE(check_log_concavity_shift(example2()).shift_detected);
    EXPECT_FALSE(check_log_concavity_shift(fig5()).shift_detected);

    // A shifted bimodal mixture is a translate but neither log-concave nor log-convex.
    const DensityModel base({{-2.0, 0.5, 0.5}, {2.0, 0.5, 0.5}});
    const DensityModel moved({{-1.0, 0.5, 0.5}, {3.0, 0.5, 0.5}});
    const auto v = check_log_concavity_shift(ChannelSpec(Prior(0.5), base, moved));
    EXPECT_TRUE(v.shift_detected);
    EXPECT_NEAR(v.mu, 1.0, 1e-12);
    EXPECT_FALSE(v.log_concave);
    EXPECT_FALSE(v.log_convex);
}

TEST(LevelSet, Example1SingleRoot) {
    const auto ls = find_level_set(example1(), 0.5);
    ASSERT_EQ(ls.roots.size(), 1u);
    EXPECT_NEAR(ls.roots[0], 0.0, 1e-15);
    // u = a at y = 0.5 ln(a / (1 - a))
    const auto ls2 = find_level_set(example1(), 0.8);
    ASSERT_EQ(ls2.roots.size(), 1u);
    EXPECT_NEAR(ls2.roots[0], 0.5 * std::log(4.0), 1e-14);
}

TEST(LevelSet, Example2MatchesClosedForm) {
    const auto ls = find_level_set(example2(), 0.412);
    ASSERT_EQ(ls.roots.size(), 2u);
    EXPECT_NEAR(ls.roots[0], kExample2RootLo, 1e-13);
    EXPECT_NEAR(ls.roots[1], kExample2RootHi, 1e-13);
    EXPECT_EQ(ls.brackets.size(), 2u);
    EXPECT_TRUE(ls.tangent_cells.empty());
}

TEST(LevelSet, Example2AboveSupremumIsEmpty) {
    EXPECT_TRUE(find_level_set(example2(), 0.8).roots.empty());
}

TEST(LevelSet, Fig5HasSixRoots) {
    const auto ls = find_level_set(fig5(), 0.5);
    ASSERT_EQ(ls.roots.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(ls.roots[i], kFig5Roots[i], 1e-12) << i;
}

TEST(LevelSet, RejectsLevelsOutsideOpenInterval) {
    EXPECT_THROW(find_level_set(example1(), 0.0), std::invalid_argument);
    EXPECT_THROW(find_level_set(example1(), 1.0), std::invalid_argument);
    EXPECT_THROW(find_level_set(example1(), NAN), std::invalid_argument);
}

TEST(LevelSetProperties, RootsSitOnTheLevel) {
    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto spec = fig5();
        const auto ls = find_level_set(spec, a);
        for (double h : ls.roots) {
            EXPECT_NEAR(ratio(spec, h) / ratio_for_level(spec.prior(), a), 1.0, 1e-10)
                << "a=" << a << " h=" << h;
        }
    }
}

TEST(LevelSetProperties, RefiningTheGridKeepsTheRoots) {
    const auto spec = fig5();
    for (double a : {0.2, 0.5, 0.65}) {
        const auto coarse = find_level_set(spec, a, 4096);
        const auto fine = find_level_set(spec, a, 32768);
        ASSERT_EQ(coarse.roots.size(), fine.roots.size()) << a;
        for (std::size_t i = 0; i < coarse.roots.size(); ++i)
            EXPECT_NEAR(coarse.roots[i], fine.roots[i], 1e-12);
    }
}

TEST(LevelSetProperties, RandomGaussianPairsMatchQuadratic) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> mean(-3, 3), sd(0.5, 3), prior(0.2, 0.8), level(0.05, 0.95);
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const double p0 = prior(rng), m0 = mean(rng), m1 = mean(rng), s0 = sd(rng), s1 = sd(rng);
        const double a = level(rng);
        const ChannelSpec spec(Prior(p0), DensityModel::normal(m0, s0), DensityModel::normal(m1, s1));
        auto expected = quadratic_roots(p0, m0, s0, m1, s1, a);
        std::erase_if(expected, [&](double y) { return y < spec.search_lo() || y > spec.search_hi(); });
        const auto ls = find_level_set(spec, a, 1 << 15);
        // Roots closer than a grid cell can merge into a tangency; skip those.
        if (expected.size() == 2 && expected[1] - expected[0] < 1e-2) continue;
        ASSERT_EQ(ls.roots.size(), expected.size()) << "trial " << trial;
        for (std::size_t i = 0; i < expected.size(); ++i)
            EXPECT_NEAR(ls.roots[i], expected[i], 1e-9 * std::max(1.0, std::abs(expected[i])));
        ++compared;
    }
    EXPECT_GT(compared, 250);
}

TEST(LevelSetProperties, TangentLevelIsReported) {
    // For equal means, u peaks at the common mean. At exactly that level the
    // posterior touches a without crossing.
    const ChannelSpec spec(Prior(0.5), DensityModel::normal(0.0, 2.0), DensityModel::normal(0.0, 1.0));
    const double peak = posterior_a(spec, 0.0);
    const auto ls = find_level_set(spec, peak, 4097);
    EXPECT_LE(ls.roots.size(), 2u);
    for (double h : ls.roots) EXPECT_NEAR(h, 0.0, 1e-5);
    // Slightly above the peak nothing crosses.
    EXPECT_TRUE(find_level_set(spec, peak + 1e-6).roots.empty());
}
