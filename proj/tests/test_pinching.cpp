#include "minsurf/pinching.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace minsurf;

namespace {

SurfaceSummary constant_summary(double K, double KN, double S, BundleType branch)
{
    return {K, K, KN, KN, S, S, branch, 100};
}

} // namespace

TEST(Pinching, DocumentedExamples)
{
    auto const v = classify(constant_summary(1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, BundleType::nowhere_flat));
    EXPECT_EQ(v.verdict, Verdict::VeroneseS4);
    EXPECT_TRUE(v.kn_le_2k);
    EXPECT_FALSE(v.rule.empty());

    auto const c = classify(constant_summary(0.0, 0.0, 2.0, BundleType::flat));
    EXPECT_EQ(c.verdict, Verdict::CliffordTorus);

    auto const s4 = classify(constant_summary(0.1, 0.9, 1.8, BundleType::nowhere_flat));
    EXPECT_EQ(s4.label(), "CalabiStandard(4)");
    EXPECT_TRUE(s4.asserted_only);

    auto const g = classify(constant_summary(1.0 / 6.0, 5.0 / 6.0, 5.0 / 3.0, BundleType::nowhere_flat));
    EXPECT_EQ(g.verdict, Verdict::GeneralizedVeroneseS6);
    EXPECT_TRUE(g.kn_between_2k_5k);

    EXPECT_EQ(classify(constant_summary(1.0, 0.0, 0.0, BundleType::flat)).verdict, Verdict::GeodesicSphere);
}

TEST(Pinching, KnWindowsReproduceVerdictsWhenSIsOutOfReach)
{
    // S range outside every S window, K^N pinned to 5/6 with K > 0
    SurfaceSummary s{0.1, 0.2, 5.0 / 6.0, 5.0 / 6.0, 1.0, 1.9, BundleType::nowhere_flat, 10};
    auto const c = classify(s);
    EXPECT_EQ(c.verdict, Verdict::GeneralizedVeroneseS6);
    EXPECT_EQ(c.rule, "KN_window[2/3,5/6]:KN=5/6");
}

TEST(Pinching, MixedAndMalformedInputs)
{
    auto const m = classify(constant_summary(1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0, BundleType::mixed));
    EXPECT_EQ(m.verdict, Verdict::Indeterminate);
    EXPECT_FALSE(m.note.empty());
    EXPECT_THROW(classify(constant_summary(0.5, -0.1, 1.0, BundleType::nowhere_flat)), usage_error);
    SurfaceSummary inv{0.5, 0.4, 0.1, 0.2, 1.0, 1.1, BundleType::nowhere_flat, 3};
    EXPECT_THROW(classify(inv), usage_error);
    EXPECT_THROW(classify(constant_summary(0.1, 0.9, 1.8, BundleType::nowhere_flat), -1.0), usage_error);
}

TEST(Pinching, ConstantKnThatMatchesNoDegreeIsIndeterminate)
{
    auto const c = classify(constant_summary(0.2, 0.8, 1.6 + 0.01, BundleType::nowhere_flat));
    EXPECT_EQ(c.verdict, Verdict::Indeterminate);
}

TEST(Pinching, RoundTripThroughSummaries)
{
    std::vector<std::pair<ImmersionSpec, std::string>> cases{
        {make_equator(), "GeodesicSphere"},           {make_clifford_torus(), "CliffordTorus"},
        {make_veronese(), "VeroneseS4"},              {make_generalized_veronese(), "GeneralizedVeroneseS6"},
        {build_calabi(4), "CalabiStandard(4)"},       {build_calabi(5), "CalabiStandard(5)"}};
    for (auto const& [spec, label] : cases) {
        auto const sum = summarize(spec, Grid::for_spec(spec));
        EXPECT_EQ(sum.n_points, 100);
        EXPECT_EQ(classify(sum).label(), label) << spec.name;
    }
    auto const ver = summarize(make_veronese(), Grid::for_spec(make_veronese()));
    EXPECT_NEAR(ver.KN_min, 2.0 / 3.0, 1e-8);
    EXPECT_NEAR(ver.KN_max, 2.0 / 3.0, 1e-8);
    EXPECT_EQ(ver.branch, BundleType::nowhere_flat);
    auto const eq = summarize(make_equator(), Grid::for_spec(make_equator()));
    EXPECT_LE(eq.S_max, 1e-9);
}

TEST(Pinching, ScaledOperatorsAreIndeterminate)
{
    // the equator has zero operators, so scaling cannot perturb it
    for (auto const& spec : {make_clifford_torus(), make_veronese(), make_generalized_veronese(), build_calabi(4)}) {
        auto const sum = summarize(spec, Grid::for_spec(spec), 1.1);
        EXPECT_EQ(classify(sum).verdict, Verdict::Indeterminate) << spec.name;
    }
}

TEST(Pinching, EnlargingToleranceNeverLosesAVerdict)
{
    std::mt19937_64 rng(2024);
    std::vector<double> anchors{0.0, 4.0 / 3.0, 5.0 / 3.0, 1.8, 2.0};
    std::uniform_int_distribution<int> pick(0, static_cast<int>(anchors.size()) - 1);
    std::uniform_real_distribution<double> jitter(-1e-5, 1e-5);
    std::vector<double> tols{1e-9, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3};
    int decided = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        double const S0 = anchors[pick(rng)];
        double const a = S0 + jitter(rng), b = S0 + jitter(rng);
        double const Smin = std::max(0.0, std::min(a, b)), Smax = std::max(0.0, std::max(a, b));
        double const K0 = 1.0 - S0 / 2.0;
        bool const flat = S0 == 0.0 || S0 == 2.0;
        double const KN0 = flat ? 0.0 : 1.0 - K0;
        double const k1 = K0 + jitter(rng), k2 = K0 + jitter(rng);
        double const n1 = std::max(0.0, KN0 + jitter(rng)), n2 = std::max(0.0, KN0 + jitter(rng));
        SurfaceSummary s{std::min(k1, k2), std::max(k1, k2), std::min(n1, n2), std::max(n1, n2), Smin, Smax,
                         flat ? BundleType::flat : BundleType::nowhere_flat, 1};
        bool seen = false;
        for (double t : tols) {
            bool const specific = classify(s, t).verdict != Verdict::Indeterminate;
            if (seen) {
                EXPECT_TRUE(specific) << "lost verdict at tol " << t;
            }
            seen = seen || specific;
        }
        decided += seen;
    }
    EXPECT_GT(decided, 1000);
}

TEST(Pinching, SimonWindows)
{
    auto w = simon_window(0.0);
    EXPECT_EQ(w.s, 1);
    EXPECT_DOUBLE_EQ(w.lower, 0.0);
    EXPECT_NEAR(w.upper, 4.0 / 3.0, 1e-15);
    w = simon_window(1.5);
    EXPECT_EQ(w.s, 2);
    EXPECT_NEAR(w.lower, 4.0 / 3.0, 1e-15);
    EXPECT_NEAR(w.upper, 5.0 / 3.0, 1e-15);
    w = simon_window(calabi_squared_norm(2));
    EXPECT_EQ(w.s, 1); // boundary values belong to the lower window
    EXPECT_NEAR(w.upper, 4.0 / 3.0, 1e-15);
    EXPECT_THROW(simon_window(2.0), domain_error);
    EXPECT_THROW(simon_window(-0.1), usage_error);
}

TEST(Pinching, WindowEndpointsSatisfyTheGaussRelationExactly)
{
    // S(s) = 2(s-1)(s+2)/(s(s+1)) and 2 - 2K(s) = (2s(s+1) - 4)/(s(s+1)): equal numerators over s(s+1)
    for (long long s = 1; s <= 100000; ++s) ASSERT_EQ(2 * (s - 1) * (s + 2), 2 * s * (s + 1) - 4) << s;
}
