#include "minsurf/jet.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

using namespace minsurf;

namespace {

using Fn = std::function<double(double, double)>;

// central finite-difference estimate of d^(i+j) f / du^i dv^j
double fd_partial(Fn const& f, double u, double v, int i, int j, double h)
{
    if (i > 0) {
        Fn g = [&](double a, double b) { return fd_partial(f, a, b, i - 1, j, h); };
        return (g(u + h, v) - g(u - h, v)) / (2.0 * h);
    }
    if (j > 0) {
        Fn g = [&](double a, double b) { return fd_partial(f, a, b, 0, j - 1, h); };
        return (g(u, v + h) - g(u, v - h)) / (2.0 * h);
    }
    return f(u, v);
}

Jet2 U(double u, int order = 4) { return seed_variable(Variable::u, u, order); }
Jet2 V(double v, int order = 4) { return seed_variable(Variable::v, v, order); }

} // namespace

TEST(Jet, ReciprocalMatchesClosedFormAndFiniteDifferences)
{
    double const u0 = 0.7, v0 = 0.3;
    Jet2 const r = 1.0 / U(u0);
    double fact = 1.0;
    for (int k = 0; k <= 4; ++k) {
        if (k > 0) fact *= k;
        double const exact = (k % 2 ? -1.0 : 1.0) * fact / std::pow(u0, k + 1);
        EXPECT_NEAR(r.coeff(k, 0), exact, 1e-12 * std::fabs(exact));
    }
    Fn f = [](double u, double) { return 1.0 / u; };
    EXPECT_NEAR(r.coeff(1, 0), fd_partial(f, u0, v0, 1, 0, 1e-5), 1e-7);
    EXPECT_NEAR(r.coeff(2, 0), fd_partial(f, u0, v0, 2, 0, 1e-3), 1e-4);
}

TEST(Jet, CosOfProductMatchesFiniteDifferences)
{
    double const u0 = 0.4, v0 = -1.1;
    Jet2 const c = cos(U(u0) * V(v0));
    Fn f = [](double u, double v) { return std::cos(u * v); };
    EXPECT_DOUBLE_EQ(c.value(), std::cos(u0 * v0));
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; i + j <= 2; ++j) {
            double const h = i + j <= 1 ? 1e-5 : 1e-3;
            EXPECT_NEAR(c.coeff(i, j), fd_partial(f, u0, v0, i, j, h), 1e-5) << i << "," << j;
        }
    // closed form of the mixed partial: -sin(uv) - uv cos(uv)
    EXPECT_NEAR(c.coeff(1, 1), -std::sin(u0 * v0) - u0 * v0 * std::cos(u0 * v0), 1e-14);
    // third-order: d^3/du^3 cos(uv) = v^3 sin(uv)
    EXPECT_NEAR(c.coeff(3, 0), std::pow(v0, 3) * std::sin(u0 * v0), 1e-13);
}

TEST(Jet, PolynomialsAreExact)
{
    double const u0 = 1.3, v0 = -0.6;
    Jet2 const u = U(u0), v = V(v0);
    // p = u^3 v + 2 u v^2 - 5
    Jet2 const p = u * u * u * v + 2.0 * u * v * v - 5.0;
    EXPECT_NEAR(p.value(), u0 * u0 * u0 * v0 + 2 * u0 * v0 * v0 - 5, 1e-14);
    EXPECT_NEAR(p.coeff(1, 0), 3 * u0 * u0 * v0 + 2 * v0 * v0, 1e-13);
    EXPECT_NEAR(p.coeff(0, 1), u0 * u0 * u0 + 4 * u0 * v0, 1e-13);
    EXPECT_NEAR(p.coeff(2, 1), 6 * u0, 1e-13);
    EXPECT_NEAR(p.coeff(1, 2), 4.0, 1e-13);
    EXPECT_NEAR(p.coeff(3, 1), 6.0, 1e-13);
    EXPECT_NEAR(p.coeff(2, 2), 0.0, 1e-13);
    EXPECT_NEAR(p.coeff(0, 4), 0.0, 1e-13);
}

TEST(Jet, RingAxiomsHoldOnRandomJets)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    auto random_jet = [&] {
        Jet2 j = Jet2::constant(0.0, 4);
        for (int t = 0; t <= 4; ++t)
            for (int k = 0; k <= t; ++k) j.set_coeff(t - k, k, d(rng));
        return j;
    };
    for (int trial = 0; trial < 50; ++trial) {
        Jet2 const a = random_jet(), b = random_jet(), c = random_jet();
        EXPECT_LT(max_abs_diff(a * b, b * a), 1e-12);
        EXPECT_LT(max_abs_diff((a * b) * c, a * (b * c)), 1e-10);
        EXPECT_LT(max_abs_diff(a * (b + c), a * b + a * c), 1e-11);
        if (std::fabs(b.value()) > 0.3) {
            EXPECT_LT(max_abs_diff((a / b) * b, a), 1e-8);
        }
    }
}

TEST(Jet, TrigIdentityAndExpSqrt)
{
    Jet2 const x = U(0.9) * V(0.4) + U(0.9);
    Jet2 const one = sin(x) * sin(x) + cos(x) * cos(x);
    EXPECT_LT(max_abs_diff(one, Jet2::constant(1.0, 4)), 1e-13);
    Jet2 const y = exp(U(0.2) - V(0.5));
    EXPECT_LT(max_abs_diff(exp(-1.0 * (U(0.2) - V(0.5))) * y, Jet2::constant(1.0, 4)), 1e-13);
    Jet2 const s = sqrt(U(2.0) + V(0.3) * V(0.3));
    EXPECT_LT(max_abs_diff(s * s, U(2.0) + V(0.3) * V(0.3)), 1e-13);
    EXPECT_LT(max_abs_diff(powi(x, 3), x * x * x), 1e-12);
    EXPECT_LT(max_abs_diff(apply_unary(UnaryFunction::powi, x, 2), x * x), 1e-12);
}

TEST(Jet, PartialLowersOrderAndTruncateIsExplicit)
{
    Jet2 const p = sin(U(0.3) * V(1.2));
    Jet2 const pu = partial(p, Variable::u);
    EXPECT_EQ(pu.order(), 3);
    EXPECT_DOUBLE_EQ(pu.value(), p.coeff(1, 0));
    EXPECT_DOUBLE_EQ(pu.coeff(1, 1), p.coeff(2, 1));
    Jet2 const t = truncate(p, 2);
    EXPECT_EQ(t.order(), 2);
    EXPECT_DOUBLE_EQ(t.coeff(3, 0), 0.0);
    EXPECT_DOUBLE_EQ(t.coeff(2, 0), p.coeff(2, 0));
}

TEST(Jet, ErrorsAreTyped)
{
    EXPECT_THROW(Jet2::constant(1.0, 5), config_error);
    EXPECT_THROW(Jet2::constant(1.0, -1), config_error);
    EXPECT_THROW(U(1.0, 3) + U(1.0, 4), usage_error);
    EXPECT_THROW(U(1.0, 3) * V(1.0, 2), usage_error);
    EXPECT_THROW(U(1.0) / (U(0.5) - 0.5), singularity_error);
    EXPECT_THROW(sqrt(U(0.0)), singularity_error);
    EXPECT_THROW(sqrt(U(-1.0)), singularity_error);
}
