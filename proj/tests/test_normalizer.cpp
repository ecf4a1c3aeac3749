#include "minsurf/frame_normalizer.hpp"
#include "minsurf/immersion.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace minsurf;

namespace {

// L^3 = offdiag(b), L^4 = diag(b, -b), zero beyond
ShapeOperators canonical_operators(double b, int codim)
{
    ShapeOperators h(codim, Mat2{});
    h[0] = {{{0.0, b}, {b, 0.0}}};
    h[1] = {{{b, 0.0}, {0.0, -b}}};
    return h;
}

double max_diff(ShapeOperators const& a, ShapeOperators const& b)
{
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m = std::max(m, std::fabs(a[k][i][j] - b[k][i][j]));
    return m;
}

} // namespace

TEST(Normalizer, RandomRotationIsSpecialOrthogonal)
{
    std::mt19937_64 rng(1);
    for (int n = 1; n <= 7; ++n) {
        auto const R = random_rotation(n, rng);
        EXPECT_LT((R * R.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_NEAR(R.determinant(), 1.0, 1e-12);
    }
}

TEST(Normalizer, CompleteBasisKeepsTheLeadVector)
{
    Eigen::VectorXd lead(4);
    lead << 0.1, -0.7, 0.2, 0.3;
    lead.normalize();
    auto const B = detail::complete_basis(lead);
    EXPECT_LT((B.row(0).transpose() - lead).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((B * B.transpose() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Normalizer, RecoversCanonicalFormAfterRandomGauge)
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> angle(-3.0, 3.0), scale(0.1, 2.0);
    for (int codim = 2; codim <= 6; ++codim)
        for (int trial = 0; trial < 20; ++trial) {
            double const b = scale(rng);
            auto const h0 = canonical_operators(b, codim);
            auto const h = rotate_normals(rotate_tangent(h0, angle(rng)), random_rotation(codim, rng));
            auto const cf = canonicalize(h);
            ASSERT_EQ(cf.branch, Branch::nowhere_flat);
            EXPECT_LT(cf.residual, 1e-12);
            EXPECT_NEAR(cf.b, b, 1e-12);
            EXPECT_NEAR(cf.b * cf.b, cf.S / 4.0, 1e-12);
            EXPECT_NEAR(cf.S_bar, cf.S / 2.0, 1e-12);
            EXPECT_NEAR(cf.S3, cf.S / 2.0, 1e-12);
            // the composed rotation maps the input onto the reported operators
            EXPECT_LT(max_diff(rotate_normals(h, cf.rotation), cf.transformed), 1e-12);
            EXPECT_LT((cf.rotation * cf.rotation.transpose() - Eigen::MatrixXd::Identity(codim, codim)).cwiseAbs().maxCoeff(),
                      1e-12);
        }
}

TEST(Normalizer, CanonicalOperatorsAreGaugeCovariant)
{
    std::mt19937_64 rng(9);
    auto const pa = analyze_point(make_generalized_veronese(), 1.4, 0.6, 2);
    auto const h = pa.shape.operator_values();
    auto const ref = canonicalize(h);
    for (int t = 0; t < 20; ++t) {
        auto const cf = canonicalize(rotate_normals(h, random_rotation(4, rng)));
        EXPECT_LT(max_diff({cf.transformed[0], cf.transformed[1]}, {ref.transformed[0], ref.transformed[1]}), 1e-12);
        EXPECT_LT(cf.residual, 1e-12);
    }
}

TEST(Normalizer, NonCircularEllipseIsReportedNotHidden)
{
    // star form exists but L^4 = diag(1,-1) does not match b = 0.5
    ShapeOperators h(2, Mat2{});
    h[0] = {{{1.0, 0.0}, {0.0, -1.0}}};
    h[1] = {{{0.0, 0.5}, {0.5, 0.0}}};
    auto const cf = canonicalize(h);
    EXPECT_EQ(cf.branch, Branch::nowhere_flat);
    EXPECT_GT(cf.residual, 0.1);
    auto const star = normalize_star(h);
    ASSERT_TRUE(star.has_value());
    EXPECT_NEAR(star->b, 0.5, 1e-15);
    EXPECT_NEAR(star->transformed[1][0][1], 0.0, 1e-15);
}

TEST(Normalizer, StarFormSignalsTheFlatBranch)
{
    ShapeOperators h(2, Mat2{});
    h[0] = {{{1.0, 0.0}, {0.0, -1.0}}};
    h[1] = {{{0.3, 0.0}, {0.0, -0.3}}};
    EXPECT_FALSE(normalize_star(h).has_value());
    EXPECT_EQ(canonicalize(h).branch, Branch::flat);
}

TEST(Normalizer, FlatDiagonalizationMatchesEigenDecomposition)
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        double const theta = d(rng) * 3.0;
        double const c = std::cos(theta), s = std::sin(theta);
        ShapeOperators h(3, Mat2{});
        for (auto& L : h) {
            double const l1 = d(rng), l2 = d(rng);
            // Q diag(l1, l2) Q^T with Q = [[c, -s], [s, c]]
            L = {{{c * c * l1 + s * s * l2, c * s * (l1 - l2)}, {c * s * (l1 - l2), s * s * l1 + c * c * l2}}};
        }
        auto const fd = diagonalize_flat(h);
        for (std::size_t a = 0; a < h.size(); ++a) {
            Eigen::Matrix2d M;
            M << h[a][0][0], h[a][0][1], h[a][1][0], h[a][1][1];
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
            auto const& T = fd.transformed[a];
            EXPECT_LT(std::fabs(T[0][1]), 1e-12);
            double lo = std::min(T[0][0], T[1][1]), hi = std::max(T[0][0], T[1][1]);
            EXPECT_NEAR(lo, es.eigenvalues()(0), 1e-12);
            EXPECT_NEAR(hi, es.eigenvalues()(1), 1e-12);
        }
        EXPECT_GT(fd.theta, -std::numbers::pi / 4 - 1e-12);
        EXPECT_LE(fd.theta, std::numbers::pi / 4 + 1e-12);
    }
}

TEST(Normalizer, FlatDiagonalizationRejectsNonCommutingInput)
{
    EXPECT_THROW(diagonalize_flat(canonical_operators(1.0, 2)), usage_error);
}

TEST(Normalizer, E4FormRejectsCodimensionOne)
{
    ShapeOperators h(1, Mat2{});
    h[0] = {{{0.0, 1.0}, {1.0, 0.0}}};
    auto const star = normalize_star(h);
    ASSERT_TRUE(star.has_value());
    EXPECT_EQ(normalize_e4(star->transformed).branch, Branch::mixed_rejected);
}

TEST(Normalizer, CanonicalDerivativesNeedCurvature)
{
    auto const pa = analyze_point(make_equator(), 1.0, 1.0, 3);
    auto const cf = canonicalize(pa.shape.operator_values());
    EXPECT_THROW(canonical_derivatives(pa.shape, cf), usage_error);
}
