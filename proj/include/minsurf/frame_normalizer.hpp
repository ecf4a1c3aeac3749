// SPDX-License-Identifier: Apache-2.0
/**
    \file
    \brief normal-frame rotations that bring shape operators of a minimal surface to canonical form

    Shape operators are passed as 2x2 matrices, one per unit normal. A normal rotation R acts as
    h'^a = sum_b R(a, b) h^b; row a of R holds the new normal e'_a in the old normal basis.

    Nowhere-flat branch: first rotate so e_3 points along the off-diagonal vector (h^a_12)_a, leaving
    h^b_12 = 0 for b >= 4; then rotate e_4 .. e_n so e_4 points along (h^b_11)_{b>=4}. For the minimal surfaces of
    positive curvature in the catalog this yields L^3 = [[0, b], [b, 0]], L^4 = diag(b, -b), L^b = 0 beyond,
    with b^2 = S/4.

    Flat branch: all operators commute, and one tangent rotation diagonalizes them simultaneously.
*/
#pragma once

#include "minsurf/error.hpp"
#include "minsurf/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace minsurf {

using ShapeOperators = std::vector<Mat2>;

enum class Branch
{
    flat,
    nowhere_flat,
    mixed_rejected
};

inline char const* to_string(Branch b) noexcept
{
    switch (b) {
    case Branch::flat: return "flat";
    case Branch::nowhere_flat: return "nowhere_flat";
    case Branch::mixed_rejected: return "mixed_rejected";
    }
    return "unknown";
}

namespace detail {

inline double squared_norm(ShapeOperators const& h)
{
    double s = 0.0;
    for (auto const& L : h)
        for (auto const& row : L)
            for (double x : row) s += x * x;
    return s;
}

inline double flatness_threshold(double tol, ShapeOperators const& h) { return tol * std::max(1.0, squared_norm(h)); }

/**
    Orthonormal basis whose first vector is `lead` (unit length expected). The remaining vectors come from the
    standard basis: each step takes the candidate with the largest residual against the vectors already chosen,
    the lowest index winning ties, and orthonormalizes it with two Gram-Schmidt passes. Rows of the result are
    the basis vectors.
*/
inline Eigen::MatrixXd complete_basis(Eigen::VectorXd const& lead)
{
    Eigen::Index const n = lead.size();
    Eigen::MatrixXd R(n, n);
    R.row(0) = lead.transpose();
    std::vector<bool> used(n, false);
    for (Eigen::Index row = 1; row < n; ++row) {
        Eigen::Index best = -1;
        double best_norm = -1.0;
        for (Eigen::Index c = 0; c < n; ++c) {
            if (used[c]) continue;
            Eigen::VectorXd r = Eigen::VectorXd::Unit(n, c);
            for (Eigen::Index p = 0; p < row; ++p) r -= R.row(p).dot(r) * R.row(p).transpose();
            if (r.squaredNorm() > best_norm) {
                best_norm = r.squaredNorm();
                best = c;
            }
        }
        used[best] = true;
        Eigen::VectorXd r = Eigen::VectorXd::Unit(n, best);
        for (int pass = 0; pass < 2; ++pass)
            for (Eigen::Index p = 0; p < row; ++p) r -= R.row(p).dot(r) * R.row(p).transpose();
        R.row(row) = r.normalized().transpose();
    }
    return R;
}

} // namespace detail

inline ShapeOperators rotate_normals(ShapeOperators const& h, Eigen::MatrixXd const& R)
{
    int const c = static_cast<int>(h.size());
    ShapeOperators out(c, Mat2{});
    for (int a = 0; a < c; ++a)
        for (int b = 0; b < c; ++b)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) out[a][i][j] += R(a, b) * h[b][i][j];
    return out;
}

/// rotate the tangent frame by theta: e'_1 = cos e_1 + sin e_2, e'_2 = -sin e_1 + cos e_2
inline ShapeOperators rotate_tangent(ShapeOperators const& h, double theta)
{
    double const c = std::cos(theta), s = std::sin(theta);
    double const T[2][2] = {{c, s}, {-s, c}};
    ShapeOperators out(h.size(), Mat2{});
    for (std::size_t a = 0; a < h.size(); ++a)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q) out[a][i][j] += T[i][p] * T[j][q] * h[a][p][q];
    return out;
}

/// Haar-distributed rotation of R^n (determinant +1), from the QR factorization of a Gaussian matrix
inline Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng)
{
    if (n < 1) throw usage_error("random_rotation: dimension must be positive");
    std::normal_distribution<double> normal;
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::MatrixXd const Rf = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j)
        if (Rf(j, j) < 0.0) Q.col(j) *= -1.0;
    if (Q.determinant() < 0.0) Q.col(0) *= -1.0;
    return Q;
}

// --------------------------------------------------------------------------------------------------------------------
// first reduction: e_3 along the off-diagonal vector
// --------------------------------------------------------------------------------------------------------------------

struct StarForm
{
    Eigen::MatrixXd rotation;
    ShapeOperators transformed;
    double b = 0.0; // transformed h^3_12 = |(h^a_12)_a|
};

/// std::nullopt signals the flat branch: the off-diagonal vector is below tol * max(1, S)
inline std::optional<StarForm> normalize_star(ShapeOperators const& h, double tol = 1e-8)
{
    int const c = static_cast<int>(h.size());
    if (c == 0) return std::nullopt;
    Eigen::VectorXd e(c);
    for (int a = 0; a < c; ++a) e(a) = h[a][0][1];
    double const len = e.norm();
    if (len <= detail::flatness_threshold(tol, h)) return std::nullopt;

    StarForm out;
    out.rotation = detail::complete_basis(e / len);
    out.transformed = rotate_normals(h, out.rotation);
    out.b = out.transformed[0][0][1];
    return out;
}

// --------------------------------------------------------------------------------------------------------------------
// canonical form
// --------------------------------------------------------------------------------------------------------------------

struct CanonicalForm
{
    Eigen::MatrixXd rotation; // composed normal rotation applied to the input operators
    double tangent_rotation = 0.0;
    double b = 0.0;
    double lambda3 = 0.0;
    double lambda4 = 0.0;
    double residual = 0.0;
    Branch branch = Branch::mixed_rejected;
    double S = 0.0;
    double S_bar = 0.0; // sum over normals past e_3
    double S3 = 0.0;
    ShapeOperators transformed;
};

namespace detail {

inline void fill_split_norms(CanonicalForm& cf)
{
    cf.S = squared_norm(cf.transformed);
    cf.S3 = cf.transformed.empty() ? 0.0 : squared_norm(ShapeOperators{cf.transformed.front()});
    cf.S_bar = cf.S - cf.S3;
}

} // namespace detail

/**
    Second reduction, applied to operators already in star form: e_4 along (h^b_11)_{b>=4}, with the rest of the
    normal frame completed by the pivot rule. The residual is the largest deviation from the canonical shape
    (|h^3_11|, |h^3_22|, |h^4 - diag(b, -b)|, |L^b| for b >= 5, |b^2 - S/4|).
*/
inline CanonicalForm normalize_e4(ShapeOperators const& star, double tol = 1e-8)
{
    CanonicalForm cf;
    int const c = static_cast<int>(star.size());
    cf.rotation = Eigen::MatrixXd::Identity(c, c);
    cf.transformed = star;
    detail::fill_split_norms(cf);
    if (c == 0) {
        cf.branch = Branch::mixed_rejected;
        return cf;
    }
    cf.b = star[0][0][1];
    cf.lambda3 = star[0][0][0];

    Eigen::VectorXd lam(c - 1);
    for (int a = 1; a < c; ++a) lam(a - 1) = star[a][0][0];
    double const len = lam.norm();
    if (c < 2 || len <= detail::flatness_threshold(tol, star)) {
        cf.branch = Branch::mixed_rejected;
        cf.residual = std::fabs(cf.b * cf.b - cf.S / 4.0);
        return cf;
    }
    cf.rotation.bottomRightCorner(c - 1, c - 1) = detail::complete_basis(lam / len);
    cf.transformed = rotate_normals(star, cf.rotation);
    cf.lambda4 = cf.transformed[1][0][0];
    cf.branch = Branch::nowhere_flat;
    detail::fill_split_norms(cf);

    auto const& L3 = cf.transformed[0];
    auto const& L4 = cf.transformed[1];
    double r = std::max({std::fabs(L3[0][0]), std::fabs(L3[1][1]), std::fabs(L4[0][0] - cf.b),
                         std::fabs(L4[1][1] + cf.b), std::fabs(L4[0][1]), std::fabs(L4[1][0]),
                         std::fabs(cf.b * cf.b - cf.S / 4.0), std::fabs(std::fabs(cf.lambda4) - cf.b)});
    for (int a = 2; a < c; ++a)
        for (auto const& row : cf.transformed[a])
            for (double x : row) r = std::max(r, std::fabs(x));
    cf.residual = r;
    return cf;
}

struct FlatDiagonalization
{
    double theta = 0.0;
    ShapeOperators transformed;
};

/// largest |R_{ab12}| over normal pairs; the commutator [L^a, L^b] has entries +-R_{ab12}
inline double max_commutator(ShapeOperators const& h)
{
    double worst = 0.0;
    for (std::size_t a = 0; a < h.size(); ++a)
        for (std::size_t b = a + 1; b < h.size(); ++b)
            worst = std::max(worst, std::fabs(normal_tensor_value(h, static_cast<int>(a), static_cast<int>(b))));
    return worst;
}

/**
    Single tangent rotation angle in (-pi/4, pi/4] that makes every h^a_12 vanish. The angle is taken from the
    operator with the largest traceless part; all-umbilic (in particular all-zero) input gives theta = 0.
*/
inline FlatDiagonalization diagonalize_flat(ShapeOperators const& h, double tol = 1e-8)
{
    double const threshold = detail::flatness_threshold(tol, h);
    double const comm = max_commutator(h);
    if (comm > threshold)
        throw usage_error("diagonalize_flat: shape operators do not commute (largest commutator entry " +
                          std::to_string(comm) + ")");
    double best = 0.0;
    int pick = -1;
    for (std::size_t a = 0; a < h.size(); ++a) {
        double const half_diff = 0.5 * (h[a][0][0] - h[a][1][1]);
        double const aniso = std::hypot(half_diff, h[a][0][1]);
        if (aniso > best) {
            best = aniso;
            pick = static_cast<int>(a);
        }
    }
    FlatDiagonalization out;
    if (pick >= 0 && best > threshold) {
        auto const& L = h[pick];
        double theta = 0.5 * std::atan2(2.0 * L[0][1], L[0][0] - L[1][1]);
        double const quarter = std::numbers::pi / 4.0;
        if (theta > quarter) theta -= 2.0 * quarter;
        if (theta <= -quarter) theta += 2.0 * quarter;
        out.theta = theta;
    }
    out.transformed = rotate_tangent(h, out.theta);
    return out;
}

/**
    Full pipeline at one point. Flat points (all R_{ab12} below tol * max(1, S)) go through diagonalize_flat and
    report branch flat with b = 0; all others through the two normal rotations.
*/
inline CanonicalForm canonicalize(ShapeOperators const& h, double tol = 1e-8)
{
    int const c = static_cast<int>(h.size());
    if (max_commutator(h) <= detail::flatness_threshold(tol, h)) {
        auto const flat = diagonalize_flat(h, tol);
        CanonicalForm cf;
        cf.rotation = Eigen::MatrixXd::Identity(c, c);
        cf.tangent_rotation = flat.theta;
        cf.transformed = flat.transformed;
        cf.branch = Branch::flat;
        detail::fill_split_norms(cf);
        if (c > 0) cf.lambda3 = cf.transformed[0][0][0];
        double r = 0.0;
        for (auto const& L : cf.transformed) r = std::max(r, std::fabs(L[0][1]));
        cf.residual = r;
        return cf;
    }
    auto const star = normalize_star(h, tol);
    if (!star) {
        CanonicalForm cf;
        cf.rotation = Eigen::MatrixXd::Identity(c, c);
        cf.transformed = h;
        cf.branch = Branch::mixed_rejected;
        detail::fill_split_norms(cf);
        return cf;
    }
    CanonicalForm cf = normalize_e4(star->transformed, tol);
    cf.rotation = cf.rotation * star->rotation;
    return cf;
}

// --------------------------------------------------------------------------------------------------------------------
// derivatives in the canonical frame
// --------------------------------------------------------------------------------------------------------------------

struct CanonicalDerivatives
{
    // lambda[a][k] = h^a_11k and lambda2[a][k][l] = h^a_11kl, normals in the canonical frame
    std::vector<std::array<double, 2>> lambda;
    std::vector<Mat2> lambda2;
    bool has_second = false;
    // residuals of the gradient relations and, with second derivatives, of the Hessian relations
    std::vector<std::pair<std::string, double>> first_order;
    std::vector<std::pair<std::string, double>> second_order;

    double max_first() const
    {
        double m = 0.0;
        for (auto const& [_, r] : first_order) m = std::max(m, r);
        return m;
    }

    double max_second() const
    {
        double m = 0.0;
        for (auto const& [_, r] : second_order) m = std::max(m, r);
        return m;
    }
};

/**
    Rotates h_ijk (and h_ijkl when present) into the canonical normal frame and evaluates

        lambda^3_1 = -lambda^4_2 = -S_2 / (4 sqrt S),  lambda^3_2 = lambda^4_1 = S_1 / (4 sqrt S)

    and, with second derivatives and the covariant Hessian S_kl,

        lambda^3_11 = -lambda^4_21 = -S_21 / (4 sqrt S)       lambda^3_12 = -lambda^4_22 = -(S_22 - P) / (4 sqrt S)
        lambda^3_22 =  lambda^4_12 =  S_12 / (4 sqrt S)       lambda^3_21 =  lambda^4_11 =  (S_11 - P) / (4 sqrt S)
*/
inline CanonicalDerivatives canonical_derivatives(ShapeData const& sd, CanonicalForm const& cf,
                                                  std::optional<Mat2> const& hessian = std::nullopt)
{
    if (!sd.has_h1()) throw usage_error("canonical_derivatives: covariant derivatives h_ijk are required");
    if (cf.branch != Branch::nowhere_flat || sd.codim < 2)
        throw usage_error("canonical_derivatives: needs a nowhere-flat canonical form");
    if (sd.S < 1e-10) throw singularity_error("canonical_derivatives: S vanishes, 1/sqrt(S) undefined");

    int const c = sd.codim;
    auto const& R = cf.rotation;
    CanonicalDerivatives out;
    out.lambda.assign(c, {0.0, 0.0});
    for (int a = 0; a < c; ++a)
        for (int b = 0; b < c; ++b)
            for (int k = 0; k < 2; ++k) out.lambda[a][k] += R(a, b) * sd.h1v(b, 0, 0, k);

    double const q = 4.0 * std::sqrt(sd.S);
    auto const& S_k = sd.gradS;
    auto const& l3 = out.lambda[0];
    auto const& l4 = out.lambda[1];
    out.first_order = {
        {"lambda3_1", std::fabs(l3[0] + S_k[1] / q)},
        {"lambda4_2", std::fabs(-l4[1] + S_k[1] / q)},
        {"lambda3_2", std::fabs(l3[1] - S_k[0] / q)},
        {"lambda4_1", std::fabs(l4[0] - S_k[0] / q)},
    };

    if (sd.has_h2() && hessian) {
        out.has_second = true;
        out.lambda2.assign(c, Mat2{});
        for (int a = 0; a < c; ++a)
            for (int b = 0; b < c; ++b)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) out.lambda2[a][k][l] += R(a, b) * sd.h2v(b, 0, 0, k, l);
        auto const& H = *hessian;
        auto const& m3 = out.lambda2[0];
        auto const& m4 = out.lambda2[1];
        double const P = sd.P;
        out.second_order = {
            {"lambda3_11", std::fabs(m3[0][0] + H[1][0] / q)},
            {"lambda4_21", std::fabs(-m4[1][0] + H[1][0] / q)},
            {"lambda3_12", std::fabs(m3[0][1] + (H[1][1] - P) / q)},
            {"lambda4_22", std::fabs(-m4[1][1] + (H[1][1] - P) / q)},
            {"lambda3_22", std::fabs(m3[1][1] - H[0][1] / q)},
            {"lambda4_12", std::fabs(m4[0][1] - H[0][1] / q)},
            {"lambda3_21", std::fabs(m3[1][0] - (H[0][0] - P) / q)},
            {"lambda4_11", std::fabs(m4[0][0] - (H[0][0] - P) / q)},
        };
    }
    return out;
}

} // namespace minsurf
