// SPDX-License-Identifier: Apache-2.0
/**
    \file
    \brief moving frames, second fundamental form and curvature invariants of a surface in S^n

    Index conventions. Frame vectors are numbered 0-based: frame[0], frame[1] span the tangent plane and
    frame[2 + a] is the a-th unit normal (a = 0 .. n-3) inside T S^n. Connection components are

        connection[k][A][B] = omega_AB(e_k) = < D_{e_k} e_A, e_B >

    with D the flat derivative of R^(n+1). Shape operators are h[a][i][j] = < D_{e_j} e_i, e_{2+a} >, and the
    covariant derivatives follow

        h_ijk  = e_k(h_ij)  + h_mj w_mi(e_k) + h_im w_mj(e_k) + h^b_ij w_ba(e_k)
        h_ijkl = e_l(h_ijk) + h_mjk w_mi(e_l) + h_imk w_mj(e_l) + h_ijm w_mk(e_l) + h^b_ijk w_ba(e_l)

    Every field is carried as a Jet2, so each differentiation consumes one jet order: an order-N immersion jet
    gives frames of order N-1, h of order N-2, h_ijk of order N-3 and h_ijkl of order N-4.
*/
#pragma once

#include "minsurf/error.hpp"
#include "minsurf/immersion.hpp"
#include "minsurf/jet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace minsurf {

using Mat2J = std::array<std::array<Jet2, 2>, 2>;
using Tensor3J = std::array<Mat2J, 2>; // t[i][j][k]
using Tensor4J = std::array<Tensor3J, 2>;

using Mat2 = std::array<std::array<double, 2>, 2>;

namespace detail {

inline Jet2 dot(JetVector const& a, JetVector const& b)
{
    Jet2 acc = a.at(0) * b.at(0);
    for (std::size_t c = 1; c < a.size(); ++c) acc += a[c] * b[c];
    return acc;
}

inline double dot_values(JetVector const& a, JetVector const& b)
{
    double acc = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) acc += a[c].value() * b[c].value();
    return acc;
}

inline JetVector truncated(JetVector const& a, int order)
{
    JetVector r;
    r.reserve(a.size());
    for (auto const& x : a) r.push_back(truncate(x, order));
    return r;
}

inline JetVector partial(JetVector const& a, Variable which)
{
    JetVector r;
    r.reserve(a.size());
    for (auto const& x : a) r.push_back(partial(x, which));
    return r;
}

/// a -= s * b, componentwise
inline void subtract_scaled(JetVector& a, Jet2 const& s, JetVector const& b)
{
    for (std::size_t c = 0; c < a.size(); ++c) a[c] -= s * b[c];
}

inline JetVector scaled(JetVector a, Jet2 const& s)
{
    for (auto& x : a) x = x * s;
    return a;
}

/// metric coefficients E, F, G of an immersion jet, at order N-1
struct MetricJets
{
    Jet2 E, F, G;
    Jet2 det() const { return E * G - F * F; }
};

inline MetricJets metric_jets(JetVector const& position)
{
    JetVector const pu = partial(position, Variable::u);
    JetVector const pv = partial(position, Variable::v);
    return {dot(pu, pu), dot(pu, pv), dot(pv, pv)};
}

} // namespace detail

// --------------------------------------------------------------------------------------------------------------------
// frames
// --------------------------------------------------------------------------------------------------------------------

struct FramePoint
{
    int ambient_n = 0;
    int jet_order = 0; // order of the frame jets
    double metric_det = 0.0;
    JetVector position;
    // e_i = tangent_coeffs[i][0] * Phi_u + tangent_coeffs[i][1] * Phi_v
    std::array<std::array<Jet2, 2>, 2> tangent_coeffs;
    std::vector<JetVector> frame; // n vectors: 2 tangent, then n-2 normal
    std::vector<int> normal_pivots;
    std::array<std::vector<std::vector<Jet2>>, 2> connection; // [k][A][B], order jet_order - 1

    int codim() const noexcept { return ambient_n - 2; }

    double omega(int A, int B, int k) const { return connection[k][A][B].value(); }

    /// derivative of f along e_k; one order lower than f
    Jet2 directional(Jet2 const& f, int k) const
    {
        int const m = f.order() - 1;
        if (m < 0) throw usage_error("FramePoint::directional: order-0 jet cannot be differentiated");
        if (m > jet_order) throw usage_error("FramePoint::directional: jet order exceeds the frame order");
        return truncate(tangent_coeffs[k][0], m) * partial(f, Variable::u) +
               truncate(tangent_coeffs[k][1], m) * partial(f, Variable::v);
    }

    /// max |<X_A, X_B> - delta_AB| over {Phi, e_1, ..., e_n}
    double gram_residual() const
    {
        std::vector<JetVector const*> all{&position};
        for (auto const& e : frame) all.push_back(&e);
        double worst = 0.0;
        for (std::size_t a = 0; a < all.size(); ++a)
            for (std::size_t b = a; b < all.size(); ++b)
                worst = std::max(worst,
                                 std::fabs(detail::dot_values(*all[a], *all[b]) - (a == b ? 1.0 : 0.0)));
        return worst;
    }

    double connection_antisymmetry() const
    {
        double worst = 0.0;
        for (int k = 0; k < 2; ++k)
            for (int A = 0; A < ambient_n; ++A)
                for (int B = 0; B < ambient_n; ++B)
                    worst = std::max(worst, std::fabs(omega(A, B, k) + omega(B, A, k)));
        return worst;
    }
};

/**
    Adapted orthonormal frame from immersion jets of order >= 2.

    e_1, e_2 come from Gram-Schmidt on (Phi_u, Phi_v) in that order. Normals are completed from the ambient basis:
    at each step the candidate with the largest residual against span{Phi, e_1, e_2, previous normals} wins (ties
    go to the lowest index). The pivot is chosen from values only; the projection itself is carried out on jets,
    twice, so the normals are smooth fields near the point.
*/
inline FramePoint build_frames(JetVector const& position)
{
    if (position.size() < 3) throw usage_error("build_frames: need at least three ambient components");
    int const N = position.front().order();
    if (N < 2) throw usage_error("build_frames: immersion jets must have order >= 2");
    int const ambient_dim = static_cast<int>(position.size());

    FramePoint fp;
    fp.ambient_n = ambient_dim - 1;
    fp.jet_order = N - 1;
    fp.position = detail::truncated(position, N - 1);

    JetVector const pu = detail::partial(position, Variable::u);
    JetVector const pv = detail::partial(position, Variable::v);
    Jet2 const E = detail::dot(pu, pu), F = detail::dot(pu, pv), G = detail::dot(pv, pv);
    Jet2 const det = E * G - F * F;
    fp.metric_det = det.value();
    if (!(fp.metric_det > 1e-10))
        throw domain_error("build_frames: degenerate induced metric, det(g) = " + std::to_string(fp.metric_det));

    Jet2 const c11 = 1.0 / sqrt(E);
    Jet2 const c22 = 1.0 / sqrt(det / E);
    Jet2 const c21 = -(F / E) * c22;
    Jet2 const zero = Jet2::constant(0.0, N - 1);
    fp.tangent_coeffs = {{{c11, zero}, {c21, c22}}};

    JetVector e1(ambient_dim, zero), e2(ambient_dim, zero);
    for (int c = 0; c < ambient_dim; ++c) {
        e1[c] = c11 * pu[c];
        e2[c] = c21 * pu[c] + c22 * pv[c];
    }
    fp.frame = {e1, e2};

    std::vector<JetVector> span_basis{fp.position, e1, e2};
    std::vector<bool> used(ambient_dim, false);
    for (int step = 0; step < fp.codim(); ++step) {
        int best = -1;
        double best_norm = -1.0;
        for (int c = 0; c < ambient_dim; ++c) {
            if (used[c]) continue;
            std::vector<double> r(ambient_dim, 0.0);
            r[c] = 1.0;
            for (auto const& b : span_basis) {
                double const proj = b[c].value();
                for (int d = 0; d < ambient_dim; ++d) r[d] -= proj * b[d].value();
            }
            double norm = 0.0;
            for (double x : r) norm += x * x;
            if (norm > best_norm) {
                best_norm = norm;
                best = c;
            }
        }
        used[best] = true;
        fp.normal_pivots.push_back(best);

        JetVector r(ambient_dim, zero);
        r[best] = Jet2::constant(1.0, N - 1);
        for (int pass = 0; pass < 2; ++pass)
            for (auto const& b : span_basis) detail::subtract_scaled(r, detail::dot(r, b), b);
        JetVector const n = detail::scaled(r, 1.0 / sqrt(detail::dot(r, r)));
        span_basis.push_back(n);
        fp.frame.push_back(n);
    }

    int const n = fp.ambient_n;
    for (int k = 0; k < 2; ++k) {
        std::vector<JetVector> derivs;
        derivs.reserve(n);
        for (auto const& e : fp.frame) {
            JetVector d;
            d.reserve(ambient_dim);
            for (auto const& x : e) d.push_back(fp.directional(x, k));
            derivs.push_back(std::move(d));
        }
        fp.connection[k].assign(n, std::vector<Jet2>(n));
        for (int A = 0; A < n; ++A)
            for (int B = 0; B < n; ++B)
                fp.connection[k][A][B] = detail::dot(derivs[A], detail::truncated(fp.frame[B], N - 2));
    }
    return fp;
}

// --------------------------------------------------------------------------------------------------------------------
// second fundamental form and covariant derivatives
// --------------------------------------------------------------------------------------------------------------------

struct ShapeData
{
    int codim = 0;
    std::vector<Mat2J> h;        // h[a][i][j]
    std::vector<Tensor3J> h1;    // h1[a][i][j][k]
    std::vector<Tensor4J> h2;    // h2[a][i][j][k][l], tier 2
    Jet2 S_jet;                  // S as a function on the chart
    double S = 0.0;
    double P = 0.0;
    std::optional<double> Q;
    std::vector<double> mean_vector;
    std::array<double, 2> gradS{}; // 2 sum h h_k

    bool has_h1() const noexcept { return h1_filled; }
    bool has_h2() const noexcept { return h2_filled; }

    double hv(int a, int i, int j) const { return h[a][i][j].value(); }
    double h1v(int a, int i, int j, int k) const { return h1[a][i][j][k].value(); }
    double h2v(int a, int i, int j, int k, int l) const { return h2[a][i][j][k][l].value(); }

    std::vector<Mat2> operator_values() const
    {
        std::vector<Mat2> out(codim);
        for (int a = 0; a < codim; ++a)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) out[a][i][j] = hv(a, i, j);
        return out;
    }

    bool h1_filled = false;
    bool h2_filled = false;
};

struct NormalTensorEntry
{
    int alpha; // normal indices counted from 3, as e_3 .. e_n
    int beta;
    double value; // R_{alpha beta 1 2}
};

struct CurvatureReport
{
    double K = 0.0;  // Gauss equation
    double KN = 0.0; // normal scalar curvature, a norm
    double S = 0.0;
    std::vector<NormalTensorEntry> normal_tensor; // alpha < beta
    double u = 0.0;
    double v = 0.0;
    std::vector<std::pair<std::string, double>> residuals;
};

/// h^a_ij = c_ip c_jq < Phi_pq, e_a > ; also S and the mean curvature vector
inline ShapeData second_fundamental(JetVector const& position, FramePoint const& frame)
{
    int const N = position.front().order();
    if (N < 2) throw usage_error("second_fundamental: immersion jets must have order >= 2");
    int const m = N - 2;
    JetVector const pu = detail::partial(position, Variable::u);
    JetVector const pv = detail::partial(position, Variable::v);
    std::array<std::array<JetVector, 2>, 2> const hess{{{detail::partial(pu, Variable::u), detail::partial(pu, Variable::v)},
                                                       {detail::partial(pv, Variable::u), detail::partial(pv, Variable::v)}}};
    std::array<std::array<Jet2, 2>, 2> c;
    for (int i = 0; i < 2; ++i)
        for (int p = 0; p < 2; ++p) c[i][p] = truncate(frame.tangent_coeffs[i][p], m);

    ShapeData sd;
    sd.codim = frame.codim();
    sd.S_jet = Jet2::constant(0.0, m);
    for (int a = 0; a < sd.codim; ++a) {
        JetVector const normal = detail::truncated(frame.frame[2 + a], m);
        std::array<std::array<Jet2, 2>, 2> proj;
        for (int p = 0; p < 2; ++p)
            for (int q = 0; q < 2; ++q) proj[p][q] = detail::dot(hess[p][q], normal);
        Mat2J h;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Jet2 acc = Jet2::constant(0.0, m);
                for (int p = 0; p < 2; ++p)
                    for (int q = 0; q < 2; ++q) acc += c[i][p] * c[j][q] * proj[p][q];
                h[i][j] = acc;
            }
        // enforce exact symmetry; the two sums differ only by rounding
        h[0][1] = h[1][0] = (h[0][1] + h[1][0]) * 0.5;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sd.S_jet += h[i][j] * h[i][j];
        sd.mean_vector.push_back(0.5 * (h[0][0].value() + h[1][1].value()));
        sd.h.push_back(h);
    }
    sd.S = sd.S_jet.value();
    return sd;
}

/// R_{alpha beta 1 2} as a jet, normals indexed 0-based
inline Jet2 normal_tensor_jet(ShapeData const& sd, int a, int b)
{
    Jet2 r = sd.h[a][0][0] * sd.h[b][0][1] + sd.h[a][0][1] * sd.h[b][1][1];
    r -= sd.h[a][1][0] * sd.h[b][0][0] + sd.h[a][1][1] * sd.h[b][1][0];
    return r;
}

inline double normal_tensor_value(std::vector<Mat2> const& h, int a, int b)
{
    double r = 0.0;
    for (int m = 0; m < 2; ++m) r += h[a][0][m] * h[b][m][1] - h[a][1][m] * h[b][m][0];
    return r;
}

/// K from the Gauss equation, the normal tensor and K^N = sqrt(sum_{alpha<beta} R_{alpha beta 12}^2)
inline CurvatureReport curvatures(std::vector<Mat2> const& h)
{
    CurvatureReport rep;
    double sum_det = 0.0;
    for (auto const& L : h) {
        sum_det += L[0][0] * L[1][1] - L[0][1] * L[1][0];
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) rep.S += L[i][j] * L[i][j];
    }
    rep.K = 1.0 + sum_det;
    double sq = 0.0;
    int const codim = static_cast<int>(h.size());
    for (int a = 0; a < codim; ++a)
        for (int b = a + 1; b < codim; ++b) {
            double const r = normal_tensor_value(h, a, b);
            rep.normal_tensor.push_back({a + 3, b + 3, r});
            sq += r * r;
        }
    rep.KN = std::sqrt(sq);
    return rep;
}

inline CurvatureReport curvatures(ShapeData const& sd) { return curvatures(sd.operator_values()); }

/// fills h1, P and gradS = 2 sum h h_k; needs h with order >= 1
inline void covariant_h1(FramePoint const& frame, ShapeData& sd)
{
    if (sd.codim > 0 && sd.h.front()[0][0].order() < 1)
        throw usage_error("covariant_h1: insufficient jet order (immersion order must be >= 3)");
    if (sd.codim == 0 && frame.jet_order < 2)
        throw usage_error("covariant_h1: insufficient jet order (immersion order must be >= 3)");
    int const m = frame.jet_order - 2;
    auto w = [&](int A, int B, int k) { return truncate(frame.connection[k][A][B], m); };

    sd.h1.assign(sd.codim, Tensor3J{});
    sd.P = 0.0;
    sd.gradS = {0.0, 0.0};
    for (int a = 0; a < sd.codim; ++a)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    Jet2 acc = frame.directional(sd.h[a][i][j], k);
                    for (int p = 0; p < 2; ++p) {
                        acc += truncate(sd.h[a][p][j], m) * w(p, i, k);
                        acc += truncate(sd.h[a][i][p], m) * w(p, j, k);
                    }
                    for (int b = 0; b < sd.codim; ++b) acc += truncate(sd.h[b][i][j], m) * w(2 + b, 2 + a, k);
                    sd.h1[a][i][j][k] = acc;
                    double const x = acc.value();
                    sd.P += x * x;
                    sd.gradS[k] += 2.0 * sd.hv(a, i, j) * x;
                }
    sd.h1_filled = true;
}

/// fills h2 and Q; needs h1 with order >= 1 (immersion order 4)
inline void covariant_h2(FramePoint const& frame, ShapeData& sd)
{
    if (!sd.h1_filled) throw usage_error("covariant_h2: covariant_h1 must run first");
    if (frame.jet_order < 3) throw usage_error("covariant_h2: insufficient jet order (immersion order must be 4)");
    int const m = frame.jet_order - 3;
    auto w = [&](int A, int B, int k) { return truncate(frame.connection[k][A][B], m); };

    sd.h2.assign(sd.codim, Tensor4J{});
    double Q = 0.0;
    for (int a = 0; a < sd.codim; ++a)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) {
                        Jet2 acc = frame.directional(sd.h1[a][i][j][k], l);
                        for (int p = 0; p < 2; ++p) {
                            acc += truncate(sd.h1[a][p][j][k], m) * w(p, i, l);
                            acc += truncate(sd.h1[a][i][p][k], m) * w(p, j, l);
                            acc += truncate(sd.h1[a][i][j][p], m) * w(p, k, l);
                        }
                        for (int b = 0; b < sd.codim; ++b)
                            acc += truncate(sd.h1[b][i][j][k], m) * w(2 + b, 2 + a, l);
                        sd.h2[a][i][j][k][l] = acc;
                        Q += acc.value() * acc.value();
                    }
    sd.Q = Q;
    sd.h2_filled = true;
}

/// Gauss curvature of the induced metric alone (Brioschi formula); immersion order >= 3
inline double intrinsic_gauss_curvature(JetVector const& position)
{
    if (position.front().order() < 3)
        throw usage_error("intrinsic_gauss_curvature: immersion jets must have order >= 3");
    auto const g = detail::metric_jets(position);
    auto d = [](Jet2 const& f, int i, int j) { return f.coeff(i, j); };
    double const E = g.E.value(), F = g.F.value(), G = g.G.value();
    double const Eu = d(g.E, 1, 0), Ev = d(g.E, 0, 1), Fu = d(g.F, 1, 0), Fv = d(g.F, 0, 1);
    double const Gu = d(g.G, 1, 0), Gv = d(g.G, 0, 1);
    double const Evv = d(g.E, 0, 2), Fuv = d(g.F, 1, 1), Guu = d(g.G, 2, 0);
    auto det3 = [](double a, double b, double c, double d_, double e, double f, double g_, double h, double i) {
        return a * (e * i - f * h) - b * (d_ * i - f * g_) + c * (d_ * h - e * g_);
    };
    double const first = det3(-0.5 * Evv + Fuv - 0.5 * Guu, 0.5 * Eu, Fu - 0.5 * Ev, Fv - 0.5 * Gu, E, F, 0.5 * Gv, F, G);
    double const second = det3(0.0, 0.5 * Ev, 0.5 * Gu, 0.5 * Ev, E, F, 0.5 * Gu, F, G);
    double const det = E * G - F * F;
    return (first - second) / (det * det);
}

/// Laplace-Beltrami of S from jets of S and of the metric: (1/sqrt g) d_a (sqrt g g^ab d_b S)
inline double laplacian_S(JetVector const& position, ShapeData const& sd)
{
    if (sd.S_jet.order() < 2) throw usage_error("laplacian_S: needs immersion jets of order 4");
    int const m = sd.S_jet.order() - 1;
    auto const g = detail::metric_jets(position);
    Jet2 const E = truncate(g.E, m), F = truncate(g.F, m), G = truncate(g.G, m);
    Jet2 const det = E * G - F * F;
    if (!(det.value() > 1e-10)) throw domain_error("laplacian_S: degenerate induced metric");
    Jet2 const root = sqrt(det);
    Jet2 const Su = partial(sd.S_jet, Variable::u), Sv = partial(sd.S_jet, Variable::v);
    Jet2 const flux_u = root * (G * Su - F * Sv) / det;
    Jet2 const flux_v = root * (E * Sv - F * Su) / det;
    return (partial(flux_u, Variable::u).value() + partial(flux_v, Variable::v).value()) / root.value();
}

/// e_k(S) straight from the S jet
inline std::array<double, 2> frame_gradient_S(FramePoint const& frame, ShapeData const& sd)
{
    if (sd.S_jet.order() < 1) throw usage_error("frame_gradient_S: needs immersion jets of order >= 3");
    return {frame.directional(sd.S_jet, 0).value(), frame.directional(sd.S_jet, 1).value()};
}

/// covariant Hessian S_kl = e_l(S_k) - w_km(e_l) S_m
inline Mat2 hessian_S(FramePoint const& frame, ShapeData const& sd)
{
    if (sd.S_jet.order() < 2) throw usage_error("hessian_S: needs immersion jets of order 4");
    std::array<Jet2, 2> const Sk{frame.directional(sd.S_jet, 0), frame.directional(sd.S_jet, 1)};
    Mat2 out{};
    for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
            double acc = frame.directional(Sk[k], l).value();
            for (int p = 0; p < 2; ++p) acc -= frame.omega(k, p, l) * Sk[p].value();
            out[k][l] = acc;
        }
    return out;
}

/// covariant derivative of the normal curvature tensor, [a][b][k] = R_{ab12,k}; immersion order >= 3
inline std::vector<std::vector<std::array<double, 2>>> normal_tensor_derivative(FramePoint const& frame,
                                                                                ShapeData const& sd)
{
    int const c = sd.codim;
    std::vector<std::vector<std::array<double, 2>>> out(c, std::vector<std::array<double, 2>>(c));
    if (c == 0) return out;
    if (sd.h.front()[0][0].order() < 1) throw usage_error("normal_tensor_derivative: needs immersion order >= 3");
    std::vector<std::vector<Jet2>> R(c, std::vector<Jet2>(c));
    for (int a = 0; a < c; ++a)
        for (int b = 0; b < c; ++b) R[a][b] = normal_tensor_jet(sd, a, b);
    for (int a = 0; a < c; ++a)
        for (int b = 0; b < c; ++b)
            for (int k = 0; k < 2; ++k) {
                double acc = frame.directional(R[a][b], k).value();
                for (int e = 0; e < c; ++e) {
                    acc += R[e][b].value() * frame.omega(2 + e, 2 + a, k);
                    acc += R[a][e].value() * frame.omega(2 + e, 2 + b, k);
                }
                out[a][b][k] = acc;
            }
    return out;
}

// --------------------------------------------------------------------------------------------------------------------
// one-stop pointwise analysis
// --------------------------------------------------------------------------------------------------------------------

struct PointAnalysis
{
    double u = 0.0;
    double v = 0.0;
    int jet_order = 0;
    JetVector position;
    FramePoint frame;
    ShapeData shape;
    CurvatureReport curvature;
    double unit_sphere_residual = 0.0; // every coefficient of |Phi|^2 - 1
    std::optional<double> intrinsic_K;
    std::optional<std::array<double, 2>> gradS_direct;
    std::optional<Mat2> hessian;           // from jets of S
    std::optional<double> laplacian;       // Laplace-Beltrami of S
    std::optional<std::vector<std::vector<std::array<double, 2>>>> normal_tensor_derivative;
};

inline double unit_sphere_residual(JetVector const& position)
{
    Jet2 norm2 = detail::dot(position, position) - 1.0;
    double worst = 0.0;
    for (int d = 0; d <= norm2.order(); ++d)
        for (int i = d, j = 0; j <= d; --i, ++j) worst = std::max(worst, std::fabs(norm2.coeff(i, j)));
    return worst;
}

/// everything the jet order allows: h always, h1 from order 3, h2 and Laplacians at order 4
inline PointAnalysis analyze_position(JetVector position, double u, double v)
{
    PointAnalysis pa;
    pa.u = u;
    pa.v = v;
    pa.jet_order = position.front().order();
    pa.unit_sphere_residual = unit_sphere_residual(position);
    pa.frame = build_frames(position);
    pa.shape = second_fundamental(position, pa.frame);
    pa.curvature = curvatures(pa.shape);
    pa.curvature.u = u;
    pa.curvature.v = v;
    if (pa.jet_order >= 3) {
        covariant_h1(pa.frame, pa.shape);
        pa.intrinsic_K = intrinsic_gauss_curvature(position);
        pa.gradS_direct = frame_gradient_S(pa.frame, pa.shape);
        pa.normal_tensor_derivative = normal_tensor_derivative(pa.frame, pa.shape);
        pa.curvature.residuals.emplace_back("gauss_vs_intrinsic", std::fabs(pa.curvature.K - *pa.intrinsic_K));
    }
    if (pa.jet_order >= 4) {
        covariant_h2(pa.frame, pa.shape);
        pa.hessian = hessian_S(pa.frame, pa.shape);
        pa.laplacian = laplacian_S(position, pa.shape);
    }
    pa.position = std::move(position);
    return pa;
}

inline PointAnalysis analyze_point(ImmersionSpec const& spec, double u, double v, int order)
{
    return analyze_position(evaluate(spec, u, v, order), u, v);
}

} // namespace minsurf
