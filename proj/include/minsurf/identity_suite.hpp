// SPDX-License-Identifier: Apache-2.0
/**
    \file
    \brief named pointwise identity checks over a sample grid

    Each check compares a left side against a right side at one chart point and reports the residual. Quantities
    of order one (curvatures, frame data) use absolute residuals; checks on P, Q and Laplacians divide by
    max(1, P) or max(1, Q). Checks written for the canonical normal frame first run `canonicalize` and are gated
    on its residual: points that fail the gate get status gauge_failed instead of a residual.
*/
#pragma once

#include "minsurf/error.hpp"
#include "minsurf/frame_normalizer.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace minsurf {

enum class CheckStatus
{
    pass,
    fail,
    skipped,
    gauge_failed
};

inline char const* to_string(CheckStatus s) noexcept
{
    switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
    case CheckStatus::gauge_failed: return "gauge_failed";
    }
    return "unknown";
}

struct CheckInfo
{
    std::string name;
    int tier = 1;
    double default_tolerance = 0.0;
    bool relative = false;
    bool canonical = false; // needs the canonical normal frame
    std::string statement;
};

/// every identity the suite knows, in execution order
inline std::vector<CheckInfo> const& check_registry()
{
    static std::vector<CheckInfo> const registry{
        {"unit_sphere", 1, 1e-10, false, false, "|Phi|^2 = 1 as a jet identity"},
        {"frame_orthonormality", 1, 1e-9, false, false, "Gram matrix of {Phi, e_A} is the identity; omega_AB = -omega_BA"},
        {"minimality", 1, 1e-9, false, false, "mean curvature vector vanishes"},
        {"codazzi", 1, 1e-8, false, false, "h_ijk is totally symmetric"},
        {"gauss_equation", 1, 1e-7, false, false, "intrinsic K (metric only) = 1 + sum_a det L^a"},
        {"extrinsic_window", 1, 1e-7, false, false, "2K = 2 - S, i.e. R_1212 = 1 - S/2"},
        {"wintgen", 1, 1e-8, false, false, "K + K^N = 1 where K > 0"},
        {"star_form", 1, 1e-10, false, false, "after e_3 := e/|e|: h^3_12 = |e| > 0, h^b_12 = 0 for b >= 4"},
        {"canonical_form", 1, 1e-8, false, true, "L^3 = offdiag(b), L^4 = diag(b,-b), L^b = 0 for b >= 5"},
        {"b_squared", 1, 1e-8, false, true, "b^2 = S/4"},
        {"sbar", 1, 1e-8, false, true, "S_bar = S_3 = S/2"},
        {"normal_tensor_reduction", 1, 1e-8, false, true, "R_3412 = -S/2, all other R_ab12 = 0"},
        {"simons_flat", 1, 1e-5, true, false, "flat normal bundle: (1/2) Lap S = P + (2-S) S"},
        {"simons_general", 1, 1e-5, true, false, "(1/2) Lap S = P + (2-S) S - 4 b^2 S_bar in star form"},
        {"simons_canonical", 1, 1e-5, true, true, "(1/2) Lap S = P - (1/2) S (3S-4)"},
        {"gradient_relations", 1, 1e-7, false, true, "lambda^3_1 = -lambda^4_2 = -S_2/(4 sqrt S), lambda^3_2 = lambda^4_1 = S_1/(4 sqrt S)"},
        {"second_derivative_relations", 2, 1e-5, false, true, "lambda^3_kl and lambda^4_kl in terms of S_kl and P"},
        {"ricci_e3", 2, 1e-5, false, true, "lambda^3_11 + lambda^3_22 = 0, lambda^3_12 - lambda^3_21 = (1/4) sqrt S (3S-4), same with 0 for b >= 5"},
        {"ricci_general", 2, 1e-5, false, false, "h_ijkl - h_ijlk = h_pj R_pikl + h_ip R_pjkl + h^b_ij R_bakl"},
        {"laplacian_h", 2, 1e-5, false, false, "Lap h_ij = h_mmij + h_pi R_pmjm + h_mp R_pijm + h^d_mi R_dajm"},
        {"q_lower_bound", 2, 1e-5, true, true, "Q >= (1/4) S (3S-4)^2"},
        {"covariant_S_derivative", 2, 1e-7, false, false, "S_k = 2 sum h h_k and S_kl = 2 sum (h_l h_k + h h_kl)"},
        {"normal_tensor_derivative", 2, 1e-6, false, true, "R_3412,k = -S_k/2, R_3b12,k = -2b lambda^b_k, R_4b12,1 = 2b lambda^b_2, R_4b12,2 = -2b lambda^b_1, R_bc12,k = 0"},
        {"chern_orthogonality", 2, 1e-6, false, true, "sum_{g>=5} lambda^g_1 lambda^g_2 = 0 and sum_{g>=5} (lambda^g_1)^2 - (lambda^g_2)^2 = 0"},
    };
    return registry;
}

inline CheckInfo const& check_info(std::string const& name)
{
    for (auto const& info : check_registry())
        if (info.name == name) return info;
    throw usage_error("unknown identity check '" + name + "'");
}

struct Tolerances
{
    std::map<std::string, double> values;
    double flatness = 1e-8;

    static Tolerances defaults()
    {
        Tolerances t;
        for (auto const& info : check_registry()) t.values[info.name] = info.default_tolerance;
        return t;
    }

    double get(std::string const& name) const
    {
        auto it = values.find(name);
        if (it == values.end()) throw usage_error("no tolerance named '" + name + "'");
        return it->second;
    }

    /// "all" sets every check tolerance; "flatness" sets the flat/nowhere-flat threshold
    void set(std::string const& name, double value)
    {
        if (!(value > 0.0)) throw usage_error("tolerance '" + name + "' must be positive");
        if (name == "all") {
            for (auto& [_, v] : values) v = value;
            return;
        }
        if (name == "flatness") {
            flatness = value;
            return;
        }
        if (!values.contains(name)) throw usage_error("no tolerance named '" + name + "'");
        values[name] = value;
    }
};

struct IdentityCheck
{
    std::string name;
    int tier = 1;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::skipped;
    double u = 0.0;
    double v = 0.0;
    std::string note;
};

struct Grid
{
    int nu = 10;
    int nv = 10;
    double u_min = 0.0;
    double u_max = 0.0;
    double v_min = 0.0;
    double v_max = 0.0;

    /// uniform nu x nv grid over the usable chart rectangle
    static Grid for_spec(ImmersionSpec const& spec, int nu = 10, int nv = 10)
    {
        if (nu < 2 || nv < 2) throw config_error("grid needs at least 2 x 2 points");
        return {nu, nv, spec.chart.usable_u_min(), spec.chart.usable_u_max(), spec.chart.v_min, spec.chart.v_max};
    }

    std::vector<std::pair<double, double>> points() const
    {
        if (nu < 2 || nv < 2) throw config_error("grid needs at least 2 x 2 points");
        std::vector<std::pair<double, double>> out;
        out.reserve(static_cast<std::size_t>(nu) * nv);
        // last sample is the endpoint itself; interpolation can round past it
        auto at = [](double lo, double hi, int k, int n) { return k == n - 1 ? hi : lo + (hi - lo) * k / (n - 1.0); };
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nv; ++j) out.emplace_back(at(u_min, u_max, i, nu), at(v_min, v_max, j, nv));
        return out;
    }
};

enum class BundleType
{
    flat,
    nowhere_flat,
    mixed
};

inline char const* to_string(BundleType b) noexcept
{
    switch (b) {
    case BundleType::flat: return "flat";
    case BundleType::nowhere_flat: return "nowhere_flat";
    case BundleType::mixed: return "mixed";
    }
    return "unknown";
}

inline bool is_flat_point(ShapeOperators const& h, double flatness)
{
    return max_commutator(h) <= detail::flatness_threshold(flatness, h);
}

inline BundleType combine_branches(std::vector<bool> const& flat_flags)
{
    bool const any_flat = std::any_of(flat_flags.begin(), flat_flags.end(), [](bool f) { return f; });
    bool const all_flat = std::all_of(flat_flags.begin(), flat_flags.end(), [](bool f) { return f; });
    if (all_flat) return BundleType::flat;
    if (!any_flat) return BundleType::nowhere_flat;
    return BundleType::mixed;
}

/// run-level knobs besides tolerances
struct SuiteOptions
{
    int jet_order = 4;
    int gauge_rotations = 0; // random normal rotations re-canonicalized per point
    std::uint64_t seed = 0;
};

namespace detail {

inline constexpr double positive_curvature_floor = 1e-6;

class CheckSink
{
public:
    CheckSink(Tolerances const& tol, int tier, double u, double v) : tol_(tol), tier_(tier), u_(u), v_(v) {}

    void evaluate(std::string const& name, double lhs, double rhs, double residual)
    {
        auto const& info = check_info(name);
        if (info.tier > tier_) return;
        IdentityCheck c = base(info);
        c.lhs = lhs;
        c.rhs = rhs;
        c.residual = residual;
        c.status = residual <= c.tolerance ? CheckStatus::pass : CheckStatus::fail;
        out_.push_back(std::move(c));
    }

    /// residual is |lhs - rhs| divided by `scale` when the check is relative
    void compare(std::string const& name, double lhs, double rhs, double scale = 1.0)
    {
        evaluate(name, lhs, rhs, std::fabs(lhs - rhs) / (check_info(name).relative ? scale : 1.0));
    }

    void skip(std::string const& name, std::string note, CheckStatus status = CheckStatus::skipped)
    {
        auto const& info = check_info(name);
        if (info.tier > tier_) return;
        IdentityCheck c = base(info);
        c.status = status;
        c.note = std::move(note);
        out_.push_back(std::move(c));
    }

    std::vector<IdentityCheck> take() { return std::move(out_); }

private:
    IdentityCheck base(CheckInfo const& info) const
    {
        IdentityCheck c;
        c.name = info.name;
        c.tier = info.tier;
        c.tolerance = tol_.get(info.name);
        c.u = u_;
        c.v = v_;
        return c;
    }

    Tolerances const& tol_;
    int tier_;
    double u_, v_;
    std::vector<IdentityCheck> out_;
};

inline double max_abs(std::initializer_list<double> xs)
{
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::fabs(x));
    return m;
}

} // namespace detail

/**
    All checks at one analyzed point. `surface_branch` is the grid-level bundle type; on mixed surfaces the
    branch-dependent checks are skipped. With `gauge_rotations` > 0 the canonical_form residual also covers that
    many randomly rotated copies of the normal frame, drawn from `rng`.
*/
inline std::vector<IdentityCheck> point_checks(PointAnalysis const& pa, int tier, Tolerances const& tol,
                                               BundleType surface_branch, int gauge_rotations = 0,
                                               std::mt19937_64* rng = nullptr)
{
    detail::CheckSink sink(tol, tier, pa.u, pa.v);
    auto const& sd = pa.shape;
    int const c = sd.codim;
    double const S = sd.S;
    double const K = pa.curvature.K;
    double const KN = pa.curvature.KN;
    ShapeOperators const h = sd.operator_values();
    bool const have1 = pa.jet_order >= 3;
    bool const have2 = pa.jet_order >= 4;
    std::string const need3 = "needs jet order >= 3";
    std::string const need4 = "needs jet order 4";
    bool const mixed = surface_branch == BundleType::mixed;
    std::string const mixed_note = "mixed normal bundle on this surface";

    sink.evaluate("unit_sphere", pa.unit_sphere_residual, 0.0, pa.unit_sphere_residual);
    double const frame_res = std::max(pa.frame.gram_residual(), pa.frame.connection_antisymmetry());
    sink.evaluate("frame_orthonormality", frame_res, 0.0, frame_res);

    double hmax = 0.0;
    for (double x : sd.mean_vector) hmax = std::max(hmax, std::fabs(x));
    sink.evaluate("minimality", hmax, 0.0, hmax);

    if (have1) {
        double codazzi = 0.0;
        for (int a = 0; a < c; ++a)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k)
                        codazzi = std::max({codazzi, std::fabs(sd.h1v(a, i, j, k) - sd.h1v(a, i, k, j)),
                                            std::fabs(sd.h1v(a, i, j, k) - sd.h1v(a, j, i, k))});
        sink.evaluate("codazzi", codazzi, 0.0, codazzi);
        sink.compare("gauss_equation", *pa.intrinsic_K, K);
        sink.compare("extrinsic_window", 2.0 * *pa.intrinsic_K, 2.0 - S);
    } else {
        sink.skip("codazzi", need3);
        sink.skip("gauss_equation", need3);
        sink.skip("extrinsic_window", need3);
    }

    if (mixed)
        sink.skip("wintgen", mixed_note);
    else if (K > detail::positive_curvature_floor)
        sink.compare("wintgen", K + KN, 1.0);
    else
        sink.skip("wintgen", "K <= 0 at this point");

    bool const flat_point = is_flat_point(h, tol.flatness);
    auto const star = flat_point ? std::nullopt : normalize_star(h, tol.flatness);

    // star form and the general Simons identity
    double b_star = 0.0, sbar_star = 0.0;
    if (mixed) {
        sink.skip("star_form", mixed_note);
    } else if (star) {
        double off = 0.0;
        for (int a = 1; a < c; ++a) off = std::max(off, std::fabs(star->transformed[a][0][1]));
        double e_len = 0.0;
        for (int a = 0; a < c; ++a) e_len += h[a][0][1] * h[a][0][1];
        e_len = std::sqrt(e_len);
        double const res = std::max(off, std::fabs(star->b - e_len)) + (star->b > 0.0 ? 0.0 : 1.0);
        sink.evaluate("star_form", star->b, e_len, res);
        b_star = star->b;
        for (int a = 1; a < c; ++a)
            for (auto const& row : star->transformed[a])
                for (double x : row) sbar_star += x * x;
    } else {
        sink.skip("star_form", "flat point: off-diagonal vector vanishes");
    }

    double const scaleP = std::max(1.0, sd.P);
    if (!have2) {
        sink.skip("simons_flat", need4);
        sink.skip("simons_general", need4);
    } else if (mixed) {
        sink.skip("simons_flat", mixed_note);
        sink.skip("simons_general", mixed_note);
    } else {
        double const half_lap = 0.5 * *pa.laplacian;
        if (flat_point)
            sink.compare("simons_flat", half_lap, sd.P + (2.0 - S) * S, scaleP);
        else
            sink.skip("simons_flat", "nowhere-flat point");
        sink.compare("simons_general", half_lap, sd.P + (2.0 - S) * S - 4.0 * b_star * b_star * sbar_star, scaleP);
    }

    // tier-independent pieces that do not need the canonical frame
    if (have2) {
        // Ricci commutation formula and Laplacian of h
        double ricci = 0.0, lap = 0.0;
        auto Rint = [&](int p, int i, int k, int l) {
            return K * ((p == k && i == l ? 1.0 : 0.0) - (p == l && i == k ? 1.0 : 0.0));
        };
        std::vector<std::vector<double>> Rn(c, std::vector<double>(c, 0.0));
        for (int a = 0; a < c; ++a)
            for (int b = 0; b < c; ++b) Rn[a][b] = normal_tensor_value(h, a, b);
        // R_{ba kl}: only (k,l) = (1,2) and (2,1) are nonzero
        auto Rnorm = [&](int b, int a, int k, int l) {
            if (k == l) return 0.0;
            return k == 0 ? Rn[b][a] : -Rn[b][a];
        };
        for (int a = 0; a < c; ++a)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    for (int k = 0; k < 2; ++k)
                        for (int l = 0; l < 2; ++l) {
                            double lhs = sd.h2v(a, i, j, k, l) - sd.h2v(a, i, j, l, k);
                            double rhs = 0.0;
                            for (int p = 0; p < 2; ++p)
                                rhs += h[a][p][j] * Rint(p, i, k, l) + h[a][i][p] * Rint(p, j, k, l);
                            for (int b = 0; b < c; ++b) rhs += h[b][i][j] * Rnorm(b, a, k, l);
                            ricci = std::max(ricci, std::fabs(lhs - rhs));
                        }
                    double lhs = 0.0, rhs = 0.0;
                    for (int m = 0; m < 2; ++m) {
                        lhs += sd.h2v(a, i, j, m, m);
                        rhs += sd.h2v(a, m, m, i, j);
                        for (int p = 0; p < 2; ++p)
                            rhs += h[a][p][i] * Rint(p, m, j, m) + h[a][m][p] * Rint(p, i, j, m);
                        for (int d = 0; d < c; ++d) rhs += h[d][m][i] * Rnorm(d, a, j, m);
                    }
                    lap = std::max(lap, std::fabs(lhs - rhs));
                }
        sink.evaluate("ricci_general", ricci, 0.0, ricci);
        sink.evaluate("laplacian_h", lap, 0.0, lap);

        double grad = 0.0, hess = 0.0;
        for (int k = 0; k < 2; ++k) {
            grad = std::max(grad, std::fabs((*pa.gradS_direct)[k] - sd.gradS[k]));
            for (int l = 0; l < 2; ++l) {
                double route = 0.0;
                for (int a = 0; a < c; ++a)
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            route += 2.0 * (sd.h1v(a, i, j, l) * sd.h1v(a, i, j, k) + h[a][i][j] * sd.h2v(a, i, j, k, l));
                hess = std::max(hess, std::fabs((*pa.hessian)[k][l] - route));
            }
        }
        double const res = std::max(grad, hess);
        sink.evaluate("covariant_S_derivative", res, 0.0, res);
    } else {
        sink.skip("ricci_general", need4);
        sink.skip("laplacian_h", need4);
        sink.skip("covariant_S_derivative", need4);
    }

    // canonical-frame checks
    std::vector<std::string> canonical_names;
    for (auto const& info : check_registry())
        if (info.canonical) canonical_names.push_back(info.name);
    auto skip_all_canonical = [&](std::string const& note, CheckStatus status = CheckStatus::skipped) {
        for (auto const& n : canonical_names) sink.skip(n, note, status);
    };

    if (mixed) {
        skip_all_canonical(mixed_note);
        return sink.take();
    }
    if (flat_point) {
        skip_all_canonical("flat point: canonical frame is for nowhere-flat normal bundles");
        return sink.take();
    }
    if (!(K > detail::positive_curvature_floor)) {
        skip_all_canonical("K <= 0 at this point");
        return sink.take();
    }
    CanonicalForm const cf = canonicalize(h, tol.flatness);
    if (cf.branch != Branch::nowhere_flat) {
        skip_all_canonical("canonical normalization rejected the operators", CheckStatus::gauge_failed);
        return sink.take();
    }
    double gauge_res = cf.residual;
    if (gauge_rotations > 0) {
        if (!rng) throw usage_error("point_checks: gauge rotations need a random generator");
        for (int t = 0; t < gauge_rotations; ++t) {
            auto const cr = canonicalize(rotate_normals(h, random_rotation(c, *rng)), tol.flatness);
            gauge_res = std::max(gauge_res, cr.branch == Branch::nowhere_flat
                                                ? std::max(cr.residual, std::fabs(cr.b * cr.b - S / 4.0))
                                                : std::numeric_limits<double>::infinity());
        }
    }
    sink.evaluate("canonical_form", gauge_res, 0.0, gauge_res);
    if (gauge_res > tol.get("canonical_form")) {
        for (auto const& n : canonical_names)
            if (n != "canonical_form")
                sink.skip(n, "canonical residual above tolerance", CheckStatus::gauge_failed);
        return sink.take();
    }

    double const b = cf.b;
    sink.compare("b_squared", b * b, S / 4.0);
    sink.evaluate("sbar", cf.S_bar, S / 2.0,
                  std::max(std::fabs(cf.S_bar - S / 2.0), std::fabs(cf.S3 - S / 2.0)));

    double ntr = 0.0;
    for (int a = 0; a < c; ++a)
        for (int bb = a + 1; bb < c; ++bb) {
            double const r = normal_tensor_value(cf.transformed, a, bb);
            ntr = std::max(ntr, std::fabs(a == 0 && bb == 1 ? r + S / 2.0 : r));
        }
    sink.evaluate("normal_tensor_reduction", c >= 2 ? normal_tensor_value(cf.transformed, 0, 1) : 0.0, -S / 2.0, ntr);

    if (have2)
        sink.compare("simons_canonical", 0.5 * *pa.laplacian, sd.P - 0.5 * S * (3.0 * S - 4.0), scaleP);
    else
        sink.skip("simons_canonical", need4);

    if (!have1) {
        for (auto const& n : {"gradient_relations", "second_derivative_relations", "ricci_e3", "q_lower_bound",
                              "normal_tensor_derivative", "chern_orthogonality"})
            sink.skip(n, need3);
        return sink.take();
    }

    auto const cd = canonical_derivatives(sd, cf, pa.hessian);
    sink.evaluate("gradient_relations", cd.max_first(), 0.0, cd.max_first());

    if (!have2) {
        for (auto const& n : {"second_derivative_relations", "ricci_e3", "q_lower_bound", "normal_tensor_derivative",
                              "chern_orthogonality"})
            sink.skip(n, need4);
        return sink.take();
    }

    sink.evaluate("second_derivative_relations", cd.max_second(), 0.0, cd.max_second());

    auto const& m3 = cd.lambda2[0];
    double const e3_target = 0.25 * std::sqrt(S) * (3.0 * S - 4.0);
    double e3 = detail::max_abs({m3[0][0] + m3[1][1], m3[0][1] - m3[1][0] - e3_target});
    for (int g = 2; g < c; ++g)
        e3 = std::max(e3, detail::max_abs({cd.lambda2[g][0][0] + cd.lambda2[g][1][1],
                                           cd.lambda2[g][0][1] - cd.lambda2[g][1][0]}));
    sink.evaluate("ricci_e3", m3[0][1] - m3[1][0], e3_target, e3);

    double const Q = *sd.Q;
    double const q_bound = 0.25 * S * (3.0 * S - 4.0) * (3.0 * S - 4.0);
    sink.evaluate("q_lower_bound", Q, q_bound, std::max(0.0, q_bound - Q) / std::max(1.0, Q));

    // normal tensor derivative rotated into the canonical frame
    auto const& Rd = *pa.normal_tensor_derivative;
    auto const& Rot = cf.rotation;
    auto Rdc = [&](int a, int bb, int k) {
        double acc = 0.0;
        for (int p = 0; p < c; ++p)
            for (int q = 0; q < c; ++q) acc += Rot(a, p) * Rot(bb, q) * Rd[p][q][k];
        return acc;
    };
    auto const& lam = cd.lambda;
    double ntd = 0.0;
    for (int k = 0; k < 2; ++k) ntd = std::max(ntd, std::fabs(Rdc(0, 1, k) + 0.5 * sd.gradS[k]));
    for (int g = 2; g < c; ++g) {
        ntd = std::max({ntd, std::fabs(Rdc(0, g, 0) + 2.0 * b * lam[g][0]), std::fabs(Rdc(0, g, 1) + 2.0 * b * lam[g][1]),
                        std::fabs(Rdc(1, g, 0) - 2.0 * b * lam[g][1]), std::fabs(Rdc(1, g, 1) + 2.0 * b * lam[g][0])});
        for (int g2 = g + 1; g2 < c; ++g2)
            for (int k = 0; k < 2; ++k) ntd = std::max(ntd, std::fabs(Rdc(g, g2, k)));
    }
    sink.evaluate("normal_tensor_derivative", ntd, 0.0, ntd);

    double cross = 0.0, diff = 0.0;
    for (int g = 2; g < c; ++g) {
        cross += lam[g][0] * lam[g][1];
        diff += lam[g][0] * lam[g][0] - lam[g][1] * lam[g][1];
    }
    sink.evaluate("chern_orthogonality", cross, 0.0, detail::max_abs({cross, diff}));
    return sink.take();
}

// --------------------------------------------------------------------------------------------------------------------
// grid aggregation
// --------------------------------------------------------------------------------------------------------------------

struct CheckSummary
{
    std::string name;
    int tier = 1;
    double tolerance = 0.0;
    int evaluated = 0;
    int passed = 0;
    int failed = 0;
    int skipped = 0;
    int gauge_failed = 0;
    double max_residual = 0.0;
    std::optional<std::pair<double, double>> first_failure;
    std::string skip_reason;

    bool ok() const noexcept { return failed == 0 && gauge_failed == 0; }

    std::string status() const
    {
        if (gauge_failed > 0 && failed == 0) return "gauge_failed";
        if (failed > 0) return "fail";
        if (evaluated == 0) return "skipped";
        return "pass";
    }
};

struct ScalarStats
{
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    int count = 0;

    void add(double x)
    {
        if (count == 0) min = max = x;
        min = std::min(min, x);
        max = std::max(max, x);
        mean += (x - mean) / (count + 1);
        ++count;
    }
};

struct IdentityReport
{
    std::string surface;
    int ambient_n = 0;
    std::optional<int> degree_s;
    Grid grid;
    int tier = 1;
    int jet_order = 4;
    BundleType branch = BundleType::flat;
    std::vector<CheckSummary> checks;
    std::vector<std::pair<std::string, ScalarStats>> scalars;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](CheckSummary const& c) { return c.ok(); });
    }

    CheckSummary const& check(std::string const& name) const
    {
        for (auto const& c : checks)
            if (c.name == name) return c;
        throw usage_error("report has no check '" + name + "'");
    }
};

inline std::vector<PointAnalysis> analyze_grid(ImmersionSpec const& spec, Grid const& grid, int jet_order)
{
    std::vector<PointAnalysis> out;
    for (auto const& [u, v] : grid.points()) out.push_back(analyze_point(spec, u, v, jet_order));
    return out;
}

inline BundleType surface_branch(std::vector<PointAnalysis> const& points, double flatness)
{
    std::vector<bool> flags;
    flags.reserve(points.size());
    for (auto const& pa : points) flags.push_back(is_flat_point(pa.shape.operator_values(), flatness));
    return combine_branches(flags);
}

/// per-point checks aggregated over the grid in grid order
inline IdentityReport run_suite(ImmersionSpec const& spec, Grid const& grid, int tier, SuiteOptions const& opts = {},
                                Tolerances const& tol = Tolerances::defaults())
{
    int const jet_order = opts.jet_order;
    if (opts.gauge_rotations < 0) throw config_error("gauge rotation count must be non-negative");
    if (tier != 1 && tier != 2) throw config_error("tier must be 1 or 2");
    if (jet_order < 3 || jet_order > 4) throw config_error("jet order must be 3 or 4");
    if (tier == 2 && jet_order != 4) throw config_error("tier 2 requires jet order 4");

    IdentityReport rep;
    rep.surface = spec.name;
    rep.ambient_n = spec.ambient_n;
    rep.degree_s = spec.degree_s;
    rep.grid = grid;
    rep.tier = tier;
    rep.jet_order = jet_order;

    auto const points = analyze_grid(spec, grid, jet_order);
    rep.branch = surface_branch(points, tol.flatness);

    std::map<std::string, CheckSummary> by_name;
    for (auto const& info : check_registry()) {
        if (info.tier > tier) continue;
        CheckSummary cs;
        cs.name = info.name;
        cs.tier = info.tier;
        cs.tolerance = tol.get(info.name);
        by_name[info.name] = cs;
    }

    std::vector<std::pair<std::string, ScalarStats>> scalars{{"K", {}}, {"KN", {}}, {"S", {}}, {"P", {}}};
    if (jet_order >= 4) {
        scalars.emplace_back("Q", ScalarStats{});
        scalars.emplace_back("laplacian_S", ScalarStats{});
    }

    std::mt19937_64 rng(opts.seed);
    for (auto const& pa : points) {
        scalars[0].second.add(pa.curvature.K);
        scalars[1].second.add(pa.curvature.KN);
        scalars[2].second.add(pa.shape.S);
        scalars[3].second.add(pa.shape.P);
        if (jet_order >= 4) {
            scalars[4].second.add(*pa.shape.Q);
            scalars[5].second.add(*pa.laplacian);
        }
        for (auto const& chk : point_checks(pa, tier, tol, rep.branch, opts.gauge_rotations, &rng)) {
            auto& cs = by_name.at(chk.name);
            switch (chk.status) {
            case CheckStatus::pass:
            case CheckStatus::fail:
                ++cs.evaluated;
                cs.max_residual = std::max(cs.max_residual, chk.residual);
                if (chk.status == CheckStatus::pass) {
                    ++cs.passed;
                } else {
                    ++cs.failed;
                    if (!cs.first_failure) cs.first_failure = std::pair{chk.u, chk.v};
                }
                break;
            case CheckStatus::skipped:
                ++cs.skipped;
                if (cs.skip_reason.empty()) cs.skip_reason = chk.note;
                break;
            case CheckStatus::gauge_failed:
                ++cs.gauge_failed;
                if (!cs.first_failure) cs.first_failure = std::pair{chk.u, chk.v};
                if (cs.skip_reason.empty()) cs.skip_reason = chk.note;
                break;
            }
        }
    }
    for (auto const& info : check_registry())
        if (info.tier <= tier) rep.checks.push_back(by_name.at(info.name));
    rep.scalars = std::move(scalars);
    return rep;
}

// --------------------------------------------------------------------------------------------------------------------
// closed-form constants
// --------------------------------------------------------------------------------------------------------------------

struct ConstantEntry
{
    std::string quantity;
    double expected = 0.0;
    double mean = 0.0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ConstantReport
{
    std::string surface;
    BundleType branch = BundleType::flat;
    std::vector<ConstantEntry> entries;

    bool passed() const
    {
        return std::all_of(entries.begin(), entries.end(), [](ConstantEntry const& e) { return e.pass; });
    }

    ConstantEntry const& entry(std::string const& q) const
    {
        for (auto const& e : entries)
            if (e.quantity == q) return e;
        throw usage_error("constant report has no entry '" + q + "'");
    }
};

/**
    Measured K, S, K^N against K(s) = 2/(s(s+1)) and S = 2 - 2K for surfaces with a degree; K^N is compared with
    1 - K on nowhere-flat surfaces and with 0 on flat ones. Surfaces without a degree fall back to the closed-form
    constants stored in the spec.
*/
inline ConstantReport check_constants(ImmersionSpec const& spec, Grid const& grid, int jet_order = 3,
                                      double tol = 1e-8, double flatness = 1e-8)
{
    auto const points = analyze_grid(spec, grid, jet_order);
    ConstantReport rep;
    rep.surface = spec.name;
    rep.branch = surface_branch(points, flatness);

    double K_exp = 0.0, S_exp = 0.0, KN_exp = 0.0;
    if (spec.degree_s) {
        K_exp = calabi_gauss_curvature(*spec.degree_s);
        S_exp = calabi_squared_norm(*spec.degree_s);
        KN_exp = rep.branch == BundleType::flat ? 0.0 : 1.0 - K_exp;
    } else if (spec.expected) {
        K_exp = spec.expected->K;
        S_exp = spec.expected->S;
        KN_exp = spec.expected->KN;
    } else {
        throw usage_error("check_constants: surface '" + spec.name + "' has neither a degree nor closed-form constants");
    }

    auto entry = [&](std::string q, double expected, auto getter) {
        ConstantEntry e;
        e.quantity = std::move(q);
        e.expected = expected;
        e.tolerance = tol;
        ScalarStats st;
        for (auto const& pa : points) {
            double const x = getter(pa);
            st.add(x);
            e.max_deviation = std::max(e.max_deviation, std::fabs(x - expected));
        }
        e.mean = st.mean;
        e.pass = e.max_deviation <= tol;
        rep.entries.push_back(e);
    };
    entry("K", K_exp, [](PointAnalysis const& pa) { return pa.curvature.K; });
    entry("S", S_exp, [](PointAnalysis const& pa) { return pa.shape.S; });
    entry("KN", KN_exp, [](PointAnalysis const& pa) { return pa.curvature.KN; });
    return rep;
}

} // namespace minsurf
