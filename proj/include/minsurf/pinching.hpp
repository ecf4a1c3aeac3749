// SPDX-License-Identifier: Apache-2.0
/**
    \file
    \brief classification of minimal surfaces in spheres from measured curvature ranges

    `summarize` reduces a surface to the ranges of K, K^N and S over a grid plus the normal-bundle type, and
    `classify` runs the pinching rules against those ranges. Verdicts for surfaces outside the catalog are
    predictions of the rule that fired, not certificates.
*/
#pragma once

#include "minsurf/error.hpp"
#include "minsurf/frame_normalizer.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/identity_suite.hpp"
#include "minsurf/immersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace minsurf {

struct SurfaceSummary
{
    double K_min = 0.0;
    double K_max = 0.0;
    double KN_min = 0.0;
    double KN_max = 0.0;
    double S_min = 0.0;
    double S_max = 0.0;
    BundleType branch = BundleType::flat;
    int n_points = 0;

    void validate() const
    {
        if (!(K_min <= K_max) || !(KN_min <= KN_max) || !(S_min <= S_max))
            throw usage_error("surface summary has an inverted or NaN range");
        if (KN_min < 0.0) throw usage_error("surface summary has negative normal curvature");
        if (S_min < 0.0) throw usage_error("surface summary has negative S");
        if (n_points < 1) throw usage_error("surface summary covers no points");
    }
};

/**
    Exact min/max of K, K^N and S over the grid. `operator_scale` multiplies every shape operator before the
    curvatures are formed; it exists to feed deliberately perturbed data to the classifier.
*/
inline SurfaceSummary summarize(ImmersionSpec const& spec, Grid const& grid, double operator_scale = 1.0,
                                double flatness = 1e-8)
{
    SurfaceSummary out;
    std::vector<bool> flat_flags;
    double const inf = std::numeric_limits<double>::infinity();
    out.K_min = out.KN_min = out.S_min = inf;
    out.K_max = out.KN_max = out.S_max = -inf;
    for (auto const& [u, v] : grid.points()) {
        auto const position = evaluate(spec, u, v, 2);
        auto const frame = build_frames(position);
        auto h = second_fundamental(position, frame).operator_values();
        for (auto& L : h)
            for (auto& row : L)
                for (double& x : row) x *= operator_scale;
        auto const cr = curvatures(h);
        out.K_min = std::min(out.K_min, cr.K);
        out.K_max = std::max(out.K_max, cr.K);
        out.KN_min = std::min(out.KN_min, cr.KN);
        out.KN_max = std::max(out.KN_max, cr.KN);
        out.S_min = std::min(out.S_min, cr.S);
        out.S_max = std::max(out.S_max, cr.S);
        flat_flags.push_back(is_flat_point(h, flatness));
        ++out.n_points;
    }
    out.branch = combine_branches(flat_flags);
    return out;
}

enum class Verdict
{
    GeodesicSphere,
    CliffordTorus,
    VeroneseS4,
    GeneralizedVeroneseS6,
    CalabiStandard,
    Indeterminate
};

inline char const* to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::GeodesicSphere: return "GeodesicSphere";
    case Verdict::CliffordTorus: return "CliffordTorus";
    case Verdict::VeroneseS4: return "VeroneseS4";
    case Verdict::GeneralizedVeroneseS6: return "GeneralizedVeroneseS6";
    case Verdict::CalabiStandard: return "CalabiStandard";
    case Verdict::Indeterminate: return "Indeterminate";
    }
    return "unknown";
}

struct Classification
{
    Verdict verdict = Verdict::Indeterminate;
    std::optional<int> s;       // degree, for CalabiStandard
    std::string rule;           // which hypothesis fired; empty only for Indeterminate
    double margin = 0.0;        // tol minus the distance of the ranges to the matched constant(s)
    bool asserted_only = false; // constant-K^N lookup, stated without proof
    bool kn_le_2k = false;      // K^N <= 2K holds on the whole range
    bool kn_between_2k_5k = false;
    std::string note;

    std::string label() const
    {
        std::string out = to_string(verdict);
        if (verdict == Verdict::CalabiStandard && s) out += "(" + std::to_string(*s) + ")";
        return out;
    }
};

namespace detail {

/// largest distance of [lo, hi] from the point c
inline double range_distance(double lo, double hi, double c) { return std::max(std::fabs(lo - c), std::fabs(hi - c)); }

} // namespace detail

/**
    Rules in priority order, each with tolerance-widened comparisons; a rule whose window holds but whose
    endpoints do not match falls through to the next one.

    1. S = 0                                          geodesic sphere
    2. flat normal bundle and S = 2                   Clifford torus
    3. K > 0, S <= 4/3 (S is 0 or 4/3)               Veronese when S = 4/3
    4. 4/3 <= S <= 5/3 (S is 4/3 or 5/3)            Veronese or generalized Veronese
    5. K > 0, K^N in [0, 2/3] or [2/3, 5/6]           same verdicts through K + K^N = 1
    6. K^N constant and positive, K > 0               degree-s standard immersion, K^N = 1 - 2/(s(s+1))
*/
inline Classification classify(SurfaceSummary const& sum, double tol = 1e-6)
{
    if (!(tol >= 0.0)) throw usage_error("classification tolerance must be non-negative");
    sum.validate();

    Classification out;
    out.kn_le_2k = sum.KN_max <= 2.0 * sum.K_min + tol;
    out.kn_between_2k_5k = 2.0 * sum.K_max <= sum.KN_min + tol && sum.KN_max <= 5.0 * sum.K_min + tol;

    if (sum.branch == BundleType::mixed) {
        out.note = "normal bundle is neither flat nor nowhere flat";
        return out;
    }
    auto verdict = [&](Verdict v, std::string rule, double distance) {
        out.verdict = v;
        out.rule = std::move(rule);
        out.margin = tol - distance;
        return out;
    };
    double const third4 = 4.0 / 3.0, third5 = 5.0 / 3.0;
    bool const positive_K = sum.K_min > 0.0;

    if (sum.S_max <= tol) return verdict(Verdict::GeodesicSphere, "S=0", sum.S_max);

    if (sum.branch == BundleType::flat) {
        double const d = detail::range_distance(sum.S_min, sum.S_max, 2.0);
        if (d <= tol) return verdict(Verdict::CliffordTorus, "flat_normal_bundle:S=2", d);
    }

    if (positive_K && sum.S_max <= third4 + tol) {
        double const d = detail::range_distance(sum.S_min, sum.S_max, third4);
        if (d <= tol)
            return verdict(Verdict::VeroneseS4, out.kn_le_2k ? "KN<=2K:S=4/3" : "S_window[0,4/3]:S=4/3", d);
    }

    if (third4 - tol <= sum.S_min && sum.S_max <= third5 + tol) {
        std::string const prefix = out.kn_between_2k_5k ? "2K<=KN<=5K" : "S_window[4/3,5/3]";
        double const d4 = detail::range_distance(sum.S_min, sum.S_max, third4);
        double const d5 = detail::range_distance(sum.S_min, sum.S_max, third5);
        if (d4 <= tol) return verdict(Verdict::VeroneseS4, prefix + ":S=4/3", d4);
        if (d5 <= tol) return verdict(Verdict::GeneralizedVeroneseS6, prefix + ":S=5/3", d5);
    }

    if (positive_K) {
        double const two3 = 2.0 / 3.0, five6 = 5.0 / 6.0;
        if (sum.KN_max <= two3 + tol) {
            double const d0 = detail::range_distance(sum.KN_min, sum.KN_max, 0.0);
            double const d23 = detail::range_distance(sum.KN_min, sum.KN_max, two3);
            if (d0 <= tol) return verdict(Verdict::GeodesicSphere, "KN_window[0,2/3]:KN=0", d0);
            if (d23 <= tol) return verdict(Verdict::VeroneseS4, "KN_window[0,2/3]:KN=2/3", d23);
        }
        if (two3 - tol <= sum.KN_min && sum.KN_max <= five6 + tol) {
            double const d23 = detail::range_distance(sum.KN_min, sum.KN_max, two3);
            double const d56 = detail::range_distance(sum.KN_min, sum.KN_max, five6);
            if (d23 <= tol) return verdict(Verdict::VeroneseS4, "KN_window[2/3,5/6]:KN=2/3", d23);
            if (d56 <= tol) return verdict(Verdict::GeneralizedVeroneseS6, "KN_window[2/3,5/6]:KN=5/6", d56);
        }
    }

    if (positive_K && sum.KN_max - sum.KN_min <= tol && sum.KN_min > 0.0 && sum.KN_max < 1.0) {
        // K^N = 1 - 2/(s(s+1))  =>  s(s+1) = 2/(1 - K^N)
        double const KN = 0.5 * (sum.KN_min + sum.KN_max);
        double const s_real = 0.5 * (-1.0 + std::sqrt(1.0 + 8.0 / (1.0 - KN)));
        double const s = std::round(s_real);
        double const err = std::fabs(s_real - s);
        double const threshold = tol * s * (s + 1.0);
        if (s >= 2.0 && err <= threshold) {
            int const si = static_cast<int>(s);
            Verdict v = si == 2 ? Verdict::VeroneseS4 : si == 3 ? Verdict::GeneralizedVeroneseS6 : Verdict::CalabiStandard;
            verdict(v, "constant_KN", 0.0);
            out.margin = threshold - err;
            out.s = si;
            out.asserted_only = true;
            return out;
        }
        out.note = "constant K^N does not match any degree";
        return out;
    }
    out.note = "no rule applies";
    return out;
}

struct SimonWindow
{
    int s = 1;
    double lower = 0.0;
    double upper = 0.0;
};

/// the s with S(s) <= S <= S(s+1); a value on a boundary belongs to the lower window
inline SimonWindow simon_window(double S)
{
    if (!(S >= 0.0)) throw usage_error("simon_window: S must be non-negative");
    if (S >= 2.0) throw domain_error("simon_window: S >= 2 lies outside every window (it would force K <= 0)");
    int s = 1;
    while (S > calabi_squared_norm(s + 1)) ++s;
    return {s, calabi_squared_norm(s), calabi_squared_norm(s + 1)};
}

} // namespace minsurf
