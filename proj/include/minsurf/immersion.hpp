// SPDX-License-Identifier: Apache-2.0
/**
    \file
    \brief catalog of closed minimal surfaces in unit spheres, parametrized by a rectangular chart

    Every map sends a chart point (u, v) to a unit vector of R^(n+1). Surfaces built from the round S^2 use the
    spherical chart x = sin u cos v, y = sin u sin v, z = cos u, with u the polar angle. Points closer than
    `pole_margin` to either pole are rejected: the chart degenerates there even though the surface does not.
*/
#pragma once

#include "minsurf/error.hpp"
#include "minsurf/jet.hpp"
#include "minsurf/spherical_harmonics.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace minsurf {

using JetVector = std::vector<Jet2>;

enum class SurfaceFamily
{
    equator,
    clifford_torus,
    veronese,
    calabi
};

struct ChartDomain
{
    double u_min = 0.0;
    double u_max = 0.0;
    double v_min = 0.0;
    double v_max = 0.0;
    double pole_margin = 0.0; // exclusion band at both ends of the u range

    double usable_u_min() const noexcept { return u_min + pole_margin; }
    double usable_u_max() const noexcept { return u_max - pole_margin; }

    bool contains(double u, double v) const noexcept
    {
        return u >= usable_u_min() && u <= usable_u_max() && v >= v_min && v <= v_max;
    }

    void require(double u, double v) const
    {
        if (contains(u, v)) return;
        std::ostringstream msg;
        msg.precision(17);
        msg << "chart point (" << u << ", " << v << ") outside the usable domain u in [" << usable_u_min() << ", "
            << usable_u_max() << "], v in [" << v_min << ", " << v_max << "]";
        if (pole_margin > 0.0)
            msg << " (exclusion band: |u| >= " << pole_margin << " and |pi - u| >= " << pole_margin
                << " around the poles)";
        throw domain_error(msg.str());
    }
};

/// closed-form constants, used only as test oracles
struct ExpectedConstants
{
    double K = 0.0;
    double KN = 0.0;
    double S = 0.0;
};

struct ImmersionSpec
{
    using Map = std::function<JetVector(Jet2 const& u, Jet2 const& v)>;

    std::string name;
    std::string description;
    SurfaceFamily family = SurfaceFamily::calabi;
    int ambient_n = 2; // image lies in S^ambient_n inside R^(ambient_n + 1)
    std::optional<int> degree_s;
    ChartDomain chart;
    std::optional<ExpectedConstants> expected;
    double min_metric_det = 0.0; // lower bound of det(g) over the usable chart
    Map map;
};

namespace detail {

inline constexpr double pole_margin = 0.15;

inline ChartDomain spherical_chart()
{
    return {0.0, std::numbers::pi, 0.0, 2.0 * std::numbers::pi, pole_margin};
}

template <typename T> struct SpherePoint
{
    T x, y, z;
};

template <typename T> SpherePoint<T> sphere_point(T const& u, T const& v)
{
    using std::cos;
    using std::sin;
    T const su = sin(u);
    return {su * cos(v), su * sin(v), cos(u)};
}

inline double spherical_det_bound(double metric_scale)
{
    double const s = std::sin(pole_margin);
    return metric_scale * metric_scale * s * s;
}

} // namespace detail

/// curvature spectrum K(s) = 2 / (s (s + 1)) of the degree-s standard immersions
inline double calabi_gauss_curvature(int s) { return 2.0 / (s * (s + 1.0)); }

/// S(s) = 2 (s - 1)(s + 2) / (s (s + 1)), equivalently 2 - 2 K(s)
inline double calabi_squared_norm(int s) { return 2.0 * (s - 1.0) * (s + 2.0) / (s * (s + 1.0)); }

inline constexpr int calabi_max_degree = 6;

/**
    Degree-s standard minimal immersion of S^2 into S^(2s): the chart point is mapped to the unit sphere and then
    through the 2s+1 real degree-s harmonics, scaled so the image has unit norm.
*/
inline ImmersionSpec build_calabi(int s)
{
    if (s < 1 || s > calabi_max_degree)
        throw usage_error("build_calabi: degree " + std::to_string(s) + " outside the supported range [1, " +
                          std::to_string(calabi_max_degree) + "]");
    ImmersionSpec spec;
    spec.name = "calabi_" + std::to_string(s);
    spec.description = "degree-" + std::to_string(s) + " standard minimal immersion of S^2 into S^" +
                       std::to_string(2 * s);
    spec.family = SurfaceFamily::calabi;
    spec.ambient_n = 2 * s;
    spec.degree_s = s;
    spec.chart = detail::spherical_chart();
    double const K = calabi_gauss_curvature(s);
    spec.expected = ExpectedConstants{K, s >= 2 ? 1.0 - K : 0.0, calabi_squared_norm(s)};
    spec.min_metric_det = detail::spherical_det_bound(1.0 / K);
    spec.map = [s](Jet2 const& u, Jet2 const& v) {
        auto const p = detail::sphere_point(u, v);
        return harmonics::real_basis(s, p.x, p.y, p.z);
    };
    return spec;
}

/// totally geodesic S^2 inside S^3
inline ImmersionSpec make_equator()
{
    ImmersionSpec spec;
    spec.name = "equator";
    spec.description = "great 2-sphere in S^3";
    spec.family = SurfaceFamily::equator;
    spec.ambient_n = 3;
    spec.degree_s = 1;
    spec.chart = detail::spherical_chart();
    spec.expected = ExpectedConstants{1.0, 0.0, 0.0};
    spec.min_metric_det = detail::spherical_det_bound(1.0);
    spec.map = [](Jet2 const& u, Jet2 const& v) {
        auto const p = detail::sphere_point(u, v);
        return JetVector{p.x, p.y, p.z, u * 0.0};
    };
    return spec;
}

/// (cos a, sin a, cos b, sin b) / sqrt 2
inline ImmersionSpec make_clifford_torus()
{
    ImmersionSpec spec;
    spec.name = "clifford_torus";
    spec.description = "flat minimal torus in S^3";
    spec.family = SurfaceFamily::clifford_torus;
    spec.ambient_n = 3;
    spec.chart = {0.0, 2.0 * std::numbers::pi, 0.0, 2.0 * std::numbers::pi, 0.0};
    spec.expected = ExpectedConstants{0.0, 0.0, 2.0};
    spec.min_metric_det = 0.25;
    spec.map = [](Jet2 const& a, Jet2 const& b) {
        double const r = std::numbers::sqrt2 / 2.0;
        return JetVector{cos(a) * r, sin(a) * r, cos(b) * r, sin(b) * r};
    };
    return spec;
}

/// sqrt 3 (yz, xz, xy, (x^2 - y^2)/2, (x^2 + y^2 - 2 z^2)/(2 sqrt 3)) on the unit S^2
inline ImmersionSpec make_veronese()
{
    ImmersionSpec spec;
    spec.name = "veronese";
    spec.description = "Veronese surface in S^4 (quadratic-form parametrization)";
    spec.family = SurfaceFamily::veronese;
    spec.ambient_n = 4;
    spec.degree_s = 2;
    spec.chart = detail::spherical_chart();
    spec.expected = ExpectedConstants{1.0 / 3.0, 2.0 / 3.0, 4.0 / 3.0};
    spec.min_metric_det = detail::spherical_det_bound(3.0);
    spec.map = [](Jet2 const& u, Jet2 const& v) {
        auto const [x, y, z] = detail::sphere_point(u, v);
        double const r3 = std::numbers::sqrt3;
        return JetVector{y * z * r3, x * z * r3, x * y * r3, (x * x - y * y) * (r3 / 2.0),
                         (x * x + y * y - z * z * 2.0) * 0.5};
    };
    return spec;
}

inline ImmersionSpec make_generalized_veronese()
{
    ImmersionSpec spec = build_calabi(3);
    spec.name = "generalized_veronese";
    spec.description = "generalized Veronese surface in S^6 (degree-3 standard immersion)";
    return spec;
}

inline std::vector<ImmersionSpec> catalog_list()
{
    return {make_equator(), make_clifford_torus(), make_veronese(), make_generalized_veronese(), build_calabi(4)};
}

/// catalog entry by name; "calabi_<s>" resolves through build_calabi
inline ImmersionSpec find_surface(std::string const& name)
{
    for (auto& spec : catalog_list())
        if (spec.name == name) return spec;
    std::string const prefix = "calabi_";
    if (name.rfind(prefix, 0) == 0) {
        std::string const digits = name.substr(prefix.size());
        if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 3)
            return build_calabi(std::stoi(digits));
    }
    throw usage_error("unknown surface '" + name + "'");
}

/// component jets of the immersion at (u, v)
inline JetVector evaluate(ImmersionSpec const& spec, double u, double v, int order)
{
    if (!spec.map) throw usage_error("evaluate: surface '" + spec.name + "' has no map");
    if (order < 0 || order > Jet2::max_order) throw usage_error("evaluate: jet order out of range");
    spec.chart.require(u, v);
    JetVector out = spec.map(seed_variable(Variable::u, u, order), seed_variable(Variable::v, v, order));
    if (static_cast<int>(out.size()) != spec.ambient_n + 1)
        throw usage_error("evaluate: surface '" + spec.name + "' produced the wrong number of components");
    return out;
}

} // namespace minsurf
