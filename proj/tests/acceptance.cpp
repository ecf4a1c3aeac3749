// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// usage: acceptance <path-to-minsurf-binary> <scratch-dir>

#include "minsurf/frame_normalizer.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/identity_suite.hpp"
#include "minsurf/immersion.hpp"
#include "minsurf/pinching.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>

using namespace minsurf;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, std::string const& title, bool ok, std::string const& detail)
{
    std::printf("criterion %d %-28s %s  %s\n", id, (title + ":").c_str(), ok ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(char const* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Grid grid10(ImmersionSpec const& s) { return Grid::for_spec(s, 10, 10); }

void constants()
{
    bool ok = true;
    double worst = 0.0, slowest = 0.0;
    for (auto const& spec : catalog_list()) {
        auto const t0 = Clock::now();
        auto const rep = check_constants(spec, grid10(spec), 3, 1e-8);
        double const dt = seconds_since(t0);
        slowest = std::max(slowest, dt);
        for (auto const& e : rep.entries) worst = std::max(worst, e.max_deviation);
        ok = ok && rep.passed() && dt < 2.0;
    }
    report(1, "constant reproduction", ok, fmt("max deviation %.3g, slowest surface %.3f s", worst, slowest));
}

void wintgen()
{
    double worst = 0.0;
    int surfaces = 0;
    for (auto const& spec : catalog_list()) {
        auto const points = analyze_grid(spec, grid10(spec), 3);
        if (surface_branch(points, 1e-8) != BundleType::nowhere_flat) continue;
        ++surfaces;
        for (auto const& pa : points) worst = std::max(worst, std::fabs(pa.curvature.K + pa.curvature.KN - 1.0));
    }
    report(2, "Wintgen identity", worst <= 1e-8 && surfaces == 3,
           fmt("max |K + KN - 1| = %.3g over %g nowhere-flat surfaces", worst, surfaces));
}

void canonical_frame()
{
    std::mt19937_64 rng(20240601);
    double worst_res = 0.0, worst_b = 0.0;
    bool ok = true;
    for (auto const& spec : {make_veronese(), make_generalized_veronese()}) {
        for (auto const& [u, v] : grid10(spec).points()) {
            auto const pos = evaluate(spec, u, v, 2);
            auto const h = second_fundamental(pos, build_frames(pos)).operator_values();
            int const c = static_cast<int>(h.size());
            for (int t = 0; t <= 20; ++t) {
                auto const hr = t == 0 ? h : rotate_normals(h, random_rotation(c, rng));
                auto const cf = canonicalize(hr);
                ok = ok && cf.branch == Branch::nowhere_flat;
                worst_res = std::max(worst_res, cf.residual);
                worst_b = std::max(worst_b, std::fabs(cf.b * cf.b - cf.S / 4.0));
            }
        }
    }
    ok = ok && worst_res <= 1e-8 && worst_b <= 1e-8;
    report(3, "canonical frame", ok,
           fmt("max residual %.3g, max |b^2 - S/4| %.3g (100 points x 21 gauges)", worst_res, worst_b));
}

void simons()
{
    auto const t0 = Clock::now();
    double worst = 0.0, p_dev = 0.0;
    for (auto const& spec : catalog_list()) {
        if (spec.name == "calabi_4") continue;
        bool const flat = spec.name == "equator" || spec.name == "clifford_torus";
        double const P_expected = spec.name == "veronese" ? 0.0 : 5.0 / 6.0;
        for (auto const& pa : analyze_grid(spec, grid10(spec), 4)) {
            double const S = pa.shape.S, P = pa.shape.P, half = 0.5 * *pa.laplacian;
            double const rhs = flat ? P + (2.0 - S) * S : P - 0.5 * S * (3.0 * S - 4.0);
            worst = std::max(worst, std::fabs(half - rhs) / std::max(1.0, P));
            if (!flat) p_dev = std::max(p_dev, std::fabs(P - P_expected));
        }
    }
    double const dt = seconds_since(t0);
    report(4, "Simons identities", worst <= 1e-5 && p_dev <= 1e-6 && dt < 10.0,
           fmt("max relative residual %.3g, max |P - P_expected| %.3g, %.3f s", worst, p_dev, dt));
}

void tier_two()
{
    auto const t0 = Clock::now();
    auto const spec = make_generalized_veronese();
    double worst_skew = 0.0, worst_q = -1e300;
    for (auto const& pa : analyze_grid(spec, Grid::for_spec(spec, 5, 5), 4)) {
        auto const cf = canonicalize(pa.shape.operator_values());
        auto const cd = canonical_derivatives(pa.shape, cf, pa.hessian);
        double const S = pa.shape.S;
        auto const& m3 = cd.lambda2[0];
        worst_skew = std::max(worst_skew, std::fabs(m3[0][1] - m3[1][0] - 0.25 * std::sqrt(S) * (3.0 * S - 4.0)));
        worst_q = std::max(worst_q, 0.25 * S * (3.0 * S - 4.0) * (3.0 * S - 4.0) - *pa.shape.Q);
    }
    double const dt = seconds_since(t0);
    report(5, "tier-2 Ricci relations", worst_skew <= 1e-5 && worst_q <= 1e-5 && dt < 30.0,
           fmt("max skew residual %.3g, max (bound - Q) %.3g, %.3f s", worst_skew, worst_q, dt));
}

void structural()
{
    std::mt19937_64 rng(77);
    auto const tol = Tolerances::defaults();
    double codazzi = 0, minimal = 0, gauss = 0, unit = 0;
    for (auto const& spec : catalog_list()) {
        std::uniform_real_distribution<double> du(spec.chart.usable_u_min(), spec.chart.usable_u_max());
        std::uniform_real_distribution<double> dv(spec.chart.v_min, spec.chart.v_max);
        for (int k = 0; k < 100; ++k) {
            double const u = du(rng), v = dv(rng);
            auto const pa = analyze_point(spec, u, v, 3);
            for (auto const& c : point_checks(pa, 1, tol, BundleType::mixed)) {
                if (c.name == "codazzi") codazzi = std::max(codazzi, c.residual);
                if (c.name == "minimality") minimal = std::max(minimal, c.residual);
                if (c.name == "gauss_equation") gauss = std::max(gauss, c.residual);
                if (c.name == "unit_sphere") unit = std::max(unit, c.residual);
            }
        }
    }
    bool const ok = codazzi <= 1e-8 && minimal <= 1e-9 && gauss <= 1e-7 && unit <= 1e-10;
    char buf[200];
    std::snprintf(buf, sizeof buf, "codazzi %.3g, |H| %.3g, gauss %.3g, unit sphere %.3g", codazzi, minimal, gauss, unit);
    report(6, "structural properties", ok, buf);
}

void classifier()
{
    std::vector<std::pair<ImmersionSpec, std::string>> cases{
        {make_equator(), "GeodesicSphere"},     {make_clifford_torus(), "CliffordTorus"},
        {make_veronese(), "VeroneseS4"},        {make_generalized_veronese(), "GeneralizedVeroneseS6"},
        {build_calabi(4), "CalabiStandard(4)"}, {build_calabi(5), "CalabiStandard(5)"}};
    int matched = 0, indeterminate = 0, perturbed = 0;
    for (auto const& [spec, label] : cases) {
        matched += classify(summarize(spec, grid10(spec))).label() == label;
        // zero operators stay zero under scaling, so the equator cannot be perturbed this way
        if (spec.name == "equator") continue;
        ++perturbed;
        indeterminate += classify(summarize(spec, grid10(spec), 1.1)).verdict == Verdict::Indeterminate;
    }
    auto mixed = summarize(make_veronese(), grid10(make_veronese()));
    mixed.branch = BundleType::mixed;
    bool const mixed_ok = classify(mixed).verdict == Verdict::Indeterminate;
    bool const ok = matched == 6 && indeterminate == perturbed && mixed_ok;
    report(7, "classifier round-trip", ok,
           fmt("%g/6 round-trips, %g/%g perturbed indeterminate", matched, indeterminate, perturbed) +
               (mixed_ok ? ", mixed indeterminate" : ", mixed NOT indeterminate"));
}

std::string slurp(std::string const& path)
{
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void determinism(std::string const& binary, std::string const& dir)
{
    std::string const a = dir + "/acceptance_verify_a.json", b = dir + "/acceptance_verify_b.json";
    std::string const args = " verify generalized_veronese --tier 2 --gauge-rotations 3 --seed 5 --out ";
    int const ra = std::system((binary + args + a + " > /dev/null").c_str());
    int const rb = std::system((binary + args + b + " > /dev/null").c_str());
    std::string const ta = slurp(a), tb = slurp(b);
    bool const ok = ra == 0 && rb == 0 && !ta.empty() && ta == tb;
    report(8, "determinism", ok,
           fmt("two verify runs, %g and %g bytes, ", static_cast<double>(ta.size()), static_cast<double>(tb.size())) +
               (ta == tb ? "identical" : "different"));
}

} // namespace

int main(int argc, char** argv)
{
    if (argc < 3) {
        std::fprintf(stderr, "usage: acceptance <minsurf-binary> <scratch-dir>\n");
        return 2;
    }
    try {
        constants();
        wintgen();
        canonical_frame();
        simons();
        tier_two();
        structural();
        classifier();
        determinism(argv[1], argv[2]);
    } catch (std::exception const& e) {
        std::printf("acceptance aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
