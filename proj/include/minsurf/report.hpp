// SPDX-License-Identifier: Apache-2.0
/**
    \file
    \brief run configuration and deterministic JSON / CSV reports

    Every JSON report carries the schema version, tool name and version, the run configuration and the full
    tolerance ladder, and nothing time- or host-dependent. Doubles are written in shortest round-trip form, so
    parsing a report gives back the exact binary values. CSV output follows RFC 4180 with `%.17g` numbers.
*/
#pragma once

#include "minsurf/error.hpp"
#include "minsurf/frame_normalizer.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/identity_suite.hpp"
#include "minsurf/immersion.hpp"
#include "minsurf/pinching.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace minsurf {

using Json = nlohmann::ordered_json;

inline constexpr char const* schema_version = "1.0";
inline constexpr char const* tool_name = "minsurf";
inline constexpr char const* tool_version = "0.1.0";

enum class OutputFormat
{
    json,
    csv
};

struct RunConfig
{
    std::string surface;
    std::optional<int> degree_s;
    int nu = 10;
    int nv = 10;
    int jet_order = 4;
    int tier = 1;
    Tolerances tolerances = Tolerances::defaults();
    double classify_tol = 1e-6;
    double constants_tol = 1e-8;
    OutputFormat format = OutputFormat::json;
    std::optional<std::string> out;
    std::uint64_t seed = 0;
    int gauge_rotations = 0;

    void validate() const
    {
        if (nu < 2 || nv < 2) throw config_error("grid needs at least 2 x 2 points");
        if (jet_order < 3 || jet_order > 4) throw config_error("jet order must be 3 or 4");
        if (tier != 1 && tier != 2) throw config_error("tier must be 1 or 2");
        if (tier == 2 && jet_order != 4) throw config_error("tier 2 requires jet order 4");
        if (gauge_rotations < 0) throw config_error("gauge rotation count must be non-negative");
    }

    SuiteOptions suite_options() const { return {jet_order, gauge_rotations, seed}; }
};

// --------------------------------------------------------------------------------------------------------------------
// JSON pieces
// --------------------------------------------------------------------------------------------------------------------

inline Json tolerance_ladder(RunConfig const& cfg)
{
    Json checks = Json::array();
    for (auto const& info : check_registry())
        checks.push_back({{"name", info.name},
                          {"tier", info.tier},
                          {"tolerance", cfg.tolerances.get(info.name)},
                          {"relative", info.relative},
                          {"statement", info.statement}});
    return {{"checks", checks},
            {"flatness", cfg.tolerances.flatness},
            {"constants", cfg.constants_tol},
            {"classification", cfg.classify_tol}};
}

inline Json grid_json(Grid const& g)
{
    return {{"nu", g.nu}, {"nv", g.nv}, {"u_min", g.u_min}, {"u_max", g.u_max}, {"v_min", g.v_min}, {"v_max", g.v_max}};
}

/// the output path is left out on purpose: the same run written to two places yields the same bytes
inline Json config_json(RunConfig const& cfg, std::optional<Grid> const& grid = std::nullopt)
{
    Json j;
    j["surface"] = cfg.surface;
    j["degree_s"] = cfg.degree_s ? Json(*cfg.degree_s) : Json(nullptr);
    j["grid"] = grid ? grid_json(*grid) : Json{{"nu", cfg.nu}, {"nv", cfg.nv}};
    j["jet_order"] = cfg.jet_order;
    j["tier"] = cfg.tier;
    j["seed"] = cfg.seed;
    j["gauge_rotations"] = cfg.gauge_rotations;
    j["format"] = cfg.format == OutputFormat::json ? "json" : "csv";
    return j;
}

/// common envelope of every report
inline Json envelope(std::string const& command, RunConfig const& cfg, std::optional<Grid> const& grid = std::nullopt)
{
    Json j;
    j["schema_version"] = schema_version;
    j["tool"] = {{"name", tool_name}, {"version", tool_version}};
    j["command"] = command;
    j["config"] = config_json(cfg, grid);
    j["tolerance_ladder"] = tolerance_ladder(cfg);
    return j;
}

inline Json optional_json(std::optional<double> const& x) { return x ? Json(*x) : Json(nullptr); }

inline Json matrix_json(Eigen::MatrixXd const& m)
{
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline Json operators_json(ShapeOperators const& h)
{
    Json out = Json::array();
    for (auto const& L : h) out.push_back({{L[0][0], L[0][1]}, {L[1][0], L[1][1]}});
    return out;
}

inline Json curvature_json(CurvatureReport const& cr)
{
    Json nt = Json::array();
    for (auto const& e : cr.normal_tensor) nt.push_back({{"alpha", e.alpha}, {"beta", e.beta}, {"value", e.value}});
    return {{"u", cr.u}, {"v", cr.v}, {"K", cr.K}, {"KN", cr.KN}, {"S", cr.S}, {"normal_tensor", nt}};
}

inline Json canonical_json(CanonicalForm const& cf)
{
    return {{"branch", to_string(cf.branch)},
            {"b", cf.b},
            {"lambda3", cf.lambda3},
            {"lambda4", cf.lambda4},
            {"residual", cf.residual},
            {"S", cf.S},
            {"S3", cf.S3},
            {"S_bar", cf.S_bar},
            {"tangent_rotation", cf.tangent_rotation},
            {"rotation", matrix_json(cf.rotation)},
            {"operators", operators_json(cf.transformed)}};
}

inline Json eval_json(PointAnalysis const& pa, CanonicalForm const& cf)
{
    Json j = curvature_json(pa.curvature);
    j["P"] = pa.jet_order >= 3 ? Json(pa.shape.P) : Json(nullptr);
    j["Q"] = optional_json(pa.shape.Q);
    j["intrinsic_K"] = optional_json(pa.intrinsic_K);
    j["laplacian_S"] = optional_json(pa.laplacian);
    j["unit_sphere_residual"] = pa.unit_sphere_residual;
    j["metric_det"] = pa.frame.metric_det;
    j["operators"] = operators_json(pa.shape.operator_values());
    j["canonical"] = canonical_json(cf);
    return j;
}

inline Json identity_json(IdentityReport const& rep)
{
    Json checks = Json::array();
    for (auto const& c : rep.checks) {
        Json first = c.first_failure ? Json{{"u", c.first_failure->first}, {"v", c.first_failure->second}} : Json(nullptr);
        checks.push_back({{"name", c.name},
                          {"tier", c.tier},
                          {"status", c.status()},
                          {"tolerance", c.tolerance},
                          {"max_residual", c.max_residual},
                          {"evaluated", c.evaluated},
                          {"passed", c.passed},
                          {"failed", c.failed},
                          {"skipped", c.skipped},
                          {"gauge_failed", c.gauge_failed},
                          {"first_failure", first},
                          {"note", c.skip_reason}});
    }
    Json scalars = Json::object();
    Json means = Json::object();
    for (auto const& [name, st] : rep.scalars) {
        scalars[name] = {{"min", st.min}, {"max", st.max}, {"mean", st.mean}};
        means[name] = st.mean;
    }
    return {{"surface", rep.surface},
            {"ambient_n", rep.ambient_n},
            {"degree_s", rep.degree_s ? Json(*rep.degree_s) : Json(nullptr)},
            {"branch", to_string(rep.branch)},
            {"tier", rep.tier},
            {"jet_order", rep.jet_order},
            {"passed", rep.passed()},
            {"means", means},
            {"scalars", scalars},
            {"checks", checks}};
}

inline Json constants_json(ConstantReport const& rep)
{
    Json entries = Json::array();
    for (auto const& e : rep.entries)
        entries.push_back({{"quantity", e.quantity},
                           {"expected", e.expected},
                           {"mean", e.mean},
                           {"max_deviation", e.max_deviation},
                           {"tolerance", e.tolerance},
                           {"pass", e.pass}});
    return {{"passed", rep.passed()}, {"entries", entries}};
}

inline Json summary_json(SurfaceSummary const& s)
{
    return {{"K_min", s.K_min},   {"K_max", s.K_max}, {"KN_min", s.KN_min},          {"KN_max", s.KN_max},
            {"S_min", s.S_min},   {"S_max", s.S_max}, {"branch", to_string(s.branch)}, {"n_points", s.n_points}};
}

inline Json classification_json(Classification const& c)
{
    return {{"verdict", c.label()},
            {"class", to_string(c.verdict)},
            {"s", c.s ? Json(*c.s) : Json(nullptr)},
            {"rule", c.rule},
            {"margin", c.margin},
            {"asserted_only", c.asserted_only},
            {"hypotheses", {{"KN<=2K", c.kn_le_2k}, {"2K<=KN<=5K", c.kn_between_2k_5k}}},
            {"note", c.note}};
}

// --------------------------------------------------------------------------------------------------------------------
// catalog table and sweep
// --------------------------------------------------------------------------------------------------------------------

struct Fraction
{
    long num = 0;
    long den = 1;

    static Fraction make(long n, long d)
    {
        long const g = std::gcd(n, d);
        return g == 0 ? Fraction{0, 1} : Fraction{n / g, d / g};
    }

    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

struct CatalogRow
{
    std::string name;
    int ambient_n = 0;
    std::optional<int> degree_s;
    Fraction K, KN, S;
    std::string description;
};

inline CatalogRow catalog_row(ImmersionSpec const& spec)
{
    CatalogRow row{spec.name, spec.ambient_n, spec.degree_s, {}, {}, {}, spec.description};
    if (spec.degree_s) {
        long const s = *spec.degree_s, q = s * (s + 1);
        row.K = Fraction::make(2, q);
        row.KN = Fraction::make(q - 2, q);
        row.S = Fraction::make(2 * (s - 1) * (s + 2), q);
    } else if (spec.family == SurfaceFamily::clifford_torus) {
        row.K = {0, 1};
        row.KN = {0, 1};
        row.S = {2, 1};
    } else {
        throw usage_error("catalog_row: no closed form for '" + spec.name + "'");
    }
    return row;
}

inline std::string superscript(int n)
{
    static char const* const digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string out;
    for (char ch : std::to_string(n)) out += digits[ch - '0'];
    return out;
}

/// "veronese, S⁴, s=2, K=1/3, KN=2/3, S=4/3"
inline std::string catalog_line(CatalogRow const& r)
{
    std::string s = r.degree_s ? "s=" + std::to_string(*r.degree_s) : "—";
    return r.name + ", S" + superscript(r.ambient_n) + ", " + s + ", K=" + r.K.str() + ", KN=" + r.KN.str() +
           ", S=" + r.S.str();
}

inline Json catalog_json(std::vector<CatalogRow> const& rows)
{
    Json out = Json::array();
    for (auto const& r : rows)
        out.push_back({{"name", r.name},
                       {"ambient_n", r.ambient_n},
                       {"degree_s", r.degree_s ? Json(*r.degree_s) : Json(nullptr)},
                       {"K", r.K.str()},
                       {"KN", r.KN.str()},
                       {"S", r.S.str()},
                       {"description", r.description}});
    return out;
}

struct SweepRow
{
    int s = 1;
    double K = 0.0;
    double S = 0.0;
    double KN = 0.0;
    double P = 0.0;
    double wintgen_residual = 0.0;
};

/// grid means of K, S, K^N, P for each degree, and the largest |K + K^N - 1|
inline std::vector<SweepRow> sweep(int s_lo, int s_hi, int nu, int nv, int jet_order = 3)
{
    if (s_lo < 1 || s_hi > calabi_max_degree || s_lo > s_hi)
        throw usage_error("degree range must satisfy 1 <= lo <= hi <= " + std::to_string(calabi_max_degree));
    std::vector<SweepRow> rows;
    for (int s = s_lo; s <= s_hi; ++s) {
        auto const spec = build_calabi(s);
        SweepRow row{s};
        ScalarStats K, S, KN, P;
        for (auto const& pa : analyze_grid(spec, Grid::for_spec(spec, nu, nv), jet_order)) {
            K.add(pa.curvature.K);
            S.add(pa.shape.S);
            KN.add(pa.curvature.KN);
            P.add(pa.shape.P);
            row.wintgen_residual = std::max(row.wintgen_residual, std::fabs(pa.curvature.K + pa.curvature.KN - 1.0));
        }
        row.K = K.mean;
        row.S = S.mean;
        row.KN = KN.mean;
        row.P = P.mean;
        rows.push_back(row);
    }
    return rows;
}

inline Json sweep_json(std::vector<SweepRow> const& rows)
{
    Json out = Json::array();
    for (auto const& r : rows)
        out.push_back({{"s", r.s}, {"K", r.K}, {"S", r.S}, {"KN", r.KN}, {"P", r.P}, {"wintgen_residual", r.wintgen_residual}});
    return out;
}

// --------------------------------------------------------------------------------------------------------------------
// CSV
// --------------------------------------------------------------------------------------------------------------------

class CsvWriter
{
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    static std::string number(double x)
    {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }

    static std::string field(std::string const& s)
    {
        if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char ch : s) {
            if (ch == '"') out += '"';
            out += ch;
        }
        return out + "\"";
    }

    void row(std::vector<std::string> const& fields)
    {
        for (std::size_t i = 0; i < fields.size(); ++i) os_ << (i ? "," : "") << field(fields[i]);
        os_ << "\r\n";
    }

private:
    std::ostream& os_;
};

inline void write_identity_csv(std::ostream& os, IdentityReport const& rep)
{
    CsvWriter w(os);
    w.row({"name", "tier", "status", "tolerance", "max_residual", "evaluated", "failed", "skipped", "gauge_failed"});
    for (auto const& c : rep.checks)
        w.row({c.name, std::to_string(c.tier), c.status(), CsvWriter::number(c.tolerance),
               CsvWriter::number(c.max_residual), std::to_string(c.evaluated), std::to_string(c.failed),
               std::to_string(c.skipped), std::to_string(c.gauge_failed)});
}

inline void write_sweep_csv(std::ostream& os, std::vector<SweepRow> const& rows)
{
    CsvWriter w(os);
    w.row({"s", "K", "S", "KN", "P", "wintgen_residual"});
    for (auto const& r : rows)
        w.row({std::to_string(r.s), CsvWriter::number(r.K), CsvWriter::number(r.S), CsvWriter::number(r.KN),
               CsvWriter::number(r.P), CsvWriter::number(r.wintgen_residual)});
}

inline void write_catalog_csv(std::ostream& os, std::vector<CatalogRow> const& rows)
{
    CsvWriter w(os);
    w.row({"name", "ambient_n", "s", "K", "KN", "S"});
    for (auto const& r : rows)
        w.row({r.name, std::to_string(r.ambient_n), r.degree_s ? std::to_string(*r.degree_s) : "", r.K.str(),
               r.KN.str(), r.S.str()});
}

/// flat key,value projection of a JSON object; nested keys are joined with '.'
inline void write_flat_csv(std::ostream& os, Json const& j)
{
    CsvWriter w(os);
    w.row({"key", "value"});
    auto walk = [&](auto&& self, Json const& node, std::string const& prefix) -> void {
        if (node.is_object()) {
            for (auto it = node.begin(); it != node.end(); ++it)
                self(self, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
        } else if (node.is_array()) {
            for (std::size_t i = 0; i < node.size(); ++i) self(self, node[i], prefix + "." + std::to_string(i));
        } else if (node.is_number_float()) {
            w.row({prefix, CsvWriter::number(node.get<double>())});
        } else if (node.is_string()) {
            w.row({prefix, node.get<std::string>()});
        } else {
            w.row({prefix, node.dump()});
        }
    };
    walk(walk, j, "");
}

/// writes `text` to `path`; io_error if the file cannot be written
inline void write_file(std::string const& path, std::string const& text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw io_error("write to '" + path + "' failed");
}

} // namespace minsurf
