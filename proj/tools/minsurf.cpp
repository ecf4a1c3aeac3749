// SPDX-License-Identifier: Apache-2.0
// minsurf: command-line front end for the catalog, identity suite, classifier and degree sweep.
//
// exit codes: 0 success, 1 verification failure, 2 domain or usage error, 3 I/O error

#include "minsurf/frame_normalizer.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/identity_suite.hpp"
#include "minsurf/immersion.hpp"
#include "minsurf/pinching.hpp"
#include "minsurf/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace minsurf;

enum ExitCode
{
    exit_ok = 0,
    exit_verification = 1,
    exit_usage = 2,
    exit_io = 3
};

struct CliArgs
{
    std::string surface_flag;
    std::string surface_positional;
    int degree = 0;
    std::string grid = "10x10";
    int jet_order = 4;
    int tier = 1;
    std::vector<std::string> tols;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 0;
    int gauge_rotations = 0;
    double u = 0.0;
    double v = 0.0;
    std::string s_range = "1..4";
};

std::pair<int, int> parse_pair(std::string const& text, std::string const& sep, std::string const& what)
{
    auto const pos = text.find(sep);
    if (pos == std::string::npos) throw usage_error(what + " must look like A" + sep + "B, got '" + text + "'");
    try {
        std::size_t used1 = 0, used2 = 0;
        std::string const a = text.substr(0, pos), b = text.substr(pos + sep.size());
        int const x = std::stoi(a, &used1), y = std::stoi(b, &used2);
        if (used1 != a.size() || used2 != b.size()) throw std::invalid_argument(text);
        return {x, y};
    } catch (std::logic_error const&) {
        throw usage_error(what + " must look like A" + sep + "B, got '" + text + "'");
    }
}

void apply_tolerance(RunConfig& cfg, std::string const& spec)
{
    auto const eq = spec.find('=');
    if (eq == std::string::npos) throw usage_error("--tol expects NAME=VALUE, got '" + spec + "'");
    std::string const name = spec.substr(0, eq);
    double value = 0.0;
    try {
        std::size_t used = 0;
        value = std::stod(spec.substr(eq + 1), &used);
        if (used != spec.size() - eq - 1) throw std::invalid_argument(spec);
    } catch (std::logic_error const&) {
        throw usage_error("--tol value is not a number: '" + spec + "'");
    }
    if (name == "classification") {
        if (!(value >= 0.0)) throw usage_error("classification tolerance must be non-negative");
        cfg.classify_tol = value;
    } else if (name == "constants") {
        if (!(value > 0.0)) throw usage_error("constants tolerance must be positive");
        cfg.constants_tol = value;
    } else {
        if (name == "all") {
            cfg.constants_tol = value;
            cfg.classify_tol = value;
        }
        cfg.tolerances.set(name, value);
    }
}

RunConfig make_config(CliArgs const& a)
{
    RunConfig cfg;
    if (!a.surface_flag.empty() && !a.surface_positional.empty() && a.surface_flag != a.surface_positional)
        throw usage_error("surface given twice with different names");
    cfg.surface = a.surface_flag.empty() ? a.surface_positional : a.surface_flag;
    if (a.degree != 0) cfg.degree_s = a.degree;
    auto const [nu, nv] = parse_pair(a.grid, "x", "--grid");
    cfg.nu = nu;
    cfg.nv = nv;
    cfg.jet_order = a.jet_order;
    cfg.tier = a.tier;
    for (auto const& t : a.tols) apply_tolerance(cfg, t);
    if (a.format == "json")
        cfg.format = OutputFormat::json;
    else if (a.format == "csv")
        cfg.format = OutputFormat::csv;
    else
        throw usage_error("--format must be json or csv");
    if (!a.out.empty()) cfg.out = a.out;
    cfg.seed = a.seed;
    cfg.gauge_rotations = a.gauge_rotations;
    cfg.validate();
    return cfg;
}

/// resolves --surface / --s to a catalog entry and records the resolved name and degree in the config
ImmersionSpec resolve_surface(RunConfig& cfg)
{
    ImmersionSpec spec;
    if (cfg.surface.empty() || cfg.surface == "calabi") {
        if (!cfg.degree_s) throw usage_error("no surface given: use --surface NAME or --s DEGREE");
        spec = build_calabi(*cfg.degree_s);
    } else {
        spec = find_surface(cfg.surface);
        if (cfg.degree_s && spec.degree_s != cfg.degree_s)
            throw usage_error("--s " + std::to_string(*cfg.degree_s) + " contradicts surface '" + spec.name + "'");
    }
    cfg.surface = spec.name;
    cfg.degree_s = spec.degree_s;
    return spec;
}

void emit(RunConfig const& cfg, std::string const& text, std::string const& summary)
{
    if (cfg.out) {
        write_file(*cfg.out, text);
        std::cout << summary << "\n";
    } else {
        std::cout << text;
    }
}

std::string json_text(Json const& j) { return j.dump(2) + "\n"; }

int cmd_list(RunConfig const& cfg, bool structured)
{
    std::vector<CatalogRow> rows;
    for (auto const& spec : catalog_list()) rows.push_back(catalog_row(spec));
    if (!structured && !cfg.out) {
        for (auto const& r : rows) std::cout << catalog_line(r) << "\n";
        return exit_ok;
    }
    std::ostringstream os;
    if (cfg.format == OutputFormat::csv) {
        write_catalog_csv(os, rows);
    } else {
        Json j = envelope("list", cfg);
        j["catalog"] = catalog_json(rows);
        os << json_text(j);
    }
    emit(cfg, os.str(), "wrote catalog (" + std::to_string(rows.size()) + " surfaces)");
    return exit_ok;
}

int cmd_eval(RunConfig cfg, double u, double v)
{
    auto const spec = resolve_surface(cfg);
    auto const pa = analyze_point(spec, u, v, cfg.jet_order);
    auto const cf = canonicalize(pa.shape.operator_values(), cfg.tolerances.flatness);
    Json j = envelope("eval", cfg);
    j["point"] = eval_json(pa, cf);
    std::ostringstream os;
    if (cfg.format == OutputFormat::csv)
        write_flat_csv(os, j["point"]);
    else
        os << json_text(j);
    emit(cfg, os.str(), "wrote evaluation of " + spec.name);
    return exit_ok;
}

int cmd_verify(RunConfig cfg)
{
    auto const spec = resolve_surface(cfg);
    Grid const grid = Grid::for_spec(spec, cfg.nu, cfg.nv);
    auto const rep = run_suite(spec, grid, cfg.tier, cfg.suite_options(), cfg.tolerances);
    auto const constants = check_constants(spec, grid, cfg.jet_order, cfg.constants_tol, cfg.tolerances.flatness);
    bool const passed = rep.passed() && constants.passed();

    std::ostringstream os;
    if (cfg.format == OutputFormat::csv) {
        write_identity_csv(os, rep);
    } else {
        Json j = envelope("verify", cfg, grid);
        j["passed"] = passed;
        j["identities"] = identity_json(rep);
        j["constants"] = constants_json(constants);
        os << json_text(j);
    }
    std::string summary = "verify " + spec.name + ": " + (passed ? "pass" : "FAIL");
    for (auto const& c : rep.checks)
        if (!c.ok()) summary += "\n  " + c.name + " " + c.status() + " max_residual=" + CsvWriter::number(c.max_residual);
    for (auto const& e : constants.entries)
        if (!e.pass) summary += "\n  constant " + e.quantity + " deviation=" + CsvWriter::number(e.max_deviation);
    emit(cfg, os.str(), summary);
    if (!cfg.out && !passed) std::cerr << summary << "\n";
    return passed ? exit_ok : exit_verification;
}

int cmd_classify(RunConfig cfg)
{
    auto const spec = resolve_surface(cfg);
    Grid const grid = Grid::for_spec(spec, cfg.nu, cfg.nv);
    auto const summary = summarize(spec, grid, 1.0, cfg.tolerances.flatness);
    auto const cls = classify(summary, cfg.classify_tol);
    Json j = envelope("classify", cfg, grid);
    j["summary"] = summary_json(summary);
    j["classification"] = classification_json(cls);
    std::ostringstream os;
    if (cfg.format == OutputFormat::csv) {
        Json flat;
        flat["summary"] = j["summary"];
        flat["classification"] = j["classification"];
        write_flat_csv(os, flat);
    } else {
        os << json_text(j);
    }
    emit(cfg, os.str(), spec.name + ": " + cls.label() + (cls.rule.empty() ? "" : " [" + cls.rule + "]"));
    return exit_ok;
}

int cmd_sweep(RunConfig const& cfg, std::string const& range)
{
    auto const [lo, hi] = parse_pair(range, "..", "--s-range");
    auto const rows = sweep(lo, hi, cfg.nu, cfg.nv, cfg.jet_order);
    std::ostringstream os;
    if (cfg.format == OutputFormat::json) {
        Json j = envelope("sweep", cfg);
        j["s_range"] = {lo, hi};
        j["rows"] = sweep_json(rows);
        os << json_text(j);
    } else {
        write_sweep_csv(os, rows);
    }
    emit(cfg, os.str(), "wrote sweep over s = " + range);
    return exit_ok;
}

void add_common(CLI::App* sub, CliArgs& a, bool surface)
{
    if (surface) {
        sub->add_option("name", a.surface_positional, "surface name, same as --surface");
        sub->add_option("--surface", a.surface_flag, "surface name (see `minsurf list`) or 'calabi'");
        sub->add_option("--s", a.degree, "degree of the standard immersion S^2 -> S^(2s)");
    }
    sub->add_option("--grid", a.grid, "sample grid NUxNV")->capture_default_str();
    sub->add_option("--jet-order", a.jet_order, "jet order, 3 or 4")->capture_default_str();
    sub->add_option("--tier", a.tier, "identity tier, 1 or 2")->capture_default_str();
    sub->add_option("--tol", a.tols, "tolerance override NAME=VALUE (repeatable; NAME may be all, flatness, "
                                     "constants, classification or a check name)");
    sub->add_option("--out", a.out, "write the report to this path");
    sub->add_option("--seed", a.seed, "seed for random gauge rotations")->capture_default_str();
    sub->add_option("--gauge-rotations", a.gauge_rotations, "random normal rotations per point in verify")
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Curvature identities and pinching classification for minimal surfaces in spheres"};
    app.require_subcommand(1);
    CliArgs a;

    auto* list = app.add_subcommand("list", "print the surface catalog");
    auto* eval = app.add_subcommand("eval", "curvatures and canonical frame at one chart point");
    auto* verify = app.add_subcommand("verify", "run the identity suite over a grid");
    auto* cls = app.add_subcommand("classify", "classify a surface from its curvature ranges");
    auto* sw = app.add_subcommand("sweep", "grid means of K, S, K^N, P over a range of degrees");

    CLI::Option* list_format = nullptr;
    for (auto* sub : {list, eval, verify, cls, sw}) {
        add_common(sub, a, sub != list && sub != sw);
        auto* f = sub->add_option("--format", a.format, "json or csv")->capture_default_str();
        if (sub == list) list_format = f;
    }
    eval->add_option("--u", a.u, "first chart coordinate")->required();
    eval->add_option("--v", a.v, "second chart coordinate")->required();
    sw->add_option("--s-range", a.s_range, "degree range A..B")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        int const rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        RunConfig cfg = make_config(a);
        if (list->parsed()) return cmd_list(cfg, list_format->count() > 0);
        if (eval->parsed()) return cmd_eval(cfg, a.u, a.v);
        if (verify->parsed()) return cmd_verify(cfg);
        if (cls->parsed()) return cmd_classify(cfg);
        if (sw->parsed()) return cmd_sweep(cfg, a.s_range);
    } catch (io_error const& e) {
        std::cerr << "minsurf: " << e.what() << "\n";
        return exit_io;
    } catch (minsurf::error const& e) {
        std::cerr << "minsurf: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
