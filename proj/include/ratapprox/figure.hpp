#pragma once

// The six figure experiments: presets, and one run that writes CSV, model, plot and report.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ratapprox/aaa.hpp"
#include "ratapprox/analysis.hpp"
#include "ratapprox/geometry.hpp"
#include "ratapprox/io.hpp"
#include "ratapprox/plot.hpp"
#include "ratapprox/potential.hpp"

namespace ratapprox {

struct FigurePreset {
    int id = 0;
    FunctionSpec fn = FunctionSpec::Exp;
    Domain domain;
    double tol = 1e-12;
    std::size_t max_degree = 150;
    std::optional<Box> plot_window;  // default_window() of the domain and poles when empty
    std::vector<std::size_t> degree_sweep;
    std::size_t sample_count = kDefaultSampleCount;
};

inline constexpr std::size_t kFigureResolution = 300;

namespace detail {

inline std::vector<std::size_t> sweep(std::size_t a, std::size_t step, std::size_t b) {
    std::vector<std::size_t> out;
    for (std::size_t n = a; n <= b; n += step) out.push_back(n);
    return out;
}

}  // namespace detail

/// Even functions are swept over even degrees only; odd iterates break the symmetry and
/// make every other step a plateau.
inline FigurePreset figure_preset(int id) {
    switch (id) {
        case 1: return {1, FunctionSpec::Exp, make_disk(0.0, 1.0), 1e-12, 150, {}, detail::sweep(0, 1, 20)};
        case 2: return {2, FunctionSpec::TanSq, make_disk(0.0, 1.0), 1e-12, 150, {}, detail::sweep(0, 2, 150)};
        case 3:
            return {3, FunctionSpec::ExpTanSq, make_disk(0.0, 1.0), 1e-12, 150, {}, detail::sweep(0, 2, 150)};
        case 4:
            return {4, FunctionSpec::TwoBranchSqrt, make_disk(0.0, 1.0), 1e-10, 150,
                    Box{-3.5, 3.5, -3.5, 3.5}, detail::sweep(0, 1, 100)};
        case 5:
            return {5, FunctionSpec::AbsVal, make_interval(-1.0, 1.0), 1e-8, 150, {}, detail::sweep(4, 2, 60)};
        case 6:
            return {6, FunctionSpec::SqrtNeg, make_horseshoe(0.5, 1.5, 0.3), 1e-12, 150, {},
                    detail::sweep(0, 1, 80)};
        default: throw DomainError("figure: id must be in 1..6, got " + std::to_string(id));
    }
}

struct FigureResult {
    json report;
    bool postconditions_ok = false;
    std::vector<std::filesystem::path> files;
};

namespace detail {

inline json rate_json(const ConvergenceRecord& rec, Method m) {
    try {
        const auto c = classify_rate(rec, m);
        return {{"class", rate_name(c.kind)},
                {"rate", c.rate},
                {"r2_linear", c.r2_linear},
                {"r2_sqrt", c.r2_sqrt},
                {"r2_log", c.r2_log},
                {"concave_fraction", c.concave_fraction},
                {"mean_second_difference", c.mean_second_difference},
                {"points", c.points}};
    } catch (const DomainError& e) {
        return {{"class", nullptr}, {"reason", e.what()}};
    }
}

inline json pole_json(const BarycentricRational& r, const Domain& d) {
    json out = {{"count", 0}, {"finite", 0}, {"in_domain", 0}, {"poles", json::array()}, {"residues", json::array()}};
    if (r.degree() == 0) return out;
    const auto pl = poles(r);
    CVector finite;
    for (const auto& p : pl)
        if (is_finite(p)) finite.push_back(p);
    std::size_t inside = 0;
    double min_mod = std::numeric_limits<double>::infinity(), max_mod = 0.0;
    for (const auto& p : finite) {
        if (distance_to_domain(d, p) < kPoleInDomainDistance) ++inside;
        min_mod = std::min(min_mod, std::abs(p));
        max_mod = std::max(max_mod, std::abs(p));
    }
    out["count"] = pl.size();
    out["finite"] = finite.size();
    out["in_domain"] = inside;
    out["min_modulus"] = min_mod;
    out["max_modulus"] = max_mod;
    out["poles"] = complex_array(finite);
    json res = json::array();
    for (const auto& q : residues(r, finite)) res.push_back(json::array({q.value.real(), q.value.imag()}));
    out["residues"] = res;
    return out;
}

}  // namespace detail

/// Runs one figure and writes convergence.csv, model.json, potential.svg and report.json to
/// out_dir. The report lists every module-level postcondition checked along the way.
inline FigureResult run_figure(int id, const std::filesystem::path& out_dir) {
    const FigurePreset p = figure_preset(id);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (!std::filesystem::is_directory(out_dir)) throw IoError("cannot create output directory " + out_dir.string());

    const auto samples = sample_function(p.fn, boundary_samples(p.domain, p.sample_count));
    const FitReport fit = aaa_fit(samples, p.tol, p.max_degree, {.cleanup = true, .keep_trajectory = false});
    const auto& r = fit.model;
    const SupError sup = estimate_sup_error(p.fn, r, p.domain);
    const ConvergenceRecord rec = convergence_study(p.fn, p.domain, p.degree_sweep);

    CVector pl;
    if (r.degree() >= 1) pl = poles(r);
    const Box window = p.plot_window ? *p.plot_window : default_window(p.domain, pl);
    const auto field = potential_grid(r.supports, pl, window, kFigureResolution, kFigureResolution);

    json post = json::object();
    {
        double dev = 0.0;
        for (std::size_t k = 0; k < r.size(); ++k) dev = std::max(dev, std::abs(eval(r, r.supports[k]) - r.values[k]));
        post["aaa_interpolates_supports"] = dev == 0.0;
        post["aaa_pole_count_equals_degree"] = pl.size() == r.degree();
        const double fmax = detail::max_abs(samples.values);
        post["aaa_history_within_tol_when_converged"] =
            !fit.converged || fit.history.back().max_error <= p.tol * fmax;
        post["aaa_final_error_finite"] = std::isfinite(fit.final_error);

        bool sweep_ok = true, finite_ok = true;
        const auto poly = rec.of(Method::Polynomial);
        sweep_ok = poly.size() == p.degree_sweep.size();
        for (std::size_t i = 0; sweep_ok && i < poly.size(); ++i) sweep_ok = poly[i].degree == p.degree_sweep[i];
        for (const auto& e : rec.entries)
            finite_ok = finite_ok && e.error >= 0.0 && (std::isfinite(e.error) || e.flag == EntryFlag::PoleInDomain);
        post["analysis_polynomial_entries_match_sweep"] = sweep_ok;
        post["analysis_errors_nonnegative"] = finite_ok;

        bool levels_ok = !field.levels.empty(), clip_ok = true;
        for (std::size_t i = 1; i < field.levels.size(); ++i) levels_ok = levels_ok && field.levels[i] > field.levels[i - 1];
        for (double v : field.log_abs_phi) clip_ok = clip_ok && v >= field.clip_min && v <= field.clip_max;
        post["potential_levels_increasing"] = levels_ok;
        post["potential_values_within_clip"] = clip_ok;
        post["potential_grid_size"] = field.log_abs_phi.size() == field.nx * field.ny;
    }
    bool ok = true;
    for (const auto& [k, v] : post.items()) ok = ok && v.get<bool>();

    auto last_error = [&](Method m) -> json {
        const auto es = rec.of(m);
        if (es.empty()) return nullptr;
        return {{"degree", es.back().degree}, {"error", es.back().error}, {"flag", flag_name(es.back().flag)}};
    };

    json report = {
        {"figure", p.id},
        {"function", function_name(p.fn)},
        {"domain", describe(p.domain)},
        {"tol", p.tol},
        {"max_degree", p.max_degree},
        {"sample_count", p.sample_count},
        {"degrees", p.degree_sweep},
        {"tol_floor", rec.tol_floor},
        {"converged", fit.converged},
        {"rational_fit",
         {{"degree", r.degree()},
          {"converged", fit.converged},
          {"history_error", fit.history.back().max_error},
          {"final_error", fit.final_error},
          {"sup_error", sup.value},
          {"pole_in_domain", sup.pole_in_domain},
          {"cleanup_removed", fit.cleanup_removed},
          {"cleanup_warning", fit.cleanup_warning}}},
        {"final_errors", {{"rational", last_error(Method::Rational)}, {"polynomial", last_error(Method::Polynomial)}}},
        {"rates", {{"rational", detail::rate_json(rec, Method::Rational)},
                   {"polynomial", detail::rate_json(rec, Method::Polynomial)}}},
        {"pole_diagnostics", detail::pole_json(r, p.domain)},
        {"potential",
         {{"window", {window.xmin, window.xmax, window.ymin, window.ymax}},
          {"resolution", {field.nx, field.ny}},
          {"clip", {field.clip_min, field.clip_max}},
          {"gap", potential_gap(field)}}},
        {"postconditions", post},
        {"postconditions_ok", ok},
    };

    SvgOptions svg;
    svg.domain = &p.domain;
    svg.title = "Figure " + std::to_string(p.id) + ": " + std::string(function_name(p.fn)) + " on " +
                describe(p.domain) + ", degree " + std::to_string(r.degree());

    FigureResult out{report, ok, {}};
    auto emit = [&](const char* name, const std::string& content) {
        write_atomic(out_dir / name, content);
        out.files.push_back(out_dir / name);
    };
    emit("convergence.csv", convergence_csv(rec));
    emit("model.json", dump_json(to_json(r)));
    emit("potential.svg", render_svg(field, svg));
    emit("report.json", dump_json(report));
    return out;
}

}  // namespace ratapprox
