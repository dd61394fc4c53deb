// ratapprox: figure presets and ad-hoc fit / study / potential commands.
//
// Exit codes: 0 success, 1 numerical or I/O failure, 2 usage error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>

#include "ratapprox/figure.hpp"

using namespace ratapprox;
namespace fs = std::filesystem;

namespace {

constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

Box parse_window(const std::string& text) {
    const auto v = detail::parse_numbers(text, "window");
    if (v.size() != 4 || !(v[1] > v[0]) || !(v[3] > v[2]))
        throw DomainError("window: expected xmin,xmax,ymin,ymax with xmin < xmax and ymin < ymax");
    return {v[0], v[1], v[2], v[3]};
}

struct FigureArgs {
    int id = 0;
    std::string out = ".";
};

struct FitArgs {
    std::string fn, domain, out = ".";
    double tol = 1e-12;
    std::size_t max_degree = 150, samples = kDefaultSampleCount;
};

struct StudyArgs {
    std::string fn, domain, degrees, out = ".";
    double floor = kDefaultTolFloor;
    std::size_t samples = kDefaultSampleCount;
};

struct PotentialArgs {
    std::string model, window, domain, out = ".";
    std::size_t res = 400;
};

int cmd_figure(const FigureArgs& a) {
    const auto result = run_figure(a.id, a.out);
    for (const auto& f : result.files) std::cout << f.string() << '\n';
    if (!result.postconditions_ok) {
        std::cerr << "figure " << a.id << ": postcondition check failed; see report.json\n";
        return kExitNumeric;
    }
    return 0;
}

int cmd_fit(const FitArgs& a) {
    const FunctionSpec fn = parse_function(a.fn);
    const Domain d = parse_domain(a.domain);
    const auto samples = sample_function(fn, boundary_samples(d, a.samples));
    const auto fit = aaa_fit(samples, a.tol, a.max_degree);
    const auto sup = estimate_sup_error(fn, fit.model, d);
    ensure_dir(a.out);
    write_atomic(fs::path(a.out) / "model.json", dump_json(to_json(fit.model)));
    const json report = {
        {"command", "fit"},
        {"flags", {{"fn", a.fn}, {"domain", describe(d)}, {"tol", a.tol}, {"max_degree", a.max_degree},
                   {"samples", a.samples}}},
        {"degree", fit.model.degree()},
        {"converged", fit.converged},
        {"history", [&] {
             json h = json::array();
             for (const auto& e : fit.history) h.push_back({{"degree", e.degree}, {"max_error", e.max_error}});
             return h;
         }()},
        {"final_error", fit.final_error},
        {"sup_error", sup.value},
        {"pole_in_domain", sup.pole_in_domain},
        {"cleanup_removed", fit.cleanup_removed},
        {"cleanup_warning", fit.cleanup_warning},
    };
    write_atomic(fs::path(a.out) / "fit_report.json", dump_json(report));
    std::cout << "degree " << fit.model.degree() << (fit.converged ? " (converged)" : " (not converged)")
              << ", sup error " << format_double(sup.value) << '\n';
    return 0;
}

int cmd_study(const StudyArgs& a) {
    const FunctionSpec fn = parse_function(a.fn);
    const Domain d = parse_domain(a.domain);
    const auto degrees = parse_degrees(a.degrees);
    StudyOptions opt;
    opt.sample_count = a.samples;
    const auto rec = convergence_study(fn, d, degrees, a.floor, opt);
    ensure_dir(a.out);
    write_atomic(fs::path(a.out) / "convergence.csv", convergence_csv(rec));
    const json report = {
        {"command", "study"},
        {"flags", {{"fn", a.fn}, {"domain", describe(d)}, {"degrees", degrees}, {"floor", a.floor},
                   {"samples", a.samples}}},
        {"scale", rec.scale},
        {"rates", {{"rational", detail::rate_json(rec, Method::Rational)},
                   {"polynomial", detail::rate_json(rec, Method::Polynomial)}}},
    };
    write_atomic(fs::path(a.out) / "study_report.json", dump_json(report));
    std::cout << rec.entries.size() << " entries written\n";
    return 0;
}

int cmd_potential(const PotentialArgs& a) {
    json j;
    try {
        j = json::parse(read_file(a.model));
    } catch (const json::exception& e) {
        throw DomainError(std::string("model: not valid JSON: ") + e.what());
    }
    const Model m = model_from_json(j);
    const auto* r = std::get_if<BarycentricRational>(&m);
    if (!r) throw DomainError("potential: needs a barycentric model (supports and poles)");
    const Box window = parse_window(a.window);
    std::optional<Domain> d;
    if (!a.domain.empty()) d = parse_domain(a.domain);

    CVector pl;
    if (r->degree() >= 1) pl = poles(*r);
    const auto field = potential_grid(r->supports, pl, window, a.res, a.res);
    SvgOptions svg;
    if (d) svg.domain = &*d;
    ensure_dir(a.out);
    write_atomic(fs::path(a.out) / "potential.svg", render_svg(field, svg));
    const json report = {
        {"command", "potential"},
        {"flags", {{"model", a.model}, {"window", {window.xmin, window.xmax, window.ymin, window.ymax}},
                   {"res", a.res}, {"domain", d ? json(describe(*d)) : json(nullptr)}}},
        {"clip", {field.clip_min, field.clip_max}},
        {"levels", field.levels},
        {"gap", potential_gap(field)},
    };
    write_atomic(fs::path(a.out) / "potential_report.json", dump_json(report));
    std::cout << "potential " << field.nx << 'x' << field.ny << ", gap " << format_double(potential_gap(field))
              << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational versus polynomial approximation experiments"};
    app.require_subcommand(1);

    FigureArgs fig;
    auto* figure = app.add_subcommand("figure", "Run one of the six figure presets");
    figure->add_option("--id", fig.id, "Figure number 1..6")->required();
    figure->add_option("--out", fig.out, "Output directory");

    FitArgs fit;
    auto* fitc = app.add_subcommand("fit", "AAA fit of a built-in function");
    fitc->add_option("--fn", fit.fn, "exp | tansq | exptansq | twobranchsqrt | abs | sqrtneg")->required();
    fitc->add_option("--domain", fit.domain, "disk:cx,cy,r | interval:a,b | horseshoe:inner,outer,alpha")
        ->required();
    fitc->add_option("--tol", fit.tol, "Relative tolerance");
    fitc->add_option("--max-degree", fit.max_degree, "Degree cap");
    fitc->add_option("--samples", fit.samples, "Boundary sample count");
    fitc->add_option("--out", fit.out, "Output directory");

    StudyArgs study;
    auto* studyc = app.add_subcommand("study", "Rational and polynomial errors over a degree sweep");
    studyc->add_option("--fn", study.fn, "Function name")->required();
    studyc->add_option("--domain", study.domain, "Domain spec")->required();
    studyc->add_option("--degrees", study.degrees, "start:step:stop, start:stop or a comma list")->required();
    studyc->add_option("--floor", study.floor, "Relative error floor");
    studyc->add_option("--samples", study.samples, "Boundary sample count");
    studyc->add_option("--out", study.out, "Output directory");

    PotentialArgs pot;
    auto* potc = app.add_subcommand("potential", "Contour plot of log10|phi| for a saved model");
    potc->add_option("--model", pot.model, "model.json from fit or figure")->required();
    potc->add_option("--window", pot.window, "xmin,xmax,ymin,ymax")->required();
    potc->add_option("--res", pot.res, "Grid cells per side");
    potc->add_option("--domain", pot.domain, "Domain to outline");
    potc->add_option("--out", pot.out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*figure) return cmd_figure(fig);
        if (*fitc) return cmd_fit(fit);
        if (*studyc) return cmd_study(study);
        if (*potc) return cmd_potential(pot);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitUsage;
}
