#include "sphfin_cli/run.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sphfin/errors.hpp"
#include "sphfin_cli/json_out.hpp"
#include "sphfin_cli/workflows.hpp"

namespace sphfin::cli {

namespace {

std::vector<double> parse_csv(const std::string& text, const std::string& flag) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double d = 0;
        try {
            d = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        while (used < item.size() && item[used] == ' ') ++used;
        if (item.empty() || used != item.size()) throw ValidationError(flag + ": '" + item + "' is not a number");
        v.push_back(d);
    }
    return v;
}

std::vector<double> parse_csv(const std::string& text, const std::string& flag, std::size_t count) {
    auto v = parse_csv(text, flag);
    if (v.size() != count)
        throw ValidationError(flag + " expects " + std::to_string(count) + " comma-separated values");
    return v;
}

int as_count(double v, const std::string& what) {
    if (v != std::floor(v) || v < 1 || v > 1e6) throw ValidationError(what + " must be a positive integer");
    return static_cast<int>(v);
}

GridSpec parse_grid(const std::string& text) {
    const auto v = parse_csv(text, "--grid", 4);
    GridSpec g;
    g.r0 = v[0];
    g.r1 = v[1];
    g.nr = as_count(v[2], "grid nr");
    g.ns = as_count(v[3], "grid ns");
    g.validate();
    return g;
}

struct Common {
    std::string out_path;
    std::string csv_path;
    bool timing = false;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--out", c.out_path, "Write the JSON report to this path");
    app->add_option("--csv", c.csv_path, "Write a per-point CSV dump to this path");
    app->add_flag("--timing", c.timing, "Record wall-clock runtime in the report");
}

void add_source(CLI::App* app, SourceSpec& s) {
    auto* phi = app->add_option("--phi", s.phi, "Closed-form phi(r, s)");
    auto* b = app->add_option("--builtin", s.builtin, "Registered metric name");
    phi->excludes(b);
    app->add_option("--param", s.params, "Builtin parameter k=<expr>")->take_all();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open " + path + " for writing");
    f << content;
    if (!f) throw ValidationError("failed writing " + path);
}

std::string csv_text(const CsvTable& t) {
    std::string s;
    for (std::size_t i = 0; i < t.header.size(); ++i) s += (i ? "," : "") + t.header[i];
    s += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) s += ',';
            const std::string v = format_number(row[i]);
            s += v == "null" ? "nan" : v;
        }
        s += '\n';
    }
    return s;
}

int emit(const Report& rep, const Common& c, double runtime_ms, std::ostream& out) {
    Json top;
    top["schema"] = 1;
    top["command"] = rep.command;
    top["config"] = rep.config;
    top["results"] = rep.results;
    top["residual_maxima"] = rep.residual_maxima;
    if (rep.verdict) top["verdict"] = *rep.verdict;
    top["runtime_ms"] = c.timing ? Json(runtime_ms) : Json(nullptr);
    const std::string text = dump(top);
    if (!c.csv_path.empty()) {
        if (!rep.csv) throw ValidationError("this command has no per-point data for --csv");
        write_file(c.csv_path, csv_text(*rep.csv));
    }
    if (c.out_path.empty()) {
        out << text;
    } else {
        write_file(c.out_path, text);
        out << rep.summary << "\nreport written to " << c.out_path << '\n';
    }
    return rep.checks_passed ? kOk : kVerdictFailed;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spherically symmetric Finsler metric laboratory", "sphfin"};
    app.require_subcommand(1);
    Common common;
    SourceSpec src;

    auto* classify = app.add_subcommand("classify", "Classify a metric on a grid");
    ClassifyArgs ca;
    std::string grid_text;
    add_source(classify, src);
    classify->add_option("--dim", ca.dim, "Dimension n >= 2")->required();
    classify->add_option("--grid", grid_text, "r0,r1,nr,ns");
    classify->add_option("--tol", ca.tol.vanish, "Threshold on relative residuals");
    add_common(classify, common);

    auto* curvature = app.add_subcommand("curvature", "Curvature packet at one point");
    std::string at_text;
    int cdim = 3;
    add_source(curvature, src);
    curvature->add_option("--at", at_text, "r,s,u")->required();
    curvature->add_option("--dim", cdim, "Dimension n >= 2")->required();
    add_common(curvature, common);

    auto* family = app.add_subcommand("family", "Spray families");
    family->require_subcommand(1);
    auto* lands = family->add_subcommand("landsberg", "Non-Berwald Landsberg family (n >= 3)");
    LandsbergArgs la;
    std::string interval_text;
    lands->add_option("--c1", la.c1, "c1(r)")->required();
    lands->add_option("--c3", la.c3, "c3(r)")->required();
    lands->add_option("--c", la.c, "Constant c")->required();
    lands->add_option("--interval", interval_text, "lo,hi")->required();
    add_common(lands, common);

    auto* sb = family->add_subcommand("surface-berwald", "Berwald surface sprays (n = 2)");
    SurfaceBerwaldArgs sa;
    sb->add_option("--a", sa.a, "a(r)")->required();
    sb->add_option("--b0", sa.b0, "b0(r)")->required();
    sb->add_option("--b1", sa.b1, "b1(r)")->required();
    sb->add_option("--b2", sa.b2, "b2(r)")->required();
    sb->add_option("--b3", sa.b3, "b3(r)")->required();
    add_common(sb, common);

    auto* zhou = family->add_subcommand("zhou", "Two-dimensional class with prefactor a(r)");
    ZhouArgs za;
    zhou->add_option("--c", za.c, "Constant c")->required();
    zhou->add_option("--c0", za.c0, "c0(r)")->required();
    add_common(zhou, common);

    auto* geodesic = app.add_subcommand("geodesic", "Integrate a geodesic and monitor F");
    GeodesicArgs ga;
    std::string x_text, y_text;
    add_source(geodesic, src);
    geodesic->add_option("--x", x_text, "Initial position, comma separated")->required();
    geodesic->add_option("--y", y_text, "Initial velocity, comma separated")->required();
    geodesic->add_option("--step", ga.step, "RK4 step");
    geodesic->add_option("--steps", ga.steps, "Number of steps");
    add_common(geodesic, common);

    auto* reproduce = app.add_subcommand("reproduce", "Reproduce a worked example");
    std::string which;
    reproduce->add_option("name", which, "example1 | example2 | zhou-discrepancy")
        ->required()
        ->check(CLI::IsMember({"example1", "example2", "zhou-discrepancy"}));
    add_common(reproduce, common);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kInputError;
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        Report rep;
        if (*classify) {
            if (!grid_text.empty()) ca.grid = parse_grid(grid_text);
            rep = run_classify(src, ca);
        } else if (*curvature) {
            const auto v = parse_csv(at_text, "--at", 3);
            rep = run_curvature(src, v[0], v[1], v[2], cdim);
        } else if (*lands) {
            const auto v = parse_csv(interval_text, "--interval", 2);
            la.lo = v[0];
            la.hi = v[1];
            rep = run_family_landsberg(la);
        } else if (*sb) {
            rep = run_family_surface_berwald(sa);
        } else if (*zhou) {
            rep = run_family_zhou(za);
        } else if (*geodesic) {
            ga.x = parse_csv(x_text, "--x");
            ga.y = parse_csv(y_text, "--y");
            rep = run_geodesic(src, ga);
        } else {
            rep = run_reproduce(which);
        }
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return emit(rep, common, ms, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace sphfin::cli
