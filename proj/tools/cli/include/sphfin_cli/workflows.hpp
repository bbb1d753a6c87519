#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sphfin/classify.hpp"
#include "sphfin/metric_source.hpp"
#include "sphfin_cli/json_out.hpp"

namespace sphfin::cli {

/// Metric named on the command line: an expression or a builtin with parameters.
struct SourceSpec {
    std::string phi;
    std::string builtin;
    std::vector<std::string> params;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

struct Report {
    std::string command;
    Json config = Json::object();
    Json results = Json::object();
    Json residual_maxima = Json::object();
    std::optional<std::string> verdict;
    /// False when a reproduction misses its expected outcome.
    bool checks_passed = true;
    std::string summary;
    std::optional<CsvTable> csv;
};

struct ClassifyArgs {
    int dim = 3;
    GridSpec grid;
    Tolerances tol;
};

struct LandsbergArgs {
    std::string c1, c3;
    double c = 0;
    double lo = 0.5, hi = 2.0;
};

struct SurfaceBerwaldArgs {
    std::string a, b0, b1, b2, b3;
};

struct ZhouArgs {
    double c = 0;
    std::string c0;
};

struct GeodesicArgs {
    std::vector<double> x, y;
    double step = 1e-3;
    int steps = 2000;
};

/// Builds the metric and records its description under config.
MetricSource make_source(const SourceSpec& req, Json& config);

Report run_classify(const SourceSpec& src, const ClassifyArgs& args);
Report run_curvature(const SourceSpec& src, double r, double s, double u, int dim);
Report run_family_landsberg(const LandsbergArgs& args);
Report run_family_surface_berwald(const SurfaceBerwaldArgs& args);
Report run_family_zhou(const ZhouArgs& args);
Report run_geodesic(const SourceSpec& src, const GeodesicArgs& args);
/// example1, example2 or zhou-discrepancy.
Report run_reproduce(const std::string& name);

}  // namespace sphfin::cli
