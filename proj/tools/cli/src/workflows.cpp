#include "sphfin_cli/workflows.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>

#include "sphfin/builtins.hpp"
#include "sphfin/errors.hpp"
#include "sphfin/families.hpp"
#include "sphfin/geodesics.hpp"
#include "sphfin/reconstruct.hpp"

namespace sphfin::cli {

namespace {

Json grid_json(const GridSpec& g) { return {{"r0", g.r0}, {"r1", g.r1}, {"nr", g.nr}, {"ns", g.ns}, {"eps", g.eps}}; }

Json max_json(const ResidualMax& m) { return {{"value", m.value}, {"r", m.r}, {"s", m.s}}; }

Json matrix_json(const Mat& m) {
    Json a = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        a.push_back(row);
    }
    return a;
}

Json tensor3_json(const Tensor3& t) {
    const int n = t.dim();
    Json a = Json::array();
    for (int i = 0; i < n; ++i) {
        Json m = Json::array();
        for (int j = 0; j < n; ++j) {
            Json row = Json::array();
            for (int k = 0; k < n; ++k) row.push_back(t(i, j, k));
            m.push_back(row);
        }
        a.push_back(m);
    }
    return a;
}

Json tensor4_json(const Tensor4& t) {
    const int n = t.dim();
    Json a = Json::array();
    for (int i = 0; i < n; ++i) {
        Json b = Json::array();
        for (int j = 0; j < n; ++j) {
            Json m = Json::array();
            for (int k = 0; k < n; ++k) {
                Json row = Json::array();
                for (int l = 0; l < n; ++l) row.push_back(t(i, j, k, l));
                m.push_back(row);
            }
            b.push_back(m);
        }
        a.push_back(b);
    }
    return a;
}

Json spray_json(const SprayData& pq) {
    return {{"P", pq.P},       {"P_s", pq.P_s}, {"P_ss", pq.P_ss}, {"P_sss", pq.P_sss},
            {"Q", pq.Q},       {"Q_s", pq.Q_s}, {"Q_ss", pq.Q_ss}, {"Q_sss", pq.Q_sss}};
}

/// Portable uniform samples in [lo, hi) from a fixed seed.
std::vector<double> uniform_samples(std::uint64_t seed, int count, double lo, double hi) {
    std::mt19937_64 gen(seed);
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back(lo + (hi - lo) * static_cast<double>(gen() >> 11) * 0x1.0p-53);
    return v;
}

std::string fmt(double v) { return format_number(v); }

Json classification_json(const ClassificationReport& rep) {
    Json failures = Json::array();
    for (const auto& f : rep.cross_check_failures) failures.push_back(f);
    return {{"riemannian", rep.riemannian},
            {"berwald", rep.berwald_flag},
            {"landsberg", rep.landsberg_flag},
            {"regular", rep.regular},
            {"regularity_rule", rep.n >= 3 ? "both margins positive" : "second margin positive"},
            {"spray_defined", rep.spray_defined},
            {"grid_relative", true},
            {"points", static_cast<int>(rep.points.size())},
            {"min_margin1", max_json(rep.min_margin1)},
            {"min_margin2", max_json(rep.min_margin2)},
            {"cross_check_failures", failures}};
}

Json classification_maxima(const ClassificationReport& rep) {
    return {{"riemann", max_json(rep.riemann)},
            {"riemann_relative", max_json(rep.riemann_rel)},
            {"berwald", max_json(rep.berwald)},
            {"berwald_relative", max_json(rep.berwald_rel)},
            {"landsberg", max_json(rep.landsberg)},
            {"landsberg_relative", max_json(rep.landsberg_rel)},
            {"compatibility", max_json(rep.compatibility)}};
}

CsvTable classification_csv(const ClassificationReport& rep) {
    CsvTable t;
    t.header = {"r",          "s",          "spray_defined", "riemann",     "riemann_rel",
                "berwald0",   "berwald0_rel", "berwald1",    "berwald1_rel", "landsberg0",
                "landsberg0_rel", "landsberg1", "landsberg1_rel", "margin1", "margin2",
                "compatibility"};
    for (const auto& p : rep.points)
        t.rows.push_back({p.r, p.s, p.spray_defined ? 1.0 : 0.0, p.riemann.value, p.riemann.relative,
                          p.berwald[0].value, p.berwald[0].relative, p.berwald[1].value, p.berwald[1].relative,
                          p.landsberg[0].value, p.landsberg[0].relative, p.landsberg[1].value,
                          p.landsberg[1].relative, p.margin1, p.margin2, p.compatibility});
    return t;
}

/// max(|L1|, |L2|) of the anchored reconstruction over its in-domain grid nodes.
struct AbsoluteLandsberg {
    double value = 0;
    double r = 0, s = 0;
    int in_domain = 0;
};

AbsoluteLandsberg absolute_landsberg(const MetricSource& src, const GridSpec& g, bool derived_spray) {
    AbsoluteLandsberg out;
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ns; ++j) {
            const double r = g.r_at(i), s = g.s_at(i, j);
            const auto phi = src.phi_jet(r, s);
            if (!phi) continue;
            ++out.in_domain;
            const SprayData pq = derived_spray ? spray_pq(*phi) : src.spray(r, s);
            const LandsbergResiduals l = landsberg_residuals(*phi, pq, 3);
            const double v = std::max(l.first, l.second);
            if (v > out.value) out = {v, r, s, out.in_domain};
        }
    return out;
}

struct ExampleSpec {
    const char* name;
    const char* c1;
    const char* c3;
    double c;
    const char* c0_expected;
    /// (psi, chi) at (1, 0), checked when set.
    std::optional<std::pair<double, double>> anchor_logderivs;
};

Report reproduce_example(const ExampleSpec& ex) {
    Report rep;
    rep.command = std::string("reproduce ") + ex.name;
    const GridSpec grid;
    rep.config = {{"example", ex.name}, {"dim", 3}, {"grid", grid_json(grid)},
                  {"family", {{"c1", ex.c1}, {"c3", ex.c3}, {"c", ex.c}}}};

    const LandsbergFamily fam =
        LandsbergFamily::build(PhiExpr::parse_coefficient(ex.c1), PhiExpr::parse_coefficient(ex.c3), ex.c, 0.5, 2.0);
    const PhiExpr c0_expected = PhiExpr::parse_coefficient(ex.c0_expected);
    double c0_err = 0, c2_err = 0, ab = 0;
    Json samples = Json::array();
    for (double r : uniform_samples(20231117, 10, 0.5, 2.0)) {
        const CoefficientValues cv = fam.coefficients(r);
        c0_err = std::max(c0_err, std::abs(cv.c0 - c0_expected.eval(r, 0.0)));
        c2_err = std::max(c2_err, std::abs(cv.c2 - 0.5));
        ab = std::max({ab, std::abs(fam.A(r)), std::abs(fam.B(r))});
        samples.push_back({{"r", r}, {"c0", cv.c0}, {"c2", cv.c2}});
    }

    const MetricSource src = MetricSource::from_builtin(builtin(ex.name));
    const ClassificationReport cls = classify_metric(src, 3, grid);
    const AbsoluteLandsberg abs_l = absolute_landsberg(src, grid, false);
    const AbsoluteLandsberg abs_derived = absolute_landsberg(src, grid, true);
    const SprayData witness = spray_pq(src.phi_jet_local(1.0, 0.0));
    const auto [psi, chi] = src.logderivs()->values(1.0, 0.0);
    int negative_margin = 0;
    for (const auto& p : cls.points) negative_margin += p.margin2 < 0;

    const bool verdict_ok = cls.verdict == Verdict::LandsbergNonBerwald;
    const bool witness_ok = std::abs(std::abs(witness.P_ss) - 0.5) <= 1e-9;
    const bool coeff_ok = c0_err <= 1e-12 && c2_err <= 1e-12;
    const bool landsberg_ok = abs_l.value < 1e-7;
    const bool anchor_ok = !ex.anchor_logderivs || (std::abs(psi - ex.anchor_logderivs->first) <= 1e-12 &&
                                                    std::abs(chi - ex.anchor_logderivs->second) <= 1e-12);
    rep.checks_passed = verdict_ok && witness_ok && coeff_ok && landsberg_ok && anchor_ok;

    rep.results = {
        {"coefficients", {{"expected_c0", ex.c0_expected}, {"expected_c2", 0.5}, {"max_c0_error", c0_err},
                          {"max_c2_error", c2_err}, {"samples", samples}}},
        {"classification", classification_json(cls)},
        {"berwald_witness", {{"r", 1.0}, {"s", 0.0}, {"P_ss", witness.P_ss}, {"abs_P_ss", std::abs(witness.P_ss)}}},
        {"logderivs_at_anchor", {{"r", 1.0}, {"s", 0.0}, {"psi", psi}, {"chi", chi}}},
        {"reconstruction", {{"anchor_r", src.anchor_r()}, {"anchor_phi", src.anchor_phi()},
                            {"in_domain_nodes", abs_l.in_domain}}},
        {"regularity", {{"negative_second_margin_points", negative_margin},
                        {"grid_points", static_cast<int>(cls.points.size())},
                        {"max_second_margin", [&] {
                             double m = -INFINITY;
                             for (const auto& p : cls.points) m = std::max(m, p.margin2);
                             return m;
                         }()}}},
        {"checks", {{"verdict", verdict_ok}, {"berwald_witness", witness_ok}, {"coefficients", coeff_ok},
                    {"landsberg_bound", landsberg_ok}, {"anchor_logderivs", anchor_ok}}}};
    rep.residual_maxima = classification_maxima(cls);
    rep.residual_maxima["landsberg_absolute"] = {{"value", abs_l.value}, {"r", abs_l.r}, {"s", abs_l.s}};
    rep.residual_maxima["landsberg_absolute_derived_spray"] = {
        {"value", abs_derived.value}, {"r", abs_derived.r}, {"s", abs_derived.s}};
    rep.residual_maxima["integrability"] = {{"value", ab}};
    rep.verdict = verdict_name(cls.verdict);
    rep.csv = classification_csv(cls);
    rep.summary = std::string(ex.name) + ": verdict " + *rep.verdict + ", |P_ss(1,0)| = " +
                  fmt(std::abs(witness.P_ss)) + ", max |L| = " + fmt(abs_l.value) +
                  (rep.checks_passed ? ", all checks passed" : ", CHECKS FAILED");
    return rep;
}

Report reproduce_zhou() {
    Report rep;
    rep.command = "reproduce zhou-discrepancy";
    const GridSpec grid;
    rep.config = {{"c", -1.0}, {"c0", "1/r^2"}, {"grid", grid_json(grid)}};
    const ZhouClass zc = ZhouClass::build(-1.0, PhiExpr::parse_coefficient("1/r^2"));
    const PhiExpr phi5 = builtin("zhou2d_r5").expr();
    const PhiExpr phi6 = builtin("zhou2d_r6").expr();

    double c1_5 = 0, c2_5 = 0, c1_6 = 0, c2_6 = 0;
    CsvTable csv;
    csv.header = {"r", "s", "C1_r5", "C2r2_r5", "C1_r6", "C2_r6"};
    for (int i = 0; i < grid.nr; ++i)
        for (int j = 0; j < grid.ns; ++j) {
            const double r = grid.r_at(i), s = grid.s_at(i, j);
            const SprayData pq = zc.spray(r, s);
            const Jet j5 = phi5.eval_jet(r, s), j6 = phi6.eval_jet(r, s);
            const auto k5 = compatibility_residuals(j5 * (1.0 / j5.value()), pq);
            const auto k6 = compatibility_residuals(j6 * (1.0 / j6.value()), pq);
            c1_5 = std::max(c1_5, std::abs(k5.C1));
            c2_5 = std::max(c2_5, std::abs(k5.C2 * r * r - 1.0));
            c1_6 = std::max(c1_6, std::abs(k6.C1));
            c2_6 = std::max(c2_6, std::abs(k6.C2));
            csv.rows.push_back({r, s, k5.C1, k5.C2 * r * r, k6.C1, k6.C2});
        }

    const PhiExpr P_ref = PhiExpr::parse("-s/r^2 - sqrt(r^2 - s^2)/r^2");
    const PhiExpr Q_ref = PhiExpr::parse("1/r^2 - s^2/(2*r^4) - s*sqrt(r^2 - s^2)/r^4");
    double spray_err = 0;
    const auto rs = uniform_samples(7, 20, 0.5, 2.0);
    const auto ts = uniform_samples(11, 20, -0.9, 0.9);
    for (int k = 0; k < 20; ++k) {
        const double r = rs[k], s = ts[k] * r;
        const SprayData pq = spray_pq(phi6.eval_jet(r, s));
        spray_err = std::max({spray_err, std::abs(pq.P - P_ref.eval(r, s)), std::abs(pq.Q - Q_ref.eval(r, s))});
    }

    Json prefactor = Json::array();
    for (int i = 0; i < grid.nr; ++i) {
        const double r = grid.r_at(i);
        prefactor.push_back({{"r", r}, {"a_logderiv", zc.a_logderiv(r)}, {"spine_logderiv", zc.spine_logderiv(r)},
                             {"a_defect", zc.a_defect(r)}});
    }

    const bool r5_ok = c1_5 < 1e-8 && c2_5 < 1e-8;
    const bool r6_ok = c1_6 < 1e-8 && c2_6 < 1e-8;
    const bool spray_ok = spray_err < 1e-9;
    rep.checks_passed = r5_ok && r6_ok && spray_ok;
    rep.results = {{"a_r5", {{"max_abs_C1_over_phi", c1_5}, {"max_abs_C2_r2_over_phi_minus_1", c2_5}}},
                   {"a_r6", {{"max_abs_C1_over_phi", c1_6}, {"max_abs_C2_over_phi", c2_6}}},
                   {"spray_of_r6_metric", {{"points", 20}, {"max_error", spray_err}}},
                   {"prefactor", prefactor},
                   {"checks", {{"r5_defect", r5_ok}, {"r6_compatible", r6_ok}, {"r6_spray", spray_ok}}}};
    rep.residual_maxima = {{"C1_r5", c1_5}, {"C2r2_r5_minus_1", c2_5}, {"C1_r6", c1_6}, {"C2_r6", c2_6},
                           {"spray_r6", spray_err}};
    rep.verdict = rep.checks_passed ? "a_r6_compatible_a_r5_not" : "unexpected";
    rep.csv = csv;
    rep.summary = "zhou-discrepancy: C2*r^2/phi - 1 <= " + fmt(c2_5) + " for a = 1/r^5, |C2/phi| <= " + fmt(c2_6) +
                  " for a = 1/r^6" + (rep.checks_passed ? ", all checks passed" : ", CHECKS FAILED");
    return rep;
}

PhiExpr coefficient(const std::string& text, const std::string& flag) {
    try {
        return PhiExpr::parse_coefficient(text);
    } catch (const Error& e) {
        throw ValidationError(flag + ": " + e.what());
    }
}

}  // namespace

MetricSource make_source(const SourceSpec& req, Json& config) {
    if (req.phi.empty() == req.builtin.empty()) throw ValidationError("give exactly one of --phi or --builtin");
    if (!req.phi.empty()) {
        if (!req.params.empty()) throw ValidationError("--param applies only to --builtin");
        const PhiExpr phi = PhiExpr::parse(req.phi);
        config["source"] = {{"phi", phi.to_string()}};
        return MetricSource::closed_form(phi);
    }
    ParamMap params;
    Json pj = Json::object();
    for (const auto& p : req.params) {
        auto [key, value] = parse_assignment(p);
        if (params.count(key)) throw ValidationError("parameter " + key + " given twice");
        pj[key] = value.to_string();
        params.emplace(key, std::move(value));
    }
    const BuiltinMetric b = builtin(req.builtin, params);
    config["source"] = {{"builtin", req.builtin}, {"params", pj}};
    return MetricSource::from_builtin(b);
}

Report run_classify(const SourceSpec& req, const ClassifyArgs& args) {
    Report rep;
    rep.command = "classify";
    const MetricSource src = make_source(req, rep.config);
    rep.config["dim"] = args.dim;
    rep.config["grid"] = grid_json(args.grid);
    rep.config["tol"] = args.tol.vanish;
    const ClassificationReport cls = classify_metric(src, args.dim, args.grid, args.tol);
    rep.results = classification_json(cls);
    rep.residual_maxima = classification_maxima(cls);
    rep.verdict = verdict_name(cls.verdict);
    rep.csv = classification_csv(cls);
    rep.summary = "classify: verdict " + *rep.verdict + " on the grid, regular=" + (cls.regular ? "true" : "false");
    return rep;
}

Report run_curvature(const SourceSpec& req, double r, double s, double u, int dim) {
    Report rep;
    rep.command = "curvature";
    const MetricSource src = make_source(req, rep.config);
    rep.config["at"] = {r, s, u};
    rep.config["dim"] = dim;
    if (dim < 2) throw ValidationError("dimension must be at least 2");
    const PointFrame frame = embed_point(r, s, u, dim);
    const auto phi = src.phi_jet(r, s);
    if (!phi) throw ValidationError("point lies outside the reconstructable domain of the metric");
    const CurvaturePacket c = curvature_packet(*phi, src.spray(r, s), frame);
    rep.results = {{"phi", phi->value()},
                   {"frame", {{"x", std::vector<double>(frame.x.data(), frame.x.data() + dim)},
                              {"y", std::vector<double>(frame.y.data(), frame.y.data() + dim)}}},
                   {"spray", spray_json(c.pq)},
                   {"sigma", std::vector<double>(c.metric.sigma, c.metric.sigma + 4)},
                   {"rho", std::vector<double>(c.metric.rho, c.metric.rho + 4)},
                   {"g", matrix_json(c.metric.g)},
                   {"g_inv", matrix_json(c.metric.g_inv)},
                   {"G_i_j", matrix_json(c.Gmat)},
                   {"berwald", tensor4_json(c.B)},
                   {"mean_berwald", matrix_json(c.E)},
                   {"landsberg", tensor3_json(c.L)},
                   {"scalars", {{"H", c.H}, {"H_s", c.H_s}, {"K", c.K}, {"lambda1", c.lambda1},
                                {"lambda2", c.lambda2}, {"L1", c.L1}, {"L2", c.L2}, {"E", c.Escalar}}}};
    rep.residual_maxima = {{"berwald", c.B.max_abs()}, {"landsberg", c.L.max_abs()},
                           {"mean_berwald", c.E.cwiseAbs().maxCoeff()}};
    rep.summary = "curvature at (r,s,u)=(" + fmt(r) + "," + fmt(s) + "," + fmt(u) + "), n=" + std::to_string(dim);
    return rep;
}

Report run_family_landsberg(const LandsbergArgs& a) {
    Report rep;
    rep.command = "family landsberg";
    rep.config = {{"c1", a.c1}, {"c3", a.c3}, {"c", a.c}, {"interval", {a.lo, a.hi}}};
    const LandsbergFamily fam =
        LandsbergFamily::build(coefficient(a.c1, "--c1"), coefficient(a.c3, "--c3"), a.c, a.lo, a.hi);
    Json samples = Json::array();
    double amax = 0, bmax = 0, compat = 0;
    CsvTable csv;
    csv.header = {"r", "c0", "c1", "c2", "c3", "A", "B", "psi0", "chi0"};
    const int m = 11;
    for (int i = 0; i < m; ++i) {
        const double r = a.lo + (a.hi - a.lo) * i / (m - 1);
        const CoefficientValues cv = fam.coefficients(r);
        const double A = fam.A(r), B = fam.B(r);
        amax = std::max(amax, std::abs(A));
        bmax = std::max(bmax, std::abs(B));
        Json psi0 = nullptr, chi0 = nullptr;
        double p0 = NAN, x0 = NAN;
        try {
            const auto [psi, chi] = fam.logderiv(r, 0.0);
            psi0 = p0 = psi;
            chi0 = x0 = chi;
        } catch (const Error&) {
        }
        for (double t : {-0.6, -0.3, 0.0, 0.3, 0.6}) {
            const double s = t * r;
            try {
                const auto [psi, chi] = fam.logderiv(r, s);
                const auto k = compatibility_residuals_log(psi, chi, fam.spray(r, s));
                compat = std::max({compat, std::abs(k.C1), std::abs(k.C2)});
            } catch (const Error&) {
            }
        }
        samples.push_back({{"r", r}, {"c0", cv.c0}, {"c1", cv.c1}, {"c2", cv.c2}, {"c3", cv.c3},
                           {"A", A}, {"B", B}, {"psi_at_s0", psi0}, {"chi_at_s0", chi0}});
        csv.rows.push_back({r, cv.c0, cv.c1, cv.c2, cv.c3, A, B, p0, x0});
    }
    rep.results = {{"samples", samples}};
    rep.residual_maxima = {{"A", amax}, {"B", bmax}, {"compatibility_log", compat}};
    rep.csv = csv;
    rep.summary = "family landsberg: max |A| = " + fmt(amax) + ", max |B| = " + fmt(bmax);
    return rep;
}

Report run_family_surface_berwald(const SurfaceBerwaldArgs& a) {
    Report rep;
    rep.command = "family surface-berwald";
    const GridSpec grid;
    rep.config = {{"a", a.a}, {"b0", a.b0}, {"b1", a.b1}, {"b2", a.b2}, {"b3", a.b3}, {"grid", grid_json(grid)}};
    const SurfaceBerwaldFamily fam(coefficient(a.a, "--a"), coefficient(a.b0, "--b0"), coefficient(a.b1, "--b1"),
                                   coefficient(a.b2, "--b2"), coefficient(a.b3, "--b3"));
    ResidualMax bmax, hmax;
    CsvTable csv;
    csv.header = {"r", "s", "berwald_max", "weak_berwald"};
    for (int i = 0; i < grid.nr; ++i)
        for (int j = 0; j < grid.ns; ++j) {
            const double r = grid.r_at(i), s = grid.s_at(i, j);
            const SprayData pq = fam.spray(r, s);
            const double b = berwald_curvature(pq, embed_point(r, s, 1.0, 2)).max_abs();
            const double w = r * r - s * s;
            const double h = std::abs(s * mean_H(pq, 2) - w * mean_H_s(pq, 2));
            if (b > bmax.value) bmax = {b, r, s};
            if (h > hmax.value) hmax = {h, r, s};
            csv.rows.push_back({r, s, b, h});
        }
    rep.results = {{"dim", 2}, {"points", grid.size()}};
    rep.residual_maxima = {{"berwald_curvature", max_json(bmax)}, {"weak_berwald", max_json(hmax)}};
    rep.csv = csv;
    rep.summary = "family surface-berwald: max |G^i_jkl| = " + fmt(bmax.value) + " on the grid";
    return rep;
}

Report run_family_zhou(const ZhouArgs& a) {
    Report rep;
    rep.command = "family zhou";
    const GridSpec grid;
    rep.config = {{"c", a.c}, {"c0", a.c0}, {"interval", {grid.r0, grid.r1}}};
    const ZhouClass zc = ZhouClass::build(a.c, coefficient(a.c0, "--c0"), grid.r0, grid.r1);
    Json samples = Json::array();
    double dmax = 0;
    CsvTable csv;
    csv.header = {"r", "a_logderiv", "spine_logderiv", "a_defect"};
    for (int i = 0; i < grid.nr; ++i) {
        const double r = grid.r_at(i);
        const double al = zc.a_logderiv(r), sl = zc.spine_logderiv(r), d = zc.a_defect(r);
        dmax = std::max(dmax, std::abs(d));
        samples.push_back({{"r", r}, {"a_logderiv", al}, {"spine_logderiv", sl}, {"a_defect", d}});
        csv.rows.push_back({r, al, sl, d});
    }
    rep.results = {{"samples", samples}};
    rep.residual_maxima = {{"a_defect", dmax}};
    rep.csv = csv;
    rep.summary = "family zhou: max |C2/phi| from the prefactor = " + fmt(dmax);
    return rep;
}

Report run_geodesic(const SourceSpec& req, const GeodesicArgs& a) {
    Report rep;
    rep.command = "geodesic";
    const MetricSource src = make_source(req, rep.config);
    rep.config["x"] = a.x;
    rep.config["y"] = a.y;
    rep.config["step"] = a.step;
    rep.config["steps"] = a.steps;
    if (a.x.size() != a.y.size()) throw ValidationError("--x and --y must have the same length");
    const Vec x = Eigen::Map<const Vec>(a.x.data(), static_cast<Eigen::Index>(a.x.size()));
    const Vec y = Eigen::Map<const Vec>(a.y.data(), static_cast<Eigen::Index>(a.y.size()));
    const Trajectory tr = integrate(src, x, y, a.step, a.steps);
    const GeodesicState& last = tr.states.back();
    const int n = static_cast<int>(a.x.size());
    rep.results = {{"steps_taken", static_cast<int>(tr.states.size()) - 1},
                   {"domain_exit", tr.domain_exit},
                   {"exit_reason", tr.exit_reason},
                   {"F0", tr.F0},
                   {"final", {{"t", last.t},
                              {"x", std::vector<double>(last.x.data(), last.x.data() + n)},
                              {"y", std::vector<double>(last.y.data(), last.y.data() + n)},
                              {"F_ratio", tr.F_ratio.back()}}}};
    rep.residual_maxima = {{"drift", tr.drift}};
    CsvTable csv;
    csv.header.push_back("t");
    for (int i = 0; i < n; ++i) csv.header.push_back("x" + std::to_string(i));
    for (int i = 0; i < n; ++i) csv.header.push_back("y" + std::to_string(i));
    csv.header.push_back("F_ratio");
    for (std::size_t k = 0; k < tr.states.size(); ++k) {
        std::vector<double> row{tr.states[k].t};
        for (int i = 0; i < n; ++i) row.push_back(tr.states[k].x(i));
        for (int i = 0; i < n; ++i) row.push_back(tr.states[k].y(i));
        row.push_back(tr.F_ratio[k]);
        csv.rows.push_back(std::move(row));
    }
    rep.csv = csv;
    rep.summary = "geodesic: " + std::to_string(tr.states.size() - 1) + " steps, relative F drift " + fmt(tr.drift) +
                  (tr.domain_exit ? " (left the domain: " + tr.exit_reason + ")" : "");
    return rep;
}

Report run_reproduce(const std::string& name) {
    if (name == "example1") return reproduce_example({"example1", "1/r^2", "1/r^2", 1.0 / (2.0 * std::sqrt(2.0)), "-3/r^4", std::nullopt});
    if (name == "example2") return reproduce_example({"example2", "0", "1/r^2", 0.5, "-2/r^4", std::pair{-1.0, 0.0}});
    if (name == "zhou-discrepancy") return reproduce_zhou();
    throw ValidationError("unknown reproduction " + name);
}

}  // namespace sphfin::cli
