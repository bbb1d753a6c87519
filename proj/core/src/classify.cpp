#include "sphfin/classify.hpp"

#include <cmath>
#include <limits>

#include "sphfin/errors.hpp"
#include "sphfin/families.hpp"

namespace sphfin {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void track_max(ResidualMax& m, double v, double r, double s) {
    if (std::isnan(v)) return;
    if (v > m.value) m = {v, r, s};
}

void track_min(ResidualMax& m, double v, double r, double s, bool first) {
    if (first || v < m.value) m = {v, r, s};
}

}  // namespace

double riemannian_residual(const Jet& phi) {
    const PhiDerivs d = PhiDerivs::from(phi);
    return d.s * d.phi_s * d.phi_s + d.s * d.phi * d.phi_ss - d.phi * d.phi_s;
}

BerwaldResiduals berwald_residuals(const SprayData& pq, const Jet& phi, int n) {
    if (n >= 3) return {std::abs(pq.P - pq.s * pq.P_s), std::abs(pq.Q_s - pq.s * pq.Q_ss)};
    const double w = pq.r * pq.r - pq.s * pq.s;
    const double weak = std::abs(pq.s * mean_H(pq, 2) - w * mean_H_s(pq, 2));
    return {weak, std::abs(surface_scalars(phi, pq).combo)};
}

LandsbergResiduals landsberg_residuals(const Jet& phi, const SprayData& pq, int n) {
    if (n == 2) return {std::abs(surface_scalars(phi, pq).combo), 0.0};
    const PhiDerivs d = PhiDerivs::from(phi);
    return {std::abs(landsberg_L1(d, pq)), std::abs(landsberg_L2(d, pq))};
}

RegularityRecord regularity_check(const Jet& phi, int n) {
    const PhiDerivs d = PhiDerivs::from(phi);
    const double w = d.r * d.r - d.s * d.s;
    RegularityRecord rec{};
    rec.phi = d.phi;
    rec.margin1 = d.phi - d.s * d.phi_s;
    rec.margin2 = rec.margin1 + w * d.phi_ss;
    const double scale = std::abs(d.phi) + std::abs(d.s * d.phi_s) + std::abs(w * d.phi_ss);
    rec.spray_defined = std::abs(rec.margin2) > kSprayTolerance * scale;
    rec.regular = d.phi > 0 && rec.margin2 > 0 && (n == 2 || rec.margin1 > 0);
    return rec;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Riemannian: return "riemannian";
        case Verdict::BerwaldNonRiemannian: return "berwald_nonriemannian";
        case Verdict::LandsbergNonBerwald: return "landsberg_nonberwald";
        case Verdict::NoneOfThese: break;
    }
    return "none_of_these";
}

namespace {

Residual relative(double value, double scale) { return {std::abs(value), std::abs(value) / (1.0 + scale)}; }

double scale_L1(const PhiDerivs& d, const SprayData& pq) {
    const double w = pq.r * pq.r - pq.s * pq.s;
    return std::abs(3 * d.phi_s * pq.P_ss) + std::abs(d.phi * pq.P_sss) +
           std::abs((pq.s * d.phi + w * d.phi_s) * pq.Q_sss);
}

double scale_L2(const PhiDerivs& d, const SprayData& pq) {
    const double w = pq.r * pq.r - pq.s * pq.s;
    const double s = pq.s;
    return std::abs(s * d.phi * pq.P_ss) + std::abs(d.phi_s) * (std::abs(pq.P) + std::abs(s * pq.P_s)) +
           std::abs(s * d.phi + w * d.phi_s) * (std::abs(pq.Q_s) + std::abs(s * pq.Q_ss));
}

/// Residuals of a phi jet normalized to |phi| = 1.
void fill_residuals(PointRecord& p, const Jet& phi, const SprayData& pq, int n) {
    const PhiDerivs d = PhiDerivs::from(phi);
    const double s = pq.s, w = pq.r * pq.r - s * s;
    const double L1 = landsberg_L1(d, pq), L2 = landsberg_L2(d, pq);
    if (n >= 3) {
        p.berwald[0] = relative(pq.P - s * pq.P_s, std::abs(pq.P) + std::abs(s * pq.P_s));
        p.berwald[1] = relative(pq.Q_s - s * pq.Q_ss, std::abs(pq.Q_s) + std::abs(s * pq.Q_ss));
        p.landsberg[0] = relative(L1, scale_L1(d, pq));
        p.landsberg[1] = relative(L2, scale_L2(d, pq));
        return;
    }
    const double H = mean_H(pq, 2), H_s = mean_H_s(pq, 2);
    const double H_scale = 3 * (std::abs(pq.P) + std::abs(s * pq.P_s)) +
                           w * (std::abs(pq.Q_s) + std::abs(s * pq.Q_ss));
    const double H_s_scale = std::abs(s) * (3 * std::abs(pq.P_ss) + 2 * std::abs(pq.Q_s) +
                                            2 * std::abs(s * pq.Q_ss) + w * std::abs(pq.Q_sss));
    const Residual combo = relative(w * L1 + 3 * L2, w * scale_L1(d, pq) + 3 * scale_L2(d, pq));
    p.berwald[0] = relative(s * H - w * H_s, std::abs(s) * H_scale + w * H_s_scale);
    p.berwald[1] = combo;
    p.landsberg[0] = combo;
    p.landsberg[1] = {0.0, 0.0};
}

}  // namespace

ClassificationReport classify_metric(const MetricSource& src, int n, const GridSpec& grid, const Tolerances& tol) {
    if (n < 2) throw ValidationError("dimension must be at least 2");
    grid.validate();
    ClassificationReport rep;
    rep.n = n;
    rep.grid = grid;
    rep.tol = tol;
    rep.points.reserve(grid.size());
    bool regular = true;
    const Residual none{kNaN, kNaN};

    for (int i = 0; i < grid.nr; ++i)
        for (int j = 0; j < grid.ns; ++j) {
            const double r = grid.r_at(i), s = grid.s_at(i, j);
            PointRecord p{r, s, false, none, {none, none}, {none, none}, kNaN, kNaN, kNaN, kNaN};
            try {
                const Jet raw = src.phi_jet_local(r, s);
                const RegularityRecord reg = regularity_check(raw, n);
                regular = regular && reg.regular;
                const Jet phi = raw * (1.0 / std::abs(reg.phi));
                const PhiDerivs d = PhiDerivs::from(phi);
                p.margin1 = reg.margin1 / std::abs(reg.phi);
                p.margin2 = reg.margin2 / std::abs(reg.phi);
                p.spray_denominator = p.margin2;
                p.riemann = relative(riemannian_residual(phi), std::abs(s * d.phi_s * d.phi_s) +
                                                                   std::abs(s * d.phi * d.phi_ss) +
                                                                   std::abs(d.phi * d.phi_s));
                if (reg.spray_defined) {
                    const SprayData pq = src.has_known_spray() ? src.spray(r, s) : spray_pq(phi);
                    if (src.has_known_spray()) {
                        const auto c = compatibility_residuals(phi, pq);
                        p.compatibility = std::max(std::abs(c.C1), std::abs(c.C2));
                    } else {
                        p.compatibility = 0.0;
                    }
                    fill_residuals(p, phi, pq, n);
                    p.spray_defined = true;
                }
            } catch (const SprayUndefined&) {
                p.spray_defined = false;
            } catch (const Error& e) {
                throw GridPointError(r, s, e.what());
            }
            const bool first = rep.points.empty();
            rep.spray_defined = rep.spray_defined && p.spray_defined;
            track_max(rep.riemann, p.riemann.value, r, s);
            track_max(rep.riemann_rel, p.riemann.relative, r, s);
            for (const Residual& b : p.berwald) {
                track_max(rep.berwald, b.value, r, s);
                track_max(rep.berwald_rel, b.relative, r, s);
            }
            for (const Residual& l : p.landsberg) {
                track_max(rep.landsberg, l.value, r, s);
                track_max(rep.landsberg_rel, l.relative, r, s);
            }
            track_max(rep.compatibility, p.compatibility, r, s);
            track_min(rep.min_margin1, p.margin1, r, s, first);
            track_min(rep.min_margin2, p.margin2, r, s, first);
            rep.points.push_back(p);
        }

    const double t = tol.vanish;
    rep.regular = regular;
    rep.landsberg_flag = rep.spray_defined && rep.landsberg_rel.value <= t;
    rep.berwald_flag = rep.landsberg_flag && rep.berwald_rel.value <= t;
    rep.riemannian = rep.berwald_flag && rep.riemann_rel.value <= t;
    rep.verdict = rep.riemannian       ? Verdict::Riemannian
                  : rep.berwald_flag   ? Verdict::BerwaldNonRiemannian
                  : rep.landsberg_flag ? Verdict::LandsbergNonBerwald
                                       : Verdict::NoneOfThese;

    if (n >= 3 && rep.berwald_flag && !rep.riemannian)
        rep.cross_check_failures.push_back("berwald residuals vanish but the riemannian residual does not");
    if (n >= 3 && rep.regular && rep.landsberg_flag && rep.riemann_rel.value > t)
        rep.cross_check_failures.push_back("regular landsberg metric with nonvanishing riemannian residual");
    if (rep.compatibility.value > t)
        rep.cross_check_failures.push_back("attached spray is not the geodesic spray of phi");
    return rep;
}

}  // namespace sphfin
