#include "sphfin/families.hpp"

#include <cmath>

#include "sphfin/errors.hpp"

namespace sphfin {

CompatibilityResiduals compatibility_residuals(const Jet& phi, const SprayData& pq) {
    const double r = pq.r, s = pq.s, w = r * r - s * s;
    const double f = phi.value(), fs = phi.coeff(0, 1), fr = phi.coeff(1, 0);
    const double q2 = 2 * pq.Q - s * pq.Q_s;
    const double C1 = (1 + s * pq.P - w * q2) * fs + (s * pq.P_s - 2 * pq.P - s * q2) * f;
    const double C2 = fr / r - (pq.P + pq.Q_s * w) * fs - (pq.P_s + s * pq.Q_s) * f;
    return {C1, C2};
}

CompatibilityResiduals compatibility_residuals_log(double psi, double chi, const SprayData& pq) {
    const double r = pq.r, s = pq.s, w = r * r - s * s;
    const double q2 = 2 * pq.Q - s * pq.Q_s;
    const double C1 = (1 + s * pq.P - w * q2) * psi + (s * pq.P_s - 2 * pq.P - s * q2);
    const double C2 = chi / r - (pq.P + pq.Q_s * w) * psi - (pq.P_s + s * pq.Q_s);
    return {C1, C2};
}

std::pair<double, double> compatible_logderivs(const SprayData& pq) {
    const double r = pq.r, s = pq.s, w = r * r - s * s;
    const double q2 = 2 * pq.Q - s * pq.Q_s;
    const double a = 1 + s * pq.P - w * q2;
    const double b = s * pq.P_s - 2 * pq.P - s * q2;
    if (std::abs(a) <= 1e-14 * (1 + std::abs(s * pq.P) + std::abs(w * q2))) throw DenominatorVanished(r, s, a);
    const double psi = -b / a;
    const double chi = r * ((pq.P + pq.Q_s * w) * psi + pq.P_s + s * pq.Q_s);
    return {psi, chi};
}

// ---------------------------------------------------------------- Landsberg

namespace {

void check_nonzero(double value, double scale, const char* constraint, double r) {
    if (!(std::abs(value) > 1e-12 * scale)) throw ConstraintViolated(constraint, r);
}

}  // namespace

LandsbergFamily LandsbergFamily::build(PhiExpr c1, PhiExpr c3, double c, double lo, double hi,
                                       int validation_points) {
    if (c1.uses_s() || c3.uses_s()) throw ValidationError("c1 and c3 must be functions of r alone");
    if (!(lo > 0.0) || !(hi >= lo)) throw ValidationError("interval must satisfy 0 < lo <= hi");
    if (!std::isfinite(c)) throw ValidationError("c must be finite");
    LandsbergFamily fam;
    fam.c1_ = std::move(c1);
    fam.c3_ = std::move(c3);
    fam.c_ = c;
    fam.lo_ = lo;
    fam.hi_ = hi;

    const int m = std::max(validation_points, 1);
    double prev1 = 0, prev3 = 0, prev13 = 0, prev_r = lo;
    for (int i = 0; i < m; ++i) {
        const double r = m == 1 ? lo : lo + (hi - lo) * i / (m - 1);
        const double v1 = fam.c1_.eval(r, 0.0), v3 = fam.c3_.eval(r, 0.0);
        const double f1 = v1 * r * r + 1, f3 = 2 * v3 * r * r - 1, f13 = v1 + 2 * v3;
        check_nonzero(f1, 1 + std::abs(v1 * r * r), "c1 != -1/r^2", r);
        check_nonzero(f3, 1 + std::abs(2 * v3 * r * r), "c3 != 1/(2r^2)", r);
        check_nonzero(f13, std::abs(v1) + 2 * std::abs(v3) + 1e-300, "c1 + 2*c3 != 0", r);
        if (i > 0) {
            if (f1 * prev1 < 0) throw ConstraintViolated("c1 != -1/r^2", 0.5 * (r + prev_r));
            if (f3 * prev3 < 0) throw ConstraintViolated("c3 != 1/(2r^2)", 0.5 * (r + prev_r));
            if (f13 * prev13 < 0) throw ConstraintViolated("c1 + 2*c3 != 0", 0.5 * (r + prev_r));
        }
        if (c != 0.0 && f1 * f3 < 0) throw NonRealC2(r);
        prev1 = f1;
        prev3 = f3;
        prev13 = f13;
        prev_r = r;
    }
    return fam;
}

LandsbergFamily::CoeffJets LandsbergFamily::coefficient_jets(double r, double s) const {
    CoeffJets j;
    j.c1 = c1_.eval_jet(r, s);
    j.c3 = c3_.eval_jet(r, s);
    const Jet rr = Jet::seed_r(r, s);
    const Jet f1 = j.c1 * rr * rr + 1.0;
    const Jet f3 = 2.0 * j.c3 * rr * rr - 1.0;
    if (c_ == 0.0) {
        j.c2 = Jet::constant(0.0, r, s);
    } else {
        const Jet prod = f1 * f3;
        if (!(prod.value() > 0.0)) throw NonRealC2(r);
        j.c2 = c_ * sqrt(prod);
    }
    const double c1 = j.c1.value(), c3 = j.c3.value();
    const double c1p = j.c1.coeff(1, 0), c3p = j.c3.coeff(1, 0);
    const double num = 4 * c1 * c3 * (2 * c3 + c1) * r * r * r - 2 * (c1p * c3 - c1 * c3p) * r * r +
                       2 * (4 * c3 * c3 - c1 * c1) * r + c1p + 2 * c3p;
    j.c0 = -num / (2 * r * f1.value() * f3.value());
    return j;
}

CoefficientValues LandsbergFamily::coefficients(double r) const {
    const CoeffJets j = coefficient_jets(r, 0.0);
    return {r, j.c0, j.c1.value(), j.c2.value(), j.c3.value(), j.c1.coeff(1, 0), j.c2.coeff(1, 0),
            j.c3.coeff(1, 0)};
}

double LandsbergFamily::A(double r) const {
    const CoefficientValues k = coefficients(r);
    const double c0 = k.c0, c1 = k.c1, c3 = k.c3;
    const double r2 = r * r, r3 = r2 * r, r5 = r3 * r2;
    return r2 * (4 * c0 * c1 * c3 * r5 + 2 * (2 * c0 * c3 + 2 * c1 * c1 * c3 + 4 * c1 * c3 * c3 - c0 * c1) * r3 +
                 2 * (c1 * k.c3p - k.c1p * c3) * r2 + 2 * (4 * c3 * c3 - c0 - c1 * c1) * r + 2 * k.c3p + k.c1p);
}

double LandsbergFamily::B(double r) const {
    const CoefficientValues k = coefficients(r);
    const double c0 = k.c0, c1 = k.c1, c2 = k.c2, c3 = k.c3;
    const double r2 = r * r, r3 = r2 * r, r5 = r3 * r2;
    return 4 * c0 * c2 * c3 * r5 + 2 * c2 * (2 * c1 * c3 + 4 * c3 * c3 - c0) * r3 +
           4 * (c2 * k.c3p - k.c2p * c3) * r2 + 2 * c2 * (2 * c3 - c1) * r + 2 * k.c2p;
}

double LandsbergFamily::denominator(double r, double s) const {
    const CoefficientValues k = coefficients(r);
    const double w = std::sqrt(r * r - s * s);
    return r * r + (k.c1 + 2 * k.c3) * r * r * s * s - 2 * k.c3 * r * r * r * r + 2 * k.c2 * s * w;
}

SprayData LandsbergFamily::spray(double r, double s) const {
    if (!(std::abs(s) < r)) throw BadFrame("family spray requires |s| < r");
    const CoefficientValues k = coefficients(r);
    const Jet sj = Jet::seed_s(r, s);
    const Jet w = sqrt(r * r - sj * sj);
    const Jet P = k.c1 * sj + (k.c2 / (r * r)) * w;
    const Jet Q = 0.5 * k.c0 * sj * sj - (k.c2 / (r * r * r * r)) * sj * w + k.c3;
    return spray_from_jets(P, Q);
}

std::pair<Jet, Jet> LandsbergFamily::logderiv_jets(double r, double s) const {
    if (!(std::abs(s) < r)) throw BadFrame("log-derivatives require |s| < r");
    const CoeffJets k = coefficient_jets(r, s);
    const Jet rr = Jet::seed_r(r, s);
    const Jet sj = Jet::seed_s(r, s);
    const Jet r2 = rr * rr;
    const Jet w = sqrt(r2 - sj * sj);
    const Jet c12 = k.c1 + 2.0 * k.c3;
    const Jet den = r2 + c12 * r2 * sj * sj - 2.0 * k.c3 * r2 * r2 + 2.0 * k.c2 * sj * w;
    const double scale = r * r + std::abs(c12.value()) * r * r * s * s + 2 * std::abs(k.c3.value()) * r * r * r * r +
                         2 * std::abs(k.c2.value() * s * w.value());
    if (!(std::abs(den.value()) > 1e-12 * scale)) throw DenominatorVanished(r, s, den.value());
    const Jet psi = (c12 * r2 * sj + 2.0 * k.c2 * w) / den;

    // chi: coefficients enter only through their values.
    const double c0 = k.c0, c1 = k.c1.value(), c2 = k.c2.value(), c3 = k.c3.value();
    const double R2 = r * r, R4 = R2 * R2, R6 = R4 * R2;
    const Jet s2 = sj * sj;
    const Jet num = (2 * c0 * c2 * R4 + 4 * (c1 + c3) * c2 * R2 - 2 * c2) * sj * w + c0 * c1 * R6 * s2 +
                    (c0 + 4 * c1 * c3 + 2 * c1 * c1) * R4 * s2 - 2 * c1 * c3 * R6 + c1 * R4;
    const Jet chi = num / (r * den);
    return {psi, chi};
}

std::pair<double, double> LandsbergFamily::logderiv(double r, double s) const {
    const auto [psi, chi] = logderiv_jets(r, s);
    return {psi.value(), chi.value()};
}

double LandsbergFamily::regularity_ratio(double r, double s) const {
    const CoefficientValues k = coefficients(r);
    const double d = denominator(r, s);
    return -r * r * r * r * (k.c1 * r * r + 1) * (2 * k.c3 * r * r - 1) / (d * d);
}

LandsbergFamily build_landsberg_family(const PhiExpr& c1, const PhiExpr& c3, double c, double lo, double hi) {
    return LandsbergFamily::build(c1, c3, c, lo, hi);
}

std::pair<double, double> logderiv_phi(const LandsbergFamily& fam, double r, double s) {
    return fam.logderiv(r, s);
}

// ---------------------------------------------------------- surface Berwald

SurfaceBerwaldFamily::SurfaceBerwaldFamily(PhiExpr a, PhiExpr b0, PhiExpr b1, PhiExpr b2, PhiExpr b3)
    : a_(std::move(a)), b0_(std::move(b0)), b1_(std::move(b1)), b2_(std::move(b2)), b3_(std::move(b3)) {
    for (const PhiExpr* e : {&a_, &b0_, &b1_, &b2_, &b3_})
        if (e->uses_s()) throw ValidationError("surface Berwald coefficients must be functions of r alone");
}

std::pair<Jet, Jet> SurfaceBerwaldFamily::spray_jets(double r, double s) const {
    if (!(std::abs(s) < r)) throw BadFrame("surface Berwald spray requires |s| < r");
    const double a = a_.eval(r, 0), b0 = b0_.eval(r, 0), b1 = b1_.eval(r, 0);
    const double b2 = b2_.eval(r, 0), b3 = b3_.eval(r, 0);
    const double r2 = r * r, r4 = r2 * r2;
    const Jet sj = Jet::seed_s(r, s);
    const Jet w = sqrt(r2 - sj * sj);
    const Jet m = r2 - 2.0 * sj * sj;
    const Jet P = b1 * sj + b2 / w + b3 * m / w;
    const Jet Q = b0 * sj * sj + 0.5 * b1 + b2 * sj * m / (r4 * w) - b3 * sj * m / (r2 * w) - (a / r2) * sj * w;
    return {P, Q};
}

SprayData SurfaceBerwaldFamily::spray(double r, double s) const {
    const auto [P, Q] = spray_jets(r, s);
    return spray_from_jets(P, Q);
}

SprayData surface_berwald_spray(const SurfaceBerwaldFamily& fam, double r, double s) { return fam.spray(r, s); }

// -------------------------------------------------------------------- Zhou

ZhouClass ZhouClass::build(double c, PhiExpr c0, double lo, double hi, int validation_points) {
    if (c == 3.0) throw ExcludedParameter("c = 3 is excluded from the class");
    if (!std::isfinite(c)) throw ValidationError("c must be finite");
    if (c0.uses_s()) throw ValidationError("c0 must be a function of r alone");
    ZhouClass z;
    z.c_ = c;
    z.c0_ = std::move(c0);
    const int m = std::max(validation_points, 1);
    double prev = 0;
    for (int i = 0; i < m; ++i) {
        const double r = m == 1 ? lo : lo + (hi - lo) * i / (m - 1);
        const double v = 2 * r * r * z.c0_.eval(r, 0) - 1;
        if (!(std::abs(v) > 1e-12) || (i > 0 && v * prev < 0))
            throw ExcludedParameter("2*r^2*c0 - 1 vanishes near r=" + std::to_string(r));
        prev = v;
    }
    return z;
}

std::pair<Jet, Jet> ZhouClass::spray_jets(double r, double s) const {
    if (!(std::abs(s) < r)) throw BadFrame("Zhou spray requires |s| < r");
    const Jet c0j = c0_.eval_jet(r, s);
    const double c0 = c0j.value(), c0p = c0j.coeff(1, 0);
    const double r2 = r * r, r3 = r2 * r, r4 = r2 * r2;
    const double k = (4 * r4 * c0 * c0 + 2 * r3 * c0p + c_ * c_) / (2 * r4 * (2 * r2 * c0 - 1));
    const Jet sj = Jet::seed_s(r, s);
    const Jet w = sqrt(r2 - sj * sj);
    const Jet P = -sj / r2 + (c_ / r2) * w;
    const Jet Q = c0 - k * sj * sj - sj * w / r4;
    return {P, Q};
}

SprayData ZhouClass::spray(double r, double s) const {
    const auto [P, Q] = spray_jets(r, s);
    return spray_from_jets(P, Q);
}

double ZhouClass::a_logderiv(double r) const {
    const double c0 = c0_.eval(r, 0);
    const double d = 2 * c0 * r * r - 1;
    return -(d + 2 * c_ * c_ - 2 * c_) / (r * d);
}

double ZhouClass::spine_logderiv(double r) const { return compatible_logderivs(spray(r, 0.0)).second; }

double ZhouClass::a_defect(double r) const { return (a_logderiv(r) - spine_logderiv(r)) / r; }

SprayData zhou_class_spray(double c, const PhiExpr& c0, double r, double s) {
    return ZhouClass::build(c, c0, r, r, 1).spray(r, s);
}

}  // namespace sphfin
