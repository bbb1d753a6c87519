#pragma once

#include <utility>

#include "sphfin/expr.hpp"
#include "sphfin/geometry.hpp"

namespace sphfin {

struct CompatibilityResiduals {
    double C1, C2;
};

/// Residuals of the compatibility conditions between phi and a spray (P, Q).
CompatibilityResiduals compatibility_residuals(const Jet& phi, const SprayData& pq);
/// The same residuals divided by phi, written with psi = phi_s/phi and chi = phi_r/phi.
CompatibilityResiduals compatibility_residuals_log(double psi, double chi, const SprayData& pq);
/// The unique (psi, chi) that make both residuals vanish for the given spray.
std::pair<double, double> compatible_logderivs(const SprayData& pq);

struct CoefficientValues {
    double r;
    double c0, c1, c2, c3;
    double c1p, c2p, c3p;
};

/// Non-Riemannian Landsberg family for n >= 3:
/// P = c1 s + (c2/r^2) sqrt(r^2-s^2), Q = c0 s^2/2 - (c2 s/r^4) sqrt(r^2-s^2) + c3,
/// with c0 and c2 solved from the integrability conditions.
class LandsbergFamily {
public:
    static LandsbergFamily build(PhiExpr c1, PhiExpr c3, double c, double lo, double hi,
                                 int validation_points = 201);

    const PhiExpr& c1() const { return c1_; }
    const PhiExpr& c3() const { return c3_; }
    double c() const { return c_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    CoefficientValues coefficients(double r) const;
    /// Integrability residuals; both vanish by construction.
    double A(double r) const;
    double B(double r) const;

    double denominator(double r, double s) const;
    SprayData spray(double r, double s) const;
    std::pair<double, double> logderiv(double r, double s) const;
    /// psi jet (full) and chi jet (s-derivatives only).
    std::pair<Jet, Jet> logderiv_jets(double r, double s) const;
    /// 1 - s psi + (r^2-s^2)(psi_s + psi^2) in closed form.
    double regularity_ratio(double r, double s) const;

private:
    struct CoeffJets {
        Jet c1, c2, c3;
        double c0;
    };
    CoeffJets coefficient_jets(double r, double s) const;

    PhiExpr c1_, c3_;
    double c_ = 0;
    double lo_ = 0, hi_ = 0;
};

/// Two-dimensional Berwald spray family.
class SurfaceBerwaldFamily {
public:
    SurfaceBerwaldFamily(PhiExpr a, PhiExpr b0, PhiExpr b1, PhiExpr b2, PhiExpr b3);

    std::pair<Jet, Jet> spray_jets(double r, double s) const;
    SprayData spray(double r, double s) const;

private:
    PhiExpr a_, b0_, b1_, b2_, b3_;
};

/// Two-dimensional class P = -s/r^2 + (c/r^2) sqrt(r^2-s^2), Q = c0 - k(r) s^2 - (s/r^4) sqrt(r^2-s^2).
class ZhouClass {
public:
    static ZhouClass build(double c, PhiExpr c0, double lo = 0.5, double hi = 2.0,
                           int validation_points = 201);

    double c() const { return c_; }
    const PhiExpr& c0() const { return c0_; }

    std::pair<Jet, Jet> spray_jets(double r, double s) const;
    SprayData spray(double r, double s) const;
    /// a'/a for the prefactor a(r) = exp(int -(2 c0 r^2 - 1 + 2c^2 - 2c)/(r(2 c0 r^2 - 1)) dr).
    double a_logderiv(double r) const;
    /// chi(r, 0) required by the compatibility conditions.
    double spine_logderiv(double r) const;
    /// C2/phi of phi = a(r) exp(int_0^s psi): (a'/a - chi(r,0))/r.
    double a_defect(double r) const;

private:
    PhiExpr c0_;
    double c_ = 0;
};

/// Free-function spellings of the family operations.
LandsbergFamily build_landsberg_family(const PhiExpr& c1, const PhiExpr& c3, double c, double lo, double hi);
std::pair<double, double> logderiv_phi(const LandsbergFamily& fam, double r, double s);
SprayData surface_berwald_spray(const SurfaceBerwaldFamily& fam, double r, double s);
SprayData zhou_class_spray(double c, const PhiExpr& c0, double r, double s);

}  // namespace sphfin
