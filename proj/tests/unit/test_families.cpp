#include <gtest/gtest.h>

#include <cmath>

#include "random_metrics.hpp"
#include "sphfin/builtins.hpp"
#include "sphfin/errors.hpp"
#include "sphfin/families.hpp"
#include "sphfin/fd_oracle.hpp"
#include "sphfin/grid.hpp"

namespace sphfin {
namespace {

PhiExpr coef(const char* text) { return PhiExpr::parse_coefficient(text); }

LandsbergFamily example_one() { return build_landsberg_family(coef("1/r^2"), coef("1/r^2"), 1 / (2 * std::sqrt(2.0)), 0.5, 2); }
LandsbergFamily example_two() { return build_landsberg_family(coef("0"), coef("1/r^2"), 0.5, 0.5, 2); }

Jet unit(const Jet& j) { return j * (1 / j.value()); }

TEST(Compatibility, OwnSprayRoundTrip) {
    testing::Rng rng(31);
    for (int k = 0; k < 30; ++k) {
        const PhiExpr phi = testing::random_phi(rng);
        const double r = testing::uniform(rng, 0.5, 2), s = testing::uniform(rng, -0.6, 0.6) * r;
        const Jet j = phi.eval_jet(r, s);
        const auto c = compatibility_residuals(j, spray_pq(j));
        EXPECT_NEAR(c.C1, 0.0, 1e-10);
        EXPECT_NEAR(c.C2, 0.0, 1e-10);
    }
}

TEST(Compatibility, ZhouPrefactorFiveLeavesDefect) {
    const ZhouClass zc = ZhouClass::build(-1.0, coef("1/r^2"));
    const PhiExpr phi = builtin("zhou2d_r5").expr();
    for (double r : {0.5, 1.0, 1.9})
        for (double t : {-0.9, 0.0, 0.6}) {
            const double s = t * r;
            const auto c = compatibility_residuals(unit(phi.eval_jet(r, s)), zc.spray(r, s));
            EXPECT_NEAR(c.C1, 0.0, 1e-10);
            EXPECT_NEAR(c.C2 * r * r, 1.0, 1e-8);
        }
}

TEST(Compatibility, ZhouPrefactorSixIsCompatible) {
    const ZhouClass zc = ZhouClass::build(-1.0, coef("1/r^2"));
    const PhiExpr phi = builtin("zhou2d_r6").expr();
    for (double r : {0.5, 1.0, 1.9})
        for (double t : {-0.9, 0.0, 0.6}) {
            const double s = t * r;
            const auto c = compatibility_residuals(unit(phi.eval_jet(r, s)), zc.spray(r, s));
            EXPECT_NEAR(c.C1, 0.0, 1e-10);
            EXPECT_NEAR(c.C2, 0.0, 1e-10);
        }
}

TEST(Compatibility, LogFormAgreesWithJetForm) {
    const Jet j = PhiExpr::parse("exp(0.2*s)*(1 + r)").eval_jet(1.2, 0.1);
    const SprayData pq = spray_pq(PhiExpr::parse("sqrt(1 + s^2)").eval_jet(1.2, 0.1));
    const auto a = compatibility_residuals(j, pq);
    const auto b = compatibility_residuals_log(j.coeff(0, 1) / j.value(), j.coeff(1, 0) / j.value(), pq);
    EXPECT_NEAR(a.C1 / j.value(), b.C1, 1e-14);
    EXPECT_NEAR(a.C2 / j.value(), b.C2, 1e-14);
}

TEST(Compatibility, SolvedLogDerivativesAnnihilateResiduals) {
    const SprayData pq = example_one().spray(1.3, 0.2);
    const auto [psi, chi] = compatible_logderivs(pq);
    const auto c = compatibility_residuals_log(psi, chi, pq);
    EXPECT_NEAR(c.C1, 0.0, 1e-13);
    EXPECT_NEAR(c.C2, 0.0, 1e-13);
}

TEST(LandsbergFamilyTest, ExampleOneCoefficients) {
    const LandsbergFamily fam = example_one();
    for (double r : {0.5, 0.9, 1.4, 2.0}) {
        const CoefficientValues cv = fam.coefficients(r);
        EXPECT_NEAR(cv.c0, -3 / std::pow(r, 4), 1e-12);
        EXPECT_NEAR(cv.c2, 0.5, 1e-12);
    }
}

TEST(LandsbergFamilyTest, ExampleTwoCoefficients) {
    const LandsbergFamily fam = example_two();
    for (double r : {0.5, 1.1, 2.0}) {
        const CoefficientValues cv = fam.coefficients(r);
        EXPECT_NEAR(cv.c0, -2 / std::pow(r, 4), 1e-12);
        EXPECT_NEAR(cv.c2, 0.5, 1e-12);
    }
}

TEST(LandsbergFamilyTest, ExcludedC1) {
    try {
        build_landsberg_family(coef("-1/r^2"), coef("1/r^2"), 0.5, 0.5, 2);
        FAIL() << "expected ConstraintViolated";
    } catch (const ConstraintViolated& e) {
        EXPECT_NE(e.constraint().find("c1"), std::string::npos);
    }
}

TEST(LandsbergFamilyTest, ComplexC2Rejected) {
    EXPECT_THROW(build_landsberg_family(coef("1/r^2"), coef("0"), 1.0, 0.5, 2), NonRealC2);
}

TEST(LandsbergFamilyTest, CoefficientsMustNotUseS) {
    EXPECT_THROW(LandsbergFamily::build(PhiExpr::parse("s"), coef("1/r^2"), 0.5, 0.5, 2), ValidationError);
}

TEST(LandsbergFamilyTest, IntegrabilityResidualsVanish) {
    testing::Rng rng(41);
    for (int k = 0; k < 5; ++k) {
        const LandsbergFamily fam = testing::random_landsberg_family(rng, testing::uniform(rng, 0.1, 1.0));
        for (int i = 0; i <= 20; ++i) {
            const double r = 0.5 + 1.5 * i / 20;
            EXPECT_LT(std::abs(fam.A(r)), 1e-10);
            EXPECT_LT(std::abs(fam.B(r)), 1e-10);
        }
    }
}

TEST(LogDeriv, ExampleOneAtAnchor) {
    const auto [psi, chi] = logderiv_phi(example_one(), 1, 0);
    EXPECT_NEAR(psi, -1.0, 1e-12);
    EXPECT_NEAR(chi, 1.0, 1e-12);
}

TEST(LogDeriv, ExampleTwoAtAnchor) {
    const auto [psi, chi] = logderiv_phi(example_two(), 1, 0);
    EXPECT_NEAR(psi, -1.0, 1e-12);
    EXPECT_NEAR(chi, 0.0, 1e-12);
}

TEST(LogDeriv, MatchesBuiltinPair) {
    const BuiltinMetric m = builtin("example1");
    const LandsbergFamily fam = example_one();
    for (double r : {0.7, 1.5})
        for (double t : {-0.4, 0.1, 0.8}) {
            const auto [psi, chi] = fam.logderiv(r, t * r);
            EXPECT_NEAR(psi, m.logderivs().psi.eval(r, t * r), 1e-12);
            EXPECT_NEAR(chi, m.logderivs().chi.eval(r, t * r), 1e-12);
        }
}

TEST(LogDeriv, PoleReported) {
    EXPECT_THROW(logderiv_phi(example_one(), 1, -1 / std::sqrt(2.0)), DenominatorVanished);
}

TEST(LogDeriv, CrossDerivativesConsistent) {
    testing::Rng rng(43);
    for (int k = 0; k < 4; ++k) {
        const LandsbergFamily fam = k == 0 ? example_one() : testing::random_landsberg_family(rng, 0.4);
        const ScalarField psi = [&](double r, double s) { return fam.logderiv(r, s).first; };
        const ScalarField chi = [&](double r, double s) { return fam.logderiv(r, s).second; };
        for (double r : {0.8, 1.2})
            for (double t : {0.1, 0.4}) {
                const double s = t * r;
                if (std::abs(fam.denominator(r, s)) < 0.1) continue;
                EXPECT_NEAR(fd_oracle(psi, r, s, 1, 0), fd_oracle(chi, r, s, 0, 1), 1e-8);
            }
    }
}

TEST(SurfaceBerwald, ZeroCoefficientsGiveZeroSpray) {
    const PhiExpr z = PhiExpr::number(0);
    const SprayData pq = surface_berwald_spray(SurfaceBerwaldFamily(z, z, z, z, z), 1.2, 0.3);
    EXPECT_EQ(pq.P, 0.0);
    EXPECT_EQ(pq.Q, 0.0);
}

TEST(SurfaceBerwald, QuadraticSpecialization) {
    const PhiExpr z = PhiExpr::number(0);
    const SurfaceBerwaldFamily fam(z, coef("2/r"), coef("r"), z, z);
    const double r = 1.5, s = 0.4;
    const SprayData pq = fam.spray(r, s);
    EXPECT_NEAR(pq.P, r * s, 1e-14);
    EXPECT_NEAR(pq.Q, 2 / r * s * s + 0.5 * r, 1e-14);
    EXPECT_NEAR(pq.P_ss, 0.0, 1e-13);
}

TEST(SurfaceBerwald, BerwaldCurvatureVanishes) {
    const SurfaceBerwaldFamily fam(coef("0.5/r"), coef("r^2"), coef("1 - r"), coef("0.3"), coef("-0.4/r"));
    const GridSpec g;
    double worst = 0;
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ns; ++j) {
            const double r = g.r_at(i), s = g.s_at(i, j);
            worst = std::max(worst, berwald_curvature(fam.spray(r, s), embed_point(r, s, 1, 2)).max_abs());
        }
    EXPECT_LT(worst, 1e-7);
}

TEST(ZhouSpray, ValueAtAnchor) {
    const SprayData pq = zhou_class_spray(-1, coef("1/r^2"), 1, 0);
    EXPECT_NEAR(pq.P, -1.0, 1e-15);
    EXPECT_NEAR(pq.Q, 1.0, 1e-15);
}

TEST(ZhouSpray, MatchesReducedFormula) {
    const double r = 1.3, s = -0.5, w = std::sqrt(r * r - s * s);
    const SprayData pq = zhou_class_spray(-1, coef("1/r^2"), r, s);
    EXPECT_NEAR(pq.P, -s / (r * r) - w / (r * r), 1e-14);
    EXPECT_NEAR(pq.Q, 1 / (r * r) - s * s / (2 * std::pow(r, 4)) - s * w / std::pow(r, 4), 1e-14);
}

TEST(ZhouSpray, ZeroParameters) {
    const double r = 0.9, s = 0.3;
    const SprayData pq = zhou_class_spray(0, coef("0"), r, s);
    EXPECT_NEAR(pq.P, -s / (r * r), 1e-15);
    EXPECT_NEAR(pq.Q, -s / std::pow(r, 4) * std::sqrt(r * r - s * s), 1e-14);
}

TEST(ZhouSpray, ExcludedParameters) {
    EXPECT_THROW(ZhouClass::build(3.0, coef("1/r^2")), ExcludedParameter);
    EXPECT_THROW(ZhouClass::build(-1.0, coef("1/(2*r^2)")), ExcludedParameter);
}

TEST(ZhouSpray, PrefactorDefect) {
    const ZhouClass zc = ZhouClass::build(-1.0, coef("1/r^2"));
    for (double r : {0.6, 1.0, 1.7}) {
        EXPECT_NEAR(zc.a_logderiv(r), -5 / r, 1e-12);
        EXPECT_NEAR(zc.spine_logderiv(r), -5 / r, 1e-12);
        EXPECT_NEAR(zc.a_defect(r), 0.0, 1e-12);
    }
}

}  // namespace
}  // namespace sphfin
