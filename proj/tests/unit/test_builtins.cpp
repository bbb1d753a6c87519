#include <gtest/gtest.h>

#include <cmath>

#include "sphfin/builtins.hpp"
#include "sphfin/errors.hpp"
#include "sphfin/metric_source.hpp"

namespace sphfin {
namespace {

TEST(Builtin, RegistryIsExact) {
    const std::vector<std::string> want{"euclidean", "riemann_quadratic", "example1",
                                        "example2",  "zhou2d_r5",         "zhou2d_r6"};
    EXPECT_EQ(builtin_names(), want);
}

TEST(Builtin, EuclideanIsOne) {
    const BuiltinMetric m = builtin("euclidean");
    ASSERT_TRUE(m.is_closed_form());
    EXPECT_TRUE(m.expr() == PhiExpr::number(1.0));
}

TEST(Builtin, ZhouPrefactorFive) {
    const BuiltinMetric m = builtin("zhou2d_r5");
    ASSERT_TRUE(m.is_closed_form());
    const double r = 1.3, s = 0.4, w = std::sqrt(r * r - s * s);
    EXPECT_NEAR(m.expr().eval(r, s), std::pow(r, -5) * w * std::exp(2 * s / w), 1e-14);
}

TEST(Builtin, ZhouPrefactorSix) {
    const BuiltinMetric m = builtin("zhou2d_r6");
    const double r = 0.7, s = -0.2, w = std::sqrt(r * r - s * s);
    EXPECT_NEAR(m.expr().eval(r, s), std::pow(r, -6) * w * std::exp(2 * s / w), 1e-12);
    EXPECT_TRUE(m.spray.has_value());
}

TEST(Builtin, ExampleOneLogDerivativesAtAnchor) {
    const BuiltinMetric m = builtin("example1");
    ASSERT_FALSE(m.is_closed_form());
    EXPECT_DOUBLE_EQ(m.logderivs().psi.eval(1.0, 0.0), -1.0);
    EXPECT_DOUBLE_EQ(m.logderivs().chi.eval(1.0, 0.0), 1.0);
}

TEST(Builtin, ExampleTwoLogDerivativesAtAnchor) {
    const BuiltinMetric m = builtin("example2");
    EXPECT_NEAR(m.logderivs().psi.eval(1.0, 0.0), -1.0, 1e-12);
    EXPECT_NEAR(m.logderivs().chi.eval(1.0, 0.0), 0.0, 1e-12);
}

TEST(Builtin, ExampleOneClosedFormMatchesLogDerivatives) {
    const BuiltinMetric m = builtin("example1");
    ASSERT_TRUE(m.closed_form.has_value());
    for (double r : {0.8, 1.0, 1.7})
        for (double t : {-0.3, 0.2, 0.5}) {
            const double s = t * r;
            const Jet j = m.closed_form->eval_jet(r, s);
            EXPECT_NEAR(j.coeff(0, 1) / j.value(), m.logderivs().psi.eval(r, s), 1e-10);
            EXPECT_NEAR(j.coeff(1, 0) / j.value(), m.logderivs().chi.eval(r, s), 1e-10);
        }
}

TEST(Builtin, ExampleTwoClosedFormMatchesLogDerivativesOffAxis) {
    const BuiltinMetric m = builtin("example2");
    ASSERT_TRUE(m.closed_form.has_value());
    for (double r : {0.8, 1.3})
        for (double t : {-0.3, 0.2, 0.35}) {
            const double s = t * r;
            const Jet j = m.closed_form->eval_jet(r, s);
            EXPECT_NEAR(j.coeff(0, 1) / j.value(), m.logderivs().psi.eval(r, s), 1e-9);
            EXPECT_NEAR(j.coeff(1, 0) / j.value(), m.logderivs().chi.eval(r, s), 1e-9);
        }
}

TEST(Builtin, RiemannQuadraticNeedsParameters) {
    EXPECT_THROW(builtin("riemann_quadratic"), MissingParameter);
    const BuiltinMetric m = builtin("riemann_quadratic", {{"f1", PhiExpr::number(1)}, {"f2", PhiExpr::number(1)}});
    EXPECT_NEAR(m.expr().eval(1.0, 0.5), std::sqrt(1.25), 1e-15);
}

TEST(Builtin, RiemannQuadraticRejectsNonPositiveF1) {
    EXPECT_THROW(builtin("riemann_quadratic", {{"f1", PhiExpr::parse("r - 1")}, {"f2", PhiExpr::number(1)}}),
                 ValidationError);
}

TEST(Builtin, UnknownName) { EXPECT_THROW(builtin("example3"), UnknownBuiltin); }

TEST(Builtin, UnexpectedParameterRejected) {
    EXPECT_THROW(builtin("euclidean", {{"f1", PhiExpr::number(1)}}), Error);
}

TEST(Builtin, ProvenanceRecorded) {
    for (const auto& name : {"euclidean", "example1", "example2", "zhou2d_r5", "zhou2d_r6"})
        EXPECT_FALSE(builtin(name).provenance.empty()) << name;
}

TEST(MetricSourceTest, AnchorValueIsRestored) {
    const MetricSource src = MetricSource::from_builtin(builtin("example1"));
    EXPECT_NEAR(*src.phi(1.0, 0.0), 1.0, 1e-14);
    EXPECT_TRUE(src.has_known_spray());
}

TEST(MetricSourceTest, LocalJetHasUnitValue) {
    const MetricSource src = MetricSource::from_builtin(builtin("example2"));
    EXPECT_NEAR(src.phi_jet_local(1.4, 0.3).value(), 1.0, 1e-15);
}

}  // namespace
}  // namespace sphfin
