#include <gtest/gtest.h>

#include <cmath>

#include "random_metrics.hpp"
#include "sphfin/builtins.hpp"
#include "sphfin/errors.hpp"
#include "sphfin/families.hpp"
#include "sphfin/geometry.hpp"
#include "sphfin/metric_source.hpp"

namespace sphfin {
namespace {

const PhiExpr kQuadratic = PhiExpr::parse("sqrt(1 + s^2)");

Vec spray_at(const PhiExpr& phi, const Vec& x, const Vec& y) {
    const PointFrame f = make_frame(x, y);
    return spray_coefficients(spray_pq(phi.eval_jet(f.r, f.s)), f);
}

/// Central five-point derivative of a vector function along direction e_j of y.
template <class F>
Vec dy(F&& g, const Vec& y, int j, double h) {
    auto at = [&](double t) {
        Vec v = y;
        v(j) += t;
        return g(v);
    };
    return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
}

Mat random_rotation(testing::Rng& rng, int n) {
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = testing::uniform(rng, -1, 1);
    Eigen::HouseholderQR<Mat> qr(a);
    return qr.householderQ();
}

TEST(EmbedPoint, OrthogonalFrame) {
    const PointFrame f = embed_point(1, 0, 1, 2);
    EXPECT_NEAR(f.x(0), 1, 1e-15);
    EXPECT_NEAR(f.x(1), 0, 1e-15);
    EXPECT_NEAR(f.y(0), 0, 1e-15);
    EXPECT_NEAR(f.y(1), 1, 1e-15);
}

TEST(EmbedPoint, ContractionIdentity) {
    const PointFrame f = embed_point(2, 0.6, 1, 3);
    EXPECT_NEAR(f.x.dot(f.y), 0.6, 1e-15);
    EXPECT_NEAR(f.x.squaredNorm(), 4.0, 1e-15);
    EXPECT_NEAR(f.y.squaredNorm(), 1.0, 1e-15);
}

TEST(EmbedPoint, DefinitionCheck) {
    const PointFrame f = embed_point(1, 0.5, 2, 3);
    EXPECT_NEAR(f.y.norm(), 2.0, 1e-15);
    EXPECT_NEAR(f.x.dot(f.y) / f.y.norm(), 0.5, 1e-15);
}

TEST(EmbedPoint, BoundaryRejected) {
    EXPECT_THROW(embed_point(1, 1, 1, 2), BadFrame);
    EXPECT_THROW(embed_point(1, 0, 1, 1), BadFrame);
}

TEST(SprayPQ, EuclideanVanishes) {
    const SprayData pq = spray_pq(Jet::constant(1.0, 1.2, 0.3));
    for (double v : {pq.P, pq.P_s, pq.P_ss, pq.P_sss, pq.Q, pq.Q_s, pq.Q_ss, pq.Q_sss}) EXPECT_EQ(v, 0.0);
}

TEST(SprayPQ, RiemannianQuadratic) {
    for (double r : {0.5, 1.0, 1.7})
        for (double t : {-0.8, 0.0, 0.4}) {
            const SprayData pq = spray_pq(kQuadratic.eval_jet(r, t * r));
            EXPECT_NEAR(pq.P, 0.0, 1e-14);
            EXPECT_NEAR(pq.Q, 1.0 / (2 * (1 + r * r)), 1e-14);
            EXPECT_NEAR(pq.Q_s, 0.0, 1e-13);
            EXPECT_NEAR(pq.Q_sss, 0.0, 1e-11);
        }
}

TEST(SprayPQ, DegenerateFamilyHasNoSpray) {
    const Jet phi = PhiExpr::parse("r*s + 2*sqrt(r^2 - s^2)").eval_jet(1.1, 0.2);
    EXPECT_THROW(spray_pq(phi), SprayUndefined);
}

TEST(SprayPQ, DerivativesConsistentWithNeighbours) {
    const PhiExpr phi = PhiExpr::parse("exp(0.3*s - 0.1*s^2)*(1 + r^2)");
    const double r = 1.2, s = 0.1, h = 1e-4;
    const SprayData a = spray_pq(phi.eval_jet(r, s - h)), b = spray_pq(phi.eval_jet(r, s + h));
    const SprayData c = spray_pq(phi.eval_jet(r, s));
    EXPECT_NEAR((b.P - a.P) / (2 * h), c.P_s, 1e-7);
    EXPECT_NEAR((b.Q_ss - a.Q_ss) / (2 * h), c.Q_sss, 1e-6);
}

TEST(MetricComponents, Euclidean) {
    const PointFrame f = embed_point(1.3, 0.2, 1, 3);
    const MetricComponents m = metric_components(Jet::constant(1, 1.3, 0.2), f);
    EXPECT_EQ(m.sigma[0], 1.0);
    EXPECT_EQ(m.sigma[1], 0.0);
    EXPECT_EQ(m.sigma[2], 0.0);
    EXPECT_EQ(m.sigma[3], 0.0);
    EXPECT_TRUE(m.g.isApprox(Mat::Identity(3, 3)));
}

TEST(MetricComponents, QuadraticAtAxis) {
    const PointFrame f = embed_point(1, 0, 1, 2);
    const MetricComponents m = metric_components(kQuadratic.eval_jet(1, 0), f);
    EXPECT_NEAR(m.g(0, 0), 2.0, 1e-14);
    EXPECT_NEAR(m.g(1, 1), 1.0, 1e-14);
    EXPECT_NEAR(m.g(0, 1), 0.0, 1e-14);
}

TEST(MetricComponents, InverseAndReconstruction) {
    testing::Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        const PhiExpr phi = testing::random_phi(rng);
        const int n = 2 + k % 3;
        const double r = testing::uniform(rng, 0.5, 2), s = testing::uniform(rng, -0.5, 0.5) * r;
        const double u = testing::uniform(rng, 0.3, 2);
        const PointFrame f = embed_point(r, s, u, n);
        const Jet j = phi.eval_jet(r, s);
        const MetricComponents m = metric_components(j, f);
        EXPECT_LT((m.g * m.g_inv - Mat::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((m.g - m.g.transpose()).cwiseAbs().maxCoeff(), 1e-15);
        const double F2 = u * u * j.value() * j.value();
        EXPECT_NEAR(f.y.dot(m.g * f.y), F2, 1e-9 * (1 + F2));
    }
}

TEST(MetricComponents, DegenerateFactorNamed) {
    const PointFrame f = embed_point(1, 0.2, 1, 2);
    try {
        metric_components(PhiExpr::parse("-1").eval_jet(1, 0.2), f);
        FAIL() << "expected DegenerateMetric";
    } catch (const DegenerateMetric& e) {
        EXPECT_EQ(e.factor(), "phi");
    }
}

TEST(NonlinearConnection, EuclideanZero) {
    const PointFrame f = embed_point(1, 0.3, 1, 3);
    EXPECT_EQ(nonlinear_connection(SprayData{1, 0.3}, f).cwiseAbs().maxCoeff(), 0.0);
}

TEST(NonlinearConnection, EulerContraction) {
    const PointFrame f = embed_point(1.4, -0.5, 1.7, 3);
    const SprayData pq = spray_pq(PhiExpr::parse("exp(0.2*s)*sqrt(1 + 0.3*s^2)").eval_jet(f.r, f.s));
    const Vec lhs = nonlinear_connection(pq, f) * f.y;
    EXPECT_LT((lhs - 2 * spray_coefficients(pq, f)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(NonlinearConnection, MatchesDifferencedSpray) {
    const PointFrame f = embed_point(1, 0, 1, 2);
    const Mat G = nonlinear_connection(spray_pq(kQuadratic.eval_jet(1, 0)), f);
    auto g = [&](const Vec& y) { return spray_at(kQuadratic, f.x, y); };
    for (int j = 0; j < 2; ++j) EXPECT_LT((dy(g, f.y, j, 1e-3) - G.col(j)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Berwald, EuclideanZero) {
    EXPECT_EQ(berwald_curvature(SprayData{1, 0.2}, embed_point(1, 0.2, 1, 3)).max_abs(), 0.0);
}

TEST(Berwald, QuadraticSprayIsBerwald) {
    for (double s : {-0.4, 0.0, 0.3}) {
        const double r = 1.3, c1 = 0.7, c0 = -0.4, c3 = 1.1;
        SprayData pq{r, s};
        pq.P = c1 * s;
        pq.P_s = c1;
        pq.Q = 0.5 * c0 * s * s + c3;
        pq.Q_s = c0 * s;
        pq.Q_ss = c0;
        EXPECT_LT(berwald_curvature(pq, embed_point(r, s, 1.3, 3)).max_abs(), 1e-14);
    }
}

TEST(Berwald, ExampleOneWitness) {
    const MetricSource src = MetricSource::from_builtin(builtin("example1"));
    const SprayData pq = src.spray(1, 0);
    EXPECT_NEAR(pq.P_ss, -0.5, 1e-14);
    EXPECT_GT(berwald_curvature(pq, embed_point(1, 0, 1, 3)).max_abs(), 0.1);
}

TEST(Berwald, MatchesDifferencedConnection) {
    testing::Rng rng(9);
    for (int k = 0; k < 5; ++k) {
        const PhiExpr phi = testing::random_phi(rng);
        const int n = 3;
        Vec x(n), y(n);
        for (int i = 0; i < n; ++i) x(i) = testing::uniform(rng, -1, 1), y(i) = testing::uniform(rng, -1, 1);
        x *= 1.2 / x.norm();
        const PointFrame f = make_frame(x, y);
        if (std::abs(f.s) > 0.6 * f.r) continue;
        const Tensor4 B = berwald_curvature(spray_pq(phi.eval_jet(f.r, f.s)), f);
        auto gmat_col = [&](int k2) {
            return [&, k2](const Vec& yy) {
                const PointFrame g = make_frame(x, yy);
                return Vec(nonlinear_connection(spray_pq(phi.eval_jet(g.r, g.s)), g).col(k2));
            };
        };
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) {
                auto col = gmat_col(j);
                auto d1 = [&](const Vec& yy) { return dy(col, yy, l, 1e-3); };
                for (int m = 0; m < n; ++m) {
                    const Vec d2 = dy(d1, y, m, 1e-3);
                    for (int i = 0; i < n; ++i) EXPECT_NEAR(B(i, j, l, m), d2(i), 1e-4);
                }
            }
    }
}

TEST(Berwald, SymmetricInLowerIndices) {
    const PointFrame f = embed_point(1.1, 0.3, 0.9, 3);
    const Tensor4 B = berwald_curvature(spray_pq(PhiExpr::parse("exp(0.4*s + 0.1*s^3)").eval_jet(f.r, f.s)), f);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    EXPECT_NEAR(B(i, j, k, l), B(i, k, j, l), 1e-12);
                    EXPECT_NEAR(B(i, j, k, l), B(i, l, k, j), 1e-12);
                }
}

TEST(MeanBerwald, EuclideanZero) {
    const MeanBerwald mb = mean_berwald(SprayData{1, 0.2}, embed_point(1, 0.2, 1, 3));
    EXPECT_EQ(mb.E.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(mb.H, 0.0);
}

TEST(MeanBerwald, LandsbergFamilyValueOfH) {
    const MetricSource src = MetricSource::from_builtin(builtin("example1"));
    const MeanBerwald mb = mean_berwald(src.spray(1, 0), embed_point(1, 0, 1, 3));
    EXPECT_NEAR(mb.H, 1.5, 1e-13);
}

TEST(MeanBerwald, AnnihilatesY) {
    testing::Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        const PhiExpr phi = testing::random_phi(rng);
        const PointFrame f = embed_point(testing::uniform(rng, 0.5, 2), 0.3, testing::uniform(rng, 0.5, 2), 3);
        const Mat E = mean_berwald(spray_pq(phi.eval_jet(f.r, f.s)), f).E;
        EXPECT_LT((E * f.y).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(MeanBerwald, TwoAssembliesAgree) {
    testing::Rng rng(4);
    for (int k = 0; k < 10; ++k) {
        const PhiExpr phi = testing::random_phi(rng);
        const double r = testing::uniform(rng, 0.5, 2);
        const PointFrame f = embed_point(r, testing::uniform(rng, -0.5, 0.5) * r, 1.3, 2 + k % 3);
        const SprayData pq = spray_pq(phi.eval_jet(f.r, f.s));
        EXPECT_LT((mean_berwald(pq, f).E - mean_berwald_expanded(pq, f)).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(ScalarTrace, EuclideanZero) { EXPECT_EQ(scalar_trace_E(Jet::constant(1, 1, 0.2), SprayData{1, 0.2}, 3), 0.0); }

TEST(ScalarTrace, MatchesMetricContraction) {
    for (double s : {0.2, 0.0, -0.35}) {
        const PhiExpr phi = PhiExpr::parse("sqrt(1 + s^2)*exp(0.2*s)");
        const PointFrame f = embed_point(1, s, 1, 3);
        const Jet j = phi.eval_jet(1, s);
        const SprayData pq = spray_pq(j);
        const double direct = (metric_components(j, f).g_inv.cwiseProduct(mean_berwald(pq, f).E)).sum();
        EXPECT_NEAR(scalar_trace_E(j, pq, 3), direct, 1e-9) << "s = " << s;
    }
}

TEST(ScalarTrace, VanishesForBerwaldSurfaces) {
    const SurfaceBerwaldFamily fam(PhiExpr::parse("0.3"), PhiExpr::parse("1/r"), PhiExpr::parse("0.2*r"),
                                   PhiExpr::parse("0.1"), PhiExpr::parse("-0.2/r^2"));
    for (double r : {0.6, 1.0, 1.8})
        for (double t : {-0.7, -0.1, 0.0, 0.5}) {
            const double s = t * r;
            EXPECT_NEAR(scalar_trace_E(kQuadratic.eval_jet(r, s), fam.spray(r, s), 2), 0.0, 1e-9);
        }
}

TEST(Landsberg, EuclideanZero) {
    const LandsbergData l =
        landsberg_curvature(Jet::constant(1, 1, 0.1), SprayData{1, 0.1}, embed_point(1, 0.1, 1, 3));
    EXPECT_EQ(l.L.max_abs(), 0.0);
    EXPECT_EQ(l.L1, 0.0);
    EXPECT_EQ(l.L2, 0.0);
}

TEST(Landsberg, ExampleOneVanishesOnGrid) {
    const MetricSource src = MetricSource::from_builtin(builtin("example1"));
    const GridSpec g;
    double worst = 0;
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ns; ++j) {
            const double r = g.r_at(i), s = g.s_at(i, j);
            const auto phi = src.phi_jet(r, s);
            if (!phi) continue;
            const LandsbergData l = landsberg_curvature(*phi, src.spray(r, s), embed_point(r, s, 1, 3));
            worst = std::max({worst, std::abs(l.L1), std::abs(l.L2)});
        }
    EXPECT_LT(worst, 1e-7);
}

TEST(Landsberg, AnnihilatesYAndIsSymmetric) {
    testing::Rng rng(11);
    for (int k = 0; k < 10; ++k) {
        const PhiExpr phi = testing::random_phi(rng);
        const double r = testing::uniform(rng, 0.5, 2);
        const PointFrame f = embed_point(r, testing::uniform(rng, -0.5, 0.5) * r, 0.8, 3);
        const Jet j = phi.eval_jet(f.r, f.s);
        const Tensor3 L = landsberg_curvature(j, spray_pq(j), f).L;
        const double scale = 1 + L.max_abs();
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double c = 0;
                for (int m = 0; m < 3; ++m) c += f.y(m) * L(m, a, b);
                EXPECT_NEAR(c, 0.0, 1e-12 * scale);
                for (int d = 0; d < 3; ++d) {
                    EXPECT_NEAR(L(a, b, d), L(b, a, d), 1e-13 * scale);
                    EXPECT_NEAR(L(a, b, d), L(a, d, b), 1e-13 * scale);
                }
            }
    }
}

TEST(SurfaceScalars, EuclideanZero) {
    const SurfaceScalars sc = surface_scalars(Jet::constant(1, 1, 0.2), SprayData{1, 0.2});
    EXPECT_EQ(sc.K, 0.0);
    EXPECT_EQ(sc.lambda1, 0.0);
    EXPECT_EQ(sc.lambda2, 0.0);
    EXPECT_EQ(sc.combo, 0.0);
}

TEST(SurfaceScalars, ZhouClassIsLandsbergian) {
    const ZhouClass zc = ZhouClass::build(-1.0, PhiExpr::parse_coefficient("1/r^2"));
    const PhiExpr phi = builtin("zhou2d_r6").expr();
    const GridSpec g;
    for (int i = 0; i < g.nr; ++i)
        for (int j = 0; j < g.ns; ++j) {
            const double r = g.r_at(i), s = g.s_at(i, j);
            const Jet raw = phi.eval_jet(r, s);
            const SurfaceScalars sc = surface_scalars(raw * (1 / raw.value()), zc.spray(r, s));
            EXPECT_NEAR(sc.combo, 0.0, 1e-8 * (1 + std::abs(sc.lambda2))) << r << ", " << s;
        }
}

TEST(SurfaceScalars, ComboIdentity) {
    testing::Rng rng(21);
    for (int k = 0; k < 20; ++k) {
        const PhiExpr phi = testing::random_phi(rng);
        const double r = testing::uniform(rng, 0.5, 2);
        const double s = k % 4 == 0 ? 0.0 : testing::uniform(rng, -0.6, 0.6) * r;
        const Jet j = phi.eval_jet(r, s);
        const SurfaceScalars sc = surface_scalars(j, spray_pq(j));
        const PhiDerivs d = PhiDerivs::from(j);
        EXPECT_NEAR(sc.combo - (sc.lambda1 * d.phi_s + sc.lambda2 * d.phi), 0.0, 1e-9) << phi.to_string();
    }
}

TEST(CurvaturePacketTest, ScalarsAreRotationInvariant) {
    testing::Rng rng(8);
    const PhiExpr phi = PhiExpr::parse("exp(0.3*s - 0.2*s^2 + 0.05*r*s)");
    for (int n : {2, 3, 4}) {
        const PointFrame f = embed_point(1.3, 0.4, 1.1, n);
        const Mat R = random_rotation(rng, n);
        const PointFrame g = make_frame(R * f.x, R * f.y);
        const Jet j = phi.eval_jet(f.r, f.s);
        const CurvaturePacket a = curvature_packet(j, f), b = curvature_packet(j, g);
        EXPECT_NEAR(a.H, b.H, 1e-12);
        EXPECT_NEAR(a.L1, b.L1, 1e-12);
        EXPECT_NEAR(a.L2, b.L2, 1e-12);
        EXPECT_NEAR(a.Escalar, b.Escalar, 1e-10);
        EXPECT_LT((R * a.metric.g * R.transpose() - b.metric.g).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LT((R * a.Gmat * R.transpose() - b.Gmat).cwiseAbs().maxCoeff(), 1e-12);
    }
}

}  // namespace
}  // namespace sphfin
