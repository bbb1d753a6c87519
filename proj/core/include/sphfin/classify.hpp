#pragma once

#include <string>
#include <vector>

#include "sphfin/geometry.hpp"
#include "sphfin/grid.hpp"
#include "sphfin/metric_source.hpp"

namespace sphfin {

/// s phi_s^2 + s phi phi_ss - phi phi_s; vanishes iff phi = sqrt(f1 + f2 s^2).
double riemannian_residual(const Jet& phi);

struct BerwaldResiduals {
    /// n >= 3: |P - s P_s|; n = 2: |s H - (r^2-s^2) H_s|.
    double first;
    /// n >= 3: |Q_s - s Q_ss|; n = 2: |(r^2-s^2) L1 + 3 L2|.
    double second;
};
BerwaldResiduals berwald_residuals(const SprayData& pq, const Jet& phi, int n);

struct LandsbergResiduals {
    /// n >= 3: |L1|, |L2|; n = 2: |(r^2-s^2) L1 + 3 L2| and 0.
    double first;
    double second;
};
LandsbergResiduals landsberg_residuals(const Jet& phi, const SprayData& pq, int n);

struct RegularityRecord {
    double phi;
    double margin1;  // phi - s phi_s
    double margin2;  // phi - s phi_s + (r^2-s^2) phi_ss
    bool regular;
    bool spray_defined;
};
RegularityRecord regularity_check(const Jet& phi, int n);

enum class Verdict { Riemannian, BerwaldNonRiemannian, LandsbergNonBerwald, NoneOfThese };
const char* verdict_name(Verdict v);

struct Tolerances {
    /// Threshold for "vanishes" on relative residuals.
    double vanish = 1e-8;
};

/// A residual and the same residual divided by the magnitude of the terms it cancels,
/// so that the second is a roundoff-scale quantity when the first vanishes identically.
struct Residual {
    double value;
    double relative;
};

/// Residuals at one grid point. Quantities that scale with phi are divided by phi
/// (phi^2 for the Riemannian residual) so that log-derivative metrics need no anchor.
struct PointRecord {
    double r, s;
    bool spray_defined;
    Residual riemann;
    Residual berwald[2];
    Residual landsberg[2];
    double margin1, margin2;
    double spray_denominator;
    /// max(|C1|, |C2|)/phi against an attached closed-form spray; 0 for the spray of phi itself.
    double compatibility;
};

struct ResidualMax {
    double value = 0;
    double r = 0, s = 0;
};

struct ClassificationReport {
    int n = 3;
    GridSpec grid;
    Tolerances tol;
    std::vector<PointRecord> points;  // row-major in (r, s)

    /// Maxima of the normalized residuals.
    ResidualMax riemann, berwald, landsberg, compatibility;
    /// Maxima of the relative residuals; these decide the flags.
    ResidualMax riemann_rel, berwald_rel, landsberg_rel;
    ResidualMax min_margin1, min_margin2;
    bool riemannian = false, berwald_flag = false, landsberg_flag = false;
    bool regular = false, spray_defined = true;
    Verdict verdict = Verdict::NoneOfThese;
    /// Theorem cross-checks that failed on this grid.
    std::vector<std::string> cross_check_failures;
};

ClassificationReport classify_metric(const MetricSource& src, int n, const GridSpec& grid = {},
                                     const Tolerances& tol = {});

}  // namespace sphfin
