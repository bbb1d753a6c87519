#pragma once

#include <string>
#include <vector>

#include "sphfin/geometry.hpp"
#include "sphfin/metric_source.hpp"

namespace sphfin {

struct GeodesicState {
    Vec x, y;
    double t = 0;
};

struct StateDerivative {
    Vec dx, dy;
};

/// dx = y, dy = -2 G with G = u P y + u^2 Q x.
StateDerivative spray_rhs(const SprayField& spray, const GeodesicState& st, double eps = 1e-3);
StateDerivative spray_rhs(const MetricSource& src, const GeodesicState& st, double eps = 1e-3);

struct GeodesicOptions {
    /// Trajectory halts once |s| >= (1 - eps) r.
    double eps = 1e-3;
    /// Trajectory halts once r drops below this radius.
    double r_min = 1e-6;
};

struct Trajectory {
    std::vector<GeodesicState> states;
    /// F = u phi(r, s) at each recorded state, relative to F at the start.
    std::vector<double> F_ratio;
    double F0 = 0;
    /// max |F(t) - F(0)| / F(0).
    double drift = 0;
    bool domain_exit = false;
    std::string exit_reason;
};

/// Classical RK4 with fixed step; halts with a flagged partial trajectory on leaving the domain.
Trajectory integrate(const MetricSource& src, const Vec& x0, const Vec& y0, double step, int n_steps,
                     const GeodesicOptions& opts = {});

}  // namespace sphfin
