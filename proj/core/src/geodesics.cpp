#include "sphfin/geodesics.hpp"

#include <array>
#include <cmath>
#include <optional>

#include "sphfin/errors.hpp"

namespace sphfin {

namespace {

struct RS {
    double r, s, u;
};

RS reduce(const Vec& x, const Vec& y) {
    const double r = x.norm(), u = y.norm();
    return {r, u > 0 ? x.dot(y) / u : 0.0, u};
}

void guard(const RS& p, double eps, double r_min = 0.0) {
    if (!(p.u > 0)) throw DomainExit("velocity vanished");
    if (!(p.r > r_min)) throw DomainExit("trajectory reached the origin");
    if (!(std::abs(p.s) < (1.0 - eps) * p.r)) throw DomainExit("velocity became radial, |s| >= (1-eps) r");
}

GeodesicState advance(const GeodesicState& st, const StateDerivative& k, double h) {
    return {st.x + h * k.dx, st.y + h * k.dy, st.t + h};
}

// Five-point Gauss-Legendre on [0, 1].
constexpr std::array<double, 5> kGLx = {0.046910077030668004, 0.23076534494715845, 0.5, 0.76923465505284155,
                                        0.95308992296933200};
constexpr std::array<double, 5> kGLw = {0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
                                        0.23931433524968324, 0.11846344252809454};

/// Increment of ln phi along the straight (r, s) segment a -> b.
double log_phi_increment(const LogDerivSource& src, const RS& a, const RS& b) {
    const double d0 = src.denominator(a.r, a.s), d1 = src.denominator(b.r, b.s);
    const double dm = src.denominator(0.5 * (a.r + b.r), 0.5 * (a.s + b.s));
    if (!((d0 > 0) == (d1 > 0) && (d0 > 0) == (dm > 0)) || d0 == 0 || d1 == 0)
        throw DomainExit("trajectory crossed a pole of the log-derivatives");
    const double dr = b.r - a.r, ds = b.s - a.s;
    double acc = 0.0;
    for (std::size_t k = 0; k < kGLx.size(); ++k) {
        const auto [psi, chi] = src.values(a.r + kGLx[k] * dr, a.s + kGLx[k] * ds);
        acc += kGLw[k] * (chi * dr + psi * ds);
    }
    return acc;
}

}  // namespace

StateDerivative spray_rhs(const SprayField& spray, const GeodesicState& st, double eps) {
    const RS p = reduce(st.x, st.y);
    guard(p, eps);
    const SprayData pq = spray(p.r, p.s);
    return {st.y, -2.0 * (p.u * pq.P * st.y + p.u * p.u * pq.Q * st.x)};
}

StateDerivative spray_rhs(const MetricSource& src, const GeodesicState& st, double eps) {
    return spray_rhs([&](double r, double s) { return src.spray(r, s); }, st, eps);
}

Trajectory integrate(const MetricSource& src, const Vec& x0, const Vec& y0, double step, int n_steps,
                     const GeodesicOptions& opts) {
    if (x0.size() != y0.size() || x0.size() < 2) throw BadFrame("x0 and y0 must have equal dimension >= 2");
    if (!(step > 0) || n_steps < 0) throw ValidationError("step must be positive and n_steps non-negative");
    const RS p0 = reduce(x0, y0);
    guard(p0, opts.eps, opts.r_min);

    const SprayField spray = [&](double r, double s) { return src.spray(r, s); };
    const LogDerivSource* logsrc = src.is_closed_form() ? nullptr : src.logderivs();

    Trajectory tr;
    GeodesicState st{x0, y0, 0.0};
    tr.states.push_back(st);
    tr.F_ratio.push_back(1.0);
    double log_phi0 = 0.0;
    if (logsrc) {
        const auto phi0 = src.phi(p0.r, p0.s);
        tr.F0 = phi0 ? p0.u * *phi0 : std::nan("");
    } else {
        tr.F0 = p0.u * *src.phi(p0.r, p0.s);
        log_phi0 = std::log(tr.F0 / p0.u);
    }
    double log_phi = log_phi0;
    RS prev = p0;

    for (int k = 0; k < n_steps; ++k) {
        try {
            const StateDerivative k1 = spray_rhs(spray, st, opts.eps);
            const StateDerivative k2 = spray_rhs(spray, advance(st, k1, step / 2), opts.eps);
            const StateDerivative k3 = spray_rhs(spray, advance(st, k2, step / 2), opts.eps);
            const StateDerivative k4 = spray_rhs(spray, advance(st, k3, step), opts.eps);
            GeodesicState next{st.x + step / 6 * (k1.dx + 2 * k2.dx + 2 * k3.dx + k4.dx),
                               st.y + step / 6 * (k1.dy + 2 * k2.dy + 2 * k3.dy + k4.dy), st.t + step};
            const RS p = reduce(next.x, next.y);
            guard(p, opts.eps, opts.r_min);
            if (logsrc)
                log_phi += log_phi_increment(*logsrc, prev, p);
            else
                log_phi = std::log(src.expr()->eval(p.r, p.s));
            const double ratio = p.u / p0.u * std::exp(log_phi - log_phi0);
            st = next;
            prev = p;
            tr.states.push_back(st);
            tr.F_ratio.push_back(ratio);
            tr.drift = std::max(tr.drift, std::abs(ratio - 1.0));
        } catch (const Error& e) {
            tr.domain_exit = true;
            tr.exit_reason = e.what();
            break;
        }
    }
    return tr;
}

}  // namespace sphfin
