#include "sphfin/fd_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "sphfin/errors.hpp"

namespace sphfin {

namespace {

constexpr std::array<double, 6> kStepS{0.0, 1e-3, 5e-3, 1e-2, 4e-2, 4e-2};

double binom(int m, int j) {
    double c = 1.0;
    for (int i = 1; i <= j; ++i) c = c * (m - j + i) / i;
    return c;
}

// delta^m g(x0) / h^m with points x0 + (m/2 - j) h.
double central(const std::function<double(double)>& g, double x0, int m, double h) {
    if (m == 0) return g(x0);
    // Differences taken against the first sample.
    const double ref = g(x0 + 0.5 * m * h);
    double acc = 0.0;
    for (int j = 1; j <= m; ++j) {
        const double sign = (j % 2) ? -1.0 : 1.0;
        acc += sign * binom(m, j) * (g(x0 + (0.5 * m - j) * h) - ref);
    }
    return acc / std::pow(h, m);
}

// Two Richardson levels on an O(h^2) even expansion.
double richardson(const std::function<double(double)>& g, double x0, int m, double h) {
    if (m == 0) return g(x0);
    const double d0 = central(g, x0, m, h);
    const double d1 = central(g, x0, m, h / 2);
    const double d2 = central(g, x0, m, h / 4);
    const double r0 = (4 * d1 - d0) / 3;
    const double r1 = (4 * d2 - d1) / 3;
    return (16 * r1 - r0) / 15;
}

}  // namespace

double fd_step_s(int order_s, double s0) {
    return kStepS[order_s] * std::max(1.0, std::abs(s0));
}

double fd_step_r(int order_s, double r0) {
    return (order_s == 0 ? 1e-3 : 3e-2) * std::max(1.0, std::abs(r0));
}

double fd_oracle(const ScalarField& f, double r0, double s0, int order_r, int order_s) {
    if (order_r < 0 || order_r > 1 || order_s < 0 || order_s > 5)
        throw std::invalid_argument("fd_oracle supports order_r <= 1 and order_s <= 5");
    const double hs = order_s ? fd_step_s(order_s, s0) : 0.0;
    const double hr = order_r ? fd_step_r(order_s, r0) : 0.0;
    const double ext_s = 0.5 * order_s * hs;
    const double ext_r = 0.5 * order_r * hr;
    if (std::abs(s0) + ext_s >= r0 - ext_r)
        throw StencilOutOfDomain("finite-difference stencil leaves |s| < r");

    auto s_part = [&](double r) {
        return richardson([&](double s) { return f(r, s); }, s0, order_s, hs);
    };
    if (order_r == 0) return s_part(r0);
    return richardson(s_part, r0, 1, hr);
}

}  // namespace sphfin
