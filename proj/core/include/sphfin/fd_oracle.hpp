#pragma once

#include <functional>

namespace sphfin {

using ScalarField = std::function<double(double r, double s)>;

/// Finite-difference estimate of d^order_r/dr^order_r d^order_s/ds^order_s f at (r0, s0).
///
/// Central differences on a half-integer stencil with two Richardson levels.
/// Base steps grow with the order (1e-3 for first, up to 2e-2 for fifth
/// s-derivatives) and scale with max(1, |base|). Mixed derivatives use an
/// r-step of 1e-2. Throws StencilOutOfDomain if any stencil point leaves |s| < r.
double fd_oracle(const ScalarField& f, double r0, double s0, int order_r, int order_s);

/// Base step used for an s-derivative of the given order.
double fd_step_s(int order_s, double s0);
/// Base step used for an r-derivative given the s-order it is combined with.
double fd_step_r(int order_s, double r0);

}  // namespace sphfin
