#include "sphfin/reconstruct.hpp"

#include <cmath>
#include <string>

#include "sphfin/errors.hpp"

namespace sphfin {

std::pair<double, double> LogDerivSource::values(double r, double s) const {
    const auto [psi, chi] = jets(r, s);
    return {psi.value(), chi.value()};
}

double LogDerivSource::mixed_partial(double r, double s) const {
    const auto [psi, chi] = jets(r, s);
    return psi.coeff(1, 0) - chi.coeff(0, 1);
}

std::pair<Jet, Jet> ExprLogDerivs::jets(double r, double s) const {
    return {pair_.psi.eval_jet(r, s), pair_.chi.eval_jet(r, s)};
}

std::pair<double, double> ExprLogDerivs::values(double r, double s) const {
    return {pair_.psi.eval(r, s), pair_.chi.eval(r, s)};
}

double ExprLogDerivs::denominator(double r, double s) const { return pair_.denominator.eval(r, s); }

std::pair<Jet, Jet> FamilyLogDerivs::jets(double r, double s) const { return fam_.logderiv_jets(r, s); }

double FamilyLogDerivs::denominator(double r, double s) const { return fam_.denominator(r, s); }

Jet log_phi_jet(const LogDerivSource& src, double r, double s, double log_value) {
    const auto [psi, chi] = src.jets(r, s);
    std::array<std::array<double, 6>, 2> d{};
    d[0][0] = log_value;
    for (int b = 1; b <= Jet::kSOrder; ++b) d[0][b] = psi.coeff(0, b - 1);
    for (int b = 0; b <= Jet::kSOrder; ++b) d[1][b] = chi.coeff(0, b);
    return Jet::from_derivatives(d, r, s);
}

Jet phi_jet_from_logderivs(const LogDerivSource& src, double r, double s, double log_value) {
    return exp(log_phi_jet(src, r, s, log_value));
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    if (!std::isfinite(flm) || !std::isfinite(frm)) throw IntegrationFailure("non-finite integrand");
    const double left = (m - a) / 6 * (fa + 4 * flm + fm);
    const double right = (b - m) / 6 * (fm + 4 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15 * tol) return left + right + delta / 15;
    if (depth <= 0) throw IntegrationFailure("adaptive quadrature did not converge");
    return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw IntegrationFailure("non-finite integrand");
    const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

LogPhiIntegrator::LogPhiIntegrator(std::shared_ptr<const LogDerivSource> src, double anchor_r, double anchor_phi,
                                   ReconstructionOptions opts)
    : src_(std::move(src)), anchor_r_(anchor_r), anchor_phi_(anchor_phi), opts_(opts) {
    if (!(anchor_phi > 0.0)) throw ValidationError("anchor value must be positive");
    if (!(anchor_r > 0.0)) throw ValidationError("anchor radius must be positive");
}

bool LogPhiIntegrator::path_clear(const std::function<double(double)>& den, double a, double b) const {
    const int m = opts_.pole_samples;
    std::vector<double> v(m + 1);
    double scale = 0.0;
    for (int i = 0; i <= m; ++i) {
        v[i] = den(a + (b - a) * i / m);
        if (!std::isfinite(v[i])) return false;
        scale = std::max(scale, std::abs(v[i]));
    }
    for (int i = 0; i <= m; ++i) {
        if (std::abs(v[i]) <= 1e-12 * scale) return false;
        if ((v[i] > 0) != (v[0] > 0)) return false;
    }
    return true;
}

std::optional<double> LogPhiIntegrator::log_phi(double r, double s) const {
    if (!(r > 0.0) || !(std::abs(s) < r)) return std::nullopt;
    const LogDerivSource& src = *src_;
    if (!path_clear([&](double rho) { return src.denominator(rho, 0.0); }, anchor_r_, r)) return std::nullopt;
    if (!path_clear([&](double sig) { return src.denominator(r, sig); }, 0.0, s)) return std::nullopt;
    try {
        const double spine =
            adaptive_simpson([&](double rho) { return src.values(rho, 0.0).second; }, anchor_r_, r, opts_.quad_tol);
        const double fiber =
            adaptive_simpson([&](double sig) { return src.values(r, sig).first; }, 0.0, s, opts_.quad_tol);
        return std::log(anchor_phi_) + spine + fiber;
    } catch (const DenominatorVanished&) {
        return std::nullopt;
    } catch (const DivisionByZeroJet&) {
        return std::nullopt;
    }
}

std::size_t PhiReconstruction::in_domain_count() const {
    std::size_t n = 0;
    for (const auto& node : nodes) n += node.in_domain;
    return n;
}

PhiReconstruction reconstruct_phi(std::shared_ptr<const LogDerivSource> src, const GridSpec& grid, double anchor_r,
                                  double anchor_phi, ReconstructionOptions opts) {
    grid.validate();
    if (anchor_r < grid.r0 || anchor_r > grid.r1)
        throw ValidationError("anchor radius must lie in the grid's r-range");
    LogPhiIntegrator integ(src, anchor_r, anchor_phi, opts);
    PhiReconstruction rec;
    rec.grid = grid;
    rec.anchor_r = anchor_r;
    rec.anchor_phi = anchor_phi;
    rec.nodes.reserve(grid.size());
    for (int i = 0; i < grid.nr; ++i)
        for (int j = 0; j < grid.ns; ++j) {
            const double r = grid.r_at(i), s = grid.s_at(i, j);
            ReconstructionNode node{r, s, false, 0.0, 0.0};
            if (auto lp = integ.log_phi(r, s)) {
                node.in_domain = true;
                node.log_phi = *lp;
                node.phi = std::exp(*lp);
                rec.mixed_partial_residual =
                    std::max(rec.mixed_partial_residual, std::abs(src->mixed_partial(r, s)));
            }
            rec.nodes.push_back(node);
        }
    return rec;
}

}  // namespace sphfin
