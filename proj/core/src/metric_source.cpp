#include "sphfin/metric_source.hpp"

#include <cmath>

namespace sphfin {

MetricSource MetricSource::closed_form(PhiExpr phi, std::string label) {
    MetricSource m;
    m.label_ = std::move(label);
    m.expr_ = std::move(phi);
    return m;
}

MetricSource MetricSource::log_derivative(std::shared_ptr<const LogDerivSource> src, double anchor_r,
                                          double anchor_phi, std::string label, ReconstructionOptions opts) {
    MetricSource m;
    m.label_ = std::move(label);
    m.src_ = std::move(src);
    m.anchor_r_ = anchor_r;
    m.anchor_phi_ = anchor_phi;
    m.integ_ = std::make_shared<LogPhiIntegrator>(m.src_, anchor_r, anchor_phi, opts);
    return m;
}

MetricSource MetricSource::from_builtin(const BuiltinMetric& b) {
    MetricSource m;
    if (b.is_closed_form()) {
        m = closed_form(b.expr(), b.name);
    } else {
        const LogDerivPair& p = b.logderivs();
        m = log_derivative(std::make_shared<ExprLogDerivs>(p), p.anchor_r, p.anchor_phi, b.name);
    }
    if (b.spray) {
        const SprayExprs pq = *b.spray;
        m.known_spray_ = [pq](double r, double s) { return spray_from_jets(pq.P.eval_jet(r, s), pq.Q.eval_jet(r, s)); };
    }
    return m;
}

MetricSource MetricSource::with_spray(SprayField spray) const {
    MetricSource m = *this;
    m.known_spray_ = std::move(spray);
    return m;
}

Jet MetricSource::phi_jet_local(double r, double s) const {
    if (expr_) return expr_->eval_jet(r, s);
    return phi_jet_from_logderivs(*src_, r, s, 0.0);
}

std::optional<Jet> MetricSource::phi_jet(double r, double s) const {
    if (expr_) return expr_->eval_jet(r, s);
    const auto lp = integ_->log_phi(r, s);
    if (!lp) return std::nullopt;
    return phi_jet_from_logderivs(*src_, r, s, *lp);
}

std::optional<double> MetricSource::phi(double r, double s) const {
    if (expr_) return expr_->eval(r, s);
    const auto lp = integ_->log_phi(r, s);
    if (!lp) return std::nullopt;
    return std::exp(*lp);
}

SprayData MetricSource::spray(double r, double s) const {
    if (known_spray_) return known_spray_(r, s);
    return spray_pq(phi_jet_local(r, s));
}

}  // namespace sphfin
