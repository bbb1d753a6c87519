#pragma once

#include <memory>
#include <optional>
#include <string>

#include "sphfin/builtins.hpp"
#include "sphfin/geometry.hpp"
#include "sphfin/reconstruct.hpp"

namespace sphfin {

/// A metric phi given either in closed form or through its log-derivatives.
class MetricSource {
public:
    static MetricSource closed_form(PhiExpr phi, std::string label = "expression");
    static MetricSource log_derivative(std::shared_ptr<const LogDerivSource> src, double anchor_r,
                                       double anchor_phi, std::string label,
                                       ReconstructionOptions opts = {});
    static MetricSource from_builtin(const BuiltinMetric& m);

    bool is_closed_form() const { return expr_.has_value(); }
    const std::string& label() const { return label_; }
    const PhiExpr* expr() const { return expr_ ? &*expr_ : nullptr; }
    const LogDerivSource* logderivs() const { return src_.get(); }
    std::shared_ptr<const LogDerivSource> logderivs_shared() const { return src_; }
    double anchor_r() const { return anchor_r_; }
    double anchor_phi() const { return anchor_phi_; }

    /// Jet of c*phi for some c > 0; c = 1 for closed forms, phi(r,s) = 1 for log-derivative metrics.
    Jet phi_jet_local(double r, double s) const;
    /// Jet of phi itself; nullopt where a log-derivative metric cannot be reconstructed.
    std::optional<Jet> phi_jet(double r, double s) const;
    std::optional<double> phi(double r, double s) const;
    /// Known spray if attached, otherwise the spray of phi_jet_local.
    SprayData spray(double r, double s) const;
    bool has_known_spray() const { return static_cast<bool>(known_spray_); }
    /// Copy of this source whose spray is given in closed form.
    MetricSource with_spray(SprayField spray) const;

private:
    std::string label_;
    std::optional<PhiExpr> expr_;
    std::shared_ptr<const LogDerivSource> src_;
    std::shared_ptr<const LogPhiIntegrator> integ_;
    SprayField known_spray_;
    double anchor_r_ = 1.0, anchor_phi_ = 1.0;
};

}  // namespace sphfin
