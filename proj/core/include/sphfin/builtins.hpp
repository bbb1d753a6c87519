#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sphfin/expr.hpp"

namespace sphfin {

/// A metric given through its logarithmic derivatives psi = phi_s/phi, chi = phi_r/phi.
struct LogDerivPair {
    PhiExpr psi;
    PhiExpr chi;
    /// Expression whose zero set contains the poles of psi and chi.
    PhiExpr denominator;
    double anchor_r = 1.0;
    double anchor_phi = 1.0;
};

/// Closed-form spray functions P(r, s) and Q(r, s).
struct SprayExprs {
    PhiExpr P;
    PhiExpr Q;
};

struct BuiltinMetric {
    std::string name;
    std::variant<PhiExpr, LogDerivPair> definition;
    /// Closed form kept as an independent cross-check for log-derivative metrics.
    std::optional<PhiExpr> closed_form;
    std::string provenance;
    /// Known geodesic spray, when the metric comes from a spray family.
    std::optional<SprayExprs> spray = std::nullopt;

    bool is_closed_form() const { return std::holds_alternative<PhiExpr>(definition); }
    const PhiExpr& expr() const { return std::get<PhiExpr>(definition); }
    const LogDerivPair& logderivs() const { return std::get<LogDerivPair>(definition); }
};

using ParamMap = std::map<std::string, PhiExpr>;

/// Looks up a registered metric. riemann_quadratic needs f1 and f2.
BuiltinMetric builtin(const std::string& name, const ParamMap& params = {});
std::vector<std::string> builtin_names();

}  // namespace sphfin
