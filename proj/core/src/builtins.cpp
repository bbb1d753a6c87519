#include "sphfin/builtins.hpp"

#include "sphfin/errors.hpp"

namespace sphfin {

namespace {

const PhiExpr& require(const ParamMap& params, const std::string& key, const std::string& metric) {
    auto it = params.find(key);
    if (it == params.end()) throw MissingParameter(metric + " requires parameter " + key);
    return it->second;
}

void reject_unknown(const ParamMap& params, const std::vector<std::string>& allowed,
                    const std::string& metric) {
    for (const auto& [key, value] : params) {
        bool ok = false;
        for (const auto& a : allowed) ok = ok || a == key;
        if (!ok) throw ValidationError(metric + " does not take parameter " + key);
    }
}

BuiltinMetric riemann_quadratic(const ParamMap& params) {
    reject_unknown(params, {"f1", "f2"}, "riemann_quadratic");
    const PhiExpr& f1 = require(params, "f1", "riemann_quadratic");
    const PhiExpr& f2 = require(params, "f2", "riemann_quadratic");
    if (f1.uses_s() || f2.uses_s())
        throw ValidationError("riemann_quadratic coefficients must be functions of r alone");
    for (int i = 0; i <= 64; ++i) {
        const double r = 0.5 + 1.5 * i / 64.0;
        if (!(f1.eval(r, 0.0) > 0.0))
            throw ValidationError("riemann_quadratic requires f1 > 0 on [0.5, 2]");
    }
    const PhiExpr s = PhiExpr::var_s();
    PhiExpr phi = apply(Func::Sqrt, {f1 + f2 * power(s, PhiExpr::number(2))});
    return {"riemann_quadratic", phi, std::nullopt, "Riemannian branch phi = sqrt(f1 + f2*s^2)"};
}

BuiltinMetric example1() {
    const char* den = "-r^2 + 3*s^2 + s*sqrt(r^2 - s^2)";
    LogDerivPair p{
        PhiExpr::parse("(3*s + sqrt(r^2 - s^2))/(-r^2 + 3*s^2 + s*sqrt(r^2 - s^2))"),
        PhiExpr::parse("-r/(-r^2 + 3*s^2 + s*sqrt(r^2 - s^2))"),
        PhiExpr::parse(den),
        1.0,
        1.0,
    };
    return {"example1", p,
            PhiExpr::parse("pow(abs(2*s - sqrt(r^2 - s^2)), 2/3)*pow(abs(s + sqrt(r^2 - s^2)), 1/3)"),
            "non-Berwald Landsberg family member c1 = c3 = 1/r^2, c = 1/(2*sqrt(2)); "
            "c0 = -3/r^4, c2 = 1/2",
            SprayExprs{PhiExpr::parse("s/r^2 + sqrt(r^2 - s^2)/(2*r^2)"),
                       PhiExpr::parse("-3*s^2/(2*r^4) - s*sqrt(r^2 - s^2)/(2*r^4) + 1/r^2")}};
}

BuiltinMetric example2() {
    LogDerivPair p{
        PhiExpr::parse("(2*s + sqrt(r^2 - s^2))/(-r^2 + 2*s^2 + s*sqrt(r^2 - s^2))"),
        PhiExpr::parse("(-2*s^2 - s*sqrt(r^2 - s^2))/(r*(-r^2 + 2*s^2 + s*sqrt(r^2 - s^2)))"),
        PhiExpr::parse("-r^2 + 2*s^2 + s*sqrt(r^2 - s^2)"),
        1.0,
        1.0,
    };
    const std::string w = "sqrt(r^2 - s^2)";
    const std::string A = "((2*" + w + " - 2*r + (sqrt(5) - 1)*s)*" + w + " - (sqrt(5) - 1)*r*s)";
    const std::string B = "((2*" + w + " - 2*r - (sqrt(5) - 1)*s)*" + w + " + (sqrt(5) - 1)*r*s)";
    const std::string C = "((2*" + w + " - 2*r - (sqrt(5) + 1)*s)*" + w + " + (sqrt(5) + 1)*r*s)";
    const std::string D = "((2*" + w + " - 2*r + (sqrt(5) + 1)*s)*" + w + " - (sqrt(5) + 1)*r*s)";
    const std::string closed = "1/r*pow(abs(r^4 - 5*r^2*s^2 + 5*s^4), 1/4)*pow(abs(" + A + "/" + B +
                               "), (5 - sqrt(5))/20)*pow(abs(" + C + "/" + D +
                               "), (5 + sqrt(5))/20)*exp(-sqrt(5)/10*arctanh_re(sqrt(5)*(r^2 - 2*s^2)/r^2))";
    return {"example2", p, PhiExpr::parse(closed),
            "non-Berwald Landsberg family member c1 = 0, c3 = 1/r^2, c = 1/2; c0 = -2/r^4, c2 = 1/2",
            SprayExprs{PhiExpr::parse("sqrt(r^2 - s^2)/(2*r^2)"),
                       PhiExpr::parse("-s^2/r^4 - s*sqrt(r^2 - s^2)/(2*r^4) + 1/r^2")}};
}

}  // namespace

BuiltinMetric builtin(const std::string& name, const ParamMap& params) {
    if (name == "riemann_quadratic") return riemann_quadratic(params);
    if (!params.empty()) reject_unknown(params, {}, name);
    if (name == "euclidean") return {"euclidean", PhiExpr::number(1.0), std::nullopt, "Euclidean metric phi = 1"};
    if (name == "example1") return example1();
    if (name == "example2") return example2();
    if (name == "zhou2d_r5")
        return {"zhou2d_r5", PhiExpr::parse("1/r^5*sqrt(r^2 - s^2)*exp(2*s/sqrt(r^2 - s^2))"), std::nullopt,
                "two-dimensional metric with prefactor a(r) = 1/r^5"};
    if (name == "zhou2d_r6")
        return {"zhou2d_r6", PhiExpr::parse("1/r^6*sqrt(r^2 - s^2)*exp(2*s/sqrt(r^2 - s^2))"), std::nullopt,
                "two-dimensional metric with prefactor a(r) = 1/r^6",
                SprayExprs{PhiExpr::parse("-s/r^2 - sqrt(r^2 - s^2)/r^2"),
                           PhiExpr::parse("1/r^2 - s^2/(2*r^4) - s*sqrt(r^2 - s^2)/r^4")}};
    throw UnknownBuiltin("unknown builtin metric '" + name + "'");
}

std::vector<std::string> builtin_names() {
    return {"euclidean", "riemann_quadratic", "example1", "example2", "zhou2d_r5", "zhou2d_r6"};
}

}  // namespace sphfin
