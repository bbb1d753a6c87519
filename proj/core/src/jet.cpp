#include "sphfin/jet.hpp"

#include <cmath>
#include <stdexcept>

#include "sphfin/errors.hpp"

namespace sphfin {

namespace {

constexpr std::array<double, 7> kFactorial{1, 1, 2, 6, 24, 120, 720};

}  // namespace

Jet Jet::constant(double value, double r0, double s0) {
    Jet j;
    j.r0_ = r0;
    j.s0_ = s0;
    j.t_[0][0] = value;
    return j;
}

Jet Jet::seed_r(double r0, double s0) {
    Jet j = constant(r0, r0, s0);
    j.t_[1][0] = 1.0;
    return j;
}

Jet Jet::seed_s(double r0, double s0) {
    Jet j = constant(s0, r0, s0);
    j.t_[0][1] = 1.0;
    return j;
}

Jet Jet::from_derivatives(const std::array<std::array<double, 6>, 2>& d, double r0, double s0) {
    Jet j = constant(0.0, r0, s0);
    for (int a = 0; a <= kROrder; ++a)
        for (int b = 0; b <= kSOrder; ++b) j.t_[a][b] = d[a][b] / kFactorial[b];
    return j;
}

double Jet::coeff(int a, int b) const {
    if (a < 0 || a > kROrder || b < 0 || b > kSOrder)
        throw std::out_of_range("jet coefficient index out of range");
    return t_[a][b] * kFactorial[b];
}

bool Jet::is_constant() const {
    for (int a = 0; a <= kROrder; ++a)
        for (int b = 0; b <= kSOrder; ++b)
            if ((a || b) && t_[a][b] != 0.0) return false;
    return true;
}

Jet Jet::ds() const {
    Jet j = constant(0.0, r0_, s0_);
    for (int a = 0; a <= kROrder; ++a)
        for (int b = 0; b < kSOrder; ++b) j.t_[a][b] = (b + 1) * t_[a][b + 1];
    return j;
}

Jet Jet::dr() const {
    Jet j = constant(0.0, r0_, s0_);
    for (int b = 0; b <= kSOrder; ++b) j.t_[0][b] = t_[1][b];
    return j;
}

void Jet::check_base(const Jet& o) const {
    if (r0_ != o.r0_ || s0_ != o.s0_)
        throw std::invalid_argument("jets expanded at different base points");
}

Jet Jet::operator-() const {
    Jet j = *this;
    for (auto& row : j.t_)
        for (auto& v : row) v = -v;
    return j;
}

Jet& Jet::operator+=(const Jet& o) {
    check_base(o);
    for (int a = 0; a <= kROrder; ++a)
        for (int b = 0; b <= kSOrder; ++b) t_[a][b] += o.t_[a][b];
    return *this;
}

Jet& Jet::operator-=(const Jet& o) {
    check_base(o);
    for (int a = 0; a <= kROrder; ++a)
        for (int b = 0; b <= kSOrder; ++b) t_[a][b] -= o.t_[a][b];
    return *this;
}

Jet& Jet::operator*=(const Jet& o) {
    check_base(o);
    std::array<std::array<double, 6>, 2> c{};
    for (int a1 = 0; a1 <= kROrder; ++a1)
        for (int b1 = 0; b1 <= kSOrder; ++b1) {
            const double x = t_[a1][b1];
            if (x == 0.0) continue;
            for (int a2 = 0; a1 + a2 <= kROrder; ++a2)
                for (int b2 = 0; b1 + b2 <= kSOrder; ++b2) c[a1 + a2][b1 + b2] += x * o.t_[a2][b2];
        }
    t_ = c;
    return *this;
}

Jet Jet::reciprocal() const {
    const double x0 = t_[0][0];
    if (std::abs(x0) < kDivisionGuard) throw DivisionByZeroJet(x0);
    Jet y = constant(0.0, r0_, s0_);
    for (int a = 0; a <= kROrder; ++a)
        for (int b = 0; b <= kSOrder; ++b) {
            if (a == 0 && b == 0) {
                y.t_[0][0] = 1.0 / x0;
                continue;
            }
            double acc = 0.0;
            for (int a1 = 0; a1 <= a; ++a1)
                for (int b1 = 0; b1 <= b; ++b1)
                    if (a1 || b1) acc += t_[a1][b1] * y.t_[a - a1][b - b1];
            y.t_[a][b] = -acc / x0;
        }
    return y;
}

Jet& Jet::operator/=(const Jet& o) {
    check_base(o);
    return *this *= o.reciprocal();
}

Jet& Jet::operator+=(double c) {
    t_[0][0] += c;
    return *this;
}

Jet& Jet::operator-=(double c) {
    t_[0][0] -= c;
    return *this;
}

Jet& Jet::operator*=(double c) {
    for (auto& row : t_)
        for (auto& v : row) v *= c;
    return *this;
}

Jet& Jet::operator/=(double c) {
    if (std::abs(c) < kDivisionGuard) throw DivisionByZeroJet(c);
    return *this *= 1.0 / c;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(const Jet& a, const Jet& b) {
    Jet c = a;
    return c *= b;
}
Jet operator/(const Jet& a, const Jet& b) {
    Jet c = a;
    return c /= b;
}
Jet operator+(Jet a, double c) { return a += c; }
Jet operator+(double c, Jet a) { return a += c; }
Jet operator-(Jet a, double c) { return a -= c; }
Jet operator-(double c, const Jet& a) {
    Jet j = -a;
    return j += c;
}
Jet operator*(Jet a, double c) { return a *= c; }
Jet operator*(double c, Jet a) { return a *= c; }
Jet operator/(Jet a, double c) { return a /= c; }
Jet operator/(double c, const Jet& a) { return a.reciprocal() *= c; }

Jet compose(const Jet& a, const std::array<double, 7>& derivs) {
    Jet u = a - a.value();
    Jet result = Jet::constant(derivs[6] / kFactorial[6], a.base_r(), a.base_s());
    for (int k = 5; k >= 0; --k) {
        result *= u;
        result += derivs[k] / kFactorial[k];
    }
    return result;
}

namespace {

// f(x) = x^p about x0 > 0.
std::array<double, 7> power_derivs(double x0, double p) {
    std::array<double, 7> d{};
    double c = 1.0;
    for (int k = 0; k < 7; ++k) {
        d[k] = c * std::pow(x0, p - k);
        c *= (p - k);
    }
    return d;
}

Jet integer_power(const Jet& a, long n) {
    if (n < 0) return integer_power(a, -n).reciprocal();
    Jet result = Jet::constant(1.0, a.base_r(), a.base_s());
    Jet base = a;
    while (n > 0) {
        if (n & 1) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

}  // namespace

Jet sqrt(const Jet& a) {
    const double x0 = a.value();
    if (!(x0 > 0.0)) throw DomainError("sqrt", x0);
    return compose(a, power_derivs(x0, 0.5));
}

Jet exp(const Jet& a) {
    const double e = std::exp(a.value());
    if (!std::isfinite(e)) throw DomainError("exp", a.value());
    std::array<double, 7> d;
    d.fill(e);
    return compose(a, d);
}

Jet ln_abs(const Jet& a) {
    const double x0 = a.value();
    if (x0 == 0.0 || !std::isfinite(x0)) throw DomainError("ln_abs", x0);
    std::array<double, 7> d{};
    d[0] = std::log(std::abs(x0));
    double inv = 1.0 / x0, p = inv;
    for (int k = 1; k < 7; ++k) {
        d[k] = ((k % 2) ? 1.0 : -1.0) * kFactorial[k - 1] * p;
        p *= inv;
    }
    return compose(a, d);
}

Jet arctanh_re(const Jet& a) {
    const double x0 = a.value();
    if (std::abs(x0) == 1.0 || !std::isfinite(x0)) throw DomainError("arctanh_re", x0);
    return 0.5 * (ln_abs(1.0 + a) - ln_abs(1.0 - a));
}

Jet abs(const Jet& a) {
    const double x0 = a.value();
    if (x0 > 0.0) return a;
    if (x0 < 0.0) return -a;
    if (a.is_constant()) return a;
    throw DomainError("abs", x0);
}

Jet pow_const(const Jet& a, double exponent) {
    if (std::nearbyint(exponent) == exponent && std::abs(exponent) <= 64.0) {
        try {
            return integer_power(a, static_cast<long>(exponent));
        } catch (const DivisionByZeroJet&) {
            throw DomainError("pow", a.value());
        }
    }
    const double x0 = a.value();
    if (!(x0 > 0.0)) throw DomainError("pow", x0);
    return compose(a, power_derivs(x0, exponent));
}

Jet pow(const Jet& base, const Jet& exponent) {
    if (exponent.is_constant()) return pow_const(base, exponent.value());
    if (!(base.value() > 0.0)) throw DomainError("pow", base.value());
    return exp(exponent * ln_abs(base));
}

}  // namespace sphfin
