#pragma once

#include <array>

namespace sphfin {

/// Truncated bivariate Taylor jet in (r, s): r-order 1, s-order 5.
///
/// Coefficients are stored as Taylor coefficients internally; `coeff(a, b)`
/// returns the partial derivative d^a/dr^a d^b/ds^b at the base point.
class Jet {
public:
    static constexpr int kROrder = 1;
    static constexpr int kSOrder = 5;

    Jet() = default;
    static Jet constant(double value, double r0, double s0);
    static Jet seed_r(double r0, double s0);
    static Jet seed_s(double r0, double s0);

    /// Builds a jet from derivative values d[a][b].
    static Jet from_derivatives(const std::array<std::array<double, 6>, 2>& d, double r0, double s0);

    double coeff(int a, int b) const;
    double value() const { return t_[0][0]; }
    double base_r() const { return r0_; }
    double base_s() const { return s0_; }

    /// True when every derivative coefficient vanishes.
    bool is_constant() const;

    /// Jet of d/ds of this function. The top s-coefficient becomes 0 (unknown).
    Jet ds() const;
    /// Jet of d/dr of this function. Only the r-order-0 row is meaningful.
    Jet dr() const;

    double taylor(int a, int b) const { return t_[a][b]; }
    double& taylor(int a, int b) { return t_[a][b]; }

    Jet operator-() const;
    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(const Jet& o);
    Jet& operator/=(const Jet& o);
    Jet& operator+=(double c);
    Jet& operator-=(double c);
    Jet& operator*=(double c);
    Jet& operator/=(double c);

    Jet reciprocal() const;

private:
    void check_base(const Jet& o) const;

    std::array<std::array<double, 6>, 2> t_{};
    double r0_ = 0.0;
    double s0_ = 0.0;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator+(Jet a, double c);
Jet operator+(double c, Jet a);
Jet operator-(Jet a, double c);
Jet operator-(double c, const Jet& a);
Jet operator*(Jet a, double c);
Jet operator*(double c, Jet a);
Jet operator/(Jet a, double c);
Jet operator/(double c, const Jet& a);

/// Composition with a univariate function given its derivatives f^(k)(a0), k = 0..6.
Jet compose(const Jet& a, const std::array<double, 7>& derivs);

Jet sqrt(const Jet& a);
Jet exp(const Jet& a);
Jet ln_abs(const Jet& a);
/// Real branch 0.5*ln|(1+x)/(1-x)|; equals arctanh for |x| < 1.
Jet arctanh_re(const Jet& a);
Jet abs(const Jet& a);
Jet pow_const(const Jet& a, double exponent);
Jet pow(const Jet& base, const Jet& exponent);

/// Division guard on jet denominators.
inline constexpr double kDivisionGuard = 1e-13;

}  // namespace sphfin
