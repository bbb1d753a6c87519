#pragma once

namespace sphfin {

/// Rectangular (r, s) lattice with |s| <= (1 - eps) r.
struct GridSpec {
    double r0 = 0.5;
    double r1 = 2.0;
    int nr = 16;
    int ns = 33;
    double eps = 1e-3;

    double r_at(int i) const { return nr == 1 ? r0 : r0 + (r1 - r0) * i / (nr - 1); }
    double s_at(int i, int j) const {
        const double smax = (1.0 - eps) * r_at(i);
        return ns == 1 ? 0.0 : -smax + 2.0 * smax * j / (ns - 1);
    }
    int size() const { return nr * ns; }
    void validate() const;
};

}  // namespace sphfin
