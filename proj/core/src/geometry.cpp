#include "sphfin/geometry.hpp"

#include <cmath>

#include "sphfin/errors.hpp"

namespace sphfin {

PointFrame embed_point(double r, double s, double u, int n) {
    if (n < 2) throw BadFrame("dimension must be at least 2");
    if (!(r > 0.0) || !(u > 0.0)) throw BadFrame("r and u must be positive");
    if (!(std::abs(s) < r)) throw BadFrame("embedding requires |s| < r");
    PointFrame f;
    f.n = n;
    f.r = r;
    f.s = s;
    f.u = u;
    f.x = Vec::Zero(n);
    f.y = Vec::Zero(n);
    f.x(0) = r;
    f.y(0) = s * u / r;
    f.y(1) = (u / r) * std::sqrt(r * r - s * s);
    return f;
}

PointFrame make_frame(const Vec& x, const Vec& y) {
    if (x.size() != y.size() || x.size() < 2) throw BadFrame("x and y must share a dimension >= 2");
    PointFrame f;
    f.n = static_cast<int>(x.size());
    f.x = x;
    f.y = y;
    f.r = x.norm();
    f.u = y.norm();
    if (!(f.r > 0.0) || !(f.u > 0.0)) throw BadFrame("x and y must be nonzero");
    f.s = x.dot(y) / f.u;
    if (!(std::abs(f.s) < f.r)) throw BadFrame("frame requires |s| < r");
    return f;
}

PhiDerivs PhiDerivs::from(const Jet& phi) {
    return {phi.base_r(), phi.base_s(),   phi.value(),      phi.coeff(1, 0),
            phi.coeff(0, 1), phi.coeff(0, 2), phi.coeff(0, 3)};
}

std::pair<Jet, Jet> spray_jets(const Jet& phi_in) {
    // P and Q are invariant under phi -> c phi.
    const Jet phi = phi_in.value() != 0.0 ? phi_in * (1.0 / std::abs(phi_in.value())) : phi_in;
    const double r = phi.base_r(), s0 = phi.base_s();
    const Jet s = Jet::seed_s(r, s0);
    const Jet w = r * r - s * s;
    const Jet phi_s = phi.ds();
    const Jet phi_ss = phi_s.ds();
    const Jet phi_r = phi.dr();
    const Jet phi_rs = phi_r.ds();

    const Jet den = phi - s * phi_s + w * phi_ss;
    const double scale = std::abs(phi.value()) + std::abs(s0 * phi_s.value()) +
                         std::abs(w.value() * phi_ss.value());
    if (!(std::abs(den.value()) > kSprayTolerance * scale)) throw SprayUndefined(den.value(), r, s0);

    const Jet Q = (-phi_r + s * phi_rs + r * phi_ss) / (2.0 * r * den);
    const Jet P = -(Q / phi) * (s * phi + w * phi_s) + (s * phi_r + r * phi_s) / (2.0 * r * phi);
    return {P, Q};
}

SprayData spray_from_jets(const Jet& P, const Jet& Q) {
    SprayData d;
    d.r = P.base_r();
    d.s = P.base_s();
    d.P = P.coeff(0, 0);
    d.P_s = P.coeff(0, 1);
    d.P_ss = P.coeff(0, 2);
    d.P_sss = P.coeff(0, 3);
    d.Q = Q.coeff(0, 0);
    d.Q_s = Q.coeff(0, 1);
    d.Q_ss = Q.coeff(0, 2);
    d.Q_sss = Q.coeff(0, 3);
    return d;
}

SprayData spray_pq(const Jet& phi) {
    const auto [P, Q] = spray_jets(phi);
    return spray_from_jets(P, Q);
}

MetricComponents metric_components(const Jet& phi, const PointFrame& frame) {
    const PhiDerivs d = PhiDerivs::from(phi);
    const double r = frame.r, s = frame.s, u = frame.u;
    const double f = d.phi, fs = d.phi_s, fss = d.phi_ss;
    const double w = r * r - s * s;
    if (!(f > 0.0)) throw DegenerateMetric("phi", f);
    const double m1 = f - s * fs;
    if (std::abs(m1) <= 1e-12 * (std::abs(f) + std::abs(s * fs))) throw DegenerateMetric("phi - s*phi_s", m1);
    const double den = m1 + w * fss;
    if (std::abs(den) <= 1e-12 * (std::abs(f) + std::abs(s * fs) + std::abs(w * fss)))
        throw DegenerateMetric("phi - s*phi_s + (r^2-s^2)*phi_ss", den);

    MetricComponents m;
    m.sigma[0] = f * m1;
    m.sigma[1] = fs * fs + f * fss;
    m.sigma[2] = m1 * fs - s * f * fss;
    m.sigma[3] = s * s * f * fss - s * m1 * fs;

    const double t = f * fs - s * fs * fs - s * f * fss;
    m.rho[0] = 1.0 / (f * m1);
    m.rho[1] = (s * f + w * fs) * t / (f * f * f * m1 * den);
    m.rho[2] = -t / (f * f * m1 * den);
    m.rho[3] = -fss / (f * m1 * den);

    const Vec& x = frame.x;
    const Vec& y = frame.y;
    const int n = frame.n;
    const Mat I = Mat::Identity(n, n);
    const Mat xy = x * y.transpose() + y * x.transpose();
    m.g = m.sigma[0] * I + m.sigma[1] * x * x.transpose() + (m.sigma[2] / u) * xy +
          (m.sigma[3] / (u * u)) * y * y.transpose();
    m.g_inv = m.rho[0] * I + (m.rho[1] / (u * u)) * y * y.transpose() + (m.rho[2] / u) * xy +
              m.rho[3] * x * x.transpose();
    return m;
}

Vec spray_coefficients(const SprayData& pq, const PointFrame& frame) {
    return frame.u * pq.P * frame.y + frame.u * frame.u * pq.Q * frame.x;
}

Mat nonlinear_connection(const SprayData& pq, const PointFrame& frame) {
    const Vec& x = frame.x;
    const Vec& y = frame.y;
    const double u = frame.u, s = frame.s;
    const int n = frame.n;
    Mat G = u * pq.P * Mat::Identity(n, n);
    G += pq.P_s * y * x.transpose();
    G += ((pq.P - s * pq.P_s) / u) * y * y.transpose();
    G += u * pq.Q_s * x * x.transpose();
    G += (2 * pq.Q - s * pq.Q_s) * x * y.transpose();
    return G;
}

Tensor4 berwald_curvature(const SprayData& pq, const PointFrame& frame) {
    const int n = frame.n;
    const double r = frame.r, u = frame.u, s = frame.s;
    const double P = pq.P, Ps = pq.P_s, Pss = pq.P_ss, Psss = pq.P_sss;
    const double Qs = pq.Q_s, Qss = pq.Q_ss, Qsss = pq.Q_sss;

    // Basis e = x / r, f = unit part of y orthogonal to x; wr = sqrt(r^2 - s^2).
    const Vec e = frame.x / r;
    Vec f = frame.y - (frame.x.dot(frame.y) / (r * r)) * frame.x;
    const double fn = f.norm();
    f = fn > 0 ? Vec(f / fn) : Vec(Vec::Zero(n));
    const double wr = std::sqrt(std::max(0.0, (r - s) * (r + s)));
    const double r2 = r * r, r4 = r2 * r2;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
    const double w2 = wr * wr, w3 = w2 * wr, w4 = w3 * wr;
    const double sdw = (s - wr) * (s + wr);
    const double q4 = s4 - 4 * s2 * w2 + w4;

    const double cD = P - s * Ps;
    const double cDee = (-s2 * P + s3 * Ps + w4 * Pss) / r2;
    const double cDef = wr * (-s * P + s2 * Ps - s * w2 * Pss) / r2;
    const double cDff = w2 * (-P + s * Ps + s2 * Pss) / r2;
    const double ce_eee = (3 * s4 * P - 3 * s4 * s * Ps + 3 * s2 * w2 * sdw * Pss + s * w3 * w3 * Psss) / r4 +
                          w2 * (-3 * s2 * Qs + 3 * s3 * Qss + w4 * Qsss) / r2;
    const double ce_eef = wr * (3 * s3 * P - 3 * s4 * Ps - s * q4 * Pss - s2 * w4 * Psss) / r4 +
                          wr * (s * (s2 - 2 * w2) * Qs - s2 * (s2 - 2 * w2) * Qss - s * w4 * Qsss) / r2;
    const double ce_eff = w2 * (3 * s2 * P - 3 * s3 * Ps - 3 * s2 * sdw * Pss + s3 * w2 * Psss) / r4 +
                          w2 * ((2 * s2 - w2) * Qs - s * (2 * s2 - w2) * Qss + s2 * w2 * Qsss) / r2;
    const double ce_fff = w3 * (3 * s * P - 3 * s2 * Ps - 6 * s3 * Pss - s4 * Psss) / r4 +
                          w3 * (3 * s * Qs - 3 * s2 * Qss - s3 * Qsss) / r2;
    const double ce_de = (-s2 * P + s3 * Ps - s2 * w2 * Pss) / r2 + w2 * (Qs - s * Qss);
    const double ce_df = wr * (-s * P + s2 * Ps + s3 * Pss) / r2 + wr * (-s * Qs + s2 * Qss);
    const double cf_eee = wr * (3 * s3 * P - 3 * s4 * Ps + 3 * s * w2 * sdw * Pss + w3 * w3 * Psss) / r4;
    const double cf_eef = w2 * (3 * s2 * P - 3 * s3 * Ps - q4 * Pss - s * w4 * Psss) / r4;
    const double cf_eff = w3 * (3 * s * P - 3 * s2 * Ps - 3 * s * sdw * Pss + s2 * w2 * Psss) / r4;
    const double cf_fff = w4 * (3 * P - 3 * s * Ps - 6 * s2 * Pss - s3 * Psss) / r4;
    const double cf_de = wr * (-s * P + s2 * Ps - s * w2 * Pss) / r2;
    const double cf_df = w2 * (-P + s * Ps + s2 * Pss) / r2;

    auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    Tensor4 B(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const double ei = e(i), ej = e(j), ek = e(k), el = e(l);
                    const double fi = f(i), fj = f(j), fk = f(k), fl = f(l);
                    const double dij = d(i, j), dik = d(i, k), dil = d(i, l);
                    const double djk = d(j, k), djl = d(j, l), dkl = d(k, l);
                    const double eee = ej * ek * el;
                    const double eef = ej * ek * fl + ej * fk * el + fj * ek * el;
                    const double eff = ej * fk * fl + fj * ek * fl + fj * fk * el;
                    const double fff = fj * fk * fl;
                    const double de = djk * el + djl * ek + dkl * ej;
                    const double df = djk * fl + djl * fk + dkl * fj;
                    double t = cD * (dij * dkl + dik * djl + dil * djk);
                    t += cDee * (dij * ek * el + dik * ej * el + dil * ej * ek);
                    t += cDef * (dij * (ek * fl + fk * el) + dik * (ej * fl + fj * el) + dil * (ej * fk + fj * ek));
                    t += cDff * (dij * fk * fl + dik * fj * fl + dil * fj * fk);
                    t += ei * (ce_eee * eee + ce_eef * eef + ce_eff * eff + ce_fff * fff + ce_de * de + ce_df * df);
                    t += fi * (cf_eee * eee + cf_eef * eef + cf_eff * eff + cf_fff * fff + cf_de * de + cf_df * df);
                    B(i, j, k, l) = t / u;
                }
    return B;
}

double mean_H(const SprayData& pq, int n) {
    const double w = pq.r * pq.r - pq.s * pq.s;
    return (n + 1) * (pq.P - pq.s * pq.P_s) + w * (pq.Q_s - pq.s * pq.Q_ss);
}

double mean_H_s_over_s(const SprayData& pq, int n) {
    const double w = pq.r * pq.r - pq.s * pq.s;
    return -((n + 1) * pq.P_ss + 2 * (pq.Q_s - pq.s * pq.Q_ss) + w * pq.Q_sss);
}

double mean_H_s(const SprayData& pq, int n) { return pq.s * mean_H_s_over_s(pq, n); }

MeanBerwald mean_berwald(const SprayData& pq, const PointFrame& frame) {
    const int n = frame.n;
    const double u = frame.u, s = frame.s;
    const double H = mean_H(pq, n);
    const double Hs_s = mean_H_s_over_s(pq, n);
    const double Hs = s * Hs_s;
    const Vec& x = frame.x;
    const Vec& y = frame.y;
    Mat E = (H / u) * Mat::Identity(n, n);
    E -= ((s * Hs + H) / (u * u * u)) * y * y.transpose();
    E += (Hs_s * s / (u * u)) * (x * y.transpose() + y * x.transpose());
    E -= (Hs_s / u) * x * x.transpose();
    return {E, H, Hs};
}

Mat mean_berwald_expanded(const SprayData& pq, const PointFrame& frame) {
    const int n = frame.n;
    const double u = frame.u, s = frame.s, r = frame.r;
    const double P = pq.P, Ps = pq.P_s, Pss = pq.P_ss;
    const double Qs = pq.Q_s, Qss = pq.Q_ss, Qsss = pq.Q_sss;
    const double H = mean_H(pq, n);
    const double k1 = (n + 1) * Pss + 2 * (Qs - s * Qss) + (r * r - s * s) * Qsss;
    const double cyy = (n + 1) * (s * s * Pss + s * Ps - P) + r * r * (s * s * Qsss + s * Qss - Qs) +
                       3 * s * s * Qs - 3 * s * s * s * Qss - s * s * s * s * Qsss;
    const Vec& x = frame.x;
    const Vec& y = frame.y;
    Mat E = (H / u) * Mat::Identity(n, n);
    E += (cyy / (u * u * u)) * y * y.transpose();
    E += (k1 / u) * x * x.transpose();
    E -= (s * k1 / (u * u)) * (x * y.transpose() + y * x.transpose());
    return E;
}

double scalar_trace_E(const Jet& phi, const SprayData& pq, int n, double u) {
    const double r = pq.r, s = pq.s;
    PointFrame frame;
    frame.n = n;
    frame.r = r;
    frame.s = s;
    frame.u = u;
    frame.x = Vec::Zero(n);
    frame.y = Vec::Zero(n);
    frame.x(0) = r;
    frame.y(0) = s * u / r;
    frame.y(1) = (u / r) * std::sqrt(std::max(0.0, r * r - s * s));
    const MetricComponents m = metric_components(phi, frame);
    const double w = r * r - s * s;
    const double H = mean_H(pq, n);
    const double Hs_s = mean_H_s_over_s(pq, n);
    return (((n - 1) * m.rho[0] + m.rho[3] * w) * H - w * (m.rho[0] + m.rho[3] * w) * Hs_s) / u;
}

double landsberg_L1(const PhiDerivs& d, const SprayData& pq) {
    const double w = pq.r * pq.r - pq.s * pq.s;
    return 3 * d.phi_s * pq.P_ss + d.phi * pq.P_sss + (pq.s * d.phi + w * d.phi_s) * pq.Q_sss;
}

double landsberg_L2(const PhiDerivs& d, const SprayData& pq) {
    const double w = pq.r * pq.r - pq.s * pq.s;
    const double s = pq.s;
    return -s * d.phi * pq.P_ss + d.phi_s * (pq.P - s * pq.P_s) +
           (s * d.phi + w * d.phi_s) * (pq.Q_s - s * pq.Q_ss);
}

LandsbergData landsberg_curvature(const Jet& phi, const SprayData& pq, const PointFrame& frame) {
    const PhiDerivs d = PhiDerivs::from(phi);
    const double L1 = landsberg_L1(d, pq);
    const double L2 = landsberg_L2(d, pq);
    const int n = frame.n;
    const double u = frame.u, s = frame.s;
    const Vec& x = frame.x;
    const Vec& y = frame.y;
    const double c_yyy = (3 * s * L2 - s * s * s * L1) / (u * u * u);
    const double c_dy = -s * L2 / u;
    const double c_xxy = -s * L1 / u;
    const double c_xyy = (s * s * L1 - L2) / (u * u);
    auto dl = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    Tensor3 L(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                const double xj = x(j), xk = x(k), xl = x(l), yj = y(j), yk = y(k), yl = y(l);
                double t = L1 * xj * xk * xl + c_yyy * yj * yk * yl;
                t += L2 * (dl(k, l) * xj + dl(j, l) * xk + dl(k, j) * xl);
                t += c_dy * (dl(k, l) * yj + dl(k, j) * yl + dl(j, l) * yk);
                t += c_xxy * (xk * xl * yj + yk * xj * xl + xj * yl * xk);
                t += c_xyy * (yk * yl * xj + xk * yj * yl + yj * xl * yk);
                L(j, k, l) = -0.5 * d.phi * t;
            }
    return {L, L1, L2};
}

SurfaceScalars surface_scalars(const Jet& phi, const SprayData& pq) {
    const PhiDerivs d = PhiDerivs::from(phi);
    const double s = pq.s, w = pq.r * pq.r - pq.s * pq.s;
    SurfaceScalars out;
    out.K = pq.P_ss - pq.Q_s + s * pq.Q_ss;
    out.K_s = pq.P_sss + s * pq.Q_sss;
    out.lambda1 = mean_H(pq, 2) - w * mean_H_s_over_s(pq, 2);
    out.lambda2 = w * out.K_s - 3 * s * out.K;
    out.combo = w * landsberg_L1(d, pq) + 3 * landsberg_L2(d, pq);
    return out;
}

CurvaturePacket curvature_packet(const Jet& phi, const PointFrame& frame) {
    return curvature_packet(phi, spray_pq(phi), frame);
}

CurvaturePacket curvature_packet(const Jet& phi, const SprayData& pq, const PointFrame& frame) {
    CurvaturePacket c;
    c.n = frame.n;
    c.r = frame.r;
    c.s = frame.s;
    c.u = frame.u;
    c.pq = pq;
    c.metric = metric_components(phi, frame);
    c.Gmat = nonlinear_connection(c.pq, frame);
    c.B = berwald_curvature(c.pq, frame);
    const MeanBerwald mb = mean_berwald(c.pq, frame);
    c.E = mb.E;
    c.H = mb.H;
    c.H_s = mb.H_s;
    const LandsbergData ld = landsberg_curvature(phi, c.pq, frame);
    c.L = ld.L;
    c.L1 = ld.L1;
    c.L2 = ld.L2;
    const SurfaceScalars ss = surface_scalars(phi, c.pq);
    c.K = ss.K;
    c.lambda1 = ss.lambda1;
    c.lambda2 = ss.lambda2;
    c.Escalar = scalar_trace_E(phi, c.pq, frame.n, frame.u);
    return c;
}

}  // namespace sphfin
