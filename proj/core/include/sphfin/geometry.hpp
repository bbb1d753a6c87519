#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sphfin/jet.hpp"

namespace sphfin {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Dense tensor with all-lower Euclidean indices, row-major storage.
template <int Rank>
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(int n) : n_(n), data_(ipow(n, Rank), 0.0) {}

    int dim() const { return n_; }
    template <class... I>
    double& operator()(I... idx) { return data_[flat(idx...)]; }
    template <class... I>
    double operator()(I... idx) const { return data_[flat(idx...)]; }
    const std::vector<double>& data() const { return data_; }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    static std::size_t ipow(int n, int k) {
        std::size_t p = 1;
        for (int i = 0; i < k; ++i) p *= static_cast<std::size_t>(n);
        return p;
    }
    template <class... I>
    std::size_t flat(I... idx) const {
        static_assert(sizeof...(I) == Rank);
        std::size_t f = 0;
        ((f = f * n_ + static_cast<std::size_t>(idx)), ...);
        return f;
    }

    int n_ = 0;
    std::vector<double> data_;
};

using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

struct PointFrame {
    int n = 0;
    Vec x, y;
    double r = 0, u = 0, s = 0;
};

/// Canonical frame x = (r, 0, ...), y in the (e1, e2) plane.
PointFrame embed_point(double r, double s, double u, int n);
/// Frame from arbitrary position and velocity vectors.
PointFrame make_frame(const Vec& x, const Vec& y);

struct SprayData {
    double r = 0, s = 0;
    double P = 0, P_s = 0, P_ss = 0, P_sss = 0;
    double Q = 0, Q_s = 0, Q_ss = 0, Q_sss = 0;
};

/// (P, Q) as a function of (r, s).
using SprayField = std::function<SprayData(double r, double s)>;

/// Values of phi and its derivatives read from a jet.
struct PhiDerivs {
    double r, s;
    double phi, phi_r, phi_s, phi_ss, phi_sss;
    static PhiDerivs from(const Jet& phi);
};

/// P and Q jets (s-derivatives valid through order 3) from a phi jet.
std::pair<Jet, Jet> spray_jets(const Jet& phi);
SprayData spray_pq(const Jet& phi);
/// Reads P, Q and three s-derivatives from jets of closed-form spray functions.
SprayData spray_from_jets(const Jet& P, const Jet& Q);
/// Relative threshold on the spray denominator.
inline constexpr double kSprayTolerance = 1e-10;

struct MetricComponents {
    double sigma[4];
    double rho[4];
    Mat g, g_inv;
};

MetricComponents metric_components(const Jet& phi, const PointFrame& frame);

/// Spray coefficients G^i = u P y^i + u^2 Q x^i.
Vec spray_coefficients(const SprayData& pq, const PointFrame& frame);
Mat nonlinear_connection(const SprayData& pq, const PointFrame& frame);
Tensor4 berwald_curvature(const SprayData& pq, const PointFrame& frame);

/// H = (n+1)(P - s P_s) + (r^2-s^2)(Q_s - s Q_ss).
double mean_H(const SprayData& pq, int n);
/// H_s, needs Q_sss.
double mean_H_s(const SprayData& pq, int n);
/// H_s / s, regular at s = 0.
double mean_H_s_over_s(const SprayData& pq, int n);

struct MeanBerwald {
    Mat E;
    double H, H_s;
};

MeanBerwald mean_berwald(const SprayData& pq, const PointFrame& frame);
/// The same tensor assembled term by term from P, Q and their s-derivatives.
Mat mean_berwald_expanded(const SprayData& pq, const PointFrame& frame);

double scalar_trace_E(const Jet& phi, const SprayData& pq, int n, double u = 1.0);

struct LandsbergData {
    Tensor3 L;
    double L1, L2;
};

double landsberg_L1(const PhiDerivs& d, const SprayData& pq);
double landsberg_L2(const PhiDerivs& d, const SprayData& pq);
LandsbergData landsberg_curvature(const Jet& phi, const SprayData& pq, const PointFrame& frame);

struct SurfaceScalars {
    double K, K_s, lambda1, lambda2, combo;
};

SurfaceScalars surface_scalars(const Jet& phi, const SprayData& pq);

struct CurvaturePacket {
    int n;
    double r, s, u;
    SprayData pq;
    MetricComponents metric;
    Mat Gmat;
    Tensor4 B;
    Mat E;
    Tensor3 L;
    double H, H_s, K, lambda1, lambda2, L1, L2, Escalar;
};

CurvaturePacket curvature_packet(const Jet& phi, const PointFrame& frame);
/// Packet for phi with a spray supplied by the caller.
CurvaturePacket curvature_packet(const Jet& phi, const SprayData& pq, const PointFrame& frame);

}  // namespace sphfin
