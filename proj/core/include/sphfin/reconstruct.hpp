#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sphfin/builtins.hpp"
#include "sphfin/families.hpp"
#include "sphfin/grid.hpp"
#include "sphfin/jet.hpp"

namespace sphfin {

/// A metric known through psi = phi_s/phi and chi = phi_r/phi.
class LogDerivSource {
public:
    virtual ~LogDerivSource() = default;
    /// psi jet with full (1,5) coefficients; chi jet with its s-derivatives.
    virtual std::pair<Jet, Jet> jets(double r, double s) const = 0;
    virtual std::pair<double, double> values(double r, double s) const;
    /// Function whose zero set contains the poles of psi and chi.
    virtual double denominator(double r, double s) const = 0;
    /// d psi/dr - d chi/ds, zero for an integrable pair.
    virtual double mixed_partial(double r, double s) const;
};

class ExprLogDerivs : public LogDerivSource {
public:
    explicit ExprLogDerivs(LogDerivPair pair) : pair_(std::move(pair)) {}
    std::pair<Jet, Jet> jets(double r, double s) const override;
    std::pair<double, double> values(double r, double s) const override;
    double denominator(double r, double s) const override;
    const LogDerivPair& pair() const { return pair_; }

private:
    LogDerivPair pair_;
};

class FamilyLogDerivs : public LogDerivSource {
public:
    explicit FamilyLogDerivs(LandsbergFamily fam) : fam_(std::move(fam)) {}
    std::pair<Jet, Jet> jets(double r, double s) const override;
    double denominator(double r, double s) const override;
    const LandsbergFamily& family() const { return fam_; }

private:
    LandsbergFamily fam_;
};

/// Jet of ln phi with value log_value at (r, s).
Jet log_phi_jet(const LogDerivSource& src, double r, double s, double log_value);
/// exp of log_phi_jet.
Jet phi_jet_from_logderivs(const LogDerivSource& src, double r, double s, double log_value);

/// Adaptive Simpson quadrature with Richardson correction.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 50);

struct ReconstructionOptions {
    double quad_tol = 1e-10;
    /// Samples used to detect a pole between two points.
    int pole_samples = 128;
};

/// ln phi by integrating chi along s = 0 from the anchor, then psi in s.
class LogPhiIntegrator {
public:
    LogPhiIntegrator(std::shared_ptr<const LogDerivSource> src, double anchor_r, double anchor_phi,
                     ReconstructionOptions opts = {});

    /// nullopt when the integration path meets a pole of the log-derivatives.
    std::optional<double> log_phi(double r, double s) const;
    double anchor_r() const { return anchor_r_; }
    double anchor_phi() const { return anchor_phi_; }
    const LogDerivSource& source() const { return *src_; }

private:
    bool path_clear(const std::function<double(double)>& den, double a, double b) const;

    std::shared_ptr<const LogDerivSource> src_;
    double anchor_r_, anchor_phi_;
    ReconstructionOptions opts_;
};

struct ReconstructionNode {
    double r, s;
    bool in_domain;
    double log_phi;
    double phi;
};

struct PhiReconstruction {
    GridSpec grid;
    std::vector<ReconstructionNode> nodes;  // row-major in (r, s)
    double mixed_partial_residual = 0;
    double anchor_r = 1, anchor_phi = 1;
    std::size_t in_domain_count() const;
};

PhiReconstruction reconstruct_phi(std::shared_ptr<const LogDerivSource> src, const GridSpec& grid,
                                  double anchor_r, double anchor_phi, ReconstructionOptions opts = {});

}  // namespace sphfin
