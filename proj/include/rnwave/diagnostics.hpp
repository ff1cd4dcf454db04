#pragma once

#include <vector>

#include "rnwave/evolution.hpp"

namespace rnwave {

struct DiagnosticsConfig {
  double eta = 0.5;    // Morawetz weight exponent
  double p = 1.0;      // r-weight exponent
  double alpha = 0.1;  // decay bookkeeping exponent
  double R0 = 6.0;     // transition radius of the foliation
  double p_r0 = 0.0;   // P-flux taper; 0 selects the default inside (r_plus, 2M)
  double p_r1 = 0.0;
};

void validate(const DiagnosticsConfig& c, const SpacetimeParams& p, double r_max);
/// Taper radii of the P-flux, defaults placed at 1/4 and 3/4 of (r_plus, 2M).
std::pair<double, double> p_flux_radii(const DiagnosticsConfig& c, const SpacetimeParams& p);

struct SliceSpec {
  double tau = 0.0;
  double R0 = 6.0;
};

struct SliceSample {
  double v, delta, r, psi, T_psi, Y_psi, dv_psi, lambda, D;
};

/// Sigma_tau: the curve v - (r - r_plus) = tau for r <= R0, then the outgoing
/// null ray through its outer end, truncated at v = V.
struct Slice {
  double tau = 0.0;
  double R0 = 0.0;
  int column = -1;  // u index of the outgoing ray
  double u_tau = 0.0;
  std::vector<SliceSample> inner;  // ordered by increasing r
  std::vector<SliceSample> outer;  // ordered by increasing v
  bool inner_complete = false;
  bool outer_truncated = true;
};

/// Per-column label of the outgoing ray through r = R0: v - (r - r_plus) at the
/// point where the column reaches R0, from the tortoise relation v - 2 r* = const.
std::vector<double> column_ray_labels(const SpacetimeParams& p, const GridSpec& g, double R0);

class SliceCollector : public RowObserver {
 public:
  SliceCollector(std::vector<double> taus, double R0);
  void begin(const EvolutionContext& ctx) override;
  void on_row(const RowData* prev, const RowData& cur) override;
  const std::vector<Slice>& slices() const { return slices_; }
  std::vector<Slice>& slices() { return slices_; }

 private:
  std::vector<double> taus_;
  double R0_;
  std::vector<Slice> slices_;
  std::vector<int> next_col_;
  std::vector<bool> outer_active_;
};

/// Extract one slice by streaming a run.
Slice slice_extract(const SpacetimeParams& p, const GridSpec& g, const InitialDataSpec& data,
                    const NonlinearitySpec& spec, const SliceSpec& s, const EvolveOptions& opt = {});

enum class QuadratureRule { Trapezoid, Simpson };

struct QuadratureOptions {
  QuadratureRule rule = QuadratureRule::Trapezoid;
  int stride = 1;  // use every stride-th sample (endpoints kept)
};

/// Integral of f over x for sorted abscissae.
double integrate(const std::vector<double>& x, const std::vector<double>& f, QuadratureOptions q = {});

/// Inner density (T psi)^2 + D (Y psi)^2.
double t_flux(const Slice& s, QuadratureOptions q = {});
/// Exact Killing energy through the slice: inner density
/// (T psi)^2 + D T psi Y psi + D (Y psi)^2 / 2, outer (d_v psi)^2.
double t_energy(const Slice& s, QuadratureOptions q = {});
double n_flux(const Slice& s, QuadratureOptions q = {});
double p_flux(const Slice& s, double r0, double r1, QuadratureOptions q = {});
double rp_weighted_energy(const Slice& s, double p, QuadratureOptions q = {});
std::pair<double, double> hardy_ratio(const Slice& s, QuadratureOptions q = {});
/// Integral of |F|^2 r^2 dr over the inner part.
double F_l2_inner(const Slice& s, const NonlinearitySpec& spec, QuadratureOptions q = {});

struct SliceDiagnostics {
  double tau = 0.0;
  double t_flux = 0.0, t_energy = 0.0, n_flux = 0.0, p_flux = 0.0, rp_energy = 0.0;
  double hardy_lhs = 0.0, hardy_rhs = 0.0;
  double sup_psi = 0.0, sup_Tpsi = 0.0, sup_Ypsi = 0.0;
  double F_l2_inner = 0.0;
  bool complete = false;
};

SliceDiagnostics slice_diagnostics(const Slice& s, const DiagnosticsConfig& cfg,
                                   const NonlinearitySpec& spec, const SpacetimeParams& p,
                                   QuadratureOptions q = {});

/// Spacetime integrals binned into slabs between consecutive probe slices.
/// Slab k holds points whose foliation label lies in (tau_{k-1}, tau_k];
/// slab 0 everything up to tau_0 and slab K everything beyond tau_{K-1}.
/// Measure: -nu r^2 du dv (the invariant volume with the angular factor dropped).
class BulkAccumulator : public RowObserver {
 public:
  BulkAccumulator(std::vector<double> taus, DiagnosticsConfig cfg);
  void begin(const EvolutionContext& ctx) override;
  void on_row(const RowData* prev, const RowData& cur) override;

  const std::vector<double>& taus() const { return taus_; }
  const std::vector<double>& morawetz_slabs() const { return morawetz_; }
  const std::vector<double>& a2_slabs() const { return a2_; }
  const std::vector<double>& a3_slabs() const { return a3_; }

 private:
  std::vector<double> taus_;
  DiagnosticsConfig cfg_;
  EvolutionContext ctx_;
  std::vector<double> labels_;
  std::vector<double> morawetz_, a2_, a3_;
};

/// Sum of slabs between two probe labels (tau2 may be +inf for the far proxy).
double slab_sum(const std::vector<double>& taus, const std::vector<double>& slabs, double tau1,
                double tau2);
double morawetz_bulk(const BulkAccumulator& b, double tau1, double tau2);

struct BootstrapNorms {
  double A1 = 0.0, A2 = 0.0, A3 = 0.0;
  double A1_q = 0.0, A2_q = 0.0, A3_q = 0.0;  // (1+tau)^{2-alpha} / (E0 eps^2) normalised
};

/// A1 from the slice at tau0; A2, A3 from the slabs on [tau1, tau2]. e0_eps2 = E0 eps^2.
BootstrapNorms bootstrap_norms(const SliceDiagnostics& at_tau0, const BulkAccumulator& b, double tau1,
                               double tau2, double alpha, double e0_eps2);

/// Row-wise sup of |psi|, |T psi|, |Y psi| over the grid.
class GridSupTracker : public RowObserver {
 public:
  void on_row(const RowData* prev, const RowData& cur) override;
  std::vector<double> v, sup_psi, sup_Tpsi, sup_Ypsi;
};

/// psi at fixed grid points.
struct ProbePoint {
  double u, v;
};

class PointRecorder : public RowObserver {
 public:
  explicit PointRecorder(std::vector<ProbePoint> pts) : pts_(std::move(pts)) {}
  void begin(const EvolutionContext& ctx) override;
  void on_row(const RowData* prev, const RowData& cur) override;
  const std::vector<double>& values() const { return values_; }
  const std::vector<bool>& found() const { return found_; }

 private:
  std::vector<ProbePoint> pts_;
  std::vector<int> iu_, iv_;
  std::vector<double> values_;
  std::vector<bool> found_;
};

}  // namespace rnwave
