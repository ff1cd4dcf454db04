#pragma once

#include <Eigen/Core>
#include <span>
#include <string>

#include "rnwave/nonlinearity.hpp"
#include "rnwave/spacetime.hpp"

namespace rnwave {

/// Initial u-parametrisation on v = 0: r(u, 0) = r_plus + G(U - u) with
/// G(s) = L ln(1 + sigma (e^{s/L} - 1)). sigma = 1 is the affine gauge
/// r = r_max - u; small sigma crowds rows logarithmically against the horizon.
struct InitialGauge {
  double sigma = 1.0;
  double scale = 1.0;  // L

  bool affine() const { return sigma == 1.0; }
};

double gauge_offset(double s, const InitialGauge& g);     // G(s)
double gauge_slope(double s, const InitialGauge& g);      // G'(s)
double gauge_curvature(double s, const InitialGauge& g);  // G''(s)
double gauge_third(double s, const InitialGauge& g);      // G'''(s)
double gauge_depth(double offset, const InitialGauge& g); // G^{-1}

/// Horizon-graded default: logarithmic rows with scale M in the extremal case;
/// Kruskal-like rows resolving the horizon up to v = V otherwise.
InitialGauge default_gauge(const SpacetimeParams& p, double V);

struct GridSpec {
  double U = 0.0;
  double V = 0.0;
  double du = 0.0;
  double dv = 0.0;
  double r_max = 0.0;
  int nu = 0;  // cells in u; columns 0..nu, column nu is the horizon
  int nv = 0;  // cells in v
  InitialGauge gauge;
};

/// U from the gauge and r_max; du = U/nu with nu = ceil(U/du_target); V = nv*dv.
GridSpec make_grid(const SpacetimeParams& p, double r_max, double du_target, double dv, double V,
                   const InitialGauge& gauge);
/// Same extents, steps divided by `factor`.
GridSpec refined(const GridSpec& g, int factor);
void validate(const GridSpec& g, const SpacetimeParams& p);

/// One v = const row of the background. delta = r - r_plus is stored separately
/// so rows hugging the horizon keep their relative precision.
struct GeometryRow {
  double v = 0.0;
  Eigen::ArrayXd delta, r, nu, nu_u, nu_uu, D, lambda;

  Eigen::ArrayXd omega_sq() const { return -2.0 * nu; }
};

GeometryRow initial_geometry(const SpacetimeParams& p, const GridSpec& g);
/// RK4 step of (r, nu, d_u nu, d_u^2 nu) along v at fixed u.
void advance_geometry(const SpacetimeParams& p, const GeometryRow& in, double dv, GeometryRow& out);

/// Full background on the grid, indexed (v index, u index). Small grids only.
struct GeometryField {
  Eigen::ArrayXXd r, delta, lambda, nu, nu_u, omega_sq;
};
GeometryField build_background(const SpacetimeParams& p, const GridSpec& g);

enum class DataTransform { None, ExpNeg };

struct InitialDataSpec {
  double epsilon = 0.05;
  double center = 2.0;  // bump centre in r on v = 0
  double width = 1.5;
  bool horizon_positive = false;
  double positive_depth = 0.85;  // horizon sits at s = -depth of the bump when positive
  double offset = 0.0;  // constant added before the transform
  DataTransform transform = DataTransform::None;
};

double bump(double s);
double bump_derivative(double s);
double data_center(const InitialDataSpec& d, const SpacetimeParams& p);
void validate(const InitialDataSpec& d, const SpacetimeParams& p, double r_max);

struct WaveState {
  Eigen::ArrayXd psi;          // on the active row
  double boundary_value = 0.0; // psi(0, v)
};

/// psi(u, 0) = offset + epsilon bump((r(u,0) - center)/width), optionally mapped by e^{-x}.
WaveState init_characteristic_data(const InitialDataSpec& d, const SpacetimeParams& p,
                                   const GridSpec& g, const GeometryRow& row0);

inline Eigen::ArrayXd phi_of(const Eigen::ArrayXd& psi, const Eigen::ArrayXd& r) { return r * psi; }
/// zeta = r d_u psi by centred differences (one-sided at the ends).
Eigen::ArrayXd zeta_of(const Eigen::ArrayXd& psi, const Eigen::ArrayXd& r, double du);
/// theta = r d_v psi between two rows dv apart, at the later row's radius.
inline Eigen::ArrayXd theta_of(const Eigen::ArrayXd& psi_next, const Eigen::ArrayXd& psi_prev,
                               const Eigen::ArrayXd& r, double dv) {
  return r * (psi_next - psi_prev) / dv;
}

struct CellGeometry {
  double du, dv;
  double r, nu, lambda, D;
  double chi = 1.0;
};

/// Diamond update of the north-east corner; `picard` corrector sweeps.
inline double step_cell(double psi_SW, double psi_SE, double psi_NW, const CellGeometry& g,
                        const NonlinearitySpec& spec, int picard = 2) {
  const double pred = psi_NW + psi_SE - psi_SW;
  const double inv_r = 1.0 / g.r;
  const double omega_sq = -2.0 * g.nu;
  const NullFrame<double> frame{g.D, g.nu, g.lambda, g.chi};
  double ne = pred;
  for (int it = 0; it < picard; ++it) {
    double du_psi = 0.5 * ((psi_SE - psi_SW) + (ne - psi_NW)) / g.du;
    double dv_psi = 0.5 * ((psi_NW - psi_SW) + (ne - psi_SE)) / g.dv;
    double rhs = -(g.nu * dv_psi + g.lambda * du_psi) * inv_r;
    if (spec.kind != NonlinearityKind::Zero) {
      double psi_c = 0.25 * (psi_SW + psi_SE + psi_NW + ne);
      rhs -= 0.25 * omega_sq * source_null(psi_c, du_psi, dv_psi, g.r, omega_sq, spec, frame);
    }
    ne = pred + g.du * g.dv * rhs;
  }
  return ne;
}

struct TEYDerivatives {
  double T_psi;
  double Y_psi;
};

/// Chain rule Y = (1/nu) d_u, T = d_v - lambda Y.
inline TEYDerivatives ef_derivatives(double du_psi, double dv_psi, double nu, double lambda) {
  if (nu == 0.0) throw std::domain_error("ef_derivatives: nu vanishes");
  double Y = du_psi / nu;
  return {dv_psi - lambda * Y, Y};
}

/// A processed row handed to observers: background, field and its (v, r) derivatives.
struct RowData : GeometryRow {
  int n = 0;
  Eigen::ArrayXd psi, dv_psi, Y_psi, T_psi;
};

struct EvolutionContext {
  SpacetimeParams params;
  GridSpec grid;
  NonlinearitySpec spec;
  double r_plus = 0.0;
};

class RowObserver {
 public:
  virtual ~RowObserver() = default;
  virtual void begin(const EvolutionContext&) {}
  /// prev is null for the first row.
  virtual void on_row(const RowData* prev, const RowData& cur) = 0;
};

struct EvolveOptions {
  int picard = 2;
  double psi_max = 1e6;
  double horizon_y_max = 1e6;
  double radial_floor = 1e-7;
};

struct BlowupInfo {
  bool flag = false;
  double u = 0.0;
  double v = 0.0;
  std::string reason;
};

struct EvolutionOutput {
  BlowupInfo blowup;
  int rows_emitted = 0;
  double v_last = 0.0;
};

EvolutionOutput evolve(const SpacetimeParams& p, const GridSpec& g, const InitialDataSpec& data,
                       const NonlinearitySpec& spec, std::span<RowObserver* const> observers,
                       const EvolveOptions& opt = {});

}  // namespace rnwave
