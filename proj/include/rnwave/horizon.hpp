#pragma once

#include <array>
#include <limits>
#include <vector>

#include "rnwave/evolution.hpp"

namespace rnwave {

struct HorizonSeries {
  double mass = 1.0;
  double dv = 0.0;
  std::vector<double> tau, psi, T_psi, Y_psi, Y2_psi, Y3_psi, H;

  std::size_t size() const { return tau.size(); }
};

enum class TransverseMethod { Lagrange, Chain };

struct HorizonOptions {
  TransverseMethod method = TransverseMethod::Lagrange;
  int npts = 4;
  // Minimum node spacing for Y, Y^2, Y^3; higher orders amplify round-off more.
  std::array<double, 3> floors{1e-6, 1e-4, 1e-3};
};

/// Streams the horizon column (u = U) into a HorizonSeries.
class HorizonRecorder : public RowObserver {
 public:
  explicit HorizonRecorder(HorizonOptions opt = {}) : opt_(opt) {}
  void begin(const EvolutionContext& ctx) override;
  void on_row(const RowData* prev, const RowData& cur) override;
  const HorizonSeries& series() const { return series_; }

 private:
  HorizonOptions opt_;
  HorizonSeries series_;
  double du_ = 0.0;
};

/// Y psi + psi / M.
inline double aretakis_charge(double Y_psi, double psi, double mass) { return Y_psi + psi / mass; }

struct DriftResult {
  double drift = 0.0;             // max |H - H(0)|
  double drift_normalized = 0.0;  // drift / epsilon^2
  double tau_at_max = 0.0;
};

DriftResult conservation_drift(const HorizonSeries& s, double epsilon = 0.0, double tau_max = -1.0);

/// Residual of T H = A(psi) T psi Y psi along the horizon for NullForm runs
/// (T H by centred differences). Returns max |residual|.
double horizon_residual(const HorizonSeries& s, const NonlinearitySpec& spec);

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  double tau_a = 0.0, tau_b = 0.0;
  bool sign_constant = true;  // Y^k psi keeps one sign on the window
  bool monotone = true;       // |Y^k psi| nondecreasing on the window
};

/// Least-squares line through |Y^k psi| on [tau_a, tau_b]; default window is
/// the last half of the series.
GrowthFit growth_fit(const HorizonSeries& s, int k, double tau_a = -1.0, double tau_b = -1.0);

struct BlowupReport {
  int n = 2;
  double eta0 = 0.0;
  double C_n = 0.0;
  double tau_star = std::numeric_limits<double>::infinity();
  double tau_blow = std::numeric_limits<double>::infinity();
  bool blew_up = false;
  bool hypothesis_met = false;
  bool lower_envelope_ok = false;
};

double blowup_constant(int n, double mass);
/// tau_star = 1 / (C_n (2n-1) eta0^{2n-1}); +inf when eta0 <= 0.
double blowup_bound(int n, double eta0, double mass);
/// Solution of dH/dtau = C_n H^{2n} with H(0) = eta0 (+inf past tau_star).
double comparison_solution(int n, double eta0, double mass, double tau);
/// H(tau) >= comparison solution (within rel_tol) at every sample.
bool certify_comparison(const HorizonSeries& s, int n, double rel_tol = 1e-4);
BlowupReport make_blowup_report(const HorizonSeries& s, int n, const BlowupInfo& info);

}  // namespace rnwave
