#include "rnwave/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "rnwave/finite_difference.hpp"

namespace rnwave {

void HorizonRecorder::begin(const EvolutionContext& ctx) {
  series_ = HorizonSeries{};
  series_.mass = ctx.params.mass;
  series_.dv = ctx.grid.dv;
  du_ = ctx.grid.du;
}

void HorizonRecorder::on_row(const RowData*, const RowData& cur) {
  const int N = static_cast<int>(cur.psi.size()) - 1;
  double psi = cur.psi[N];
  std::array<double, 3> y;
  if (opt_.method == TransverseMethod::Chain) {
    std::array<double, 4> rows{cur.psi[N], cur.psi[N - 1], cur.psi[N - 2], cur.psi[N - 3]};
    y = transverse_derivatives_chain(rows, du_, cur.nu[N], cur.nu_u[N], cur.nu_uu[N]);
  } else {
    for (int k = 0; k < 3; ++k) {
      double h = std::max(cur.delta[N - 1], opt_.floors[k]);
      y[k] = transverse_derivatives(cur.delta, cur.psi, h, std::max(opt_.npts, k + 2))[k];
    }
  }
  series_.tau.push_back(cur.v);
  series_.psi.push_back(psi);
  series_.T_psi.push_back(cur.dv_psi[N]);
  series_.Y_psi.push_back(y[0]);
  series_.Y2_psi.push_back(y[1]);
  series_.Y3_psi.push_back(y[2]);
  series_.H.push_back(aretakis_charge(y[0], psi, series_.mass));
}

DriftResult conservation_drift(const HorizonSeries& s, double epsilon, double tau_max) {
  DriftResult r;
  if (s.size() == 0) return r;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (tau_max >= 0.0 && s.tau[k] > tau_max + 1e-9) break;
    double d = std::abs(s.H[k] - s.H[0]);
    if (d > r.drift) {
      r.drift = d;
      r.tau_at_max = s.tau[k];
    }
  }
  r.drift_normalized = epsilon > 0.0 ? r.drift / (epsilon * epsilon) : 0.0;
  return r;
}

double horizon_residual(const HorizonSeries& s, const NonlinearitySpec& spec) {
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < s.size(); ++k) {
    double dH = (s.H[k + 1] - s.H[k - 1]) / (s.tau[k + 1] - s.tau[k - 1]);
    double F = spec.kind == NonlinearityKind::NullForm
                   ? amplitude_A(s.psi[k], spec) * s.T_psi[k] * s.Y_psi[k]
                   : 0.0;
    worst = std::max(worst, std::abs(dH - F));
  }
  return worst;
}

GrowthFit growth_fit(const HorizonSeries& s, int k, double tau_a, double tau_b) {
  if (k < 1 || k > 3) throw std::invalid_argument("growth_fit: k must be 1, 2 or 3");
  const std::vector<double>& y = k == 1 ? s.Y_psi : (k == 2 ? s.Y2_psi : s.Y3_psi);
  if (s.size() < 4) throw std::invalid_argument("growth_fit: series too short");
  if (tau_b < 0.0) tau_b = s.tau.back();
  if (tau_a < 0.0) tau_a = 0.5 * (s.tau.front() + tau_b);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.tau[i] >= tau_a - 1e-9 && s.tau[i] <= tau_b + 1e-9) idx.push_back(i);
  if (idx.size() < 3) throw std::invalid_argument("growth_fit: series too short");
  Eigen::MatrixXd A(idx.size(), 2);
  Eigen::VectorXd b(idx.size());
  GrowthFit g;
  g.tau_a = s.tau[idx.front()];
  g.tau_b = s.tau[idx.back()];
  double sign0 = y[idx.front()] >= 0.0 ? 1.0 : -1.0;
  for (std::size_t j = 0; j < idx.size(); ++j) {
    A(j, 0) = s.tau[idx[j]];
    A(j, 1) = 1.0;
    b(j) = std::abs(y[idx[j]]);
    if ((y[idx[j]] >= 0.0 ? 1.0 : -1.0) != sign0) g.sign_constant = false;
    if (j > 0 && b(j) < b(j - 1)) g.monotone = false;
  }
  Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
  g.slope = c(0);
  g.intercept = c(1);
  return g;
}

double blowup_constant(int n, double mass) {
  if (n < 2) throw std::invalid_argument("blowup_constant: n must be at least 2");
  return 0.5 * std::pow(2.0, 1 - 2 * n) * std::min(1.0, std::pow(mass, 2 * n));
}

double blowup_bound(int n, double eta0, double mass) {
  if (!(eta0 > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / (blowup_constant(n, mass) * (2 * n - 1) * std::pow(eta0, 2 * n - 1));
}

double comparison_solution(int n, double eta0, double mass, double tau) {
  double C = blowup_constant(n, mass);
  double q = std::pow(eta0, 1 - 2 * n) - C * (2 * n - 1) * tau;
  if (!(q > 0.0)) return std::numeric_limits<double>::infinity();
  return std::pow(q, -1.0 / (2 * n - 1));
}

bool certify_comparison(const HorizonSeries& s, int n, double rel_tol) {
  if (s.size() == 0 || !(s.H[0] > 0.0)) return false;
  for (std::size_t k = 0; k < s.size(); ++k) {
    double h = comparison_solution(n, s.H[0], s.mass, s.tau[k] - s.tau[0]);
    if (!std::isfinite(h)) return false;
    if (s.H[k] < h * (1.0 - rel_tol)) return false;
  }
  return true;
}

BlowupReport make_blowup_report(const HorizonSeries& s, int n, const BlowupInfo& info) {
  BlowupReport r;
  r.n = n;
  r.C_n = blowup_constant(n, s.mass);
  r.eta0 = s.size() ? s.H[0] : 0.0;
  r.hypothesis_met = r.eta0 > 0.0;
  r.tau_star = blowup_bound(n, r.eta0, s.mass);
  r.blew_up = info.flag;
  if (info.flag) r.tau_blow = info.v;
  r.lower_envelope_ok = r.hypothesis_met && certify_comparison(s, n);
  return r;
}

}  // namespace rnwave
