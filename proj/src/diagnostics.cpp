#include "rnwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rnwave {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SliceSample sample_at(const RowData& row, int i) {
  return {row.v, row.delta[i], row.r[i], row.psi[i], row.T_psi[i],
          row.Y_psi[i], row.dv_psi[i], row.lambda[i], row.D[i]};
}

SliceSample lerp(const SliceSample& a, const SliceSample& b, double w) {
  auto mix = [w](double x, double y) { return x + w * (y - x); };
  return {mix(a.v, b.v),         mix(a.delta, b.delta), mix(a.r, b.r),
          mix(a.psi, b.psi),     mix(a.T_psi, b.T_psi), mix(a.Y_psi, b.Y_psi),
          mix(a.dv_psi, b.dv_psi), mix(a.lambda, b.lambda), mix(a.D, b.D)};
}

template <class F>
double inner_integral(const Slice& s, F&& density, QuadratureOptions q) {
  if (s.inner.size() < 2) return 0.0;
  std::vector<double> x, f;
  x.reserve(s.inner.size());
  f.reserve(s.inner.size());
  for (const auto& p : s.inner) {
    x.push_back(p.r);
    f.push_back(density(p) * p.r * p.r);
  }
  return integrate(x, f, q);
}

template <class F>
double outer_integral(const Slice& s, F&& density, QuadratureOptions q) {
  if (s.outer.size() < 2) return 0.0;
  std::vector<double> x, f;
  x.reserve(s.outer.size());
  f.reserve(s.outer.size());
  for (const auto& p : s.outer) {
    x.push_back(p.v);
    f.push_back(density(p));
  }
  return integrate(x, f, q);
}

double outer_dv_energy(const Slice& s, QuadratureOptions q) {
  return outer_integral(s, [](const SliceSample& p) { return p.r * p.r * p.dv_psi * p.dv_psi; }, q);
}

double simpson_uneven(double h0, double h1, double f0, double f1, double f2) {
  double h = h0 + h1;
  return h / 6.0 * ((2.0 - h1 / h0) * f0 + h * h / (h0 * h1) * f1 + (2.0 - h0 / h1) * f2);
}

}  // namespace

void validate(const DiagnosticsConfig& c, const SpacetimeParams& p, double r_max) {
  if (!(c.eta > 0.0 && c.eta < 1.0)) throw std::invalid_argument("diagnostics.eta must lie in (0, 1)");
  if (!(c.p < 3.0)) throw std::invalid_argument("diagnostics.p must be < 3");
  if (!(c.alpha > 0.0 && 0.6 - 0.3 * c.alpha > 0.5))
    throw std::invalid_argument("diagnostics.alpha must lie in (0, 1/3)");
  if (!(c.R0 > r_plus(p) && c.R0 < r_max))
    throw std::invalid_argument("diagnostics.R0 must lie in (r_plus, r_max)");
  if (c.p_r0 != 0.0 || c.p_r1 != 0.0) p_flux_radii(c, p);
}

std::pair<double, double> p_flux_radii(const DiagnosticsConfig& c, const SpacetimeParams& p) {
  const double rp = r_plus(p), two_m = 2.0 * p.mass;
  if (c.p_r0 == 0.0 && c.p_r1 == 0.0) {
    if (!(rp < two_m)) throw std::invalid_argument("p-flux: no room between r_plus and 2M");
    return {rp + 0.25 * (two_m - rp), rp + 0.75 * (two_m - rp)};
  }
  if (!(rp < c.p_r0 && c.p_r0 < c.p_r1 && c.p_r1 < two_m))
    throw std::invalid_argument("p-flux radii must satisfy r_plus < r0 < r1 < 2M");
  return {c.p_r0, c.p_r1};
}

std::vector<double> column_ray_labels(const SpacetimeParams& p, const GridSpec& g, double R0) {
  const double rp = r_plus(p);
  const double d0 = R0 - rp;
  const double star0 = tortoise_delta(d0, p);
  std::vector<double> out(g.nu + 1);
  for (int i = 0; i <= g.nu; ++i) {
    double s = g.U - i * g.du;
    double delta = (i == g.nu) ? 0.0 : gauge_offset(s, g.gauge);
    if (delta >= d0) out[i] = -kInf;
    else if (delta <= 0.0) out[i] = kInf;
    else out[i] = 2.0 * (star0 - tortoise_delta(delta, p)) - d0;
  }
  return out;
}

SliceCollector::SliceCollector(std::vector<double> taus, double R0) : taus_(std::move(taus)), R0_(R0) {
  for (double t : taus_)
    if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("slice tau must be finite and >= 0");
}

void SliceCollector::begin(const EvolutionContext& ctx) {
  if (!(R0_ > ctx.r_plus && R0_ < ctx.grid.r_max))
    throw std::invalid_argument("slice R0 must lie in (r_plus, r_max)");
  auto labels = column_ray_labels(ctx.params, ctx.grid, R0_);
  slices_.assign(taus_.size(), Slice{});
  next_col_.assign(taus_.size(), ctx.grid.nu);
  outer_active_.assign(taus_.size(), false);
  for (std::size_t k = 0; k < taus_.size(); ++k) {
    Slice& s = slices_[k];
    s.tau = taus_[k];
    s.R0 = R0_;
    auto it = std::find_if(labels.begin(), labels.end(), [&](double L) { return L >= s.tau; });
    s.column = static_cast<int>(it - labels.begin());
    s.u_tau = s.column * ctx.grid.du;
  }
}

void SliceCollector::on_row(const RowData* prev, const RowData& cur) {
  for (std::size_t k = 0; k < slices_.size(); ++k) {
    Slice& s = slices_[k];
    if (outer_active_[k]) {
      s.outer.push_back(sample_at(cur, s.column));
      continue;
    }
    if (s.inner_complete) continue;
    int& c = next_col_[k];
    while (c >= s.column) {
      double f = cur.v - cur.delta[c];
      if (f < s.tau) break;
      SliceSample x = sample_at(cur, c);
      if (prev) {
        double fp = prev->v - prev->delta[c];
        if (fp < s.tau) x = lerp(sample_at(*prev, c), x, (s.tau - fp) / (f - fp));
        else x = sample_at(*prev, c);  // crossed before the previous row; cannot happen for tau >= 0
      }
      s.inner.push_back(x);
      if (c == s.column) {
        s.inner_complete = true;
        s.outer.push_back(x);
        if (cur.v > x.v) s.outer.push_back(sample_at(cur, c));
        outer_active_[k] = true;
      }
      --c;
    }
  }
}

Slice slice_extract(const SpacetimeParams& p, const GridSpec& g, const InitialDataSpec& data,
                    const NonlinearitySpec& spec, const SliceSpec& s, const EvolveOptions& opt) {
  SliceCollector col({s.tau}, s.R0);
  RowObserver* obs[] = {&col};
  evolve(p, g, data, spec, obs, opt);
  return col.slices().front();
}

double integrate(const std::vector<double>& x, const std::vector<double>& f, QuadratureOptions q) {
  if (x.size() != f.size()) throw std::invalid_argument("integrate: size mismatch");
  if (q.stride < 1) throw std::invalid_argument("integrate: stride must be >= 1");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.size(); i += q.stride) idx.push_back(i);
  if (!x.empty() && idx.back() != x.size() - 1) idx.push_back(x.size() - 1);
  if (idx.size() < 2) return 0.0;
  double sum = 0.0;
  std::size_t j = 0;
  if (q.rule == QuadratureRule::Simpson) {
    for (; j + 2 < idx.size(); j += 2) {
      auto a = idx[j], b = idx[j + 1], c = idx[j + 2];
      double h0 = x[b] - x[a], h1 = x[c] - x[b];
      if (h0 <= 0.0 || h1 <= 0.0) {
        sum += 0.5 * (f[a] + f[b]) * h0 + 0.5 * (f[b] + f[c]) * h1;
        continue;
      }
      sum += simpson_uneven(h0, h1, f[a], f[b], f[c]);
    }
  }
  for (; j + 1 < idx.size(); ++j) sum += 0.5 * (f[idx[j]] + f[idx[j + 1]]) * (x[idx[j + 1]] - x[idx[j]]);
  return sum;
}

double t_flux(const Slice& s, QuadratureOptions q) {
  auto dens = [](const SliceSample& p) { return p.T_psi * p.T_psi + p.D * p.Y_psi * p.Y_psi; };
  return inner_integral(s, dens, q) + outer_dv_energy(s, q);
}

double t_energy(const Slice& s, QuadratureOptions q) {
  auto dens = [](const SliceSample& p) {
    return p.T_psi * p.T_psi + p.D * p.T_psi * p.Y_psi + 0.5 * p.D * p.Y_psi * p.Y_psi;
  };
  return inner_integral(s, dens, q) + outer_dv_energy(s, q);
}

double n_flux(const Slice& s, QuadratureOptions q) {
  auto dens = [](const SliceSample& p) { return p.T_psi * p.T_psi + p.Y_psi * p.Y_psi; };
  return inner_integral(s, dens, q) + outer_dv_energy(s, q);
}

double p_flux(const Slice& s, double r0, double r1, QuadratureOptions q) {
  if (!(r0 < r1)) throw std::invalid_argument("p_flux: need r0 < r1");
  auto dens = [&](const SliceSample& p) {
    double sd = std::sqrt(std::max(p.D, 0.0));
    double w = sd + smoothstep5((p.r - r0) / (r1 - r0)) * (1.0 - sd);
    return p.T_psi * p.T_psi + w * p.Y_psi * p.Y_psi;
  };
  return inner_integral(s, dens, q) + outer_dv_energy(s, q);
}

double rp_weighted_energy(const Slice& s, double p, QuadratureOptions q) {
  if (!(p < 3.0)) throw std::invalid_argument("rp_weighted_energy: p must be < 3");
  return outer_integral(
      s,
      [p](const SliceSample& x) {
        double dphi = x.lambda * x.psi + x.r * x.dv_psi;
        return std::pow(x.r, p - 2.0) * dphi * dphi;
      },
      q);
}

std::pair<double, double> hardy_ratio(const Slice& s, QuadratureOptions q) {
  auto sq = [](const SliceSample& p) { return p.psi * p.psi; };
  double lhs = inner_integral(s, [&](const SliceSample& p) { return sq(p) / (p.r * p.r); }, q) +
               outer_integral(s, sq, q);
  return {lhs, t_flux(s, q)};
}

double F_l2_inner(const Slice& s, const NonlinearitySpec& spec, QuadratureOptions q) {
  if (spec.kind == NonlinearityKind::Zero) return 0.0;
  return inner_integral(
      s,
      [&](const SliceSample& p) {
        double chi = spec.kind == NonlinearityKind::NonNullHorizon ? horizon_cutoff(p.delta, spec.cutoff_width)
                                                                   : 1.0;
        double F = source_ef(p.psi, p.T_psi, p.Y_psi, p.D, spec, chi);
        return F * F;
      },
      q);
}

SliceDiagnostics slice_diagnostics(const Slice& s, const DiagnosticsConfig& cfg,
                                   const NonlinearitySpec& spec, const SpacetimeParams& p,
                                   QuadratureOptions q) {
  SliceDiagnostics d;
  d.tau = s.tau;
  d.complete = s.inner_complete;
  d.t_flux = t_flux(s, q);
  d.t_energy = t_energy(s, q);
  d.n_flux = n_flux(s, q);
  if (r_plus(p) < 2.0 * p.mass) {
    auto [r0, r1] = p_flux_radii(cfg, p);
    d.p_flux = p_flux(s, r0, r1, q);
  } else {
    d.p_flux = std::numeric_limits<double>::quiet_NaN();
  }
  d.rp_energy = rp_weighted_energy(s, cfg.p, q);
  std::tie(d.hardy_lhs, d.hardy_rhs) = hardy_ratio(s, q);
  for (const auto* part : {&s.inner, &s.outer})
    for (const auto& x : *part) {
      d.sup_psi = std::max(d.sup_psi, std::abs(x.psi));
      d.sup_Tpsi = std::max(d.sup_Tpsi, std::abs(x.T_psi));
      d.sup_Ypsi = std::max(d.sup_Ypsi, std::abs(x.Y_psi));
    }
  d.F_l2_inner = F_l2_inner(s, spec, q);
  return d;
}

BulkAccumulator::BulkAccumulator(std::vector<double> taus, DiagnosticsConfig cfg)
    : taus_(std::move(taus)), cfg_(cfg) {
  if (!std::is_sorted(taus_.begin(), taus_.end()))
    throw std::invalid_argument("bulk: probe taus must be sorted");
}

void BulkAccumulator::begin(const EvolutionContext& ctx) {
  ctx_ = ctx;
  labels_ = column_ray_labels(ctx.params, ctx.grid, cfg_.R0);
  morawetz_.assign(taus_.size() + 1, 0.0);
  a2_ = morawetz_;
  a3_ = morawetz_;
}

void BulkAccumulator::on_row(const RowData* prev, const RowData& cur) {
  const auto& g = ctx_.grid;
  const int N = g.nu;
  const double d0 = cfg_.R0 - ctx_.r_plus;
  const double wv = (prev == nullptr || cur.n == g.nv) ? 0.5 * g.dv : g.dv;
  const bool has_F = ctx_.spec.kind != NonlinearityKind::Zero;
  const bool nonnull = ctx_.spec.kind == NonlinearityKind::NonNullHorizon;
  const double mexp = 1.0 + cfg_.eta;
  const double oexp = 3.0 - cfg_.alpha;
  for (int i = 0; i <= N; ++i) {
    const double wu = (i == 0 || i == N) ? 0.5 * g.du : g.du;
    const double r = cur.r[i];
    const double vol = -cur.nu[i] * r * r * wu * wv;
    const bool inner = cur.delta[i] <= d0;
    const double label = inner ? cur.v - cur.delta[i] : labels_[i];
    const auto slab = static_cast<std::size_t>(std::lower_bound(taus_.begin(), taus_.end(), label) - taus_.begin());
    const double T = cur.T_psi[i], Y = cur.Y_psi[i], D = cur.D[i];
    morawetz_[slab] += vol * (T * T + D * D * Y * Y) / std::pow(r, mexp);
    if (has_F) {
      double chi = nonnull ? horizon_cutoff(cur.delta[i], ctx_.spec.cutoff_width) : 1.0;
      double F = source_ef(cur.psi[i], T, Y, D, ctx_.spec, chi);
      if (inner) a2_[slab] += vol * F * F;
      else a3_[slab] += vol * std::pow(r, oexp) * F * F;
    }
  }
}

double slab_sum(const std::vector<double>& taus, const std::vector<double>& slabs, double tau1,
                double tau2) {
  auto index_of = [&](double t) -> std::size_t {
    if (std::isinf(t) && t > 0) return taus.size();
    auto it = std::find(taus.begin(), taus.end(), t);
    if (it == taus.end()) throw std::invalid_argument("slab_sum: tau is not a probe slice");
    return static_cast<std::size_t>(it - taus.begin());
  };
  std::size_t a = index_of(tau1), b = index_of(tau2);
  if (b < a) throw std::invalid_argument("slab_sum: need tau1 <= tau2");
  double s = 0.0;
  for (std::size_t k = a + 1; k <= b; ++k) s += slabs[k];
  return s;
}

double morawetz_bulk(const BulkAccumulator& b, double tau1, double tau2) {
  return slab_sum(b.taus(), b.morawetz_slabs(), tau1, tau2);
}

BootstrapNorms bootstrap_norms(const SliceDiagnostics& at_tau0, const BulkAccumulator& b, double tau1,
                               double tau2, double alpha, double e0_eps2) {
  BootstrapNorms n;
  n.A1 = at_tau0.F_l2_inner;
  n.A2 = slab_sum(b.taus(), b.a2_slabs(), tau1, tau2);
  n.A3 = slab_sum(b.taus(), b.a3_slabs(), tau1, tau2);
  if (e0_eps2 > 0.0) {
    n.A1_q = n.A1 * std::pow(1.0 + at_tau0.tau, 2.0 - alpha) / e0_eps2;
    n.A2_q = n.A2 * std::pow(1.0 + tau1, 2.0 - alpha) / e0_eps2;
    n.A3_q = n.A3 * std::pow(1.0 + tau1, 2.0 - alpha) / e0_eps2;
  }
  return n;
}

void GridSupTracker::on_row(const RowData*, const RowData& cur) {
  v.push_back(cur.v);
  sup_psi.push_back(cur.psi.abs().maxCoeff());
  sup_Tpsi.push_back(cur.T_psi.abs().maxCoeff());
  sup_Ypsi.push_back(cur.Y_psi.abs().maxCoeff());
}

void PointRecorder::begin(const EvolutionContext& ctx) {
  const auto& g = ctx.grid;
  iu_.clear();
  iv_.clear();
  for (const auto& p : pts_) {
    if (p.u < 0 || p.u > g.U + 1e-9 || p.v < 0 || p.v > g.V + 1e-9)
      throw std::invalid_argument("probe point outside the grid");
    iu_.push_back(static_cast<int>(std::lround(p.u / g.du)));
    iv_.push_back(static_cast<int>(std::lround(p.v / g.dv)));
  }
  values_.assign(pts_.size(), std::numeric_limits<double>::quiet_NaN());
  found_.assign(pts_.size(), false);
}

void PointRecorder::on_row(const RowData*, const RowData& cur) {
  for (std::size_t k = 0; k < pts_.size(); ++k)
    if (iv_[k] == cur.n) {
      values_[k] = cur.psi[iu_[k]];
      found_[k] = true;
    }
}

}  // namespace rnwave
