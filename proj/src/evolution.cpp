#include "rnwave/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "rnwave/finite_difference.hpp"

namespace rnwave {

namespace {
// (1 - sigma)/sigma e^{-s/L}; G'(s) = 1/(1 + q).
double gauge_q(double s, const InitialGauge& g) {
  return std::exp(std::log1p(-g.sigma) - std::log(g.sigma) - s / g.scale);
}
}  // namespace

double gauge_offset(double s, const InitialGauge& g) {
  if (g.affine()) return s;
  const double x = s / g.scale;
  if (x > 30.0)
    return g.scale * (x + std::log(g.sigma) + std::log1p((1.0 - g.sigma) / g.sigma * std::exp(-x)));
  return g.scale * std::log1p(g.sigma * std::expm1(x));
}

double gauge_slope(double s, const InitialGauge& g) {
  if (g.affine()) return 1.0;
  return 1.0 / (1.0 + gauge_q(s, g));
}

double gauge_curvature(double s, const InitialGauge& g) {
  if (g.affine()) return 0.0;
  double q = gauge_q(s, g);
  return q / ((1.0 + q) * (1.0 + q)) / g.scale;
}

double gauge_third(double s, const InitialGauge& g) {
  if (g.affine()) return 0.0;
  double q = gauge_q(s, g);
  double gp = 1.0 / (1.0 + q);
  return gauge_curvature(s, g) * (1.0 - 2.0 * gp) / g.scale;
}

double gauge_depth(double offset, const InitialGauge& g) {
  if (g.affine()) return offset;
  const double x = offset / g.scale;
  if (x > 30.0) return g.scale * (x + std::log1p((g.sigma - 1.0) * std::exp(-x)) - std::log(g.sigma));
  return g.scale * (std::log(std::expm1(x) + g.sigma) - std::log(g.sigma));
}

InitialGauge default_gauge(const SpacetimeParams& p, double V) {
  if (p.extremal()) return {2e-3, p.mass};
  double kappa = horizon_info(p).surface_gravity;
  return {1e-4 * std::exp(-kappa * V), 0.5 / kappa};
}

GridSpec make_grid(const SpacetimeParams& p, double r_max, double du_target, double dv, double V,
                   const InitialGauge& gauge) {
  validate(p);
  if (!(du_target > 0.0) || !(dv > 0.0) || !(V > 0.0))
    throw std::invalid_argument("grid: du, dv and V must be positive");
  if (!(r_max > r_plus(p))) throw std::invalid_argument("grid: r_max must exceed the horizon radius");
  if (!(gauge.sigma > 0.0 && gauge.sigma <= 1.0) || !(gauge.scale > 0.0))
    throw std::invalid_argument("grid: gauge sigma must lie in (0, 1] and scale be positive");
  GridSpec g;
  g.gauge = gauge;
  g.r_max = r_max;
  g.U = gauge_depth(r_max - r_plus(p), gauge);
  g.nu = static_cast<int>(std::ceil(g.U / du_target - 1e-9));
  g.du = g.U / g.nu;
  g.nv = static_cast<int>(std::ceil(V / dv - 1e-9));
  g.dv = dv;
  g.V = g.nv * dv;
  validate(g, p);
  return g;
}

GridSpec refined(const GridSpec& g, int factor) {
  GridSpec out = g;
  out.nu = g.nu * factor;
  out.nv = g.nv * factor;
  out.du = g.U / out.nu;
  out.dv = g.V / out.nv;
  return out;
}

void validate(const GridSpec& g, const SpacetimeParams& p) {
  if (g.nu < 4) throw std::invalid_argument("grid: need at least 4 cells in u");
  if (g.nv < 2) throw std::invalid_argument("grid: need at least 2 cells in v");
  if (!(g.du > 0.0) || !(g.dv > 0.0)) throw std::invalid_argument("grid: steps must be positive");
  if (!(g.r_max > r_plus(p))) throw std::invalid_argument("grid: r_max must exceed the horizon radius");
  if (static_cast<double>(g.nu) > 5e7) throw std::invalid_argument("grid: u resolution exceeds memory budget");
}

GeometryRow initial_geometry(const SpacetimeParams& p, const GridSpec& g) {
  const int n = g.nu + 1;
  const double rp = r_plus(p);
  GeometryRow row;
  row.v = 0.0;
  row.delta.resize(n);
  row.nu.resize(n);
  row.nu_u.resize(n);
  row.nu_uu.resize(n);
  for (int i = 0; i < n; ++i) {
    double s = (g.nu - i) * g.du;
    row.delta[i] = gauge_offset(s, g.gauge);
    row.nu[i] = -gauge_slope(s, g.gauge);
    row.nu_u[i] = gauge_curvature(s, g.gauge);
    row.nu_uu[i] = -gauge_third(s, g.gauge);
  }
  row.delta[n - 1] = 0.0;
  row.r = rp + row.delta;
  row.D = row.delta.unaryExpr([&](double d) { return metric_D_delta(d, p); });
  row.lambda = 0.5 * row.D;
  return row;
}

namespace {
struct GeoState {
  double delta, nu, nu_u, nu_uu;
};

inline GeoState geo_rhs(const SpacetimeParams& p, double rp, const GeoState& y) {
  double r = rp + y.delta;
  double D = metric_D_delta(y.delta, p);
  double r2 = r * r;
  double e2 = p.charge * p.charge;
  double D1 = 2.0 * (p.mass * r - e2) / (r2 * r);
  double D2 = -4.0 * p.mass / (r2 * r) + 6.0 * e2 / (r2 * r2);
  double D3 = 12.0 * p.mass / (r2 * r2) - 24.0 * e2 / (r2 * r2 * r);
  return {0.5 * D, 0.5 * D1 * y.nu, 0.5 * (D2 * y.nu * y.nu + D1 * y.nu_u),
          0.5 * D3 * y.nu * y.nu * y.nu + 1.5 * D2 * y.nu * y.nu_u + 0.5 * D1 * y.nu_uu};
}

inline GeoState axpy(const GeoState& y, double h, const GeoState& k) {
  return {y.delta + h * k.delta, y.nu + h * k.nu, y.nu_u + h * k.nu_u, y.nu_uu + h * k.nu_uu};
}
}  // namespace

void advance_geometry(const SpacetimeParams& p, const GeometryRow& in, double dv, GeometryRow& out) {
  const int n = static_cast<int>(in.delta.size());
  const double rp = r_plus(p);
  out.v = in.v + dv;
  out.delta.resize(n);
  out.nu.resize(n);
  out.nu_u.resize(n);
  out.nu_uu.resize(n);
  out.r.resize(n);
  out.D.resize(n);
  out.lambda.resize(n);
  for (int i = 0; i < n; ++i) {
    GeoState y{in.delta[i], in.nu[i], in.nu_u[i], in.nu_uu[i]};
    GeoState k1 = geo_rhs(p, rp, y);
    GeoState k2 = geo_rhs(p, rp, axpy(y, 0.5 * dv, k1));
    GeoState k3 = geo_rhs(p, rp, axpy(y, 0.5 * dv, k2));
    GeoState k4 = geo_rhs(p, rp, axpy(y, dv, k3));
    auto comb = [dv](double a, double b, double c, double d) { return dv / 6.0 * (a + 2 * b + 2 * c + d); };
    out.delta[i] = y.delta + comb(k1.delta, k2.delta, k3.delta, k4.delta);
    out.nu[i] = y.nu + comb(k1.nu, k2.nu, k3.nu, k4.nu);
    out.nu_u[i] = y.nu_u + comb(k1.nu_u, k2.nu_u, k3.nu_u, k4.nu_u);
    out.nu_uu[i] = y.nu_uu + comb(k1.nu_uu, k2.nu_uu, k3.nu_uu, k4.nu_uu);
    out.r[i] = rp + out.delta[i];
    out.D[i] = metric_D_delta(out.delta[i], p);
    out.lambda[i] = 0.5 * out.D[i];
  }
  if (!(out.nu.maxCoeff() < 0.0))
    throw std::invalid_argument("grid: nu lost its sign; reduce dv");
}

GeometryField build_background(const SpacetimeParams& p, const GridSpec& g) {
  validate(g, p);
  if (static_cast<double>(g.nu + 1) * (g.nv + 1) > 2e7)
    throw std::invalid_argument("build_background: grid too large to store");
  GeometryField f;
  const int rows = g.nv + 1, cols = g.nu + 1;
  f.r.resize(rows, cols);
  f.delta.resize(rows, cols);
  f.lambda.resize(rows, cols);
  f.nu.resize(rows, cols);
  f.nu_u.resize(rows, cols);
  GeometryRow a = initial_geometry(p, g), b;
  for (int n = 0; n < rows; ++n) {
    f.r.row(n) = a.r.transpose();
    f.delta.row(n) = a.delta.transpose();
    f.lambda.row(n) = a.lambda.transpose();
    f.nu.row(n) = a.nu.transpose();
    f.nu_u.row(n) = a.nu_u.transpose();
    if (n + 1 < rows) {
      advance_geometry(p, a, g.dv, b);
      std::swap(a, b);
    }
  }
  f.omega_sq = -2.0 * f.nu;
  return f;
}

double bump(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - s * s));
}

double bump_derivative(double s) {
  if (std::abs(s) >= 1.0) return 0.0;
  double q = 1.0 - s * s;
  return bump(s) * (-2.0 * s / (q * q));
}

double data_center(const InitialDataSpec& d, const SpacetimeParams& p) {
  return d.horizon_positive ? r_plus(p) + d.positive_depth * d.width : d.center;
}

void validate(const InitialDataSpec& d, const SpacetimeParams& p, double r_max) {
  if (!(d.epsilon >= 0.0) || !std::isfinite(d.epsilon))
    throw std::invalid_argument("data.epsilon must be finite and nonnegative");
  if (!(d.width > 0.0)) throw std::invalid_argument("data.width must be positive");
  if (d.horizon_positive && !(d.positive_depth > 0.0 && d.positive_depth < 1.0))
    throw std::invalid_argument("data.positive_depth must lie in (0, 1)");
  if (!std::isfinite(d.offset)) throw std::invalid_argument("data.offset must be finite");
  double c = data_center(d, p);
  if (c + d.width > r_max) throw std::invalid_argument("data: bump support extends beyond r_max");
  if (c + d.width <= r_plus(p)) throw std::invalid_argument("data: bump support lies inside the horizon");
}

WaveState init_characteristic_data(const InitialDataSpec& d, const SpacetimeParams& p,
                                   const GridSpec& g, const GeometryRow& row0) {
  validate(d, p, g.r_max);
  const double c = data_center(d, p);
  WaveState ws;
  ws.psi = row0.r.unaryExpr([&](double r) {
    double x = d.offset + d.epsilon * bump((r - c) / d.width);
    return d.transform == DataTransform::ExpNeg ? std::exp(-x) : x;
  });
  ws.boundary_value = ws.psi[0];
  return ws;
}

Eigen::ArrayXd zeta_of(const Eigen::ArrayXd& psi, const Eigen::ArrayXd& r, double du) {
  const int n = static_cast<int>(psi.size());
  Eigen::ArrayXd z(n);
  for (int i = 0; i < n; ++i) {
    double d;
    if (i == 0) d = (-3 * psi[0] + 4 * psi[1] - psi[2]) / (2 * du);
    else if (i == n - 1) d = (3 * psi[i] - 4 * psi[i - 1] + psi[i - 2]) / (2 * du);
    else d = (psi[i + 1] - psi[i - 1]) / (2 * du);
    z[i] = r[i] * d;
  }
  return z;
}

namespace {

enum class VDiff { Forward, Centered, Backward };

bool finalize_row(RowData& row, const RowData& a, const RowData& b, VDiff mode, double dv,
                  const EvolveOptions& opt) {
  // a, b are the two other rows: (n+1, n+2) forward; (n-1, n+1) centred; (n-1, n-2) backward.
  switch (mode) {
    case VDiff::Forward: row.dv_psi = (-3.0 * row.psi + 4.0 * a.psi - b.psi) / (2.0 * dv); break;
    case VDiff::Centered: row.dv_psi = (b.psi - a.psi) / (2.0 * dv); break;
    case VDiff::Backward: row.dv_psi = (3.0 * row.psi - 4.0 * a.psi + b.psi) / (2.0 * dv); break;
  }
  radial_derivative(row.delta, row.psi, opt.radial_floor, row.Y_psi);
  row.T_psi = row.dv_psi - row.lambda * row.Y_psi;
  double yh = row.Y_psi[row.Y_psi.size() - 1];
  return std::isfinite(yh) && std::abs(yh) <= opt.horizon_y_max && row.T_psi.allFinite();
}

}  // namespace

EvolutionOutput evolve(const SpacetimeParams& p, const GridSpec& g, const InitialDataSpec& data,
                       const NonlinearitySpec& spec, std::span<RowObserver* const> observers,
                       const EvolveOptions& opt) {
  validate(p);
  validate(g, p);
  validate(spec);
  if (opt.picard < 0) throw std::invalid_argument("evolve: picard must be nonnegative");
  const double rp = r_plus(p);
  EvolutionContext ctx{p, g, spec, rp};
  for (auto* o : observers) o->begin(ctx);

  EvolutionOutput out;
  RowData ring[3];
  GeometryRow g0 = initial_geometry(p, g);
  static_cast<GeometryRow&>(ring[0]) = g0;
  WaveState ws = init_characteristic_data(data, p, g, g0);
  ring[0].psi = ws.psi;
  ring[0].n = 0;
  const double boundary = ws.boundary_value;
  const int N = g.nu;
  const bool nonnull = spec.kind == NonlinearityKind::NonNullHorizon;

  auto emit = [&](const RowData* prev, const RowData& cur) {
    for (auto* o : observers) o->on_row(prev, cur);
    ++out.rows_emitted;
    out.v_last = cur.v;
  };
  auto flag_row = [&](const RowData& row, const std::string& why) {
    out.blowup.flag = true;
    out.blowup.u = g.U;
    out.blowup.v = row.v;
    out.blowup.reason = why;
  };

  for (int n = 0; n < g.nv; ++n) {
    RowData& cur = ring[n % 3];
    RowData& nxt = ring[(n + 1) % 3];
    advance_geometry(p, cur, g.dv, nxt);
    nxt.n = n + 1;
    nxt.psi.resize(N + 1);
    nxt.psi[0] = boundary;
    const double* dS = cur.delta.data();
    const double* dN = nxt.delta.data();
    for (int i = 0; i < N; ++i) {
      CellGeometry cg;
      cg.du = g.du;
      cg.dv = g.dv;
      double dc = 0.25 * (dS[i] + dS[i + 1] + dN[i] + dN[i + 1]);
      cg.r = rp + dc;
      cg.nu = 0.25 * (cur.nu[i] + cur.nu[i + 1] + nxt.nu[i] + nxt.nu[i + 1]);
      cg.lambda = 0.25 * (cur.lambda[i] + cur.lambda[i + 1] + nxt.lambda[i] + nxt.lambda[i + 1]);
      cg.D = 2.0 * cg.lambda;
      if (nonnull) cg.chi = horizon_cutoff(dc, spec.cutoff_width);
      nxt.psi[i + 1] = step_cell(cur.psi[i], cur.psi[i + 1], nxt.psi[i], cg, spec, opt.picard);
    }
    for (int i = 0; i <= N; ++i) {
      double x = nxt.psi[i];
      if (!std::isfinite(x) || std::abs(x) > opt.psi_max) {
        out.blowup.flag = true;
        out.blowup.u = i * g.du;
        out.blowup.v = nxt.v;
        out.blowup.reason = std::isfinite(x) ? "field amplitude threshold" : "non-finite field";
        break;
      }
    }
    if (out.blowup.flag) break;
    if (n + 1 == 2) {
      if (!finalize_row(ring[0], ring[1], ring[2], VDiff::Forward, g.dv, opt)) {
        flag_row(ring[0], "horizon transverse derivative threshold");
        break;
      }
      emit(nullptr, ring[0]);
    }
    if (n + 1 >= 2) {
      RowData& mid = ring[n % 3];
      if (!finalize_row(mid, ring[(n + 2) % 3], nxt, VDiff::Centered, g.dv, opt)) {
        flag_row(mid, "horizon transverse derivative threshold");
        break;
      }
      emit(&ring[(n + 2) % 3], mid);
    }
  }
  if (!out.blowup.flag) {
    int n = g.nv;
    RowData& last = ring[n % 3];
    if (!finalize_row(last, ring[(n + 2) % 3], ring[(n + 1) % 3], VDiff::Backward, g.dv, opt))
      flag_row(last, "horizon transverse derivative threshold");
    else
      emit(&ring[(n + 2) % 3], last);
  }
  return out;
}

}  // namespace rnwave
