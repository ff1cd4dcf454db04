#include "rnwave/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "rnwave/analysis.hpp"

namespace rnwave {

namespace {

const std::vector<std::string> kResolution{"grid.du", "grid.dv", "grid.refine"};
const std::vector<std::string> kBookkeeping{"output.dir", "probes.taus", "probes.points"};

std::vector<std::string> plus(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool extremal(const RunConfig& c) { return c.spacetime.charge == c.spacetime.mass; }
bool generic_data(const RunConfig& c) {
  return !c.data.horizon_positive && c.data.transform == DataTransform::None;
}
// The epsilon sweeps are small-data statements; larger amplitudes belong to the blow-up runs.
bool small_data(const RunConfig& c) { return c.data.epsilon > 0.0 && c.data.epsilon <= 0.1; }
bool kind(const RunConfig& c, NonlinearityKind k) { return c.nonlinearity.kind == k; }
bool unit_null_form(const RunConfig& c) {
  return kind(c, NonlinearityKind::NullForm) && c.nonlinearity.profile == AProfile::Constant &&
         c.nonlinearity.a0 == 1.0;
}

template <class Pred>
RunSet select(const RunSet& runs, Pred&& p) {
  RunSet out;
  for (const auto* r : runs)
    if (p(r->config)) out.push_back(r);
  return out;
}

std::vector<RunSet> group_by(const RunSet& runs, const std::vector<std::string>& excluded) {
  std::map<std::string, RunSet> m;
  std::vector<std::string> order;
  for (const auto* r : runs) {
    auto k = config_key(r->config, excluded);
    if (!m.count(k)) order.push_back(k);
    m[k].push_back(r);
  }
  std::vector<RunSet> out;
  for (const auto& k : order) out.push_back(m[k]);
  return out;
}

bool halves(double coarse, double fine) { return std::abs(coarse / fine - 2.0) < 0.02; }

/// Longest chain of runs with du halving at each step, coarse to fine; ties keep the first.
RunSet ladder(RunSet runs) {
  std::sort(runs.begin(), runs.end(), [](auto* a, auto* b) { return a->grid.du > b->grid.du; });
  RunSet best;
  for (std::size_t s = 0; s < runs.size(); ++s) {
    RunSet chain{runs[s]};
    for (std::size_t k = s + 1; k < runs.size(); ++k)
      if (halves(chain.back()->grid.du, runs[k]->grid.du) && halves(chain.back()->grid.dv, runs[k]->grid.dv))
        chain.push_back(runs[k]);
    if (chain.size() > best.size()) best = chain;
  }
  return best;
}

double at_tau(const HorizonSeries& s, const std::vector<double>& x, double tau) {
  if (s.size() == 0 || tau > s.tau.back() + 0.5 * s.dv) return std::nan("");
  auto k = static_cast<std::size_t>(std::lround(tau / s.dv));
  return x[std::min(k, s.size() - 1)];
}

bool covers(const RunResult& r, double tau) {
  return r.horizon.size() > 0 && r.horizon.tau.back() >= tau - 0.5 * r.grid.dv;
}

/// max over the second half of the samples <= 1.2 * max over the first half.
bool bounded_trend(const std::vector<double>& v, double* ratio = nullptr) {
  if (v.size() < 2) return false;
  std::size_t h = v.size() / 2;
  double a = *std::max_element(v.begin(), v.begin() + h);
  double b = *std::max_element(v.begin() + h, v.end());
  double q = a > 0.0 ? b / a : (b > 0.0 ? INFINITY : 0.0);
  if (ratio) *ratio = q;
  return q <= 1.2;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

struct Verdict {
  CriterionResult r;
  bool any = false;
  bool ok = true;

  Verdict(int id, std::string name) {
    r.id = id;
    r.name = std::move(name);
  }
  void metric(const std::string& k, double v) { r.metrics.emplace_back(k, v); }
  void check(bool pass, const std::string& what) {
    any = true;
    if (!pass) ok = false;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += (pass ? "" : "FAILED ") + what;
  }
  CriterionResult done(const std::string& missing) {
    if (!any) {
      r.status = Status::NotRun;
      r.detail = missing;
    } else {
      r.status = ok ? Status::Pass : Status::Fail;
    }
    return r;
  }
};

/// Drift of the Richardson-extrapolated H series from two resolutions (pointwise when
/// the fine series samples every coarse time, otherwise from the two scalar drifts).
double richardson_drift(const RunResult& c, const RunResult& f, double tau_max) {
  const auto& hc = c.horizon;
  const auto& hf = f.horizon;
  bool aligned = c.grid.nv * 2 == f.grid.nv;
  if (!aligned) {
    return richardson(conservation_drift(hc, 0, tau_max).drift, conservation_drift(hf, 0, tau_max).drift, 2.0);
  }
  double h0 = richardson(hc.H[0], hf.H[0], 2.0), worst = 0.0;
  for (std::size_t k = 0; k < hc.size() && 2 * k < hf.size(); ++k) {
    if (hc.tau[k] > tau_max + 1e-9) break;
    worst = std::max(worst, std::abs(richardson(hc.H[k], hf.H[2 * k], 2.0) - h0));
  }
  return worst;
}

std::vector<double> snapped_points_u(const GridSpec& g) {
  std::vector<double> out;
  for (double f : {0.82, 0.88, 0.94, 0.98, 1.0}) out.push_back(std::round(f * g.U / g.du) * g.du);
  return out;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::NotRun: return "not run";
  }
  return "?";
}

CriterionResult eval_aretakis_conservation(const RunSet& runs) {
  Verdict v(1, "exact Aretakis conservation (linear)");
  auto pool = select(runs, [](const RunConfig& c) {
    return kind(c, NonlinearityKind::Zero) && extremal(c) && generic_data(c) && c.data.epsilon > 0.0;
  });
  for (const auto& g : group_by(pool, plus(kResolution, kBookkeeping))) {
    RunSet lad = ladder(g);
    if (lad.size() < 2 || !std::all_of(lad.begin(), lad.end(), [](auto* r) { return covers(*r, 200.0); })) continue;
    std::vector<double> d;
    for (auto* r : lad) d.push_back(conservation_drift(r->horizon, 0.0, 200.0).drift);
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
      double q = d[k] / d[k + 1];
      v.metric("drift_ratio_" + std::to_string(k), q);
      v.check(q >= 3.0 && q <= 5.0, "refinement ratio " + fmt(q) + " in [3, 5]");
    }
    double rel = d.back() / std::abs(lad.back()->horizon.H[0]);
    v.metric("finest_relative_drift", rel);
    v.check(rel <= 1e-4, "finest drift/|H0| " + fmt(rel) + " <= 1e-4");
  }
  return v.done("needs a linear extremal resolution ladder reaching tau = 200");
}

CriterionResult eval_almost_conservation(const RunSet& runs) {
  Verdict v(2, "almost conservation, epsilon^2 scaling");
  auto pool = select(runs, [](const RunConfig& c) {
    return unit_null_form(c) && extremal(c) && generic_data(c) && small_data(c);
  });
  for (const auto& g : group_by(pool, plus(plus(kResolution, kBookkeeping), {"data.epsilon"}))) {
    std::vector<double> eps, drift;
    for (const auto& e : group_by(g, plus(kResolution, kBookkeeping))) {
      RunSet lad = ladder(e);
      if (lad.size() < 2) continue;
      const auto& c = *lad[lad.size() - 2];
      const auto& f = *lad.back();
      if (!covers(c, 200.0) || !covers(f, 200.0)) continue;
      eps.push_back(f.config.data.epsilon);
      drift.push_back(richardson_drift(c, f, 200.0));
      v.metric("drift_eps_" + fmt(eps.back()), drift.back());
    }
    if (eps.size() < 3) continue;
    double s = loglog_slope(eps, drift);
    v.metric("slope", s);
    v.check(std::abs(s - 2.0) <= 0.4, "log-log slope " + fmt(s) + " within 2.0 +- 0.4");
  }
  return v.done("needs unit null-form runs at three epsilons, two resolutions each");
}

CriterionResult eval_derivative_bounds(const RunSet& runs) {
  Verdict v(3, "Y psi and T psi boundedness");
  auto pool = select(runs, [](const RunConfig& c) {
    return kind(c, NonlinearityKind::NullForm) && extremal(c) && generic_data(c) && small_data(c);
  });
  for (const auto& g : group_by(pool, plus(plus(kResolution, kBookkeeping), {"data.epsilon"}))) {
    std::map<double, const RunResult*> finest;
    for (auto* r : g) {
      if (r->sups.v.empty() || r->evolution.blowup.flag || !covers(*r, 200.0)) continue;
      auto& slot = finest[r->config.data.epsilon];
      if (!slot || r->grid.du < slot->grid.du) slot = r;
    }
    if (finest.size() < 2) continue;
    std::vector<double> cy, ct;
    for (auto [eps, r] : finest) {
      cy.push_back(*std::max_element(r->sups.sup_Ypsi.begin(), r->sups.sup_Ypsi.end()) / eps);
      ct.push_back(*std::max_element(r->sups.sup_Tpsi.begin(), r->sups.sup_Tpsi.end()) / eps);
      double qy, qt;
      bool by = bounded_trend(r->sups.sup_Ypsi, &qy), bt = bounded_trend(r->sups.sup_Tpsi, &qt);
      v.metric("trend_Y_eps_" + fmt(eps), qy);
      v.metric("trend_T_eps_" + fmt(eps), qt);
      v.check(by && bt, "eps " + fmt(eps) + " late/early max " + fmt(qy) + ", " + fmt(qt) + " <= 1.2");
    }
    for (auto* c : {&cy, &ct}) {
      std::vector<double> s = *c;
      std::sort(s.begin(), s.end());
      double med = s[s.size() / 2];
      double spread = std::max(s.back() / med - 1.0, 1.0 - s.front() / med);
      const char* which = c == &cy ? "Y" : "T";
      v.metric(std::string("C_") + which, med);
      v.metric(std::string("C_") + which + "_spread", spread);
      v.check(spread <= 0.25, std::string("sup|") + which + " psi|/eps spread " + fmt(spread) + " <= 25%");
    }
  }
  return v.done("needs null-form runs at two or more epsilons with grid sups, reaching tau = 200");
}

CriterionResult eval_psi_decay(const RunSet& runs) {
  Verdict v(4, "psi decay on the foliation");
  for (auto* r : select(runs, [](const RunConfig& c) {
         return kind(c, NonlinearityKind::NullForm) && extremal(c) && generic_data(c) && c.data.epsilon > 0.0;
       })) {
    std::vector<double> t, s;
    for (const auto& x : r->slices)
      if (x.tau >= 50.0 && x.tau <= 200.0) {
        t.push_back(x.tau);
        s.push_back(x.sup_psi);
      }
    if (t.size() < 10) continue;
    auto f = fit_decay(t, s, 50.0, 200.0);
    v.metric("exponent_eps_" + fmt(r->config.data.epsilon) + "_du_" + fmt(r->grid.du), f.exponent);
    v.check(f.exponent >= 0.55, "exponent " + fmt(f.exponent) + " >= 0.55");
  }
  return v.done("needs a null-form run with ten or more slices in [50, 200]");
}

CriterionResult eval_transverse_growth(const RunSet& runs) {
  Verdict v(5, "Y^2 psi growth on the horizon");
  for (auto* r : select(runs, [](const RunConfig& c) {
         return kind(c, NonlinearityKind::NullForm) && extremal(c) && c.data.horizon_positive;
       })) {
    if (!covers(*r, 200.0)) continue;
    const auto& h = r->horizon;
    auto g = growth_fit(h, 2, 100.0, 200.0);
    double a = std::abs(at_tau(h, h.Y2_psi, 100.0)), b = std::abs(at_tau(h, h.Y2_psi, 200.0));
    v.metric("slope", g.slope);
    v.metric("ratio_200_100", b / a);
    v.check(g.slope > 0.0, "slope of |Y^2 psi| " + fmt(g.slope) + " > 0");
    v.check(b > 2.0 * a, "|Y^2 psi(200)| / |Y^2 psi(100)| = " + fmt(b / a) + " > 2");
  }
  return v.done("needs a positivity-mode null-form run reaching tau = 200");
}

CriterionResult eval_nonnull_blowup(const RunSet& runs) {
  Verdict v(6, "non-null finite-time blow-up");
  auto pool = select(runs, [](const RunConfig& c) {
    return extremal(c) && (kind(c, NonlinearityKind::NonNullHorizon) || kind(c, NonlinearityKind::NullForm));
  });
  for (const auto& g : group_by(pool, plus(kBookkeeping, {"nonlinearity."}))) {
    const RunResult* nn = nullptr;
    const RunResult* nf = nullptr;
    for (auto* r : g) {
      if (kind(r->config, NonlinearityKind::NonNullHorizon) && r->config.nonlinearity.n == 2 && r->blowup) nn = r;
      if (kind(r->config, NonlinearityKind::NullForm)) nf = r;
    }
    if (!nn || !nf) continue;
    const auto& b = *nn->blowup;
    double bound = blowup_bound(2, b.eta0, nn->config.spacetime.mass);
    v.metric("eta0", b.eta0);
    v.metric("tau_blow", b.tau_blow);
    v.metric("tau_star", bound);
    v.check(b.eta0 > 0.0, "H(0) = " + fmt(b.eta0) + " > 0");
    v.check(b.blew_up && b.tau_blow <= 1.1 * bound,
            "blow-up at " + fmt(b.tau_blow) + " <= 1.1 tau_star = " + fmt(1.1 * bound));
    v.check(b.lower_envelope_ok, "H dominates the comparison solution");
    bool clean = !nf->evolution.blowup.flag && covers(*nf, 200.0);
    v.check(clean, "null-form twin runs to tau = 200 without blow-up");
  }
  return v.done("needs a non-null n = 2 run and its null-form twin");
}

CriterionResult eval_energy_structure(const RunSet& runs) {
  Verdict v(7, "energy structure (T-flux, Hardy, Morawetz)");
  for (auto* r : select(runs, [](const RunConfig& c) {
         return kind(c, NonlinearityKind::Zero) && extremal(c) && generic_data(c) && c.data.epsilon > 0.0;
       })) {
    const auto& s = r->slices;
    if (s.size() < 3 || r->bulk.taus.empty() || !covers(*r, 200.0)) continue;
    std::string tag = "du_" + fmt(r->grid.du);
    double worst = -INFINITY;
    for (std::size_t k = 0; k + 1 < s.size(); ++k) worst = std::max(worst, s[k + 1].t_flux / s[k].t_flux - 1.0);
    v.metric("tflux_max_rel_increase_" + tag, worst);
    v.check(worst <= 1e-3, "T-flux relative increase " + fmt(worst) + " <= 1e-3");
    std::vector<double> hr;
    double hmax = 0.0;
    for (const auto& x : s)
      if (x.hardy_rhs > 0.0) {
        hr.push_back(x.hardy_lhs / x.hardy_rhs);
        hmax = std::max(hmax, hr.back());
      }
    double q;
    bool hb = bounded_trend(hr, &q);
    v.metric("hardy_constant_" + tag, hmax);
    v.check(hb, "Hardy ratio late/early max " + fmt(q) + " <= 1.2 (C_H = " + fmt(hmax) + ")");
    double add = 0.0;
    const auto& t = r->bulk.taus;
    for (std::size_t k = 0; k + 2 < t.size(); ++k) {
      double whole = slab_sum(t, r->bulk.morawetz, t[k], t[k + 2]);
      double parts = slab_sum(t, r->bulk.morawetz, t[k], t[k + 1]) + slab_sum(t, r->bulk.morawetz, t[k + 1], t[k + 2]);
      if (whole > 0.0) add = std::max(add, std::abs(whole - parts) / whole);
    }
    v.metric("morawetz_additivity_" + tag, add);
    v.check(add <= 1e-3, "Morawetz additivity defect " + fmt(add) + " <= 1e-3");
  }
  return v.done("needs a linear extremal run with slices and bulk integrals reaching tau = 200");
}

CriterionResult eval_bootstrap_scaling(const RunSet& runs) {
  Verdict v(8, "bootstrap norm scaling");
  auto pool = select(runs, [](const RunConfig& c) {
    return unit_null_form(c) && extremal(c) && generic_data(c) && small_data(c);
  });
  for (const auto& g : group_by(pool, plus(kBookkeeping, {"data.epsilon"}))) {
    std::vector<double> eps, a1;
    for (auto* r : g) {
      const auto* s = r->slice_at(50.0);
      if (!s || !(s->F_l2_inner > 0.0) || !covers(*r, 200.0)) continue;
      eps.push_back(r->config.data.epsilon);
      a1.push_back(s->F_l2_inner);
      std::vector<double> q;
      for (const auto& x : r->slices)
        if (x.tau >= 10.0 && x.tau <= 200.0)
          q.push_back(x.F_l2_inner * std::pow(1.0 + x.tau, 2.0 - r->config.diagnostics.alpha) / r->e0_eps2);
      double ratio;
      bool ok = bounded_trend(q, &ratio);
      v.metric("quotient_trend_eps_" + fmt(eps.back()), ratio);
      v.check(ok, "eps " + fmt(eps.back()) + " normalised A1 late/early max " + fmt(ratio) + " <= 1.2");
    }
    if (eps.size() < 2) continue;
    double s = loglog_slope(eps, a1);
    v.metric("A1_slope_du_" + fmt(g.front()->grid.du), s);
    v.check(std::abs(s - 4.0) <= 0.8, "A1(50) log-log slope " + fmt(s) + " within 4.0 +- 0.8");
  }
  return v.done("needs unit null-form runs at two or more epsilons with a slice at tau = 50, reaching tau = 200");
}

CriterionResult eval_extremal_contrast(const RunSet& runs) {
  Verdict v(9, "extremal vs subextremal contrast");
  auto pool = select(runs, [](const RunConfig& c) { return generic_data(c) && c.data.epsilon > 0.0; });
  for (const auto& g : group_by(pool, plus(kBookkeeping, {"spacetime.charge"}))) {
    const RunResult* ext = nullptr;
    const RunResult* sub = nullptr;
    for (auto* r : g) {
      if (!covers(*r, 200.0)) continue;
      if (extremal(r->config)) ext = r;
      else if (std::abs(r->config.spacetime.charge - 0.5 * r->config.spacetime.mass) < 1e-12) sub = r;
    }
    if (!ext || !sub) continue;
    auto ratio = [](const RunResult& r) {
      const auto& h = r.horizon;
      return std::abs(at_tau(h, h.Y_psi, 200.0)) / std::abs(at_tau(h, h.Y_psi, 50.0));
    };
    double rs = ratio(*sub), re = ratio(*ext);
    v.metric("subextremal_ratio", rs);
    v.metric("extremal_ratio", re);
    v.check(rs < 0.5, "subextremal |Y psi(200)|/|Y psi(50)| = " + fmt(rs) + " < 0.5");
    v.check(re > 0.8, "extremal ratio " + fmt(re) + " > 0.8");
  }
  return v.done("needs matching e = M and e = M/2 runs reaching tau = 200");
}

CriterionResult eval_nirenberg(const RunSet& runs) {
  Verdict v(10, "Nirenberg oracle equivalence");
  auto pool = select(runs, [](const RunConfig& c) {
    bool nl = unit_null_form(c) && c.data.transform == DataTransform::None;
    bool lin = kind(c, NonlinearityKind::Zero) && c.data.transform == DataTransform::ExpNeg;
    return (nl || lin) && !c.data.horizon_positive && !c.points.empty();
  });
  auto excl = plus(plus(kResolution, {"output.dir", "probes.taus"}), {"nonlinearity.", "data.transform"});
  for (const auto& g : group_by(pool, excl)) {
    std::vector<std::pair<const RunResult*, const RunResult*>> pairs;  // (nonlinear, linear) per resolution
    for (const auto& res : group_by(g, {"output.dir", "probes.taus", "nonlinearity.", "data.transform"})) {
      const RunResult* nl = nullptr;
      const RunResult* lin = nullptr;
      for (auto* r : res) (kind(r->config, NonlinearityKind::Zero) ? lin : nl) = r;
      if (nl && lin) pairs.emplace_back(nl, lin);
    }
    RunSet nls;
    for (auto& p : pairs) nls.push_back(p.first);
    RunSet lad = ladder(nls);
    if (lad.size() < 3) continue;
    std::vector<double> err;
    for (auto* n : lad)
      for (auto& p : pairs)
        if (p.first == n) err.push_back(nirenberg_compare(n->point_values, p.second->point_values));
    std::size_t m = err.size() - 2;
    double order = err.back() > 0.0 ? std::log2(err[m] / err.back()) : INFINITY;
    v.metric("error_finest", err.back());
    v.metric("order", order);
    v.check(std::abs(order - 2.0) <= 0.2, "order " + fmt(order) + " within 2.0 +- 0.2");
    v.check(err.back() <= 1e-4, "finest discrepancy " + fmt(err.back()) + " <= 1e-4");
  }
  return v.done("needs unit null-form and exp-transformed linear runs on a three-level ladder");
}

CriterionResult eval_self_convergence(const RunSet& runs) {
  Verdict v(11, "scheme self-convergence");
  auto pool = select(runs, [](const RunConfig& c) {
    return kind(c, NonlinearityKind::NullForm) && c.data.transform == DataTransform::None && c.points.size() >= 5;
  });
  for (const auto& g : group_by(pool, plus(kResolution, {"output.dir", "probes.taus"}))) {
    RunSet lad = ladder(g);
    if (lad.size() < 3) continue;
    const auto& c = lad[lad.size() - 3]->point_values;
    const auto& m = lad[lad.size() - 2]->point_values;
    const auto& f = lad.back()->point_values;
    bool finite = std::all_of(f.begin(), f.end(), [](double x) { return std::isfinite(x); });
    if (!finite) continue;
    double order = convergence_order(c, m, f);
    v.metric("order_eps_" + fmt(lad.back()->config.data.epsilon), order);
    v.check(std::abs(order - 2.0) <= 0.2, "order " + fmt(order) + " in [1.8, 2.2]");
  }
  return v.done("needs a null-form three-level ladder with five point probes");
}

std::vector<CriterionResult> evaluate_all(const RunSet& runs) {
  using Fn = CriterionResult (*)(const RunSet&);
  const Fn fns[] = {eval_aretakis_conservation, eval_almost_conservation, eval_derivative_bounds,
                    eval_psi_decay,             eval_transverse_growth,   eval_nonnull_blowup,
                    eval_energy_structure,      eval_bootstrap_scaling,   eval_extremal_contrast,
                    eval_nirenberg,             eval_self_convergence};
  std::vector<CriterionResult> out;
  for (auto f : fns) {
    try {
      out.push_back(f(runs));
    } catch (const std::exception& e) {
      CriterionResult r;
      r.id = static_cast<int>(out.size()) + 1;
      r.status = Status::Fail;
      r.detail = std::string("evaluation error: ") + e.what();
      out.push_back(r);
    }
  }
  return out;
}

RunConfig suite_base() {
  RunConfig c;
  GridSpec g = grid_of(c);
  auto us = snapped_points_u(g);
  const double vs[] = {10.0, 30.0, 60.0, 100.0, 150.0};
  for (std::size_t k = 0; k < us.size(); ++k) c.points.push_back({us[k], std::round(vs[k] / g.dv) * g.dv});
  return c;
}

std::vector<RunConfig> suite_configs(int id) {
  const RunConfig base = suite_base();
  auto with = [&](NonlinearityKind k, double eps, int refine) {
    RunConfig c = base;
    c.nonlinearity.kind = k;
    c.data.epsilon = eps;
    c.grid.refine = refine;
    return c;
  };
  std::vector<RunConfig> out;
  switch (id) {
    case 1:
    case 7:
      for (int r = 0; r < 3; ++r) out.push_back(with(NonlinearityKind::Zero, 0.05, r));
      if (id == 7) out.resize(1);
      break;
    case 2:
    case 3:
    case 8:
      for (double e : {0.025, 0.05, 0.1})
        for (int r = 0; r < 2; ++r) out.push_back(with(NonlinearityKind::NullForm, e, r));
      break;
    case 4: out.push_back(with(NonlinearityKind::NullForm, 0.05, 0)); break;
    case 5: {
      RunConfig c = with(NonlinearityKind::NullForm, 0.05, 0);
      c.data.horizon_positive = true;
      c.data.width = 0.25;
      out.push_back(c);
      break;
    }
    case 6: {
      RunConfig c = with(NonlinearityKind::NonNullHorizon, 0.5, 0);
      out.push_back(c);
      out.push_back(with(NonlinearityKind::NullForm, 0.5, 0));
      break;
    }
    case 9: {
      RunConfig e = with(NonlinearityKind::Zero, 0.05, 0);
      RunConfig s = e;
      s.spacetime.charge = 0.5;
      s.points.clear();
      out.push_back(e);
      out.push_back(s);
      break;
    }
    case 10:
    case 11:
      for (int r = 0; r < 3; ++r) {
        out.push_back(with(NonlinearityKind::NullForm, 0.05, r));
        if (id == 10) {
          RunConfig l = with(NonlinearityKind::Zero, 0.05, r);
          l.data.transform = DataTransform::ExpNeg;
          out.push_back(l);
        }
      }
      break;
    default: throw std::invalid_argument("suite_configs: criterion id must lie in 1..11");
  }
  return out;
}

std::vector<RunConfig> suite_configs() {
  std::vector<RunConfig> out;
  for (int id = 1; id <= 11; ++id)
    for (auto& c : suite_configs(id))
      if (std::none_of(out.begin(), out.end(), [&](const RunConfig& o) { return o == c; })) out.push_back(c);
  return out;
}

std::string report_json(const std::vector<CriterionResult>& results) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, x] : r.metrics) m[k] = std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
    j.push_back({{"id", r.id}, {"name", r.name}, {"status", to_string(r.status)}, {"detail", r.detail}, {"metrics", m}});
  }
  return nlohmann::json{{"criteria", j}}.dump(2) + "\n";
}

}  // namespace rnwave
