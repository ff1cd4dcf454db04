#include <doctest.h>

#include <cmath>

#include "rnwave/diagnostics.hpp"
#include "support.hpp"

using namespace rnwave;

namespace {

Slice extract(const RunConfig& c, double tau) {
  return slice_extract(c.spacetime, grid_of(c), c.data, c.nonlinearity, {tau, c.diagnostics.R0});
}

Slice scaled(Slice s, double k) {
  for (auto* part : {&s.inner, &s.outer})
    for (auto& x : *part) {
      x.psi *= k;
      x.T_psi *= k;
      x.Y_psi *= k;
      x.dv_psi *= k;
    }
  return s;
}

/// Outgoing ray at fixed u with psi = 1/r, r growing along v as lambda = D/2.
Slice inverse_r_ray(const SpacetimeParams& p, double r0) {
  Slice s;
  s.R0 = r0;
  double r = r0;
  const double dv = 0.01;
  for (int k = 0; k < 2000; ++k) {
    double D = metric_D(r, p), lambda = 0.5 * D;
    s.outer.push_back({k * dv, r - r_plus(p), r, 1.0 / r, 0.0, 0.0, -lambda / (r * r), lambda, D});
    double k1 = 0.5 * metric_D(r, p), k2 = 0.5 * metric_D(r + 0.5 * dv * k1, p);
    double k3 = 0.5 * metric_D(r + 0.5 * dv * k2, p), k4 = 0.5 * metric_D(r + dv * k3, p);
    r += dv / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return s;
}

}  // namespace

TEST_CASE("zero field gives zero functionals") {
  auto c = test::small_config();
  c.data.epsilon = 0.0;
  c.nonlinearity.kind = NonlinearityKind::NullForm;
  for (double tau : {0.0, 10.0}) {
    auto s = extract(c, tau);
    CHECK(s.inner_complete);
    for (const auto* part : {&s.inner, &s.outer})
      for (const auto& x : *part) REQUIRE((x.psi == 0.0 && x.T_psi == 0.0 && x.Y_psi == 0.0 && x.dv_psi == 0.0));
    auto d = slice_diagnostics(s, c.diagnostics, c.nonlinearity, c.spacetime);
    CHECK(d.t_flux == 0.0);
    CHECK(d.t_energy == 0.0);
    CHECK(d.n_flux == 0.0);
    CHECK(d.p_flux == 0.0);
    CHECK(d.rp_energy == 0.0);
    CHECK(d.hardy_lhs == 0.0);
    CHECK(d.hardy_rhs == 0.0);
    CHECK(d.F_l2_inner == 0.0);
  }
  auto r = simulate(c);
  for (double m : r.bulk.morawetz) CHECK(m == 0.0);
  for (double m : r.bulk.a2) CHECK(m == 0.0);
  for (double m : r.bulk.a3) CHECK(m == 0.0);
}

TEST_CASE("slice geometry") {
  auto c = test::small_config();
  auto s0 = extract(c, 0.0);
  REQUIRE_FALSE(s0.inner.empty());
  CHECK(s0.inner.front().delta == 0.0);
  CHECK(s0.inner.front().v == doctest::Approx(0.0).epsilon(1e-12));
  for (double tau : {0.0, 5.0, 15.0}) {
    auto s = extract(c, tau);
    CHECK(s.inner_complete);
    for (std::size_t k = 1; k < s.inner.size(); ++k) REQUIRE(s.inner[k].r > s.inner[k - 1].r);
    for (std::size_t k = 1; k < s.outer.size(); ++k) REQUIRE(s.outer[k].v > s.outer[k - 1].v);
    for (const auto& x : s.inner) REQUIRE(x.v - x.delta == doctest::Approx(tau).epsilon(1e-9));
    CHECK(s.inner.back().r <= c.diagnostics.R0 + 1e-9);
    REQUIRE_FALSE(s.outer.empty());
    CHECK(s.outer.front().v == s.inner.back().v);
    CHECK(s.outer.front().r == s.inner.back().r);
    // the outer ray is the first column whose ray label reaches tau
    auto labels = column_ray_labels(c.spacetime, grid_of(c), c.diagnostics.R0);
    REQUIRE(s.column > 0);
    CHECK(labels[s.column] >= tau);
    CHECK(labels[s.column - 1] < tau);
  }
}

TEST_CASE("quadratic functionals scale by four and the A1 integrand by sixteen") {
  auto c = test::small_config();
  c.nonlinearity.kind = NonlinearityKind::NullForm;
  auto s = extract(c, 5.0);
  auto s2 = scaled(s, 2.0);
  auto d1 = slice_diagnostics(s, c.diagnostics, c.nonlinearity, c.spacetime);
  auto d2 = slice_diagnostics(s2, c.diagnostics, c.nonlinearity, c.spacetime);
  CHECK(d1.t_flux > 0.0);
  CHECK(d2.t_flux == doctest::Approx(4.0 * d1.t_flux).epsilon(1e-13));
  CHECK(d2.t_energy == doctest::Approx(4.0 * d1.t_energy).epsilon(1e-13));
  CHECK(d2.n_flux == doctest::Approx(4.0 * d1.n_flux).epsilon(1e-13));
  CHECK(d2.p_flux == doctest::Approx(4.0 * d1.p_flux).epsilon(1e-13));
  CHECK(d2.rp_energy == doctest::Approx(4.0 * d1.rp_energy).epsilon(1e-13));
  CHECK(d2.hardy_lhs == doctest::Approx(4.0 * d1.hardy_lhs).epsilon(1e-13));
  CHECK(d2.hardy_rhs == doctest::Approx(4.0 * d1.hardy_rhs).epsilon(1e-13));
  CHECK(d1.F_l2_inner > 0.0);
  CHECK(d2.F_l2_inner == doctest::Approx(16.0 * d1.F_l2_inner).epsilon(1e-13));
}

TEST_CASE("linear evolution scales the functionals quadratically") {
  auto c = test::small_config();
  auto a = slice_diagnostics(extract(c, 10.0), c.diagnostics, c.nonlinearity, c.spacetime);
  c.data.epsilon *= 2.0;
  auto b = slice_diagnostics(extract(c, 10.0), c.diagnostics, c.nonlinearity, c.spacetime);
  CHECK(b.t_flux == doctest::Approx(4.0 * a.t_flux).epsilon(1e-10));
  CHECK(b.n_flux == doctest::Approx(4.0 * a.n_flux).epsilon(1e-10));
}

TEST_CASE("flux ordering t <= p <= n on every slice") {
  for (double charge : {1.0, 0.5}) {
    auto c = test::small_config();
    c.spacetime.charge = charge;
    auto [r0, r1] = p_flux_radii(c.diagnostics, c.spacetime);
    CHECK(r_plus(c.spacetime) < r0);
    CHECK(r0 < r1);
    CHECK(r1 < 2.0);
    for (double tau : {0.0, 5.0, 10.0, 15.0, 20.0}) {
      auto s = extract(c, tau);
      double t = t_flux(s), p = p_flux(s, r0, r1), n = n_flux(s);
      CHECK(t >= 0.0);
      CHECK(t <= p * (1.0 + 1e-12));
      CHECK(p <= n * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("quadrature rules agree on smooth slices") {
  auto c = test::small_config(20.0, 0.05);
  c.nonlinearity.kind = NonlinearityKind::NullForm;
  auto s = extract(c, 10.0);
  QuadratureOptions simpson{QuadratureRule::Simpson, 1}, half{QuadratureRule::Trapezoid, 2};
  auto [r0, r1] = p_flux_radii(c.diagnostics, c.spacetime);
  auto all = [&](QuadratureOptions q) {
    return std::vector<double>{t_flux(s, q),        t_energy(s, q),        n_flux(s, q),
                               p_flux(s, r0, r1, q), rp_weighted_energy(s, 1.0, q), hardy_ratio(s, q).first,
                               F_l2_inner(s, c.nonlinearity, q)};
  };
  auto base = all({});
  auto simp = all(simpson);
  auto coarse = all(half);
  for (std::size_t k = 0; k < base.size(); ++k) {
    CAPTURE(k);
    CHECK(base[k] > 0.0);
    CHECK(simp[k] == doctest::Approx(base[k]).epsilon(0.01));
    CHECK(coarse[k] == doctest::Approx(base[k]).epsilon(0.01));
  }
}

TEST_CASE("quadrature is exact where it should be") {
  std::vector<double> x{0.0, 0.3, 0.5, 1.1, 1.2, 2.0, 2.4};
  std::vector<double> lin, cub;
  for (double t : x) {
    lin.push_back(3.0 * t - 1.0);
    cub.push_back(t * t);
  }
  CHECK(integrate(x, lin) == doctest::Approx(3.0 * 2.4 * 2.4 / 2 - 2.4));
  CHECK(integrate(x, cub, {QuadratureRule::Simpson, 1}) == doctest::Approx(2.4 * 2.4 * 2.4 / 3.0).epsilon(1e-13));
  CHECK(integrate({1.0}, {5.0}) == 0.0);
}

TEST_CASE("r^p energy vanishes for phi = 1 and grows with p") {
  SpacetimeParams p{1.0, 1.0};
  auto ray = inverse_r_ray(p, 6.0);
  CHECK(rp_weighted_energy(ray, 1.0) <= 1e-28);
  CHECK(rp_weighted_energy(ray, 2.5) <= 1e-28);
  auto c = test::small_config();
  auto s = extract(c, 5.0);
  double prev = 0.0;
  for (double q : {-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 2.9}) {
    double e = rp_weighted_energy(s, q);
    CHECK(e >= prev);
    prev = e;
  }
  CHECK_THROWS(rp_weighted_energy(s, 3.0));
}

TEST_CASE("p-flux radii must be ordered") {
  auto c = test::small_config();
  auto s = extract(c, 5.0);
  CHECK_THROWS(p_flux(s, 1.6, 1.4));
  DiagnosticsConfig bad = c.diagnostics;
  bad.p_r0 = 1.8;
  bad.p_r1 = 1.2;
  CHECK_THROWS(validate(bad, c.spacetime, c.grid.r_max));
}

TEST_CASE("diagnostics config validation") {
  SpacetimeParams p;
  DiagnosticsConfig ok;
  CHECK_NOTHROW(validate(ok, p, 40.0));
  auto bad = ok;
  bad.eta = 1.0;
  CHECK_THROWS(validate(bad, p, 40.0));
  bad = ok;
  bad.p = 3.0;
  CHECK_THROWS(validate(bad, p, 40.0));
  bad = ok;
  bad.alpha = 0.4;  // 3/5 - 3 alpha / 10 would not exceed 1/2
  CHECK_THROWS(validate(bad, p, 40.0));
  bad = ok;
  bad.R0 = 50.0;
  CHECK_THROWS(validate(bad, p, 40.0));
}

TEST_CASE("linear run: T-flux non-increasing, N-flux bounded, Hardy constant uniform") {
  auto c = test::small_config(40.0);
  auto r = simulate(c);
  REQUIRE(r.slices.size() == 9);
  double early = 0.0, hmax = 0.0;
  for (std::size_t k = 0; k < r.slices.size(); ++k) {
    const auto& s = r.slices[k];
    if (k > 0) CHECK(s.t_energy <= r.slices[k - 1].t_energy * (1.0 + 1e-3));
    if (k > 1 && k % 2 == 0) CHECK(s.t_flux <= r.slices[k - 2].t_flux * (1.0 + 1e-3));
    if (s.tau <= 10.0) early = std::max(early, s.n_flux);
    else CHECK(s.n_flux <= 2.0 * early);
    hmax = std::max(hmax, s.hardy_lhs / s.hardy_rhs);
  }
  CHECK(hmax < 50.0);
}

TEST_CASE("the T-flux density is equivalent to the exact Killing energy density") {
  auto c = test::small_config(40.0);
  auto r = simulate(c);
  // eigenvalues of the density ratio for D <= 1
  const double lo = (3.0 - std::sqrt(5.0)) / 4.0, hi = (3.0 + std::sqrt(5.0)) / 4.0;
  for (const auto& s : r.slices) {
    CHECK(s.t_energy <= hi * s.t_flux);
    CHECK(s.t_energy >= lo * s.t_flux);
  }
}

TEST_CASE("bulk slabs add up exactly") {
  auto c = test::small_config();
  auto r = simulate(c);
  const auto& t = r.bulk.taus;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      for (std::size_t k = j + 1; k < t.size(); ++k) {
        double whole = slab_sum(t, r.bulk.morawetz, t[i], t[k]);
        double parts = slab_sum(t, r.bulk.morawetz, t[i], t[j]) + slab_sum(t, r.bulk.morawetz, t[j], t[k]);
        REQUIRE(whole == doctest::Approx(parts).epsilon(1e-13));
      }
  CHECK(slab_sum(t, r.bulk.morawetz, 5.0, INFINITY) > 0.0);
  CHECK_THROWS(slab_sum(t, r.bulk.morawetz, 5.0, 7.5));
  CHECK_THROWS(slab_sum(t, r.bulk.morawetz, 10.0, 5.0));
}

TEST_CASE("Morawetz bulk is controlled by the T-flux, stably under refinement") {
  auto constant = [](double du, double tau1) {
    auto c = test::small_config(20.0, du);
    auto r = simulate(c);
    return slab_sum(r.bulk.taus, r.bulk.morawetz, tau1, INFINITY) / r.slice_at(tau1)->t_flux;
  };
  for (double tau1 : {5.0, 10.0}) {
    double a = constant(0.025, tau1), b = constant(0.0125, tau1);
    CHECK(a > 0.0);
    CHECK(b == doctest::Approx(a).epsilon(0.05));
  }
}

TEST_CASE("bootstrap norms") {
  auto c = test::small_config();
  auto z = simulate(c);
  auto n = z.bootstrap(10.0, 5.0, 15.0);
  CHECK(n.A1 == 0.0);
  CHECK(n.A2 == 0.0);
  CHECK(n.A3 == 0.0);
  c.nonlinearity.kind = NonlinearityKind::NullForm;
  auto a = simulate(c).bootstrap(10.0, 5.0, 15.0);
  c.data.epsilon *= 0.5;
  auto b = simulate(c).bootstrap(10.0, 5.0, 15.0);
  CHECK(a.A1 > 0.0);
  CHECK(a.A1 / b.A1 == doctest::Approx(16.0).epsilon(0.5));
  CHECK(a.A2 / b.A2 == doctest::Approx(16.0).epsilon(0.5));
  CHECK(a.A3 / b.A3 == doctest::Approx(16.0).epsilon(0.5));
  CHECK(a.A1_q == doctest::Approx(a.A1 * std::pow(11.0, 2.0 - c.diagnostics.alpha) / simulate(c).e0_eps2 / 4.0).epsilon(0.5));
}

TEST_CASE("grid sups and point probes") {
  auto c = test::small_config();
  auto g = grid_of(c);
  c.points = {{0.5 * g.U, 4.0}, {g.U, 10.0}};
  auto r = simulate(c);
  REQUIRE(r.point_values.size() == 2);
  CHECK(std::isfinite(r.point_values[0]));
  CHECK(r.point_values[1] == doctest::Approx(r.horizon.psi[static_cast<std::size_t>(std::lround(10.0 / g.dv))]));
  REQUIRE_FALSE(r.sups.v.empty());
  double sup = 0.0;
  for (double x : r.sups.sup_psi) sup = std::max(sup, x);
  for (const auto& s : r.slices) CHECK(s.sup_psi <= sup * (1.0 + 1e-12));
}
