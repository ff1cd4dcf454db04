#include <doctest.h>

#include <cmath>
#include <vector>

#include "rnwave/analysis.hpp"
#include "support.hpp"

using namespace rnwave;

namespace {

std::pair<std::vector<double>, std::vector<double>> power_law(double rate) {
  std::vector<double> t, y;
  for (double x = 0.0; x <= 200.0; x += 5.0) {
    t.push_back(x);
    y.push_back(3.0 * std::pow(1.0 + x, -rate));
  }
  return {t, y};
}

}  // namespace

TEST_CASE("decay fits are exact on power laws") {
  for (double rate : {1.0, 0.6, 0.0}) {
    auto [t, y] = power_law(rate);
    auto f = fit_decay(t, y, 50.0, 200.0);
    CHECK(f.exponent == doctest::Approx(rate).epsilon(1e-10));
    CHECK(std::abs(f.exponent - rate) <= 0.01);
    CHECK(f.amplitude == doctest::Approx(3.0));
    CHECK(f.residual_rms <= 1e-12);
    CHECK(f.samples == 31);
  }
}

TEST_CASE("decay fit errors") {
  auto [t, y] = power_law(1.0);
  y[20] = 0.0;
  CHECK_THROWS_AS(fit_decay(t, y, 50.0, 200.0), std::domain_error);
  auto [t2, y2] = power_law(1.0);
  CHECK_THROWS(fit_decay(t2, y2, 150.0, 180.0));
}

TEST_CASE("convergence order") {
  std::vector<double> exact{1.0, -2.0, 0.5, 3.0}, e{1e-3, 2e-3, -1e-3, 4e-4};
  std::vector<double> c, m, f;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    c.push_back(exact[k] + 4.0 * e[k]);
    m.push_back(exact[k] + e[k]);
    f.push_back(exact[k] + 0.25 * e[k]);
  }
  CHECK(convergence_order(c, m, f) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::isinf(convergence_order(exact, exact, exact)));
  CHECK(convergence_order(exact, exact, exact) > 0.0);
  for (double k : {1e-6, 3.0, -7.0}) {
    std::vector<double> cs, ms, fs;
    for (std::size_t i = 0; i < c.size(); ++i) {
      cs.push_back(k * c[i]);
      ms.push_back(k * m[i]);
      fs.push_back(k * f[i]);
    }
    CHECK(convergence_order(cs, ms, fs) == doctest::Approx(2.0).epsilon(1e-9));
  }
  std::vector<double> short_f(f.begin(), f.end() - 1);
  CHECK_THROWS(convergence_order(c, m, short_f));
}

TEST_CASE("Richardson extrapolation and log-log slopes") {
  CHECK(richardson(1.0 + 4e-3, 1.0 + 1e-3, 2.0) == doctest::Approx(1.0).epsilon(1e-14));
  auto v = richardson(std::vector<double>{2.04, 3.08}, std::vector<double>{2.01, 3.02}, 2.0);
  CHECK(v[0] == doctest::Approx(2.0));
  CHECK(v[1] == doctest::Approx(3.0));
  std::vector<double> x{0.025, 0.05, 0.1}, y;
  for (double e : x) y.push_back(7.0 * e * e);
  CHECK(loglog_slope(x, y) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("Nirenberg comparison on synthetic values") {
  std::vector<double> psi{0.1, -0.2, 0.0}, phi;
  for (double p : psi) phi.push_back(std::exp(-p));
  CHECK(nirenberg_compare(psi, phi) <= 1e-16);
  phi[1] = 0.0;
  CHECK_THROWS(nirenberg_compare(psi, phi));
  phi[1] = -1.0;
  CHECK_THROWS(nirenberg_compare(psi, phi));
}

namespace {

double nirenberg_error(double epsilon, double offset) {
  auto c = test::small_config(15.0, 0.1);
  auto g = grid_of(c);
  c.points = {{0.5 * g.U, 3.0}, {0.8 * g.U, 8.0}, {g.U, 12.0}};
  for (auto& p : c.points) p = {std::round(p.u / g.du) * g.du, std::round(p.v / g.dv) * g.dv};
  c.data.epsilon = epsilon;
  c.data.offset = offset;
  c.nonlinearity.kind = NonlinearityKind::NullForm;
  auto nl = simulate(c, {false, false});
  c.nonlinearity.kind = NonlinearityKind::Zero;
  c.data.transform = DataTransform::ExpNeg;
  auto lin = simulate(c, {false, false});
  return nirenberg_compare(nl.point_values, lin.point_values);
}

}  // namespace

TEST_CASE("Nirenberg oracle on evolutions") {
  CHECK(nirenberg_error(0.0, 0.0) == 0.0);
  double e0 = nirenberg_error(0.05, 0.0);
  double e3 = nirenberg_error(0.05, 0.3);
  CHECK(e0 > 0.0);
  CHECK(std::abs(e3 - e0) <= 1e-12);
}
