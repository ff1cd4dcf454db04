#include <doctest.h>

#include <cmath>
#include <functional>

#include "rnwave/spacetime.hpp"

using namespace rnwave;

namespace {

const SpacetimeParams kExtremal{1.0, 1.0};
const SpacetimeParams kSub{1.0, 0.5};
const SpacetimeParams kSchw{1.0, 0.0};

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int depth = 40) {
  auto simpson = [&](double l, double r) { return (r - l) / 6.0 * (f(l) + 4.0 * f(0.5 * (l + r)) + f(r)); };
  std::function<double(double, double, double, double, int)> rec = [&](double l, double r, double whole,
                                                                        double eps, int d) {
    double m = 0.5 * (l + r);
    double left = simpson(l, m), right = simpson(m, r);
    if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
    return rec(l, m, left, 0.5 * eps, d - 1) + rec(m, r, right, 0.5 * eps, d - 1);
  };
  return rec(a, b, simpson(a, b), tol, depth);
}

}  // namespace

TEST_CASE("metric factor examples") {
  CHECK(metric_D(1.0, kExtremal) == 0.0);
  CHECK(metric_D(2.0, kExtremal) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(metric_D(2.0, kSchw) == 0.0);
  CHECK(metric_D_prime(1.0, kExtremal) == 0.0);
  CHECK(metric_D_prime(2.0, kExtremal) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(metric_D(0.9, kExtremal), std::domain_error);
  CHECK_THROWS_AS(metric_D_prime(1.5, kSchw), std::domain_error);
}

TEST_CASE("horizon radii and surface gravity") {
  CHECK(r_plus(kExtremal) == 1.0);
  CHECK(r_plus(kSchw) == 2.0);
  CHECK(r_plus(kSub) == doctest::Approx(1.0 + std::sqrt(0.75)));
  CHECK(horizon_info(kExtremal).surface_gravity == 0.0);
  CHECK(horizon_info(kSub).surface_gravity > 0.0);
  CHECK(metric_D(r_plus(kSub), kSub) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS(validate(SpacetimeParams{1.0, 1.5}));
  CHECK_THROWS(validate(SpacetimeParams{-1.0, 0.0}));
}

TEST_CASE("D increases from zero toward one") {
  for (const auto& p : {kExtremal, kSub, kSchw}) {
    double prev = metric_D(r_plus(p), p);
    CHECK(prev == doctest::Approx(0.0).epsilon(1e-15));
    for (int k = 1; k <= 2000; ++k) {
      double r = r_plus(p) + 0.01 * k;
      double d = metric_D(r, p);
      REQUIRE(d > prev);
      REQUIRE(d < 1.0);
      prev = d;
    }
  }
}

TEST_CASE("D prime matches centred differences") {
  const double h = 1e-3;
  for (const auto& p : {kExtremal, kSub, kSchw}) {
    double r = 3.0;
    double fd = (metric_D(r + h, p) - metric_D(r - h, p)) / (2.0 * h);
    CHECK(std::abs(metric_D_prime(r, p) - fd) <= 2.0 * h * h);
    double fd2 = (metric_D_prime(r + h, p) - metric_D_prime(r - h, p)) / (2.0 * h);
    CHECK(std::abs(metric_D_second(r, p) - fd2) <= 2.0 * h * h);
    double fd3 = (metric_D_second(r + h, p) - metric_D_second(r - h, p)) / (2.0 * h);
    CHECK(std::abs(metric_D_third(r, p) - fd3) <= 2.0 * h * h * 10.0);
  }
}

TEST_CASE("D in delta form agrees with the direct form") {
  for (const auto& p : {kExtremal, kSub, kSchw})
    for (double d : {1e-3, 0.1, 1.0, 7.5}) CHECK(metric_D_delta(d, p) == doctest::Approx(metric_D(r_plus(p) + d, p)));
  CHECK(metric_D_delta(1e-150, kExtremal) > 0.0);
}

TEST_CASE("tortoise normalisation") {
  CHECK(tortoise(2.0, kExtremal) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tortoise(2.0, kSub) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tortoise(3.0, kSchw) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(tortoise(1.0, kExtremal), std::domain_error);
  CHECK_THROWS_AS(tortoise(0.5, kExtremal), std::domain_error);
}

TEST_CASE("tortoise derivative is 1/D") {
  const double h = 1e-5;
  double fd = (tortoise(2.0 + h, kExtremal) - tortoise(2.0 - h, kExtremal)) / (2.0 * h);
  CHECK(std::abs(fd - 4.0) <= 1e-8);
  for (const auto& p : {kExtremal, kSub, kSchw})
    for (int k = 0; k < 100; ++k) {
      double r = r_plus(p) + 0.05 + 0.3 * k;
      double d = (tortoise(r + h, p) - tortoise(r - h, p)) / (2.0 * h);
      REQUIRE(d == doctest::Approx(1.0 / metric_D(r, p)).epsilon(1e-7));
    }
}

TEST_CASE("tortoise agrees with quadrature of 1/D from the anchor") {
  for (const auto& p : {kExtremal, kSub}) {
    auto inv = [&](double r) { return 1.0 / metric_D(r, p); };
    for (double r : {1.05, 1.3, 1.9, 2.0, 2.5, 4.0, 10.0, 30.0}) {
      if (r <= r_plus(p)) continue;
      double q = 1.0 + (r >= 2.0 ? adaptive_simpson(inv, 2.0, r, 1e-12) : -adaptive_simpson(inv, r, 2.0, 1e-12));
      CHECK(tortoise(r, p) == doctest::Approx(q).epsilon(1e-9));
    }
  }
  auto inv = [&](double r) { return 1.0 / metric_D(r, kSchw); };
  CHECK(tortoise(6.0, kSchw) == doctest::Approx(3.0 + adaptive_simpson(inv, 3.0, 6.0, 1e-12)).epsilon(1e-9));
}

TEST_CASE("tortoise is monotone and keeps precision near the horizon") {
  for (const auto& p : {kExtremal, kSub, kSchw}) {
    double prev = tortoise_delta(1e-12, p);
    for (double d = 1e-11; d < 50.0; d *= 1.7) {
      double t = tortoise_delta(d, p);
      REQUIRE(t > prev);
      prev = t;
    }
  }
  CHECK(tortoise_delta(1e-3, kExtremal) == doctest::Approx(tortoise(1.0 + 1e-3, kExtremal)).epsilon(1e-10));
}
