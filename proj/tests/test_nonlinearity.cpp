#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "rnwave/nonlinearity.hpp"

using namespace rnwave;

namespace {

NonlinearitySpec null_form(AProfile a, double a0 = 1.0) {
  NonlinearitySpec s;
  s.kind = NonlinearityKind::NullForm;
  s.profile = a;
  s.a0 = a0;
  return s;
}

}  // namespace

TEST_CASE("amplitude examples") {
  CHECK(amplitude_A(0.3, null_form(AProfile::Constant)) == 1.0);
  CHECK(amplitude_A(0.0, null_form(AProfile::Sine)) == 0.0);
  CHECK(amplitude_A(0.2, null_form(AProfile::SphereLike)) == doctest::Approx(0.2));
  NonlinearitySpec zero;
  CHECK_THROWS_AS(amplitude_A(0.1, zero), std::logic_error);
}

TEST_CASE("source examples in EF variables") {
  auto nf = null_form(AProfile::Constant);
  CHECK(source_ef(0.0, 1.0, 0.0, 0.7, nf) == 0.0);
  CHECK(source_ef(0.0, 1.0, 1.0, 0.0, nf) == 2.0);
  NonlinearitySpec nn;
  nn.kind = NonlinearityKind::NonNullHorizon;
  nn.n = 2;
  const double h = 0.37;
  CHECK(source_ef(0.0, 0.0, h, 0.0, nn, horizon_cutoff(0.0, nn.cutoff_width)) == doctest::Approx(h * h * h * h));
  NonlinearitySpec pw;
  pw.kind = NonlinearityKind::PowerTerm;
  pw.l = 6;
  CHECK(source_ef(-0.5, 3.0, 3.0, 0.2, pw) == doctest::Approx(std::pow(0.5, 6)));
}

TEST_CASE("source examples in null variables") {
  auto nf = null_form(AProfile::Cosine);
  NullFrame<double> f{0.3, -0.8, 0.15};
  CHECK(source_null(0.4, 0.0, 2.0, 1.5, 1.6, nf, f) == 0.0);
  NonlinearitySpec zero;
  CHECK(source_null(0.4, 1.0, 2.0, 1.5, 1.6, zero, f) == 0.0);
  CHECK_THROWS_AS(source_null(0.4, 1.0, 2.0, 1.5, 0.0, nf, f), std::domain_error);
  CHECK_THROWS_AS(source_null(0.4, 1.0, 2.0, 1.5, -1.0, nf, f), std::domain_error);
}

TEST_CASE("null and EF charts agree on random states") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0), P(0.05, 2.0), Dd(0.0, 1.0);
  const NonlinearityKind kinds[] = {NonlinearityKind::NullForm, NonlinearityKind::PowerTerm,
                                    NonlinearityKind::NonNullHorizon, NonlinearityKind::Zero};
  for (auto k : kinds)
    for (int i = 0; i < 10000; ++i) {
      NonlinearitySpec s;
      s.kind = k;
      s.profile = AProfile::Cosine;
      double psi = U(rng), du = U(rng), dv = U(rng), nu = -P(rng), D = Dd(rng), chi = Dd(rng);
      double lambda = 0.5 * D;  // regular double-null gauge used by the stepper
      double omega_sq = -2.0 * nu;
      NullFrame<double> f{D, nu, lambda, chi};
      auto [T, Y] = std::pair{dv - lambda * du / nu, du / nu};
      double a = source_null(psi, du, dv, 1.0 + D, omega_sq, s, f);
      double b = source_ef(psi, T, Y, D, s, chi);
      REQUIRE(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(b)));
    }
}

TEST_CASE("null form equals A times the inverse-metric contraction") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-2.0, 2.0), Dd(0.0, 1.0);
  for (auto prof : {AProfile::Constant, AProfile::Cosine, AProfile::Sine, AProfile::SphereLike}) {
    auto s = null_form(prof, 0.7);
    for (int i = 0; i < 10000; ++i) {
      double psi = U(rng), T = U(rng), Y = U(rng), D = Dd(rng);
      Eigen::Matrix2d g;  // (v, r) block of -D dv^2 + 2 dv dr
      g << -D, 1.0, 1.0, 0.0;
      Eigen::Vector2d dpsi(T, Y);
      double contraction = dpsi.dot(g.inverse() * dpsi);
      REQUIRE(source_ef(psi, T, Y, D, s) ==
              doctest::Approx(amplitude_A(psi, s) * contraction).epsilon(1e-13));
    }
  }
}

TEST_CASE("A profiles respect their declared bounds") {
  for (auto prof : {AProfile::Constant, AProfile::Cosine, AProfile::Sine, AProfile::SphereLike}) {
    auto s = null_form(prof, 1.3);
    auto b = declared_bounds(s);
    for (int i = 0; i <= 2000; ++i) {
      double psi = -1.0 + i * 1e-3;
      for (int k = 0; k <= 2; ++k) REQUIRE(std::abs(amplitude_A_derivative(psi, k, s)) <= b[k] + 1e-15);
    }
  }
  auto s = null_form(AProfile::SphereLike);
  for (double psi : {-0.5, -0.01, 0.0, 0.2, 0.9}) CHECK(std::abs(amplitude_A(psi, s)) <= s.a0 * std::abs(psi));
}

TEST_CASE("A derivatives match finite differences") {
  const double h = 1e-5;
  for (auto prof : {AProfile::Cosine, AProfile::Sine, AProfile::SphereLike}) {
    auto s = null_form(prof, 0.8);
    for (double psi : {-0.7, 0.1, 0.6}) {
      double d1 = (amplitude_A(psi + h, s) - amplitude_A(psi - h, s)) / (2 * h);
      double d2 = (amplitude_A_derivative(psi + h, 1, s) - amplitude_A_derivative(psi - h, 1, s)) / (2 * h);
      CHECK(amplitude_A_derivative(psi, 1, s) == doctest::Approx(d1).epsilon(1e-8));
      CHECK(amplitude_A_derivative(psi, 2, s) == doctest::Approx(d2).epsilon(1e-8));
    }
  }
}

TEST_CASE("horizon cutoff shape") {
  const double c = 0.5;
  CHECK(horizon_cutoff(0.0, c) == 1.0);
  CHECK(horizon_cutoff(0.25, c) == 1.0);
  CHECK(horizon_cutoff(0.5, c) == 0.0);
  CHECK(horizon_cutoff(3.0, c) == 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 1000; ++i) {
    double x = horizon_cutoff(0.25 + 0.25 * i / 1000.0, c);
    REQUIRE(x <= prev);
    prev = x;
  }
}

TEST_CASE("non-null source is nonnegative and reduces to psi^2n away from the horizon") {
  NonlinearitySpec s;
  s.kind = NonlinearityKind::NonNullHorizon;
  s.n = 3;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int i = 0; i < 10000; ++i) {
    double psi = U(rng), T = U(rng), Y = U(rng), delta = std::abs(U(rng));
    double chi = horizon_cutoff(delta, s.cutoff_width);
    double F = source_ef(psi, T, Y, 0.3, s, chi);
    REQUIRE(F >= 0.0);
    if (delta >= s.cutoff_width) REQUIRE(F == doctest::Approx(std::pow(psi, 6)).epsilon(1e-14));
  }
}

TEST_CASE("names round-trip and validation") {
  for (auto k : {NonlinearityKind::Zero, NonlinearityKind::NullForm, NonlinearityKind::PowerTerm,
                 NonlinearityKind::NonNullHorizon})
    CHECK(parse_kind(to_string(k)) == k);
  for (auto a : {AProfile::Constant, AProfile::Cosine, AProfile::Sine, AProfile::SphereLike})
    CHECK(parse_profile(to_string(a)) == a);
  CHECK_THROWS(parse_kind("cubic"));
  NonlinearitySpec s;
  s.kind = NonlinearityKind::PowerTerm;
  s.l = 1;
  CHECK_THROWS(validate(s));
  s.kind = NonlinearityKind::NonNullHorizon;
  s.n = 1;
  CHECK_THROWS(validate(s));
  s.n = 2;
  s.cutoff_width = 0.0;
  CHECK_THROWS(validate(s));
}
