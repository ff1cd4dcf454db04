#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace rnwave {

/// Reissner-Nordstrom background, geometric units.
struct SpacetimeParams {
  double mass = 1.0;
  double charge = 1.0;

  bool extremal() const { return charge == mass; }
};

struct HorizonInfo {
  double r_plus;
  double r_minus;
  double surface_gravity;  // D'(r_plus)/2
};

inline void validate(const SpacetimeParams& p) {
  if (!(p.mass > 0.0) || !std::isfinite(p.mass))
    throw std::invalid_argument("spacetime.mass must be positive");
  if (!(p.charge >= 0.0) || p.charge > p.mass)
    throw std::invalid_argument("spacetime.charge must lie in [0, mass]");
}

inline double r_plus(const SpacetimeParams& p) {
  if (p.extremal()) return p.mass;
  return p.mass + std::sqrt(p.mass * p.mass - p.charge * p.charge);
}

inline double r_minus(const SpacetimeParams& p) {
  if (p.extremal()) return p.mass;
  return p.mass - std::sqrt(p.mass * p.mass - p.charge * p.charge);
}

template <typename Scalar>
Scalar metric_D_prime(Scalar r, const SpacetimeParams& p);

inline HorizonInfo horizon_info(const SpacetimeParams& p) {
  double rp = r_plus(p);
  return {rp, r_minus(p), 0.5 * metric_D_prime<double>(rp, p)};
}

namespace detail {
inline void require_outside(double r, const SpacetimeParams& p, const char* what) {
  if (r < r_plus(p)) throw std::domain_error(std::string(what) + ": r below horizon radius");
}
template <typename Scalar>
void require_outside(const Scalar&, const SpacetimeParams&, const char*) {}
}  // namespace detail

/// D as a function of delta = r - r_plus. Keeps full relative precision for
/// delta far below the spacing of doubles near r_plus.
template <typename Scalar>
Scalar metric_D_delta(Scalar delta, const SpacetimeParams& p) {
  const double rp = r_plus(p);
  const double gap = rp - r_minus(p);
  Scalar r = rp + delta;
  return delta * (delta + gap) / (r * r);
}

template <typename Scalar>
Scalar metric_D(Scalar r, const SpacetimeParams& p) {
  detail::require_outside(r, p, "metric_D");
  if (p.extremal()) {
    Scalar x = 1.0 - p.mass / r;
    return x * x;
  }
  return 1.0 - 2.0 * p.mass / r + p.charge * p.charge / (r * r);
}

template <typename Scalar>
Scalar metric_D_prime(Scalar r, const SpacetimeParams& p) {
  detail::require_outside(r, p, "metric_D_prime");
  if (p.extremal()) return 2.0 * p.mass / (r * r) * (1.0 - p.mass / r);
  return 2.0 * p.mass / (r * r) - 2.0 * p.charge * p.charge / (r * r * r);
}

template <typename Scalar>
Scalar metric_D_second(Scalar r, const SpacetimeParams& p) {
  Scalar r2 = r * r;
  return -4.0 * p.mass / (r2 * r) + 6.0 * p.charge * p.charge / (r2 * r2);
}

template <typename Scalar>
Scalar metric_D_third(Scalar r, const SpacetimeParams& p) {
  Scalar r2 = r * r;
  return 12.0 * p.mass / (r2 * r2) - 24.0 * p.charge * p.charge / (r2 * r2 * r);
}

/// Tortoise coordinate from delta = r - r_plus > 0.
/// Extremal: r + 2M ln(r - M) - M^2/(r - M), so r*(2M) = 2M + 2M ln M - M.
/// Subextremal: the additive constant is chosen to give the same value at
/// r = 2M when r_plus < 2M; for Schwarzschild the anchor is r*(3M) = 3M.
template <typename Scalar>
Scalar tortoise_delta(Scalar delta, const SpacetimeParams& p) {
  using std::log;
  if (!(delta > 0.0)) throw std::domain_error("tortoise: r must exceed the horizon radius");
  const double M = p.mass;
  const double rp = r_plus(p);
  if (p.extremal()) return rp + delta + 2.0 * M * log(delta) - M * M / delta;
  const double rm = r_minus(p);
  const double gap = rp - rm;
  const double ap = rp * rp / gap, am = rm * rm / gap;
  auto raw = [&](double d) {
    double tail = am > 0.0 ? am * std::log(d + gap) : 0.0;
    return rp + d + ap * std::log(d) - tail;
  };
  double anchor_r = rp < 2.0 * M ? 2.0 * M : 3.0 * M;
  double anchor_val = rp < 2.0 * M ? 2.0 * M + 2.0 * M * std::log(M) - M : 3.0 * M;
  double shift = anchor_val - raw(anchor_r - rp);
  Scalar tail = am > 0.0 ? Scalar(am * log(delta + gap)) : Scalar(0.0);
  return rp + delta + ap * log(delta) - tail + shift;
}

template <typename Scalar>
Scalar tortoise(Scalar r, const SpacetimeParams& p) {
  if (!(r > r_plus(p))) throw std::domain_error("tortoise: r must exceed the horizon radius");
  return tortoise_delta<Scalar>(r - r_plus(p), p);
}

}  // namespace rnwave
