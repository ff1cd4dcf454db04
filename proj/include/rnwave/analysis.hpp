#pragma once

#include <span>
#include <vector>

namespace rnwave {

struct FitResult {
  double exponent = 0.0;
  double amplitude = 0.0;
  double tau_a = 0.0, tau_b = 0.0;
  double residual_rms = 0.0;
  int samples = 0;
};

/// Least squares of log(value) against log(1 + tau) on [tau_a, tau_b];
/// exponent = -slope. Needs at least 10 samples, all positive.
FitResult fit_decay(std::span<const double> tau, std::span<const double> value, double tau_a, double tau_b);

/// log2(|coarse - medium|_max / |medium - fine|_max); +inf when the finer difference vanishes.
double convergence_order(std::span<const double> coarse, std::span<const double> medium,
                         std::span<const double> fine);

/// Extrapolate two resolutions (ratio 2) assuming the given order.
std::vector<double> richardson(std::span<const double> coarse, std::span<const double> fine, double order);
double richardson(double coarse, double fine, double order);

/// Least-squares slope of log y against log x.
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// max_k |psi_nonlinear[k] + ln(phi_linear[k])|.
double nirenberg_compare(std::span<const double> psi_nonlinear, std::span<const double> phi_linear);

}  // namespace rnwave
