#include "rnwave/analysis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rnwave {

namespace {

Eigen::Vector2d line_fit(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  Eigen::MatrixXd A(x.size(), 2);
  A.col(0) = x;
  A.col(1).setOnes();
  return A.colPivHouseholderQr().solve(y);
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": series are not aligned");
}

}  // namespace

FitResult fit_decay(std::span<const double> tau, std::span<const double> value, double tau_a, double tau_b) {
  require_same_size(tau.size(), value.size(), "fit_decay");
  if (!(tau_a < tau_b)) throw std::invalid_argument("fit_decay: empty window");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] < tau_a || tau[i] > tau_b) continue;
    if (!(value[i] > 0.0)) throw std::domain_error("fit_decay: nonpositive value in window");
    xs.push_back(std::log1p(tau[i]));
    ys.push_back(std::log(value[i]));
  }
  if (xs.size() < 10) throw std::invalid_argument("fit_decay: fewer than 10 samples in window");
  Eigen::Map<Eigen::VectorXd> x(xs.data(), xs.size()), y(ys.data(), ys.size());
  Eigen::Vector2d c = line_fit(x, y);
  FitResult r;
  r.exponent = -c[0];
  r.amplitude = std::exp(c[1]);
  r.tau_a = tau_a;
  r.tau_b = tau_b;
  r.samples = static_cast<int>(xs.size());
  Eigen::VectorXd res = y - (c[0] * x.array() + c[1]).matrix();
  r.residual_rms = std::sqrt(res.squaredNorm() / res.size());
  return r;
}

double convergence_order(std::span<const double> coarse, std::span<const double> medium,
                         std::span<const double> fine) {
  require_same_size(coarse.size(), medium.size(), "convergence_order");
  require_same_size(medium.size(), fine.size(), "convergence_order");
  if (coarse.empty()) throw std::invalid_argument("convergence_order: empty series");
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    e1 = std::max(e1, std::abs(coarse[i] - medium[i]));
    e2 = std::max(e2, std::abs(medium[i] - fine[i]));
  }
  if (e2 == 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(e1 / e2);
}

double richardson(double coarse, double fine, double order) {
  double f = std::pow(2.0, order);
  return fine + (fine - coarse) / (f - 1.0);
}

std::vector<double> richardson(std::span<const double> coarse, std::span<const double> fine, double order) {
  require_same_size(coarse.size(), fine.size(), "richardson");
  std::vector<double> out(coarse.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = richardson(coarse[i], fine[i], order);
  return out;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  require_same_size(x.size(), y.size(), "loglog_slope");
  if (x.size() < 2) throw std::invalid_argument("loglog_slope: need two points");
  Eigen::VectorXd lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::domain_error("loglog_slope: nonpositive entry");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  return line_fit(lx, ly)[0];
}

double nirenberg_compare(std::span<const double> psi_nonlinear, std::span<const double> phi_linear) {
  require_same_size(psi_nonlinear.size(), phi_linear.size(), "nirenberg_compare");
  double err = 0.0;
  for (std::size_t i = 0; i < phi_linear.size(); ++i) {
    if (!(phi_linear[i] > 0.0)) throw std::domain_error("nirenberg_compare: linear field is not positive");
    err = std::max(err, std::abs(psi_nonlinear[i] + std::log(phi_linear[i])));
  }
  return err;
}

}  // namespace rnwave
