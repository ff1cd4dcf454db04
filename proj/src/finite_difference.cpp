#include "rnwave/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace rnwave {

Eigen::MatrixXd fd_weights(double x0, std::span<const double> nodes, int max_order) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0 || max_order < 0) throw std::invalid_argument("fd_weights: empty stencil");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, max_order + 1);
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, max_order);
    double c2 = 1.0;
    double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      double c3 = nodes[i] - nodes[j];
      if (c3 == 0.0) throw std::invalid_argument("fd_weights: repeated node");
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

// delta decreases with index; first index j in [lo, hi] with delta[j] <= target.
int first_below(const Eigen::ArrayXd& delta, int lo, int hi, double target) {
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    if (delta[mid] <= target) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

// Nearest index to a target delta on the whole row.
int nearest_delta(const Eigen::ArrayXd& delta, double target) {
  const int last = static_cast<int>(delta.size()) - 1;
  int j = first_below(delta, 0, last, target);
  if (j > 0 && std::abs(delta[j - 1] - target) < std::abs(delta[j] - target)) --j;
  return j;
}

double three_point(double x0, const double* x, const double* f) {
  double w0 = (2 * x0 - x[1] - x[2]) / ((x[0] - x[1]) * (x[0] - x[2]));
  double w1 = (2 * x0 - x[0] - x[2]) / ((x[1] - x[0]) * (x[1] - x[2]));
  double w2 = (2 * x0 - x[0] - x[1]) / ((x[2] - x[0]) * (x[2] - x[1]));
  return w0 * f[0] + w1 * f[1] + w2 * f[2];
}

}  // namespace

void radial_derivative(const Eigen::ArrayXd& delta, const Eigen::ArrayXd& psi, double floor,
                       Eigen::ArrayXd& out) {
  const int N = static_cast<int>(delta.size()) - 1;
  out.resize(N + 1);
  if (N < 2) {
    out.setZero();
    if (N == 1) out.setConstant((psi[0] - psi[1]) / (delta[0] - delta[1]));
    return;
  }
  for (int i = 0; i <= N; ++i) {
    int a, b, c;
    if (i > 0 && i < N && delta[i - 1] - delta[i] >= floor && delta[i] - delta[i + 1] >= floor) {
      a = i - 1, b = i, c = i + 1;
    } else if (delta[i] < floor) {
      // Crowded against the horizon: fit through the horizon and two separated rows.
      c = N;
      b = std::min(nearest_delta(delta, floor), N - 1);
      a = std::min(nearest_delta(delta, 2.0 * delta[b]), b - 1);
    } else if (i == 0) {
      a = 0, b = 1, c = 2;
    } else {
      a = std::max(first_below(delta, 0, i, delta[i] + floor) - 1, 0);
      b = i;
      c = first_below(delta, i + 1, N, delta[i] - floor);
    }
    const double x[3] = {delta[a], delta[b], delta[c]};
    const double f[3] = {psi[a], psi[b], psi[c]};
    out[i] = three_point(delta[i], x, f);
  }
}

std::array<double, 3> transverse_derivatives(const Eigen::ArrayXd& delta, const Eigen::ArrayXd& psi,
                                             double h, int npts) {
  const int N = static_cast<int>(delta.size()) - 1;
  if (npts < 2 || npts > 6) throw std::invalid_argument("transverse_derivatives: npts in [2, 6]");
  if (N < npts - 1) throw std::invalid_argument("transverse_derivatives: not enough rows");
  std::vector<int> idx{N};
  for (int j = 1; j < npts; ++j) {
    int k = nearest_delta(delta, j * h);
    k = std::min(k, idx.back() - 1);
    idx.push_back(k);
  }
  if (idx.back() < 0) throw std::invalid_argument("transverse_derivatives: not enough rows");
  std::vector<double> x, f;
  for (int k : idx) {
    x.push_back(delta[k]);
    f.push_back(psi[k]);
  }
  int order = std::min(3, npts - 1);
  Eigen::MatrixXd w = fd_weights(0.0, x, order);
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (int k = 1; k <= order; ++k)
    for (int j = 0; j < npts; ++j) out[k - 1] += w(j, k) * f[j];
  return out;
}

std::array<double, 3> transverse_derivatives_chain(const std::array<double, 4>& psi_rows, double du,
                                                   double nu, double nu_u, double nu_uu) {
  // Nodes at u = U - j du; derivatives in u at u = U.
  const double nodes[4] = {0.0, -du, -2 * du, -3 * du};
  Eigen::MatrixXd w = fd_weights(0.0, nodes, 3);
  double d[4] = {0, 0, 0, 0};
  for (int k = 1; k <= 3; ++k)
    for (int j = 0; j < 4; ++j) d[k] += w(j, k) * psi_rows[j];
  double y1 = d[1] / nu;
  double y2 = (d[2] - nu_u * y1) / (nu * nu);
  double y3 = (d[3] - nu_uu * y1 - 3.0 * nu * nu_u * y2) / (nu * nu * nu);
  return {y1, y2, y3};
}

}  // namespace rnwave
