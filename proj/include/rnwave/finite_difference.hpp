#pragma once

#include <Eigen/Core>
#include <array>
#include <span>

namespace rnwave {

/// Finite-difference weights at x0 for derivatives 0..max_order on arbitrary
/// distinct nodes (Fornberg's recursion). Column k holds the k-th derivative weights.
Eigen::MatrixXd fd_weights(double x0, std::span<const double> nodes, int max_order);

/// d psi / d r at fixed v for every point of a row, using three-point
/// Lagrange stencils in delta = r - r_plus. Neighbours are widened until
/// their separation is at least `floor`, which keeps rows that crowd the
/// horizon below round-off from polluting the derivative.
void radial_derivative(const Eigen::ArrayXd& delta, const Eigen::ArrayXd& psi, double floor,
                       Eigen::ArrayXd& out);

/// Y psi, Y^2 psi, Y^3 psi at the horizon (last index, delta = 0) from
/// `npts` nodes: the horizon plus rows whose delta is nearest to j*h.
/// Entries beyond npts-1 are zero.
std::array<double, 3> transverse_derivatives(const Eigen::ArrayXd& delta, const Eigen::ArrayXd& psi,
                                             double h, int npts = 4);

/// Same quantities from one-sided u-differences on the four rows nearest the
/// horizon combined with the exact nu, d_u nu, d_u^2 nu factors.
/// Arrays are ordered from the horizon outward: index 0 is u = U.
std::array<double, 3> transverse_derivatives_chain(const std::array<double, 4>& psi_rows, double du,
                                                   double nu, double nu_u, double nu_uu);

}  // namespace rnwave
