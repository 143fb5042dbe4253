#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lcmf/euler.hpp"
#include "lcmf/types.hpp"

namespace lcmf {

/// Gauss-Legendre nodes and weights on [-1,1]. Newton iteration on the
/// Legendre recurrence; the node set is mirrored to be exactly symmetric.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Eigen::VectorXd x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  return {x, w};
}

/// Quadrature over SO(3) against the uniform probability measure
/// dnu = sin(alpha) dalpha dbeta dgamma / (8 pi^2): Gauss-Legendre in
/// t = cos(alpha), equispaced (trapezoidal on the periodic circle) in beta
/// and gamma. Weights are probability masses and sum to 1.
struct QuadratureGrid {
  std::vector<Mat3d> rotations; // row i of each node = body axis m_i
  Eigen::VectorXd weights;
  int n_alpha = 0, n_beta = 0, n_gamma = 0;

  Eigen::Index size() const { return weights.size(); }
};

inline QuadratureGrid build_grid(int n_alpha, int n_beta, int n_gamma) {
  if (n_alpha < 2 || n_beta < 2 || n_gamma < 2)
    throw std::invalid_argument("build_grid: all sizes must be >= 2");
  const auto [t, wt] = gauss_legendre(n_alpha);

  QuadratureGrid grid;
  grid.n_alpha = n_alpha;
  grid.n_beta = n_beta;
  grid.n_gamma = n_gamma;
  const Eigen::Index n = Eigen::Index(n_alpha) * n_beta * n_gamma;
  grid.rotations.reserve(n);
  grid.weights.resize(n);

  const double wb = 1.0 / n_beta, wg = 1.0 / n_gamma;
  Eigen::Index idx = 0;
  for (int ia = 0; ia < n_alpha; ++ia) {
    const double alpha = std::acos(t[ia]);
    const double wa = 0.5 * wt[ia];
    for (int ib = 0; ib < n_beta; ++ib) {
      const double beta = 2.0 * std::numbers::pi * ib / n_beta;
      for (int ig = 0; ig < n_gamma; ++ig) {
        const double gamma = 2.0 * std::numbers::pi * ig / n_gamma;
        grid.rotations.push_back(euler_to_rotation(EulerAnglesd(alpha, beta, gamma)));
        grid.weights[idx++] = wa * wb * wg;
      }
    }
  }
  return grid;
}

/// Weighted sum of per-node values; the discrete version of the dnu integral.
inline double integrate(const QuadratureGrid& grid, Eigen::Ref<const Eigen::VectorXd> values) {
  if (values.size() != grid.size())
    throw std::invalid_argument("integrate: values length does not match node count");
  return grid.weights.dot(values);
}

/// Evaluate a scalar function of the orientation on every node.
template <typename F>
Eigen::VectorXd evaluate_on_grid(const QuadratureGrid& grid, F&& f) {
  Eigen::VectorXd values(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) values[i] = f(grid.rotations[size_t(i)]);
  return values;
}

} // namespace lcmf
