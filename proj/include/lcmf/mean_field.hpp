#pragma once

#include <cmath>
#include <stdexcept>

#include "lcmf/kernel.hpp"
#include "lcmf/moment_state.hpp"
#include "lcmf/quadrature.hpp"
#include "lcmf/types.hpp"

namespace lcmf {

/// Signals non-finite values in the mean-field potential (pathologically
/// large coefficients or moments).
struct numerical_range_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Orientational one-body density f(P) on a grid, normalized so that the
/// quadrature of f equals 1. log_values stores log f exactly even where
/// f underflows.
struct DensityField {
  Eigen::VectorXd values;
  Eigen::VectorXd log_values;
  double z = 1.0; // partition constant, quadrature of exp(-W)
};

/// Per-grid monomial tables: first two body axes and their symmetric
/// products, laid out so every potential evaluation and moment update is a
/// dense matrix-vector product.
struct PotentialTables {
  Eigen::MatrixXd m1; // N x 3, components of m1
  Eigen::MatrixXd s1; // N x 6, products of m1: (11, 22, 33, 12, 13, 23)
  Eigen::MatrixXd s2; // N x 6, same products of m2

  static PotentialTables build(const QuadratureGrid& grid) {
    PotentialTables t;
    const Eigen::Index n = grid.size();
    t.m1.resize(n, 3);
    t.s1.resize(n, 6);
    t.s2.resize(n, 6);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Mat3d& r = grid.rotations[size_t(i)];
      const Vec3d m1 = r.row(0), m2 = r.row(1);
      t.m1.row(i) = m1;
      t.s1.row(i) << m1[0] * m1[0], m1[1] * m1[1], m1[2] * m1[2],
          m1[0] * m1[1], m1[0] * m1[2], m1[1] * m1[2];
      t.s2.row(i) << m2[0] * m2[0], m2[1] * m2[1], m2[2] * m2[2],
          m2[0] * m2[1], m2[0] * m2[2], m2[1] * m2[2];
    }
    return t;
  }
};

namespace detail {

// Pack a symmetric matrix for contraction against the s-tables; the mixed
// products appear once, so off-diagonal entries are doubled.
inline Eigen::Matrix<double, 6, 1> contraction_vector(const Mat3d& a) {
  Eigen::Matrix<double, 6, 1> v;
  v << a(0, 0), a(1, 1), a(2, 2), 2.0 * a(0, 1), 2.0 * a(0, 2), 2.0 * a(1, 2);
  return v;
}

inline Mat3d symmetric_from_products(const Eigen::Matrix<double, 6, 1>& v) {
  Mat3d q;
  q << v[0], v[3], v[4],
      v[3], v[1], v[5],
      v[4], v[5], v[2];
  return q;
}

} // namespace detail

/// Potential of the generic one-body form v.m1 + A : m1 m1 + B : m2 m2 on
/// every grid node.
inline Eigen::VectorXd potential_on_grid(const Vec3d& v, const Mat3d& a, const Mat3d& b,
                                         const PotentialTables& tables) {
  return tables.m1 * v + tables.s1 * detail::contraction_vector(a) +
         tables.s2 * detail::contraction_vector(b);
}

/// Mean-field potential W(P) = c1 p.m1 + (c2 Q1 + c4 Q2):m1m1
/// + (c3 Q2 + c4 Q1):m2m2 at a single orientation.
inline double mean_field_potential(const KernelCoeffsd& k, const MomentState& s, const Mat3d& p) {
  const Vec3d m1 = p.row(0), m2 = p.row(1);
  const Mat3d a = k.c2 * s.q1 + k.c4 * s.q2;
  const Mat3d b = k.c3 * s.q2 + k.c4 * s.q1;
  return k.c1 * s.p.dot(m1) + m1.dot(a * m1) + m2.dot(b * m2);
}

/// Mean-field potential on every grid node.
inline Eigen::VectorXd mean_field_potential(const KernelCoeffsd& k, const MomentState& s,
                                            const PotentialTables& tables) {
  return potential_on_grid(k.c1 * s.p, k.c2 * s.q1 + k.c4 * s.q2, k.c3 * s.q2 + k.c4 * s.q1,
                           tables);
}

/// Normalized Boltzmann density for a precomputed potential. The potential
/// is shifted by its grid minimum before exponentiation; the density is
/// invariant under the shift since the partition constant rescales.
inline DensityField density_from_potential(const QuadratureGrid& grid,
                                           const Eigen::VectorXd& w) {
  if (!w.allFinite())
    throw numerical_range_error("mean-field potential is not finite");
  DensityField f;
  const double w_min = w.minCoeff();
  const Eigen::VectorXd shifted = w.array() - w_min;
  const Eigen::VectorXd boltz = (-shifted.array()).exp();
  const double z_shifted = grid.weights.dot(boltz);
  f.values = boltz / z_shifted;
  f.log_values = -shifted.array() - std::log(z_shifted);
  f.z = z_shifted * std::exp(-w_min);
  return f;
}

inline DensityField boltzmann_density(const KernelCoeffsd& k, const MomentState& s,
                                      const QuadratureGrid& grid, const PotentialTables& tables) {
  return density_from_potential(grid, mean_field_potential(k, s, tables));
}

inline DensityField boltzmann_density(const KernelCoeffsd& k, const MomentState& s,
                                      const QuadratureGrid& grid) {
  return boltzmann_density(k, s, grid, PotentialTables::build(grid));
}

/// Angular moments p, Q1, Q2 of a density by grid quadrature. The Q's are
/// assembled from the symmetric product tables, so they are exactly
/// symmetric.
inline MomentState compute_moments(const DensityField& f, const QuadratureGrid& grid,
                                   const PotentialTables& tables) {
  const Eigen::VectorXd wf = grid.weights.cwiseProduct(f.values);
  MomentState s;
  s.p = tables.m1.transpose() * wf;
  s.q1 = detail::symmetric_from_products(tables.s1.transpose() * wf);
  s.q2 = detail::symmetric_from_products(tables.s2.transpose() * wf);
  return s;
}

inline MomentState compute_moments(const DensityField& f, const QuadratureGrid& grid) {
  return compute_moments(f, grid, PotentialTables::build(grid));
}

/// One application of the self-consistency map: moments of the Boltzmann
/// density generated by the current state.
inline MomentState fixed_point_map(const KernelCoeffsd& k, const MomentState& s,
                                   const QuadratureGrid& grid, const PotentialTables& tables) {
  return compute_moments(boltzmann_density(k, s, grid, tables), grid, tables);
}

inline MomentState fixed_point_map(const KernelCoeffsd& k, const MomentState& s,
                                   const QuadratureGrid& grid) {
  const PotentialTables tables = PotentialTables::build(grid);
  return fixed_point_map(k, s, grid, tables);
}

/// Free energy F = int f log f dnu
///   + (c1 |p|^2 + c2 |Q1|^2 + c3 |Q2|^2 + 2 c4 Q1:Q2) / 2,
/// with f the Boltzmann density of the state. The entropy integrand is
/// evaluated from the stored log-density, so underflowed nodes contribute 0.
inline double free_energy(const KernelCoeffsd& k, const MomentState& s, const DensityField& f,
                          const QuadratureGrid& grid) {
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double fi = f.values[i];
    if (fi > 0.0) entropy += grid.weights[i] * fi * f.log_values[i];
  }
  const double quadratic = k.c1 * s.p.squaredNorm() + k.c2 * s.q1.squaredNorm() +
                           k.c3 * s.q2.squaredNorm() +
                           2.0 * k.c4 * s.q1.cwiseProduct(s.q2).sum();
  return entropy + 0.5 * quadratic;
}

} // namespace lcmf
