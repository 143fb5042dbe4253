#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "lcmf/types.hpp"

namespace lcmf {

/// Euler angles (alpha, beta, gamma) with alpha in [0,pi] and beta, gamma in
/// [0,2pi). Construction normalizes arbitrary inputs onto this chart using
/// the identity P(-a, b, g) = P(a, b+pi, g+pi).
template <typename Scalar>
struct EulerAngles {
  Scalar alpha;
  Scalar beta;
  Scalar gamma;

  EulerAngles(Scalar a, Scalar b, Scalar g) {
    constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    a = std::remainder(a, two_pi); // (-pi, pi]
    if (a < Scalar(0)) {
      a = -a;
      b += std::numbers::pi_v<Scalar>;
      g += std::numbers::pi_v<Scalar>;
    }
    alpha = a;
    beta = wrap(b);
    gamma = wrap(g);
  }

private:
  static Scalar wrap(Scalar x) {
    constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
    x = std::fmod(x, two_pi);
    return x < Scalar(0) ? x + two_pi : x;
  }
};

using EulerAnglesd = EulerAngles<double>;

/// Rotation matrix of the Euler chart; row i holds the components of the
/// body axis m_i in the space frame, m(i,j) = m_i . e_j.
template <typename Scalar>
Mat3<Scalar> euler_to_rotation(const EulerAngles<Scalar>& angles) {
  const Scalar ca = std::cos(angles.alpha), sa = std::sin(angles.alpha);
  const Scalar cb = std::cos(angles.beta), sb = std::sin(angles.beta);
  const Scalar cg = std::cos(angles.gamma), sg = std::sin(angles.gamma);
  Mat3<Scalar> m;
  m << ca, -sa * cg, sa * sg,
      sa * cb, ca * cb * cg - sb * sg, -ca * cb * sg - sb * cg,
      sa * sb, ca * sb * cg + cb * sg, -ca * sb * sg + cb * cg;
  return m;
}

/// Relative orientation of two frames: entry (i,j) = m_i . m'_j.
template <typename Scalar>
Mat3<Scalar> relative_orientation(const Mat3<Scalar>& p, const Mat3<Scalar>& p2) {
  return p * p2.transpose();
}

/// True when rows are orthonormal and the determinant is +1 within tol.
template <typename Scalar>
bool is_rotation(const Mat3<Scalar>& m, Scalar tol = Scalar(1e-12)) {
  const Mat3<Scalar> gram = m * m.transpose();
  return (gram - Mat3<Scalar>::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::abs(m.determinant() - Scalar(1)) <= tol;
}

/// Haar-uniform rotation: cos(alpha) uniform on [-1,1], beta and gamma
/// uniform on [0,2pi).
template <typename Rng>
Mat3d random_rotation(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double alpha = std::acos(1.0 - 2.0 * unit(rng));
  const double beta = 2.0 * std::numbers::pi * unit(rng);
  const double gamma = 2.0 * std::numbers::pi * unit(rng);
  return euler_to_rotation(EulerAnglesd(alpha, beta, gamma));
}

/// Haar-uniform unit vector.
template <typename Rng>
Vec3d random_unit_vector(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec3d v;
  do {
    v << gauss(rng), gauss(rng), gauss(rng);
  } while (v.norm() < 1e-8);
  return v.normalized();
}

} // namespace lcmf
