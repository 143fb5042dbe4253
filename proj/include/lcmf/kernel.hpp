#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <variant>

#include "lcmf/types.hpp"

namespace lcmf {

/// Coefficients of the quadratic pair kernel
///   c G(Pbar) = c1 p11 + c2 p11^2 + c3 p22^2 + c4 (p12^2 + p21^2),
/// with p_ij the entries of the relative orientation. The named molecular
/// kernels are sub-cases: Maier-Saupe (c1=c3=c4=0), polar rod (c3=c4=0),
/// biaxial D2h (c1=0), and the general C2v form.
template <typename Scalar>
struct KernelCoeffs {
  Scalar c1{}, c2{}, c3{}, c4{};
};

using KernelCoeffsd = KernelCoeffs<double>;

template <typename Scalar>
Scalar eval_kernel(const KernelCoeffs<Scalar>& k, const Mat3<Scalar>& pbar) {
  const Scalar p11 = pbar(0, 0), p22 = pbar(1, 1);
  const Scalar p12 = pbar(0, 1), p21 = pbar(1, 0);
  return k.c1 * p11 + k.c2 * p11 * p11 + k.c3 * p22 * p22 +
         k.c4 * (p12 * p12 + p21 * p21);
}

template <typename Scalar>
Scalar discriminant(const KernelCoeffs<Scalar>& k) {
  return k.c4 * k.c4 - k.c2 * k.c3;
}

// Molecular geometries. Lengths are in the paper's units; 'concentration'
// is the overall interaction strength multiplying every coefficient.
struct Cuboid {
  double width;   // W
  double breadth; // B
  double length;  // L
};

struct Spherocuboid {
  double width, breadth, length;
  double diameter; // D of the inflating sphere
};

struct Spherotriangle {
  double side;       // l, twice the lateral/arm length
  double apex_angle; // theta in (0, pi)
  double diameter;   // D
};

using MoleculeGeometry = std::variant<Cuboid, Spherocuboid, Spherotriangle>;

namespace detail {

inline void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0)) throw std::invalid_argument(std::string(name) + " must be >= 0");
}

inline void require_positive(double v, const char* name) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(name) + " must be > 0");
}

} // namespace detail

/// Straley's interpolated excluded-volume coefficients for hard cuboids.
inline KernelCoeffsd straley_cuboid_coeffs(const Cuboid& g, double concentration) {
  detail::require_nonnegative(g.width, "width");
  detail::require_nonnegative(g.breadth, "breadth");
  detail::require_nonnegative(g.length, "length");
  detail::require_positive(concentration, "concentration");
  const double w = g.width, b = g.breadth, l = g.length, c = concentration;
  const double common = -b * (w * w + l * l) - w * (l * l + b * b) + 4.0 * w * b * l;
  const double split = (l * l - b * w) * (b - w);
  KernelCoeffsd k;
  k.c1 = 0.0;
  k.c2 = c * (common - split);
  k.c3 = c * (common + split);
  k.c4 = c * (-b * (w * w + l * l) - w * (l * l + b * b) + l * (w * w + b * b) + 2.0 * w * b * l);
  return k;
}

/// Projection coefficients for spherocuboids (cuboid inflated by a sphere of
/// diameter D); reduces to 15/16 of the Straley values at D = 0.
inline KernelCoeffsd spherocuboid_coeffs(const Spherocuboid& g, double concentration) {
  detail::require_nonnegative(g.width, "width");
  detail::require_nonnegative(g.breadth, "breadth");
  detail::require_nonnegative(g.length, "length");
  detail::require_nonnegative(g.diameter, "diameter");
  detail::require_positive(concentration, "concentration");
  const double w = g.width, b = g.breadth, l = g.length, d = g.diameter;
  const double c = concentration;
  // Written as 15/16 of the Straley bracket plus the diameter correction so
  // that D = 0 reproduces 15/16 of the cuboid coefficients bit for bit.
  const double common = -b * (w * w + l * l) - w * (l * l + b * b) + 4.0 * w * b * l;
  const double split = (l * l - b * w) * (b - w);
  const double correction = 15.0 / 16.0 * c * 0.5 * std::numbers::pi * d;
  KernelCoeffsd k;
  k.c1 = 0.0;
  k.c2 = 15.0 / 16.0 * (c * (common - split)) - correction * ((l - b) * (l - b));
  k.c3 = 15.0 / 16.0 * (c * (common + split)) - correction * ((l - w) * (l - w));
  k.c4 = 15.0 / 16.0 *
             (c * (-b * (w * w + l * l) - w * (l * l + b * b) + l * (w * w + b * b) +
                   2.0 * w * b * l)) -
         correction * ((l - w) * (l - b));
  return k;
}

/// Projection coefficients for isosceles spherotriangles. The polar
/// coefficient multiplies an angular factor the source leaves unspecified,
/// so c1 is taken from the caller (default 0).
inline KernelCoeffsd spherotriangle_coeffs(const Spherotriangle& g, double concentration,
                                           double c1_value = 0.0) {
  detail::require_nonnegative(g.side, "side");
  detail::require_nonnegative(g.diameter, "diameter");
  detail::require_positive(concentration, "concentration");
  if (!(g.apex_angle > 0.0 && g.apex_angle < std::numbers::pi))
    throw std::invalid_argument("apex_angle must lie in (0, pi)");
  if (!(c1_value >= 0.0)) throw std::invalid_argument("c1_value must be >= 0");
  const double l = g.side, d = g.diameter, c = concentration;
  const double st = std::sin(g.apex_angle);
  const double sh = std::sin(0.5 * g.apex_angle);
  const double ch = std::cos(0.5 * g.apex_angle);
  const double l3 = 15.0 / 64.0 * c * l * l * l;
  const double l2d = 15.0 * std::numbers::pi / 128.0 * c * l * l * d;
  KernelCoeffsd k;
  k.c1 = c1_value;
  k.c2 = -l3 * st * ch * ch - l2d * ch * ch * ch * ch;
  k.c3 = -l3 * st * sh * (1.0 + sh) - l2d * sh * sh * (1.0 + sh) * (1.0 + sh);
  k.c4 = -0.5 * l3 * st * (1.0 + sh) - l2d * ch * ch * sh * (1.0 + sh);
  return k;
}

/// Coefficients for any supported geometry; c1_value only affects
/// spherotriangles (the other shapes are apolar, c1 = 0).
inline KernelCoeffsd kernel_coeffs_for(const MoleculeGeometry& geometry, double concentration,
                                       double c1_value = 0.0) {
  return std::visit(
      [&](const auto& g) -> KernelCoeffsd {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, Cuboid>) {
          return straley_cuboid_coeffs(g, concentration);
        } else if constexpr (std::is_same_v<G, Spherocuboid>) {
          return spherocuboid_coeffs(g, concentration);
        } else {
          return spherotriangle_coeffs(g, concentration, c1_value);
        }
      },
      geometry);
}

} // namespace lcmf
