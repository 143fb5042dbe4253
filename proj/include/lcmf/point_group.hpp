#pragma once

#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcmf/euler.hpp"
#include "lcmf/types.hpp"

namespace lcmf {

/// Molecular point groups handled by the kernel family, each written with
/// the rotational axis along the first body axis.
enum class PointGroupTag { D_inf_h, C_inf_v, D_2h, C_2v };

inline const char* to_string(PointGroupTag tag) {
  switch (tag) {
    case PointGroupTag::D_inf_h: return "D_inf_h";
    case PointGroupTag::C_inf_v: return "C_inf_v";
    case PointGroupTag::D_2h: return "D_2h";
    case PointGroupTag::C_2v: return "C_2v";
  }
  return "?";
}

/// Orthogonal transformation with its parity: +1 proper (in H+), -1 improper
/// (in H-).
struct GroupElement {
  Mat3d matrix;
  int parity;
};

/// Orientation frame that may be left-handed; such frames appear only
/// transiently when improper elements act on a rotation.
struct Frame {
  Mat3d matrix; // row i = body axis m_i
  bool right_handed;
};

inline const Mat3d kR1 = Vec3d(1, -1, -1).asDiagonal();
inline const Mat3d kR2 = Vec3d(-1, 1, -1).asDiagonal();
inline const Mat3d kR3 = Vec3d(-1, -1, 1).asDiagonal();
inline const Mat3d kJ3 = Vec3d(1, 1, -1).asDiagonal();

namespace detail {

// Proper/improper branch matrices of the axisymmetric groups at angle theta.
inline Mat3d axis_rotation(double theta, bool flip) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double sign = flip ? -1.0 : 1.0;
  Mat3d m;
  m << sign, 0, 0,
      0, sign * c, -s,
      0, sign * s, c;
  return m;
}

inline Mat3d axis_reflection(double theta, bool flip) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double sign = flip ? -1.0 : 1.0;
  Mat3d m;
  m << sign, 0, 0,
      0, sign * c, s,
      0, sign * s, -c;
  return m;
}

} // namespace detail

/// Enumerate group elements. Discrete groups return their full element list
/// (n_theta is ignored); the axisymmetric groups are sampled at
/// theta = 2 pi k / n_theta on every sign branch.
inline std::vector<GroupElement> group_elements(PointGroupTag tag, int n_theta = 8) {
  std::vector<GroupElement> out;
  switch (tag) {
    case PointGroupTag::D_2h:
      for (const Mat3d& r : {Mat3d(Mat3d::Identity()), kR1, kR2, kR3}) {
        out.push_back({r, +1});
      }
      for (const Mat3d& r : {Mat3d(Mat3d::Identity()), kR1, kR2, kR3}) {
        out.push_back({Mat3d(kJ3 * r), -1});
      }
      return out;
    case PointGroupTag::C_2v:
      out.push_back({Mat3d::Identity(), +1});
      out.push_back({kR1, +1});
      out.push_back({kJ3, -1});
      out.push_back({Mat3d(kJ3 * kR1), -1});
      return out;
    case PointGroupTag::D_inf_h:
    case PointGroupTag::C_inf_v: {
      if (n_theta < 1) throw std::invalid_argument("group_elements: n_theta must be >= 1");
      const bool dihedral = tag == PointGroupTag::D_inf_h;
      for (int k = 0; k < n_theta; ++k) {
        const double theta = 2.0 * std::numbers::pi * k / n_theta;
        out.push_back({detail::axis_rotation(theta, false), +1});
        out.push_back({detail::axis_reflection(theta, false), -1});
        if (dihedral) {
          out.push_back({detail::axis_rotation(theta, true), +1});
          out.push_back({detail::axis_reflection(theta, true), -1});
        }
      }
      return out;
    }
  }
  throw std::invalid_argument("group_elements: unknown group tag");
}

/// Random element of the requested parity; continuous groups draw theta
/// uniformly, discrete groups draw uniformly from their element list.
template <typename Rng>
GroupElement random_group_element(PointGroupTag tag, int parity, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (tag) {
    case PointGroupTag::D_inf_h: {
      const double theta = 2.0 * std::numbers::pi * unit(rng);
      const bool flip = unit(rng) < 0.5;
      return parity > 0 ? GroupElement{detail::axis_rotation(theta, flip), +1}
                        : GroupElement{detail::axis_reflection(theta, flip), -1};
    }
    case PointGroupTag::C_inf_v: {
      const double theta = 2.0 * std::numbers::pi * unit(rng);
      return parity > 0 ? GroupElement{detail::axis_rotation(theta, false), +1}
                        : GroupElement{detail::axis_reflection(theta, false), -1};
    }
    default: {
      const auto all = group_elements(tag);
      std::vector<GroupElement> same;
      for (const auto& e : all)
        if (e.parity == parity) same.push_back(e);
      std::uniform_int_distribution<size_t> pick(0, same.size() - 1);
      return same[pick(rng)];
    }
  }
}

/// Rotate a molecule about its own frame: the new axes are
/// m_i' = sum_k T_ki m_k, i.e. the frame matrix T^T P in row storage.
inline Frame body_transform(const Mat3d& p, const GroupElement& t) {
  return {Mat3d(t.matrix.transpose() * p), t.parity > 0};
}

/// Rotate a molecule about the space frame: every axis maps m_i -> T m_i,
/// i.e. the frame matrix P T^T in row storage.
inline Frame space_transform(const GroupElement& t, const Mat3d& p) {
  return {Mat3d(p * t.matrix.transpose()), t.parity > 0};
}

struct InvarianceReport {
  bool passed;
  double max_violation;
};

/// Test G(Pbar) = G(T Pbar T') over random relative orientations and pairs
/// (T, T') of equal parity. Discrete groups are swept over all same-parity
/// ordered pairs per sampled Pbar; the axisymmetric groups use random theta
/// draws on every branch.
template <typename KernelEval>
InvarianceReport check_kernel_invariance(KernelEval&& kernel, PointGroupTag tag,
                                         int n_samples, double tol,
                                         std::uint64_t seed = 12345) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;

  const bool discrete = tag == PointGroupTag::D_2h || tag == PointGroupTag::C_2v;
  if (discrete) {
    const auto all = group_elements(tag);
    const int n_pbar = std::max(1, n_samples / int(all.size() * all.size() / 2));
    for (int s = 0; s < n_pbar; ++s) {
      const Mat3d pbar = random_rotation(rng);
      const double g0 = kernel(pbar);
      for (const auto& t : all)
        for (const auto& t2 : all) {
          if (t.parity != t2.parity) continue;
          const Mat3d moved = t.matrix * pbar * t2.matrix;
          worst = std::max(worst, std::abs(g0 - kernel(moved)));
        }
    }
  } else {
    for (int s = 0; s < n_samples; ++s) {
      const Mat3d pbar = random_rotation(rng);
      const double g0 = kernel(pbar);
      const int parity = (s % 2 == 0) ? +1 : -1;
      const GroupElement t = random_group_element(tag, parity, rng);
      const GroupElement t2 = random_group_element(tag, parity, rng);
      const Mat3d moved = t.matrix * pbar * t2.matrix;
      worst = std::max(worst, std::abs(g0 - kernel(moved)));
    }
  }
  return {worst <= tol, worst};
}

} // namespace lcmf
