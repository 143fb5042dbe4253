#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "lcmf/kernel.hpp"
#include "lcmf/moment_state.hpp"
#include "lcmf/point_group.hpp"
#include "lcmf/types.hpp"

namespace lcmf {

/// Frobenius norm of Q1 Q2 - Q2 Q1; zero exactly when the tensors share an
/// eigenframe.
template <typename Scalar>
Scalar commutator_norm(const Mat3<Scalar>& q1, const Mat3<Scalar>& q2) {
  return (q1 * q2 - q2 * q1).norm();
}

/// Rotation R such that both R Q1 R^T and R Q2 R^T are diagonal within tol,
/// or nullopt when none exists. Q1 is diagonalized first; inside its
/// degenerate eigenspaces (gap below degeneracy_gap) the restriction of Q2
/// is diagonalized as well, which makes the isotropic and uniaxial cases
/// well posed.
inline std::optional<Mat3d> shared_eigenframe(const Mat3d& q1, const Mat3d& q2, double tol,
                                              double degeneracy_gap = 1e-8) {
  Eigen::SelfAdjointEigenSolver<Mat3d> es(q1);
  Vec3d lam = es.eigenvalues();
  Mat3d v = es.eigenvectors(); // columns

  int start = 0;
  while (start < 3) {
    int end = start + 1;
    while (end < 3 && lam[end] - lam[end - 1] < degeneracy_gap) ++end;
    const int dim = end - start;
    if (dim > 1) {
      const Eigen::MatrixXd block = v.middleCols(start, dim);
      const Eigen::MatrixXd restricted = block.transpose() * q2 * block;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sub(restricted);
      v.middleCols(start, dim) = block * sub.eigenvectors();
    }
    start = end;
  }
  if (v.determinant() < 0.0) v.col(2) = -v.col(2);

  const Mat3d r = v.transpose();
  const auto offdiag = [](const Mat3d& m) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (i != j) worst = std::max(worst, std::abs(m(i, j)));
    return worst;
  };
  if (offdiag(r * q1 * r.transpose()) <= tol && offdiag(r * q2 * r.transpose()) <= tol)
    return r;
  return std::nullopt;
}

enum class PhaseLabel { Isotropic, Uniaxial, Biaxial, PolarUniaxial, PolarBiaxial, Unclassified };

inline const char* to_string(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::Isotropic: return "isotropic";
    case PhaseLabel::Uniaxial: return "uniaxial";
    case PhaseLabel::Biaxial: return "biaxial";
    case PhaseLabel::PolarUniaxial: return "polar-uniaxial";
    case PhaseLabel::PolarBiaxial: return "polar-biaxial";
    case PhaseLabel::Unclassified: return "unclassified";
  }
  return "?";
}

/// Descriptive phase label from eigenvalue degeneracies of Q1, Q2 and |p|.
inline PhaseLabel detect_phase(const MomentState& s, double tol = 1e-6) {
  const Vec3d e1 = sorted_eigenvalues(s.q1);
  const Vec3d e2 = sorted_eigenvalues(s.q2);
  const bool polar = s.p.norm() > tol;

  const auto isotropic = [&](const Vec3d& e) {
    return (e.array() - 1.0 / 3.0).abs().maxCoeff() <= tol;
  };
  const auto exactly_two_equal = [&](const Vec3d& e) {
    const bool low = e[1] - e[0] <= tol, high = e[2] - e[1] <= tol;
    return low != high;
  };
  const auto all_distinct = [&](const Vec3d& e) {
    return e[1] - e[0] > tol && e[2] - e[1] > tol;
  };

  if (!polar && isotropic(e1) && isotropic(e2)) return PhaseLabel::Isotropic;
  if (exactly_two_equal(e1)) return polar ? PhaseLabel::PolarUniaxial : PhaseLabel::Uniaxial;
  if (all_distinct(e1) || all_distinct(e2))
    return polar ? PhaseLabel::PolarBiaxial : PhaseLabel::Biaxial;
  return PhaseLabel::Unclassified;
}

/// True when p vanishes or is an eigenvector of both Q1 and Q2 within tol
/// (measured by the component of Q_i p-hat orthogonal to p-hat).
inline bool p_alignment(const MomentState& s, double tol) {
  if (s.p.norm() <= tol) return true;
  const Vec3d ph = s.p.normalized();
  for (const Mat3d* q : {&s.q1, &s.q2}) {
    const Vec3d image = (*q) * ph;
    if ((image - image.dot(ph) * ph).norm() > tol) return false;
  }
  return true;
}

/// Symmetry diagnostics attached to a converged solution.
struct SymmetryReport {
  double commutator = 0.0;
  std::optional<Mat3d> shared_frame;
  bool p_aligned = true;
  Vec3d eigvals_q1 = Vec3d::Constant(1.0 / 3.0); // ascending
  Vec3d eigvals_q2 = Vec3d::Constant(1.0 / 3.0);
  PhaseLabel phase_label = PhaseLabel::Isotropic;
};

inline SymmetryReport analyze_symmetry(const MomentState& s, double frame_tol = 1e-8,
                                       double phase_tol = 1e-6) {
  SymmetryReport rep;
  rep.commutator = commutator_norm(s.q1, s.q2);
  rep.shared_frame = shared_eigenframe(s.q1, s.q2, frame_tol);
  rep.p_aligned = p_alignment(s, frame_tol);
  rep.eigvals_q1 = sorted_eigenvalues(s.q1);
  rep.eigvals_q2 = sorted_eigenvalues(s.q2);
  rep.phase_label = detect_phase(s, phase_tol);
  return rep;
}

enum class TheoremBranch { NotNegativeDefinite, EpsilonBound, EpsilonBoundSwapped, None };

inline const char* to_string(TheoremBranch b) {
  switch (b) {
    case TheoremBranch::NotNegativeDefinite: return "not-negative-definite";
    case TheoremBranch::EpsilonBound: return "epsilon-bound";
    case TheoremBranch::EpsilonBoundSwapped: return "epsilon-bound-swapped";
    case TheoremBranch::None: return "none";
  }
  return "?";
}

/// Outcome of the shared-eigenframe condition test on the coefficients:
/// either the quadratic form c2 x^2 + 2 c4 xy + c3 y^2 is not negative
/// definite, or it is but epsilon = c4^2/c3 - c2 <= 2 in one of the two
/// orientations (c2 and c3 may be switched). epsilon carries the branch's
/// value; on the not-negative-definite branch it is reported whenever
/// well defined (c3 != 0).
struct TheoremVerdict {
  bool applies = false;
  TheoremBranch branch = TheoremBranch::None;
  std::optional<double> epsilon;
  bool c1_ok = false;
};

inline TheoremVerdict theorem1_applies(const KernelCoeffsd& k) {
  TheoremVerdict v;
  v.c1_ok = k.c1 >= -1.0;
  const double det = k.c2 * k.c3 - k.c4 * k.c4;
  const bool negative_definite = k.c2 < 0.0 && det > 0.0;
  if (!negative_definite) {
    v.branch = TheoremBranch::NotNegativeDefinite;
    if (k.c3 != 0.0) v.epsilon = k.c4 * k.c4 / k.c3 - k.c2;
  } else {
    // Negative definiteness forces c3 < 0, so both divisions are safe.
    const double eps = k.c4 * k.c4 / k.c3 - k.c2;
    const double eps_swapped = k.c4 * k.c4 / k.c2 - k.c3;
    if (eps <= 2.0) {
      v.branch = TheoremBranch::EpsilonBound;
      v.epsilon = eps;
    } else if (eps_swapped <= 2.0) {
      v.branch = TheoremBranch::EpsilonBoundSwapped;
      v.epsilon = eps_swapped;
    } else {
      v.branch = TheoremBranch::None;
      v.epsilon = eps;
    }
  }
  v.applies = v.c1_ok && v.branch != TheoremBranch::None;
  return v;
}

/// Largest interaction strength c keeping the epsilon bound satisfied for
/// reference coefficients at c = 1 (equivalently the smallest c at which
/// both epsilon orientations reach 2). Infinite where c4^2 >= c2 c3, i.e.
/// where the bound never binds because the form is not negative definite.
inline double c_min(double c2_0, double c3_0, double c4_0) {
  const double det = c2_0 * c3_0 - c4_0 * c4_0;
  if (det <= 0.0) return std::numeric_limits<double>::infinity();
  return std::max(-2.0 * c2_0, -2.0 * c3_0) / det;
}

/// Tensor form of the symmetry-transmission condition for a given molecular
/// group:
///   D_inf_h: Q1 has two equal eigenvalues;
///   C_inf_v: additionally p lies along the distinct axis;
///   D_2h:    Q1 and Q2 share an eigenframe;
///   C_2v:    shared eigenframe with p along a frame axis.
inline bool lemma_condition_check(const MomentState& s, PointGroupTag tag, double tol) {
  const auto two_equal = [&](const Mat3d& q) {
    const Vec3d e = sorted_eigenvalues(q);
    return e[1] - e[0] <= tol || e[2] - e[1] <= tol;
  };
  switch (tag) {
    case PointGroupTag::D_inf_h:
      return two_equal(s.q1);
    case PointGroupTag::C_inf_v: {
      if (!two_equal(s.q1)) return false;
      if (s.p.norm() <= tol) return true;
      // p must sit on the axis of the non-degenerate eigenvalue; being an
      // eigenvector of Q1 is equivalent for an axisymmetric spectrum.
      return p_alignment(s, tol);
    }
    case PointGroupTag::D_2h:
      return shared_eigenframe(s.q1, s.q2, tol).has_value();
    case PointGroupTag::C_2v:
      return shared_eigenframe(s.q1, s.q2, tol).has_value() && p_alignment(s, tol);
  }
  throw std::invalid_argument("lemma_condition_check: unknown group tag");
}

} // namespace lcmf
