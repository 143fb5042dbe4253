#pragma once

#include <Eigen/Eigenvalues>

#include "lcmf/types.hpp"

namespace lcmf {

/// Order parameters of a homogeneous phase: the polar moment p = <m1> and
/// the second moments Q1 = <m1 m1>, Q2 = <m2 m2>. Both Q's are symmetric,
/// positive semidefinite, trace one, and I - Q1 - Q2 = <m3 m3> is again
/// positive semidefinite.
struct MomentState {
  Vec3d p = Vec3d::Zero();
  Mat3d q1 = Mat3d::Identity() / 3.0;
  Mat3d q2 = Mat3d::Identity() / 3.0;

  static MomentState isotropic() { return {}; }
};

/// Combined Euclidean/Frobenius distance used for residuals.
inline double state_distance(const MomentState& a, const MomentState& b) {
  return std::sqrt((a.p - b.p).squaredNorm() + (a.q1 - b.q1).squaredNorm() +
                   (a.q2 - b.q2).squaredNorm());
}

inline Vec3d sorted_eigenvalues(const Mat3d& sym) {
  Eigen::SelfAdjointEigenSolver<Mat3d> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues(); // ascending
}

/// Check the MomentState invariants within the given tolerances.
inline bool satisfies_moment_invariants(const MomentState& s, double tol_sym = 1e-12,
                                        double tol_psd = 1e-10, double tol_trace = 1e-10) {
  const auto symmetric = [&](const Mat3d& q) {
    return (q - q.transpose()).cwiseAbs().maxCoeff() <= tol_sym;
  };
  if (!symmetric(s.q1) || !symmetric(s.q2)) return false;
  if (std::abs(s.q1.trace() - 1.0) > tol_trace) return false;
  if (std::abs(s.q2.trace() - 1.0) > tol_trace) return false;
  if (sorted_eigenvalues(s.q1)[0] < -tol_psd) return false;
  if (sorted_eigenvalues(s.q2)[0] < -tol_psd) return false;
  const Mat3d q3 = Mat3d::Identity() - s.q1 - s.q2;
  if (sorted_eigenvalues(q3)[0] < -tol_psd) return false;
  return s.p.norm() <= 1.0 + tol_psd;
}

/// Rotation-invariant fingerprint of a solution: sorted spectra, |p| and the
/// free energy. Two solutions equal up to a global rotation share it.
struct SolutionSignature {
  Vec3d eig_q1; // ascending
  Vec3d eig_q2;
  double p_norm;
  double free_energy;
};

inline SolutionSignature make_signature(const MomentState& s, double free_energy) {
  return {sorted_eigenvalues(s.q1), sorted_eigenvalues(s.q2), s.p.norm(), free_energy};
}

inline bool signature_close(const SolutionSignature& a, const SolutionSignature& b,
                            double tol = 1e-6) {
  return (a.eig_q1 - b.eig_q1).cwiseAbs().maxCoeff() <= tol &&
         (a.eig_q2 - b.eig_q2).cwiseAbs().maxCoeff() <= tol &&
         std::abs(a.p_norm - b.p_norm) <= tol && std::abs(a.free_energy - b.free_energy) <= tol;
}

} // namespace lcmf
