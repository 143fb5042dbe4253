#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lcmf/mean_field.hpp"
#include "lcmf/moment_state.hpp"
#include "lcmf/quadrature.hpp"
#include "lcmf/symmetry.hpp"

namespace lcmf {

struct SolverConfig {
  int n_alpha = 32, n_beta = 32, n_gamma = 32;
  double damping = 0.5; // Picard mixing in (0,1]
  double tol_res = 1e-10;
  int max_iter = 2000;
  int n_starts = 4; // isotropic start plus n_starts-1 random states
  std::uint64_t seed = 0;
  double probe_magnitude = 0.05; // stability probe size
  int n_probes = 4;
  double dedup_tol = 1e-6; // signature tolerance for distinct solutions

  void validate() const {
    if (!(damping > 0.0 && damping <= 1.0))
      throw std::invalid_argument("damping must lie in (0,1]");
    if (!(tol_res > 0.0)) throw std::invalid_argument("tol_res must be > 0");
    if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (n_starts < 1) throw std::invalid_argument("n_starts must be >= 1");
    if (n_probes < 0) throw std::invalid_argument("n_probes must be >= 0");
  }
};

enum class Stability { MinimumCandidate, SaddleCandidate, Unknown };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::MinimumCandidate: return "minimum-candidate";
    case Stability::SaddleCandidate: return "saddle-candidate";
    case Stability::Unknown: return "unknown";
  }
  return "?";
}

struct SolutionReport {
  MomentState state;
  double free_energy = 0.0;
  double residual = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  bool converged = false;
  Stability stability = Stability::Unknown;
  SymmetryReport diagnostics;
  std::string error; // non-empty when the run aborted on a numeric failure
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline MomentState lerp(const MomentState& a, const MomentState& b, double t) {
  MomentState s;
  s.p = (1.0 - t) * a.p + t * b.p;
  s.q1 = (1.0 - t) * a.q1 + t * b.q1;
  s.q2 = (1.0 - t) * a.q2 + t * b.q2;
  return s;
}

template <typename Rng>
Mat3d random_symmetric(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = gauss(rng);
  return m;
}

} // namespace detail

/// Damped Picard iteration on the self-consistency map. Stops when the
/// undamped residual ||Phi(state) - state|| drops to tol_res or max_iter is
/// reached; non-convergence is reported in the flags, not thrown.
inline SolutionReport iterate(const KernelCoeffsd& coeffs, const MomentState& init,
                              const SolverConfig& config, const QuadratureGrid& grid,
                              const PotentialTables& tables) {
  config.validate();
  SolutionReport report;
  MomentState cur = init;
  try {
    DensityField f;
    for (int it = 1; it <= config.max_iter; ++it) {
      f = boltzmann_density(coeffs, cur, grid, tables);
      const MomentState next = compute_moments(f, grid, tables);
      report.iterations = it;
      report.residual = state_distance(next, cur);
      if (report.residual <= config.tol_res) {
        report.converged = true;
        break;
      }
      cur = detail::lerp(cur, next, config.damping);
    }
    if (!report.converged) f = boltzmann_density(coeffs, cur, grid, tables);
    report.state = cur;
    report.free_energy = free_energy(coeffs, cur, f, grid);
    report.diagnostics = analyze_symmetry(cur);
  } catch (const numerical_range_error& e) {
    report.state = cur;
    report.converged = false;
    report.error = e.what();
    report.residual = std::numeric_limits<double>::quiet_NaN();
    report.free_energy = std::numeric_limits<double>::quiet_NaN();
  }
  return report;
}

inline SolutionReport iterate(const KernelCoeffsd& coeffs, const MomentState& init,
                              const SolverConfig& config) {
  const QuadratureGrid grid = build_grid(config.n_alpha, config.n_beta, config.n_gamma);
  return iterate(coeffs, init, config, grid, PotentialTables::build(grid));
}

/// Biased random start: moments of a Boltzmann density whose potential
/// aligns m1 with a random axis, m2 with a second one, and optionally adds
/// a polar pull; all invariants hold by construction.
template <typename Rng>
MomentState random_start(Rng& rng, const QuadratureGrid& grid, const PotentialTables& tables) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double polar = 2.0 * unit(rng);
  const double align1 = 2.0 + 10.0 * unit(rng);
  const double align2 = 12.0 * unit(rng);
  const Vec3d u = random_unit_vector(rng);
  const Mat3d r = random_rotation(rng);
  const Vec3d r1 = r.row(0), r2 = r.row(1);
  const Eigen::VectorXd w = potential_on_grid(-polar * u, -align1 * (r1 * r1.transpose()),
                                              -align2 * (r2 * r2.transpose()), tables);
  return compute_moments(density_from_potential(grid, w), grid, tables);
}

/// Probe a converged solution with random admissible perturbations of
/// magnitude probe_magnitude and re-descend. All probes returning to the
/// same signature: minimum candidate. Any probe reaching lower free energy:
/// saddle candidate. Anything else: unknown.
inline Stability classify_stability(const KernelCoeffsd& coeffs, const SolutionReport& report,
                                    const SolverConfig& config, const QuadratureGrid& grid,
                                    const PotentialTables& tables) {
  if (!report.converged) return Stability::Unknown;
  const SolutionSignature base = make_signature(report.state, report.free_energy);
  const double f_slack = 1e-8 * (1.0 + std::abs(report.free_energy));

  std::mt19937_64 rng(detail::splitmix64(config.seed ^ 0x5354414231ull));
  const Eigen::VectorXd w0 = mean_field_potential(coeffs, report.state, tables);
  bool all_same = true;
  for (int probe = 0; probe < config.n_probes; ++probe) {
    const Vec3d dv = random_unit_vector(rng);
    const Mat3d da = detail::random_symmetric(rng);
    const Mat3d db = detail::random_symmetric(rng);
    const double norm = std::sqrt(dv.squaredNorm() + da.squaredNorm() + db.squaredNorm());
    Eigen::VectorXd w = w0 + (config.probe_magnitude / norm) *
                                 potential_on_grid(dv, da, db, tables);
    MomentState start;
    try {
      start = compute_moments(density_from_potential(grid, w), grid, tables);
    } catch (const numerical_range_error&) {
      all_same = false;
      continue;
    }
    const SolutionReport probed = iterate(coeffs, start, config, grid, tables);
    if (!probed.converged) {
      all_same = false;
      continue;
    }
    if (probed.free_energy < report.free_energy - f_slack) return Stability::SaddleCandidate;
    if (!signature_close(make_signature(probed.state, probed.free_energy), base,
                         config.dedup_tol))
      all_same = false;
  }
  return all_same ? Stability::MinimumCandidate : Stability::Unknown;
}

inline Stability classify_stability(const KernelCoeffsd& coeffs, const SolutionReport& report,
                                    const SolverConfig& config) {
  const QuadratureGrid grid = build_grid(config.n_alpha, config.n_beta, config.n_gamma);
  return classify_stability(coeffs, report, config, grid, PotentialTables::build(grid));
}

/// Solve from the isotropic state plus random starts, deduplicate converged
/// solutions by their rotation-invariant signature, and sort by free energy.
/// Non-converged runs are appended untouched so callers can report them.
inline std::vector<SolutionReport> multi_start_solve(const KernelCoeffsd& coeffs,
                                                     const SolverConfig& config,
                                                     const QuadratureGrid& grid,
                                                     const PotentialTables& tables) {
  config.validate();
  std::mt19937_64 rng(detail::splitmix64(config.seed));

  std::vector<SolutionReport> converged, failed;
  for (int start = 0; start < config.n_starts; ++start) {
    const MomentState init =
        start == 0 ? MomentState::isotropic() : random_start(rng, grid, tables);
    SolutionReport report = iterate(coeffs, init, config, grid, tables);
    if (!report.converged) {
      failed.push_back(std::move(report));
      continue;
    }
    const SolutionSignature sig = make_signature(report.state, report.free_energy);
    const bool duplicate = std::any_of(converged.begin(), converged.end(), [&](const auto& r) {
      return signature_close(make_signature(r.state, r.free_energy), sig, config.dedup_tol);
    });
    if (!duplicate) converged.push_back(std::move(report));
  }
  std::sort(converged.begin(), converged.end(),
            [](const auto& a, const auto& b) { return a.free_energy < b.free_energy; });
  for (auto& r : failed) converged.push_back(std::move(r));
  return converged;
}

inline std::vector<SolutionReport> multi_start_solve(const KernelCoeffsd& coeffs,
                                                     const SolverConfig& config) {
  const QuadratureGrid grid = build_grid(config.n_alpha, config.n_beta, config.n_gamma);
  return multi_start_solve(coeffs, config, grid, PotentialTables::build(grid));
}

} // namespace lcmf
