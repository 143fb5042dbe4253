#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they are used to check.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracles {

// Haar-uniform rotation via QR of a Gaussian matrix (sign-fixed so the
// triangular factor has a positive diagonal, then det corrected to +1).
// Independent of the library's Euler-angle sampler.
template <typename Rng>
Eigen::Matrix3d random_rotation_qr(Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(a);
  Eigen::Matrix3d q = qr.householderQ();
  const Eigen::Matrix3d r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < 3; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  if (q.determinant() < 0.0) q.col(2) = -q.col(2);
  return q;
}

// Monte-Carlo estimate of the Haar average of a matrix functional.
template <typename F>
double monte_carlo_so3(F&& f, int n_samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double sum = 0.0;
  for (int i = 0; i < n_samples; ++i) sum += f(random_rotation_qr(rng));
  return sum / n_samples;
}

// Axisymmetric Maier-Saupe self-consistency on the sphere. With the kernel
// c2 p11^2 the one-body density reduces to f(t) ~ exp(-c2 S t^2) on
// t = cos(theta) in [-1,1], S = (3<t^2>-1)/2. Solved by bracketing and
// bisection on a dense t-quadrature, independently of any SO(3) machinery.
class MaierSaupeOracle {
public:
  explicit MaierSaupeOracle(double c2, int n_quad = 4000) : u_(-c2), n_(n_quad) {}

  // <t^2> under f(t) ~ exp(u S t^2) (midpoint rule on [0,1], even integrand).
  double mean_t2(double s) const {
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double t = (i + 0.5) / n_;
      const double w = std::exp(u_ * s * t * t);
      num += w * t * t;
      den += w;
    }
    return num / den;
  }

  double residual(double s) const { return (3.0 * mean_t2(s) - 1.0) / 2.0 - s; }

  // All self-consistent order parameters S in (0,1); S = 0 always solves.
  std::vector<double> nontrivial_roots() const {
    std::vector<double> roots;
    const int scan = 2000;
    double prev = residual(1.0 / scan);
    for (int i = 2; i <= scan; ++i) {
      const double s = double(i) / scan;
      const double cur = residual(s);
      if (prev * cur < 0.0) {
        double lo = double(i - 1) / scan, hi = s;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (residual(lo) * residual(mid) <= 0.0)
            hi = mid;
          else
            lo = mid;
        }
        roots.push_back(0.5 * (lo + hi));
      }
      prev = cur;
    }
    return roots;
  }

  // F = u S q - log Z + (c2/2)(q^2 + (1-q)^2/2), q = <t^2>,
  // Z = int_0^1 exp(u S t^2) dt.
  double free_energy(double s) const {
    const double q = mean_t2(s);
    double z = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double t = (i + 0.5) / n_;
      z += std::exp(u_ * s * t * t);
    }
    z /= n_;
    return u_ * s * q - std::log(z) + 0.5 * (-u_) * (q * q + 0.5 * (1.0 - q) * (1.0 - q));
  }

  // Largest Q1 eigenvalue and free energy of the lowest-energy branch.
  struct Branch {
    double order; // S
    double q_max; // largest eigenvalue of Q1
    double free_energy;
  };

  Branch lowest_branch() const {
    Branch best{0.0, 1.0 / 3.0, free_energy(0.0)};
    for (double s : nontrivial_roots()) {
      const double f = free_energy(s);
      if (f < best.free_energy) best = {s, (2.0 * s + 1.0) / 3.0, f};
    }
    return best;
  }

private:
  double u_;
  int n_;
};

// Smallest c with epsilon(c * coeffs) >= 2, taking the better of the two
// orientations (c2 and c3 swapped); pure bisection, no closed form.
inline double c_min_bisection(double c2_0, double c3_0, double c4_0) {
  const auto eps_ok = [&](double c) {
    const double c2 = c * c2_0, c3 = c * c3_0, c4 = c * c4_0;
    const double eps = c4 * c4 / c3 - c2;
    const double eps_swapped = c4 * c4 / c2 - c3;
    return std::min(eps, eps_swapped) >= 2.0;
  };
  double hi = 1.0;
  while (!eps_ok(hi)) {
    hi *= 2.0;
    if (hi > 1e12) return std::numeric_limits<double>::infinity();
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eps_ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

} // namespace oracles
