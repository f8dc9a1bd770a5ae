#pragma once

// Neumann Laplacian H0 = -d^2/dx^2 on [0, 1], its Green function, and the
// rank-one boundary perturbation H_g = H0 + g tau* tau with tau u = u(0), i.e.
// the Robin condition f'(0) = g f(0) and Neumann at x = 1.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "karner/errors.hpp"
#include "karner/linalg.hpp"

namespace karner::krein_boundary {

inline constexpr double kPoleGuard = 1e-10;
inline constexpr double kKreinGuard = 1e-12;
inline constexpr double kRealAxisGuard = 1e-13;

/// z together with a square root. The principal branch is the default; every
/// kernel below is even in sqrt_z so the other root gives the same values.
struct SpectralParameter {
  cplx z;
  cplx sqrt_z;

  explicit SpectralParameter(cplx z) : z(z), sqrt_z(std::sqrt(z)) {}
  SpectralParameter(cplx z, cplx root) : z(z), sqrt_z(root) {}

  SpectralParameter other_branch() const { return {z, -sqrt_z}; }
};

/// Spectral data of H0: mu_n = n^2 pi^2 with normalized eigenfunctions
/// phi_0 = 1, phi_n = sqrt(2) cos(n pi x), so tau_n = phi_n(0) is 1, sqrt2, sqrt2, ...
struct NeumannBasis {
  int n_max = 0;

  Index size() const { return n_max + 1; }
  static double eigenvalue(int n) { return n * n * std::numbers::pi * std::numbers::pi; }
  static double boundary_value(int n) { return n == 0 ? 1.0 : std::numbers::sqrt2; }

  Eigen::VectorXd eigenvalues() const {
    Eigen::VectorXd mu(size());
    for (int n = 0; n <= n_max; ++n) mu(n) = eigenvalue(n);
    return mu;
  }
  Eigen::VectorXd boundary_values() const {
    Eigen::VectorXd tau(size());
    for (int n = 0; n <= n_max; ++n) tau(n) = boundary_value(n);
    return tau;
  }
};

struct BoundaryCoupling {
  double g = 0.0;
};

/// Distance from z to the nearest Neumann eigenvalue and its index.
struct PoleDistance {
  double distance;
  int n;
};

inline PoleDistance nearest_pole(cplx z) {
  const double pi = std::numbers::pi;
  const int guess = static_cast<int>(std::floor(std::sqrt(std::max(z.real(), 0.0)) / pi));
  PoleDistance best{std::abs(z), 0};
  for (int n = std::max(guess - 1, 0); n <= guess + 2; ++n) {
    const double d = std::abs(z - NeumannBasis::eigenvalue(n));
    if (d < best.distance) best = {d, n};
  }
  return best;
}

inline void guard_pole(cplx z) {
  const auto p = nearest_pole(z);
  if (p.distance < kPoleGuard) throw NearPole(z, p.n);
}

/// Integral kernel of (H0 - z)^-1:
///   G0(x, y) = -cos(s min(x,y)) cos(s (max(x,y) - 1)) / (s sin s),  s = sqrt(z).
/// Intended for |Im sqrt(z)| well below the overflow range of cos (~700).
inline cplx green0(double x, double y, const SpectralParameter& p) {
  guard_pole(p.z);
  const cplx s = p.sqrt_z;
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return -std::cos(s * lo) * std::cos(s * (hi - 1.0)) / (s * std::sin(s));
}

inline cplx green0(double x, double y, cplx z) { return green0(x, y, SpectralParameter(z)); }

/// tau R0(z) tau* = G0(0, 0) = -cot(sqrt z) / sqrt z.
inline cplx tau_R0_tau(const SpectralParameter& p) {
  guard_pole(p.z);
  const cplx s = p.sqrt_z;
  // tan stays bounded for large |Im s| where cos/sin would overflow.
  return -1.0 / (s * std::tan(s));
}

inline cplx tau_R0_tau(cplx z) { return tau_R0_tau(SpectralParameter(z)); }

/// tau R0(z)^2 tau* = d/dz tau R0(z) tau* = sum_n tau_n^2 / (mu_n - z)^2.
inline cplx tau_R0sq_tau(cplx z) {
  guard_pole(z);
  const cplx s = std::sqrt(z);
  const cplx sn = std::sin(s);
  const cplx cot = 1.0 / std::tan(s);
  return 1.0 / (2.0 * s * s * sn * sn) + cot / (2.0 * s * s * s);
}

/// -g / (1 + g t); the scalar in front of the rank-one Krein correction.
inline cplx krein_coefficient(double g, cplx tau_value) {
  const cplx denom = 1.0 + g * tau_value;
  if (std::abs(denom) <= kKreinGuard) throw KreinPole(g, {});
  return -g / denom;
}

inline cplx krein_coefficient(double g, const SpectralParameter& p) {
  const cplx denom = 1.0 + g * tau_R0_tau(p);
  if (std::abs(denom) <= kKreinGuard) throw KreinPole(g, p.z);
  return -g / denom;
}

/// Integral kernel of R_g(z) - R0(z) = (-g / (1 + g tau R0 tau*)) R0 tau* tau R0.
inline cplx krein_diff_kernel(double g, cplx z, double x, double y) {
  const SpectralParameter p(z);
  const cplx c = krein_coefficient(g, p);
  return c * green0(x, 0.0, p) * green0(0.0, y, p);
}

/// ||R0(z) tau* tau R0(z)|| = |Im tau R0(z) tau*| / |Im z|.
inline double rank_one_norm(cplx z) {
  if (std::abs(z.imag()) < kRealAxisGuard) throw RealAxis("rank_one_norm needs Im z != 0");
  return std::abs(tau_R0_tau(z).imag()) / std::abs(z.imag());
}

/// alpha(s0) = (2 / s0) sqrt(1 + s0 / 4), the bound on |tau R0(z) tau*| for |Im z| >= s0.
inline double alpha_bound(double s0) {
  if (!(s0 > 0.0)) throw NonPositive("alpha_bound needs s0 > 0");
  return (2.0 / s0) * std::sqrt(1.0 + s0 / 4.0);
}

/// Coordinates of R0(z) tau* in the Neumann basis: u_n = tau_n / (mu_n - z).
inline Vector boundary_resolvent_vector(cplx z, int n_max) {
  guard_pole(z);
  Vector u(n_max + 1);
  for (int n = 0; n <= n_max; ++n)
    u(n) = NeumannBasis::boundary_value(n) / (NeumannBasis::eigenvalue(n) - z);
  return u;
}

/// Partial sum of tau R0(z) tau* over the first n_max + 1 modes.
inline cplx truncated_tau_R0_tau(cplx z, int n_max) {
  const Vector u = boundary_resolvent_vector(z, n_max);
  cplx sum = 0.0;
  for (int n = n_max; n >= 0; --n) sum += NeumannBasis::boundary_value(n) * u(n);
  return sum;
}

/// Which value of tau R0 tau* enters the Krein denominator of a truncated matrix.
///  - exact: the closed form; entries are the exact matrix elements of R_g(z).
///  - truncated: the partial sum over the retained modes; the matrix is then the
///    exact inverse of the Galerkin matrix diag(mu) + g tau tau^T - z.
enum class TraceClosure { exact, truncated };

inline cplx closure_tau(cplx z, int n_max, TraceClosure closure) {
  return closure == TraceClosure::exact ? tau_R0_tau(z) : truncated_tau_R0_tau(z, n_max);
}

/// Rank-one part of R_g(z) - R0(z) in the first n_max + 1 Neumann modes.
inline Matrix spatial_krein_correction(double g, cplx z, int n_max,
                                       TraceClosure closure = TraceClosure::exact) {
  const Vector u = boundary_resolvent_vector(z, n_max);
  cplx c;
  try {
    c = krein_coefficient(g, closure_tau(z, n_max, closure));
  } catch (const KreinPole&) {
    throw KreinPole(g, z);
  }
  return c * u * u.transpose();
}

/// Truncated R_g(z): diag(1 / (mu_n - z)) plus the rank-one Krein correction.
inline Matrix spatial_resolvent_matrix(double g, cplx z, int n_max,
                                       TraceClosure closure = TraceClosure::exact) {
  Matrix r = spatial_krein_correction(g, z, n_max, closure);
  for (int n = 0; n <= n_max; ++n) r(n, n) += 1.0 / (NeumannBasis::eigenvalue(n) - z);
  return r;
}

}  // namespace karner::krein_boundary
