#pragma once

// Fourier-Galerkin realization of the Floquet Hamiltonian
//
//   K = -i d/dt + H_{g(t)}   on  L^2([0, T]) (x) L^2([0, 1]),
//
// with H_g = H0 + g tau* tau the Robin/Neumann Laplacian of krein_boundary.
// The time factor is truncated to chi_k(t) = T^-1/2 exp(i k omega t) for
// |k| <= k_max and the space factor to the Neumann modes n <= n_max. Basis
// index is (k + k_max) * (n_max + 1) + n.
//
// In this basis D = -i d/dt is diag(k omega), K0 = diag(k omega + n^2 pi^2)
// and multiplication by g(t) is the Toeplitz matrix of its Fourier
// coefficients. Lambda(z) has block (k', k) equal to the (k' - k)-th Fourier
// coefficient of t -> Delta(g(t), z - k omega), where Delta(g, zeta) is the
// rank-one Krein correction R_g(zeta) - R0(zeta).

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "karner/errors.hpp"
#include "karner/krein_boundary.hpp"
#include "karner/linalg.hpp"
#include "karner/tensor_core.hpp"

namespace karner::floquet_fermi {

using krein_boundary::NeumannBasis;
using krein_boundary::TraceClosure;

/// (1/n) sum_j f_j exp(-2 pi i m j / n): trapezoid Fourier coefficient of a
/// T-periodic function sampled at t_j = j T / n.
template <typename Samples>
cplx fourier_coefficient(const Samples& values, int m) {
  const auto n = static_cast<long long>(values.size());
  cplx sum = 0.0;
  for (long long j = 0; j < n; ++j) {
    // Reduce m j mod n into (-n/2, n/2] so +m and -m use exactly opposite angles.
    long long r = ((static_cast<long long>(m) * j) % n + n) % n;
    if (2 * r > n) r -= n;
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    sum += values[static_cast<std::size_t>(j)] * cplx(std::cos(angle), std::sin(angle));
  }
  return sum / static_cast<double>(n);
}

/// A T-periodic real coupling g(t) sampled on a uniform grid.
///
/// The sup norms are maxima over the grid, hence lower bounds of the true sup.
struct DriveProfile {
  double period = 2.0 * std::numbers::pi;
  double omega = 1.0;
  std::vector<double> g_values;
  std::vector<double> g_prime_values;
  double sup_g = 0.0;
  double sup_g_prime = 0.0;

  std::size_t n_t() const { return g_values.size(); }
  double time(std::size_t j) const {
    return period * static_cast<double>(j) / static_cast<double>(n_t());
  }

  /// Samples g and g' at n_t points; rejects a g whose seam g(0) vs g(T) is off by more than 1e-12.
  static DriveProfile sample(double period, const std::function<double(double)>& g,
                             const std::function<double(double)>& g_prime, std::size_t n_t) {
    if (!(period > 0.0)) throw std::invalid_argument("drive period must be positive");
    if (n_t == 0) throw std::invalid_argument("drive needs at least one sample");
    if (std::abs(g(0.0) - g(period)) > 1e-12) throw std::invalid_argument("drive is not periodic");
    DriveProfile d;
    d.period = period;
    d.omega = 2.0 * std::numbers::pi / period;
    for (std::size_t j = 0; j < n_t; ++j) {
      const double t = period * static_cast<double>(j) / static_cast<double>(n_t);
      d.g_values.push_back(g(t));
      d.g_prime_values.push_back(g_prime(t));
    }
    d.refresh_norms();
    return d;
  }

  /// Samples only; g' comes from spectral differentiation of the samples.
  static DriveProfile from_samples(double period, std::vector<double> g_values) {
    if (!(period > 0.0)) throw std::invalid_argument("drive period must be positive");
    if (g_values.empty()) throw std::invalid_argument("drive needs at least one sample");
    DriveProfile d;
    d.period = period;
    d.omega = 2.0 * std::numbers::pi / period;
    d.g_values = std::move(g_values);
    const int n = static_cast<int>(d.g_values.size());
    std::vector<cplx> coeffs;
    for (int m = -(n - 1) / 2; m <= (n - 1) / 2; ++m)
      coeffs.push_back(fourier_coefficient(d.g_values, m));
    d.g_prime_values.assign(d.g_values.size(), 0.0);
    for (int j = 0; j < n; ++j) {
      cplx sum = 0.0;
      for (int m = -(n - 1) / 2; m <= (n - 1) / 2; ++m) {
        const cplx c = coeffs[static_cast<std::size_t>(m + (n - 1) / 2)];
        sum += cplx(0.0, m * d.omega) * c * std::polar(1.0, 2.0 * std::numbers::pi * m * j / n);
      }
      d.g_prime_values[static_cast<std::size_t>(j)] = sum.real();
    }
    d.refresh_norms();
    return d;
  }

  void refresh_norms() {
    sup_g = 0.0;
    sup_g_prime = 0.0;
    for (double v : g_values) sup_g = std::max(sup_g, std::abs(v));
    for (double v : g_prime_values) sup_g_prime = std::max(sup_g_prime, std::abs(v));
  }
};

/// g(t) = sum_m a_m cos(m omega t) + b_m sin(m omega t), m = 0, 1, ...
struct HarmonicDrive {
  double period = 2.0 * std::numbers::pi;
  std::vector<double> cos_amplitudes;
  std::vector<double> sin_amplitudes;

  double omega() const { return 2.0 * std::numbers::pi / period; }

  double operator()(double t) const {
    double v = 0.0;
    for (std::size_t m = 0; m < cos_amplitudes.size(); ++m)
      v += cos_amplitudes[m] * std::cos(static_cast<double>(m) * omega() * t);
    for (std::size_t m = 0; m < sin_amplitudes.size(); ++m)
      v += sin_amplitudes[m] * std::sin(static_cast<double>(m) * omega() * t);
    return v;
  }

  double derivative(double t) const {
    double v = 0.0;
    for (std::size_t m = 0; m < cos_amplitudes.size(); ++m) {
      const double f = static_cast<double>(m) * omega();
      v -= cos_amplitudes[m] * f * std::sin(f * t);
    }
    for (std::size_t m = 0; m < sin_amplitudes.size(); ++m) {
      const double f = static_cast<double>(m) * omega();
      v += sin_amplitudes[m] * f * std::cos(f * t);
    }
    return v;
  }

  DriveProfile sample(std::size_t n_t) const {
    return DriveProfile::sample(
        period, [this](double t) { return (*this)(t); },
        [this](double t) { return derivative(t); }, n_t);
  }
};

/// Single-harmonic drive g0 cos(omega t).
inline HarmonicDrive cosine_drive(double g0, double period = 2.0 * std::numbers::pi) {
  return {period, {0.0, g0}, {}};
}

inline HarmonicDrive constant_drive(double c, double period = 2.0 * std::numbers::pi) {
  return {period, {c}, {}};
}

struct FourierBasisSpec {
  int k_max = 0;
  double period = 2.0 * std::numbers::pi;

  int size() const { return 2 * k_max + 1; }
  double omega() const { return 2.0 * std::numbers::pi / period; }
  std::vector<int> modes() const {
    std::vector<int> ks;
    for (int k = -k_max; k <= k_max; ++k) ks.push_back(k);
    return ks;
  }
  cplx chi(int k, double t) const {
    return std::polar(1.0 / std::sqrt(period), static_cast<double>(k) * omega() * t);
  }

  /// max |<chi_k, chi_k'> - delta_kk'| under the n_t-point trapezoid rule.
  double orthonormality_defect(std::size_t n_t) const {
    double worst = 0.0;
    const double h = period / static_cast<double>(n_t);
    for (int a = -k_max; a <= k_max; ++a)
      for (int b = -k_max; b <= k_max; ++b) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n_t; ++j) {
          const double t = h * static_cast<double>(j);
          s += std::conj(chi(a, t)) * chi(b, t) * h;
        }
        worst = std::max(worst, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
    return worst;
  }
};

/// Smallest grid that resolves products of two truncated modes, floored at 64.
inline std::size_t default_time_points(int k_max) {
  return std::max<std::size_t>(static_cast<std::size_t>(4 * k_max + 1), 64);
}

struct FloquetTruncation {
  FourierBasisSpec basis;
  NeumannBasis space;
  std::size_t n_t = 0;
  /// Galerkin-consistent by default: Lambda then matches the truncated K0 and K
  /// exactly for a time-independent drive.
  TraceClosure closure = TraceClosure::truncated;

  static FloquetTruncation make(const DriveProfile& drive, int k_max, int n_max) {
    FloquetTruncation t{{k_max, drive.period}, {n_max}, drive.n_t(), TraceClosure::truncated};
    t.validate(drive);
    return t;
  }

  int k_max() const { return basis.k_max; }
  int n_max() const { return space.n_max; }
  Index modes() const { return basis.size(); }
  Index block() const { return space.size(); }
  Index dim() const { return modes() * block(); }
  Index index(int k, int n) const { return (k + k_max()) * block() + n; }

  void validate(const DriveProfile& drive) const {
    if (basis.k_max < 0 || space.n_max < 0) throw std::invalid_argument("negative cutoff");
    if (n_t < static_cast<std::size_t>(4 * basis.k_max + 1))
      throw std::invalid_argument("n_t must be at least 4 k_max + 1");
    if (drive.n_t() != n_t) throw std::invalid_argument("drive sampled on a different grid");
    if (std::abs(drive.period - basis.period) > 1e-12 * drive.period)
      throw std::invalid_argument("drive period does not match the Fourier basis");
  }
};

struct FloquetOperators {
  cplx z;
  Matrix K0_mat;
  Matrix K_mat;
  Matrix Lambda_mat;
  Matrix commutator_mat;
};

/// g_hat_m for m in [-2 k_max, 2 k_max]; entry m sits at index m + 2 k_max.
inline std::vector<cplx> fourier_coefficients(const DriveProfile& drive, int k_max) {
  std::vector<cplx> c;
  for (int m = -2 * k_max; m <= 2 * k_max; ++m) c.push_back(fourier_coefficient(drive.g_values, m));
  return c;
}

/// Fills K0_mat and K_mat.
inline FloquetOperators assemble_floquet_K(const DriveProfile& drive, const FloquetTruncation& trunc) {
  trunc.validate(drive);
  const int km = trunc.k_max();
  const Index nb = trunc.block();
  const auto ghat = fourier_coefficients(drive, km);
  const Eigen::VectorXd tau = trunc.space.boundary_values();
  const Eigen::MatrixXd tt = tau * tau.transpose();

  FloquetOperators ops;
  ops.K0_mat = Matrix::Zero(trunc.dim(), trunc.dim());
  for (int k = -km; k <= km; ++k)
    for (int n = 0; n <= trunc.n_max(); ++n)
      ops.K0_mat(trunc.index(k, n), trunc.index(k, n)) = k * drive.omega + NeumannBasis::eigenvalue(n);

  ops.K_mat = ops.K0_mat;
  for (int kp = -km; kp <= km; ++kp)
    for (int k = -km; k <= km; ++k) {
      const cplx c = ghat[static_cast<std::size_t>(kp - k + 2 * km)];
      ops.K_mat.block(trunc.index(kp, 0), trunc.index(k, 0), nb, nb) += c * tt;
    }
  return ops;
}

namespace detail {

/// Per-column data at the shifted parameter zeta_k = z - k omega.
struct Shift {
  int k;
  cplx zeta;
  Vector u;   ///< R0(zeta) tau* in the Neumann basis.
  cplx tau;   ///< tau R0(zeta) tau* under the chosen closure.
};

inline std::vector<Shift> shifts(const DriveProfile& drive, const FloquetTruncation& trunc, cplx z) {
  std::vector<Shift> out;
  for (int k = -trunc.k_max(); k <= trunc.k_max(); ++k) {
    const cplx zeta = z - static_cast<double>(k) * drive.omega;
    try {
      out.push_back({k, zeta, krein_boundary::boundary_resolvent_vector(zeta, trunc.n_max()),
                     krein_boundary::closure_tau(zeta, trunc.n_max(), trunc.closure)});
    } catch (const NearPole& e) {
      throw NearPole(zeta, e.n, k);
    }
  }
  return out;
}

/// Writes block (k', k) = coeff(k' - k) * u_k u_k^T for every pair of modes.
template <typename CoeffFn>
Matrix assemble_blocks(const FloquetTruncation& trunc, const std::vector<Shift>& sh, CoeffFn coeff) {
  const int km = trunc.k_max();
  const Index nb = trunc.block();
  Matrix out(trunc.dim(), trunc.dim());
  for (const auto& s : sh) {
    const Matrix uu = s.u * s.u.transpose();
    const std::vector<cplx> c = coeff(s);
    for (int kp = -km; kp <= km; ++kp)
      out.block(trunc.index(kp, 0), trunc.index(s.k, 0), nb, nb) =
          c[static_cast<std::size_t>(kp - s.k + 2 * km)] * uu;
  }
  return out;
}

template <typename Samples>
std::vector<cplx> coefficient_range(const Samples& values, int k_max) {
  std::vector<cplx> c;
  for (int m = -2 * k_max; m <= 2 * k_max; ++m) c.push_back(fourier_coefficient(values, m));
  return c;
}

inline void require_radius(const DriveProfile& drive, cplx z, const char* what) {
  const double s0 = std::abs(z.imag());
  if (!(s0 > 0.0) || !(drive.sup_g * krein_boundary::alpha_bound(s0) < 1.0))
    throw RadiusViolation(std::string(what) + ": sup|g| alpha(|Im z|) must be < 1");
}

}  // namespace detail

/// Truncated Lambda(z) from the closed Krein form at every quadrature time.
inline Matrix assemble_floquet_Lambda(const DriveProfile& drive, const FloquetTruncation& trunc, cplx z) {
  trunc.validate(drive);
  const auto sh = detail::shifts(drive, trunc, z);
  return detail::assemble_blocks(trunc, sh, [&](const detail::Shift& s) {
    std::vector<cplx> f(drive.n_t());
    for (std::size_t j = 0; j < drive.n_t(); ++j) {
      try {
        f[j] = krein_boundary::krein_coefficient(drive.g_values[j], s.tau);
      } catch (const KreinPole&) {
        throw KreinPole(drive.g_values[j], s.zeta, s.k);
      }
    }
    return detail::coefficient_range(f, trunc.k_max());
  });
}

struct NeumannSeries {
  Matrix sum;
  /// Frobenius norm of each term, i.e. ||S_n - S_{n-1}|| for the partial sums S_n.
  std::vector<double> term_norms;

  /// term_norms[n + 1] / term_norms[n].
  double contraction_ratio(std::size_t n) const { return term_norms.at(n + 1) / term_norms.at(n); }
};

/// Partial sum over n < n_terms of (-1)^(n+1) g(t)^(n+1) (tau R0 tau*)^n R0 tau* tau R0
/// at every shift, projected onto the Fourier modes.
inline NeumannSeries neumann_series_Lambda(const DriveProfile& drive, const FloquetTruncation& trunc,
                                           cplx z, int n_terms) {
  trunc.validate(drive);
  detail::require_radius(drive, z, "neumann_series_Lambda");
  const int km = trunc.k_max();
  const auto sh = detail::shifts(drive, trunc, z);

  // Fourier coefficients of g^(n+1) for every order.
  std::vector<std::vector<cplx>> power_coeffs;
  std::vector<double> power(drive.g_values);
  for (int n = 0; n < n_terms; ++n) {
    power_coeffs.push_back(detail::coefficient_range(power, km));
    for (std::size_t j = 0; j < power.size(); ++j) power[j] *= drive.g_values[j];
  }

  NeumannSeries out;
  for (int n = 0; n < n_terms; ++n) {
    double sq = 0.0;
    for (const auto& s : sh) {
      double col = 0.0;
      for (int kp = -km; kp <= km; ++kp)
        col += std::norm(power_coeffs[static_cast<std::size_t>(n)][static_cast<std::size_t>(kp - s.k + 2 * km)]);
      const double u2 = s.u.squaredNorm();
      sq += col * std::pow(std::abs(s.tau), 2.0 * n) * u2 * u2;
    }
    out.term_norms.push_back(std::sqrt(sq));
  }

  out.sum = detail::assemble_blocks(trunc, sh, [&](const detail::Shift& s) {
    std::vector<cplx> c(static_cast<std::size_t>(4 * km + 1), 0.0);
    // Horner-free direct sum; highest orders first so small terms accumulate before large ones.
    for (int n = n_terms - 1; n >= 0; --n) {
      const cplx scale = (n % 2 == 0 ? -1.0 : 1.0) * std::pow(s.tau, n);
      for (std::size_t m = 0; m < c.size(); ++m) c[m] += scale * power_coeffs[static_cast<std::size_t>(n)][m];
    }
    return c;
  });
  return out;
}

/// [D (x) I, Lambda] from block indices: block (k', k) of Lambda times omega (k' - k).
inline Matrix commutator_from_lambda(const Matrix& lambda_op, const FloquetTruncation& trunc, double omega) {
  const int km = trunc.k_max();
  const Index nb = trunc.block();
  Matrix c = lambda_op;
  for (int kp = -km; kp <= km; ++kp)
    for (int k = -km; k <= km; ++k)
      c.block(trunc.index(kp, 0), trunc.index(k, 0), nb, nb) *= omega * static_cast<double>(kp - k);
  return c;
}

inline Matrix assemble_commutator(const DriveProfile& drive, const FloquetTruncation& trunc, cplx z) {
  return commutator_from_lambda(assemble_floquet_Lambda(drive, trunc, z), trunc, drive.omega);
}

/// Independent route to the commutator: quadrature of
///   -i g'(t) sum_n (-1)^(n+1) (n+1) g(t)^n (tau R0 tau*)^n
/// times R0 tau* tau R0 at each shift.
inline Matrix commutator_series(const DriveProfile& drive, const FloquetTruncation& trunc, cplx z,
                                int n_terms = 60) {
  trunc.validate(drive);
  try {
    detail::require_radius(drive, z, "commutator_series");
  } catch (const RadiusViolation& e) {
    throw SeriesDivergence(e.what());
  }
  const auto sh = detail::shifts(drive, trunc, z);
  return detail::assemble_blocks(trunc, sh, [&](const detail::Shift& s) {
    std::vector<cplx> f(drive.n_t());
    for (std::size_t j = 0; j < drive.n_t(); ++j) {
      const cplx x = drive.g_values[j] * s.tau;
      cplx series = 0.0;
      for (int n = n_terms - 1; n >= 0; --n) series = series * x + (n % 2 == 0 ? -1.0 : 1.0) * (n + 1.0);
      f[j] = cplx(0.0, -1.0) * drive.g_prime_values[j] * series;
    }
    return detail::coefficient_range(f, trunc.k_max());
  });
}

/// All four truncated operators at z.
inline FloquetOperators floquet_operators(const DriveProfile& drive, const FloquetTruncation& trunc, cplx z) {
  FloquetOperators ops = assemble_floquet_K(drive, trunc);
  ops.z = z;
  ops.Lambda_mat = assemble_floquet_Lambda(drive, trunc, z);
  ops.commutator_mat = commutator_from_lambda(ops.Lambda_mat, trunc, drive.omega);
  return ops;
}

/// Right-hand side of the bound on ||Lambda(z)||; infinite outside the radius.
inline double lambda_norm_bound(double sup_g, double s0) {
  const double a = krein_boundary::alpha_bound(s0);
  if (!(sup_g * a < 1.0)) return std::numeric_limits<double>::infinity();
  return sup_g * a / (s0 * (1.0 - sup_g * a));
}

/// Right-hand side of the bound on ||[D (x) I, Lambda(z)]||; infinite outside the radius.
inline double commutator_norm_bound(double sup_g, double sup_g_prime, double s0) {
  const double a = krein_boundary::alpha_bound(s0);
  if (!(sup_g * a < 1.0)) return std::numeric_limits<double>::infinity();
  const double gap = 1.0 - sup_g * a;
  return sup_g_prime * a / (s0 * gap * gap);
}

struct ValidityConditions {
  bool radius = false;        ///< sup|g| alpha(s0) < 1
  bool commutator = false;    ///< commutator bound < 1
  bool both() const { return radius && commutator; }
};

inline ValidityConditions validity_conditions(double sup_g, double sup_g_prime, double s0) {
  ValidityConditions v;
  v.radius = sup_g * krein_boundary::alpha_bound(s0) < 1.0;
  v.commutator = v.radius && commutator_norm_bound(sup_g, sup_g_prime, s0) < 1.0;
  return v;
}

struct BoundsReport {
  double s0 = 0.0;
  double alpha = 0.0;
  double lambda_norm = 0.0;
  double commutator_norm = 0.0;
  double lambda_bound = 0.0;
  double commutator_bound = 0.0;
  ValidityConditions conditions;

  bool lambda_within() const { return lambda_norm <= lambda_bound; }
  bool commutator_within() const { return commutator_norm <= commutator_bound; }
};

inline BoundsReport check_bounds(const DriveProfile& drive, const FloquetTruncation& trunc, cplx z,
                                 const linalg::PowerIterationOptions& opts = {}) {
  BoundsReport r;
  r.s0 = std::abs(z.imag());
  r.alpha = krein_boundary::alpha_bound(r.s0);
  const Matrix lambda_op = assemble_floquet_Lambda(drive, trunc, z);
  r.lambda_norm = linalg::operator_norm(lambda_op, opts);
  r.commutator_norm = linalg::operator_norm(commutator_from_lambda(lambda_op, trunc, drive.omega), opts);
  r.lambda_bound = lambda_norm_bound(drive.sup_g, r.s0);
  r.commutator_bound = commutator_norm_bound(drive.sup_g, drive.sup_g_prime, r.s0);
  r.conditions = validity_conditions(drive.sup_g, drive.sup_g_prime, r.s0);
  return r;
}

struct FloquetReport {
  tensor_core::VerificationReport report;
  /// Residual restricted to the modes |k| < k_max, still relative to the full ||(K - z)^-1||.
  double interior_rel_residual = std::numeric_limits<double>::infinity();
  ValidityConditions conditions;
};

/// Residual of the resolvent formula on the truncated operators.
///
/// `report.passed` gates on the interior residual: the outermost Fourier modes
/// carry the truncation edge error and are excluded. Being outside the validity
/// region is reported through `conditions` and does not flip the pass flag.
inline FloquetReport verify_floquet_karner(const DriveProfile& drive, const FloquetTruncation& trunc,
                                           cplx z, double tol) {
  FloquetReport out;
  out.report.z = z;
  const double s0 = std::abs(z.imag());
  if (s0 > 0.0) out.conditions = validity_conditions(drive.sup_g, drive.sup_g_prime, s0);

  const FloquetOperators ops = floquet_operators(drive, trunc, z);
  const Index dim = trunc.dim();

  Matrix kz = ops.K_mat;
  kz.diagonal().array() -= z;
  const auto direct_f = linalg::factorize(kz);
  if (direct_f.singular()) {
    out.report.flags.z_in_spectrum = true;
    return out;
  }
  const Matrix direct = direct_f.lu.inverse();

  Matrix factor = ops.commutator_mat;
  factor.diagonal().array() += 1.0;
  const auto f = linalg::factorize(factor.transpose());
  out.report.commutator_factor_condition = f.rcond > 0 ? 1.0 / f.rcond : std::numeric_limits<double>::infinity();
  if (f.singular()) {
    out.report.flags.singular_factor = true;
    return out;
  }
  Matrix rhs = ops.Lambda_mat;
  for (Index i = 0; i < dim; ++i) rhs(i, i) += 1.0 / (ops.K0_mat(i, i) - z);
  const Matrix karner = f.lu.solve(rhs.transpose()).transpose();

  const Matrix diff = karner - direct;
  const double scale = linalg::norm(direct);
  out.report.abs_residual = linalg::norm(diff);
  out.report.rel_residual = out.report.abs_residual / scale;
  if (trunc.k_max() == 0) {
    out.interior_rel_residual = out.report.rel_residual;
  } else {
    const Index lo = trunc.block();
    const Index len = dim - 2 * lo;
    out.interior_rel_residual = diff.block(lo, lo, len, len).norm() / scale;
  }
  out.report.passed = out.interior_rel_residual <= tol;
  return out;
}

/// Smallest s0 (to 1e-6) for which both validity conditions hold.
inline double minimal_s0(double sup_g, double sup_g_prime) {
  constexpr double floor = 1e-9;
  constexpr double ceiling = 1e6;
  const auto ok = [&](double s) { return validity_conditions(sup_g, sup_g_prime, s).both(); };
  if (ok(floor)) return floor;
  if (!ok(ceiling)) throw Unattainable("no s0 <= 1e6 satisfies the validity conditions");
  double lo = floor;
  double hi = ceiling;
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

inline double minimal_s0(const DriveProfile& drive) { return minimal_s0(drive.sup_g, drive.sup_g_prime); }

}  // namespace karner::floquet_fermi
