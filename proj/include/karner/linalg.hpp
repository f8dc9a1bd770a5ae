#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "karner/errors.hpp"

namespace karner {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Inversions whose reciprocal condition estimate falls below this are refused.
inline constexpr double kRcondFloor = 1e-14;

namespace linalg {

/// Kronecker product in T-major ordering: (A (x) B)[a*nb + b, c*mb + d] = A[a,c] B[b,d].
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

/// LU factorization paired with its reciprocal condition estimate.
struct Factorization {
  Eigen::PartialPivLU<Matrix> lu;
  double rcond = 0.0;

  bool singular() const { return !(rcond >= kRcondFloor); }
};

inline Factorization factorize(const Matrix& a) {
  Factorization f{Eigen::PartialPivLU<Matrix>(a), 0.0};
  f.rcond = f.lu.rcond();
  // Eigen's estimator can miss exactly zero pivots; min|u_ii| / max|u_ii| is an
  // upper bound of the reciprocal condition of U and catches them.
  const auto pivots = f.lu.matrixLU().diagonal().cwiseAbs();
  if (pivots.size() > 0) {
    const double top = pivots.maxCoeff();
    f.rcond = std::min(f.rcond, top > 0.0 ? pivots.minCoeff() / top : 0.0);
  }
  if (!std::isfinite(f.rcond)) f.rcond = 0.0;
  return f;
}

/// Frobenius norm; the default matrix norm for residuals throughout the library.
inline double norm(const Matrix& a) { return a.norm(); }

struct PowerIterationOptions {
  int max_iterations = 200;
  double relative_tolerance = 1e-10;
  std::uint64_t seed = 0x5eed;
};

/// Largest singular value of `a` by power iteration on a^* a.
///
/// The start vector is drawn from a fixed-seed generator so repeated calls are
/// bit-identical. Stops after `max_iterations` or once the estimate changes by
/// less than `relative_tolerance` between sweeps. The result is a lower bound
/// of the true spectral norm up to rounding.
inline double operator_norm(const Matrix& a, const PowerIterationOptions& opts = {}) {
  if (a.size() == 0) return 0.0;
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  Vector v(a.cols());
  for (Index i = 0; i < v.size(); ++i) v(i) = cplx(normal(rng), normal(rng));
  v.normalize();

  double estimate = 0.0;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Vector av = a * v;
    const Vector w = a.adjoint() * av;
    const double next = av.norm();
    const double wn = w.norm();
    if (wn == 0.0) return next;
    v = w / wn;
    if (it > 0 && std::abs(next - estimate) <= opts.relative_tolerance * next) {
      estimate = next;
      break;
    }
    estimate = next;
  }
  return std::max(estimate, (a * v).norm());
}

}  // namespace linalg
}  // namespace karner
