#pragma once

// Finite-dimensional resolvent formula for K = D (x) I + sum_j P_j (x) H_j.
//
// All operators act on T (x) H in T-major ordering (index = t * dim_H + h).
// Given complete idempotent families {Q_k}, {P_j} on T, scalars lambda_k and
// operators H_0..H_N on H:
//
//   D         = sum_k lambda_k Q_k
//   K0        = D (x) I + I (x) H_0
//   K         = D (x) I + sum_j P_j (x) H_j
//   Lambda(z) = sum_{j,k} P_j Q_k (x) [(H_j + lambda_k - z)^-1 - (H_0 + lambda_k - z)^-1]
//
// and then (K - z)^-1 = ((K0 - z)^-1 + Lambda(z)) (I + [D (x) I, Lambda(z)])^-1
// wherever the right-hand side is defined.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "karner/errors.hpp"
#include "karner/linalg.hpp"

namespace karner::tensor_core {

/// A complete set of idempotents on a dim-dimensional space. Members need not
/// be Hermitian.
struct ProjectorFamily {
  Index dim = 0;
  std::vector<Matrix> members;

  static double default_tolerance(Index dim) { return 1e-12 * static_cast<double>(dim); }

  /// Largest Frobenius defect of Q_k Q_k' = delta_kk' Q_k and sum_k Q_k = I.
  double algebra_defect() const {
    double worst = 0.0;
    Matrix sum = Matrix::Zero(dim, dim);
    for (std::size_t a = 0; a < members.size(); ++a) {
      sum += members[a];
      for (std::size_t b = 0; b < members.size(); ++b) {
        Matrix prod = members[a] * members[b];
        if (a == b) prod -= members[a];
        worst = std::max(worst, prod.norm());
      }
    }
    return std::max(worst, (sum - linalg::identity(dim)).norm());
  }

  bool is_complete(double tol) const { return algebra_defect() <= tol; }
  bool is_complete() const { return is_complete(default_tolerance(dim)); }
};

struct KarnerModel {
  Index dim_T = 0;
  Index dim_H = 0;
  std::vector<cplx> lambdas;
  ProjectorFamily q_family;
  ProjectorFamily p_family;
  std::vector<Matrix> h_ops;  ///< H_0 .. H_N; h_ops[0] is the reference operator.

  std::size_t M() const { return lambdas.size(); }
  std::size_t N() const { return p_family.members.size(); }
  Index dim() const { return dim_T * dim_H; }

  /// Throws InvalidModel on inconsistent sizes. Does not check projector algebra.
  void validate() const {
    if (dim_T <= 0 || dim_H <= 0) throw InvalidModel("dimensions must be positive");
    if (q_family.dim != dim_T || p_family.dim != dim_T)
      throw InvalidModel("projector families must act on the dim_T space");
    if (lambdas.size() != q_family.members.size())
      throw InvalidModel("need one lambda per Q projector");
    if (lambdas.empty() || p_family.members.empty())
      throw InvalidModel("projector families must be nonempty");
    if (h_ops.size() != p_family.members.size() + 1)
      throw InvalidModel("need H_0 plus one operator per P projector");
    for (const auto& q : q_family.members)
      if (q.rows() != dim_T || q.cols() != dim_T) throw InvalidModel("Q member has wrong shape");
    for (const auto& p : p_family.members)
      if (p.rows() != dim_T || p.cols() != dim_T) throw InvalidModel("P member has wrong shape");
    for (const auto& h : h_ops)
      if (h.rows() != dim_H || h.cols() != dim_H) throw InvalidModel("H operator has wrong shape");
  }
};

struct ReportFlags {
  bool singular_factor = false;
  bool z_in_spectrum = false;

  bool any() const { return singular_factor || z_in_spectrum; }
};

struct VerificationReport {
  cplx z;
  double abs_residual = std::numeric_limits<double>::infinity();
  double rel_residual = std::numeric_limits<double>::infinity();
  /// 1 / rcond of I + [D (x) I, Lambda(z)]; infinite when it was never formed.
  double commutator_factor_condition = std::numeric_limits<double>::infinity();
  ReportFlags flags;
  bool passed = false;
};

inline Matrix assemble_D(const KarnerModel& model) {
  Matrix d = Matrix::Zero(model.dim_T, model.dim_T);
  for (std::size_t k = 0; k < model.M(); ++k) d += model.lambdas[k] * model.q_family.members[k];
  return d;
}

inline Matrix assemble_K0(const KarnerModel& model, std::optional<cplx> z_shift = std::nullopt) {
  Matrix k0 = linalg::kron(assemble_D(model), linalg::identity(model.dim_H)) +
              linalg::kron(linalg::identity(model.dim_T), model.h_ops[0]);
  if (z_shift) k0.diagonal().array() -= *z_shift;
  return k0;
}

inline Matrix assemble_K(const KarnerModel& model) {
  Matrix k = linalg::kron(assemble_D(model), linalg::identity(model.dim_H));
  for (std::size_t j = 0; j < model.N(); ++j)
    k += linalg::kron(model.p_family.members[j], model.h_ops[j + 1]);
  return k;
}

/// D (x) I restricted to H-identity; convenient for commutators.
inline Matrix lift_D(const KarnerModel& model) {
  return linalg::kron(assemble_D(model), linalg::identity(model.dim_H));
}

namespace detail {

/// (H + lambda - z)^-1, refusing numerically singular shifts.
inline Matrix shifted_inverse(const Matrix& h, cplx lambda, cplx z, int j, int k) {
  Matrix a = h;
  a.diagonal().array() += lambda - z;
  const auto f = linalg::factorize(a);
  if (f.singular()) throw SingularShift(j, k, f.rcond);
  return f.lu.inverse();
}

}  // namespace detail

inline Matrix assemble_Lambda(const KarnerModel& model, cplx z) {
  Matrix lambda_op = Matrix::Zero(model.dim(), model.dim());
  for (std::size_t k = 0; k < model.M(); ++k) {
    const Matrix r0 = detail::shifted_inverse(model.h_ops[0], model.lambdas[k], z, 0,
                                              static_cast<int>(k));
    for (std::size_t j = 0; j < model.N(); ++j) {
      const Matrix rj = detail::shifted_inverse(model.h_ops[j + 1], model.lambdas[k], z,
                                                static_cast<int>(j + 1), static_cast<int>(k));
      const Matrix pq = model.p_family.members[j] * model.q_family.members[k];
      lambda_op += linalg::kron(pq, rj - r0);
    }
  }
  return lambda_op;
}

/// [D (x) I, Lambda(z)].
inline Matrix assemble_commutator(const KarnerModel& model, const Matrix& lambda_op) {
  const Matrix d = lift_D(model);
  return d * lambda_op - lambda_op * d;
}

/// Dense inverse of K - z.
inline Matrix direct_resolvent(const KarnerModel& model, cplx z) {
  Matrix a = assemble_K(model);
  a.diagonal().array() -= z;
  const auto f = linalg::factorize(a);
  if (f.singular()) throw SpectrumHit(f.rcond);
  return f.lu.inverse();
}

namespace detail {

struct KarnerPieces {
  Matrix result;
  double factor_rcond = 0.0;
};

inline KarnerPieces karner_pieces(const KarnerModel& model, cplx z) {
  const Matrix lambda_op = assemble_Lambda(model, z);

  const auto k0 = linalg::factorize(assemble_K0(model, z));
  if (k0.singular()) throw SpectrumHit(k0.rcond);
  const Matrix r0 = k0.lu.inverse();

  Matrix factor = assemble_commutator(model, lambda_op);
  factor.diagonal().array() += 1.0;
  // X (I + C) = R0 + Lambda, solved as (I + C)^T X^T = (R0 + Lambda)^T.
  const auto f = linalg::factorize(factor.transpose());
  if (f.singular()) throw SingularFactor(f.rcond);
  const Matrix rhs = (r0 + lambda_op).transpose();
  return {f.lu.solve(rhs).transpose(), f.rcond};
}

}  // namespace detail

/// Right-hand side of the resolvent formula.
inline Matrix karner_resolvent(const KarnerModel& model, cplx z) {
  return detail::karner_pieces(model, z).result;
}

/// Compares karner_resolvent against direct_resolvent. Never throws on
/// numerical failure; problems are carried in the report flags.
inline VerificationReport verify_karner(const KarnerModel& model, cplx z, double tol) {
  VerificationReport report;
  report.z = z;

  Matrix direct;
  try {
    direct = direct_resolvent(model, z);
  } catch (const SpectrumHit&) {
    report.flags.z_in_spectrum = true;
  }

  detail::KarnerPieces pieces;
  bool have_rhs = false;
  try {
    pieces = detail::karner_pieces(model, z);
    have_rhs = true;
  } catch (const SingularShift&) {
    report.flags.z_in_spectrum = true;
  } catch (const SpectrumHit&) {
    report.flags.z_in_spectrum = true;
  } catch (const SingularFactor& e) {
    report.flags.singular_factor = true;
    report.commutator_factor_condition = e.rcond > 0 ? 1.0 / e.rcond
                                                     : std::numeric_limits<double>::infinity();
  }

  if (have_rhs) report.commutator_factor_condition = 1.0 / pieces.factor_rcond;
  if (have_rhs && !report.flags.z_in_spectrum) {
    report.abs_residual = linalg::norm(pieces.result - direct);
    report.rel_residual = report.abs_residual / linalg::norm(direct);
  }
  report.passed = !report.flags.any() && report.rel_residual <= tol;
  return report;
}

/// Relative defect of the equivalent polynomial identity
///   K0 - K = (Lambda (D (x) I) + (sum_j P_j (x) (H_j - z)) Lambda) (K0 - z),
/// normalized by 1 + ||K0 - K||.
inline double verify_intermediate(const KarnerModel& model, cplx z) {
  const Matrix lambda_op = assemble_Lambda(model, z);
  const Matrix k0 = assemble_K0(model);
  const Matrix diff = k0 - assemble_K(model);
  Matrix pz = Matrix::Zero(model.dim(), model.dim());
  for (std::size_t j = 0; j < model.N(); ++j) {
    Matrix hz = model.h_ops[j + 1];
    hz.diagonal().array() -= z;
    pz += linalg::kron(model.p_family.members[j], hz);
  }
  Matrix k0z = k0;
  k0z.diagonal().array() -= z;
  const Matrix rhs = (lambda_op * lift_D(model) + pz * lambda_op) * k0z;
  return linalg::norm(diff - rhs) / (1.0 + linalg::norm(diff));
}

namespace detail {

inline Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  // Standard complex Gaussian: E|x|^2 = 1.
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = cplx(normal(rng), normal(rng));
  return m;
}

inline Matrix random_unitary(Index n, std::mt19937_64& rng) {
  const Matrix g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the phase ambiguity of QR so the distribution is Haar.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

/// Invertible S = U diag(sigma) V with sigma in [0.5, 2], so cond(S) <= 4.
inline Matrix random_invertible(Index n, std::mt19937_64& rng) {
  const Matrix u = random_unitary(n, rng);
  const Matrix v = random_unitary(n, rng);
  std::uniform_real_distribution<double> sigma(0.5, 2.0);
  Vector s(n);
  for (Index i = 0; i < n; ++i) s(i) = sigma(rng);
  return u * s.asDiagonal() * v;
}

inline std::vector<Index> partition_sizes(Index dim, std::size_t parts) {
  std::vector<Index> sizes(parts, dim / static_cast<Index>(parts));
  for (Index i = 0; i < dim % static_cast<Index>(parts); ++i) sizes[static_cast<std::size_t>(i)] += 1;
  return sizes;
}

/// Coordinate block projectors conjugated by S: S E_k S^-1.
inline ProjectorFamily conjugated_family(Index dim, std::size_t parts, const Matrix& s) {
  const Matrix s_inv = s.inverse();
  ProjectorFamily family{dim, {}};
  Index offset = 0;
  for (Index size : partition_sizes(dim, parts)) {
    Matrix e = Matrix::Zero(dim, dim);
    e.block(offset, offset, size, size).setIdentity();
    family.members.push_back(s * e * s_inv);
    offset += size;
  }
  return family;
}

}  // namespace detail

/// Seeded random instance. The Q and P families are conjugated by independent
/// random similarities, so they generically do not commute. With `hermitian`
/// the similarities are unitary, the H_j Hermitian and the lambda_k real.
inline KarnerModel random_model(Index dim_T, Index dim_H, std::size_t M, std::size_t N,
                                std::uint64_t seed, bool hermitian = false) {
  if (dim_T <= 0 || dim_H <= 0) throw BadPartition("dimensions must be positive");
  if (M == 0 || N == 0 || static_cast<Index>(M) > dim_T || static_cast<Index>(N) > dim_T)
    throw BadPartition("M and N must lie in [1, dim_T]");

  std::mt19937_64 rng(seed);
  KarnerModel model;
  model.dim_T = dim_T;
  model.dim_H = dim_H;

  const auto similarity = [&](Index n) {
    return hermitian ? detail::random_unitary(n, rng) : detail::random_invertible(n, rng);
  };
  model.q_family = detail::conjugated_family(dim_T, M, similarity(dim_T));
  model.p_family = detail::conjugated_family(dim_T, N, similarity(dim_T));

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t k = 0; k < M; ++k) {
    if (hermitian) {
      model.lambdas.emplace_back(2.0 * unit(rng) - 1.0, 0.0);
    } else {
      // Uniform on the unit disc.
      const double r = std::sqrt(unit(rng));
      const double phi = 2.0 * M_PI * unit(rng);
      model.lambdas.push_back(std::polar(r, phi));
    }
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(dim_H));
  for (std::size_t j = 0; j <= N; ++j) {
    Matrix h = detail::gaussian_matrix(dim_H, dim_H, rng) * scale;
    if (hermitian) h = (0.5 * (h + h.adjoint())).eval();
    model.h_ops.push_back(std::move(h));
  }
  return model;
}

}  // namespace karner::tensor_core
