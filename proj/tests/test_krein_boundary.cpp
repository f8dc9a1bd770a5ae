#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "karner/krein_boundary.hpp"
#include "karner/linalg.hpp"
#include "oracles.hpp"

using namespace karner;
using namespace karner::krein_boundary;

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

// Reference values computed with mpmath at 30 digits.
constexpr double kCoth1 = 1.31303528549933130363616124693;
const cplx kTau2i{0.325196290520761133635357482656, 0.542817852375163815000491726261};
const cplx kTauSq2i{-0.230153759838151883257180628065, 0.00782142465103968434964606180539};
const cplx kGreen_25_75_2i{-0.100166182712401934594260223627, 0.48015024953631785542548432676};
const cplx kKrein_05_2i_25_75{0.10897286809961119976669135725, -0.0181387471716954541547663257541};

/// Sample of z with |Im z| >= 0.5 and |z| <= 50.
std::vector<cplx> z_sample() {
  std::vector<cplx> zs;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const double re = -30.0 + 6.5 * i;
      const double im = (j % 2 ? -1.0 : 1.0) * (0.5 + 3.0 * (j / 2));
      const cplx z(re, im);
      if (std::abs(z) <= 50.0) zs.push_back(z);
    }
  return zs;
}

}  // namespace

TEST(SpectralParameter, PrincipalRootSquaresBack) {
  for (const cplx z : {cplx(-1.0, 0.0), 2.0 * I, cplx(3.0, -4.0), cplx(-7.0, -0.1)}) {
    const SpectralParameter p(z);
    EXPECT_GE(p.sqrt_z.real(), 0.0);
    EXPECT_LT(std::abs(p.sqrt_z * p.sqrt_z - z), 1e-14 * std::abs(z));
  }
}

TEST(NeumannBasis, SpectralData) {
  const NeumannBasis b{5};
  const auto mu = b.eigenvalues();
  const auto tau = b.boundary_values();
  for (int n = 1; n <= 5; ++n) EXPECT_GT(mu(n), mu(n - 1));
  EXPECT_EQ(tau(0), 1.0);
  for (int n = 1; n <= 5; ++n) EXPECT_DOUBLE_EQ(tau(n) * tau(n), 2.0);
}

TEST(Green0, Symmetric) {
  const cplx z(3.0, 2.0);
  for (double x : {0.0, 0.1, 0.4, 0.9, 1.0})
    for (double y : {0.0, 0.25, 0.6, 1.0}) EXPECT_EQ(green0(x, y, z), green0(y, x, z));
}

TEST(Green0, CornerAtMinusOneIsCoth1) {
  EXPECT_NEAR(green0(0.0, 0.0, -1.0).real(), kCoth1, 1e-14);
  const auto series = oracle::eigen_series_tau(-1.0, 1000000);
  EXPECT_LT(series.tail_bound, 1e-12);
  EXPECT_NEAR(series.value.real(), kCoth1, 1e-11);
  EXPECT_NEAR(std::abs(green0(0.0, 0.0, -1.0) - series.value), 0.0, 1e-8);
}

TEST(Green0, InteriorValue) {
  EXPECT_LT(std::abs(green0(0.25, 0.75, 2.0 * I) - kGreen_25_75_2i), 1e-14);
}

TEST(Green0, BranchIndependent) {
  for (const cplx z : {2.0 * I, cplx(-4.0, 1.0), cplx(30.0, -2.0)}) {
    const SpectralParameter p(z);
    for (double x : {0.0, 0.3, 1.0})
      for (double y : {0.2, 0.7}) {
        const cplx a = green0(x, y, p), b = green0(x, y, p.other_branch());
        EXPECT_LE(std::abs(a - b), 1e-14 * std::abs(a));
      }
    EXPECT_LE(std::abs(tau_R0_tau(p) - tau_R0_tau(p.other_branch())), 1e-14 * std::abs(tau_R0_tau(p)));
  }
}

TEST(Green0, PoleGuard) {
  EXPECT_THROW(green0(0.2, 0.3, 0.0), NearPole);
  EXPECT_THROW(green0(0.2, 0.3, 4.0 * kPi * kPi), NearPole);
  EXPECT_THROW(tau_R0_tau(cplx(kPi * kPi, 1e-11)), NearPole);
  EXPECT_NO_THROW(tau_R0_tau(cplx(kPi * kPi, 1e-8)));
}

TEST(Green0, SolvesTheOdeAwayFromTheDiagonal) {
  const double h = 1e-4;
  for (const cplx z : {2.0 * I, cplx(5.0, 1.0), cplx(-3.0, -2.0)})
    for (double y : {0.3, 0.7})
      for (double x : {0.1, 0.5, 0.9}) {
        if (std::abs(x - y) < 10 * h) continue;
        const cplx g = green0(x, y, z);
        const cplx g2 = (green0(x + h, y, z) - 2.0 * g + green0(x - h, y, z)) / (h * h);
        EXPECT_LE(std::abs(-g2 - z * g), 1e-4 * std::abs(z) * std::abs(g)) << "x " << x << " y " << y;
      }
}

TEST(Green0, NeumannAtBothEnds) {
  const double h = 1e-6;
  for (const cplx z : {2.0 * I, cplx(5.0, 1.0)})
    for (double y : {0.3, 0.7}) {
      const cplx scale = green0(0.0, y, z);
      EXPECT_LE(std::abs((green0(h, y, z) - green0(0.0, y, z)) / h), 1e-4 * (1.0 + std::abs(scale)));
      EXPECT_LE(std::abs((green0(1.0, y, z) - green0(1.0 - h, y, z)) / h), 1e-4 * (1.0 + std::abs(scale)));
    }
}

TEST(TauR0Tau, ZeroOfCotangent) { EXPECT_NEAR(std::abs(tau_R0_tau(kPi * kPi / 4.0)), 0.0, 1e-15); }

TEST(TauR0Tau, MinusOneIsCoth1) { EXPECT_NEAR(tau_R0_tau(-1.0).real(), kCoth1, 1e-14); }

TEST(TauR0Tau, TwoIMatchesSeriesOracle) {
  const auto series = oracle::eigen_series_tau(2.0 * I, 100000);
  EXPECT_LT(std::abs(tau_R0_tau(2.0 * I) - series.value), 1e-8);
  EXPECT_LT(std::abs(series.value - kTau2i), series.tail_bound + 1e-13);
  EXPECT_LT(std::abs(tau_R0_tau(2.0 * I) - kTau2i), 1e-14);
}

TEST(TauR0Tau, ConsistentWithGreenCorner) {
  for (const cplx z : z_sample())
    EXPECT_LE(std::abs(tau_R0_tau(z) - green0(0.0, 0.0, z)), 1e-12 * std::max(1.0, std::abs(tau_R0_tau(z))));
}

TEST(TauR0Tau, StableForLargeImaginaryPart) {
  for (double r : {1e3, 1e5, 1e7}) {
    const cplx t = tau_R0_tau(r * I);
    EXPECT_TRUE(std::isfinite(t.real()) && std::isfinite(t.imag()));
    // Large-|z| asymptotics: tau R0 tau* ~ 1/sqrt(-z).
    EXPECT_LT(std::abs(t - 1.0 / std::sqrt(-r * I)), 1e-6 / std::sqrt(r));
  }
}

TEST(TauR0SqTau, MatchesDifferentiatedSeries) {
  EXPECT_LT(std::abs(tau_R0sq_tau(2.0 * I) - kTauSq2i), 1e-14);
  EXPECT_LT(std::abs(tau_R0sq_tau(cplx(7.0, 1.0)) - oracle::eigen_series_tau_sq(cplx(7.0, 1.0), 20000)), 1e-12);
}

TEST(KreinDiffKernel, VanishesForZeroCoupling) {
  for (double x : {0.0, 0.5, 1.0}) EXPECT_EQ(krein_diff_kernel(0.0, 2.0 * I, x, 0.3), cplx(0.0));
}

TEST(KreinDiffKernel, Symmetric) {
  for (double x : {0.0, 0.2, 0.5})
    for (double y : {0.1, 0.9, 1.0}) {
      const cplx a = krein_diff_kernel(0.7, cplx(1.0, 2.0), x, y);
      EXPECT_LE(std::abs(a - krein_diff_kernel(0.7, cplx(1.0, 2.0), y, x)), 1e-15 * std::abs(a));
    }
}

TEST(KreinDiffKernel, ReferenceValue) {
  EXPECT_LT(std::abs(krein_diff_kernel(0.5, 2.0 * I, 0.25, 0.75) - kKrein_05_2i_25_75), 1e-14);
}

TEST(KreinDiffKernel, MatchesFiniteDifferenceResolvent) {
  const double g = 0.5;
  const cplx z = 2.0 * I;
  const int cells = 10000;
  const auto with_g = oracle::fd_green_column(g, z, cells, 0.75);
  const auto without = oracle::fd_green_column(0.0, z, cells, 0.75);
  const int xi = cells / 4;
  const cplx fd = with_g[xi] - without[xi];
  EXPECT_LT(std::abs(krein_diff_kernel(g, z, 0.25, 0.75) - fd), 1e-5);
  // The unperturbed column itself reproduces G0.
  EXPECT_LT(std::abs(green0(0.25, 0.75, z) - without[xi]), 1e-5);
}

TEST(KreinDiffKernel, PoleAtRobinEigenvalue) {
  // cot(s) = s has its first root at s^2 = 0.740173884394967 (mpmath): an eigenvalue of H_1.
  EXPECT_THROW(krein_diff_kernel(1.0, 0.740173884394967042, 0.1, 0.2), KreinPole);
}

TEST(KreinPoles, MatchFiniteDifferenceEigenvalues) {
  // Roots of 1 + tau R0(z) tau* on the real axis between consecutive Neumann
  // eigenvalues, located by bisection, against the discretized H_1.
  const double g = 1.0;
  const auto f = [&](double z) { return (1.0 + g * tau_R0_tau(z)).real(); };
  const Eigen::VectorXd fd = oracle::fd_eigenvalues(g, 2000);
  for (int n = 0; n < 4; ++n) {
    double lo = NeumannBasis::eigenvalue(n) + 1e-6;
    double hi = NeumannBasis::eigenvalue(n + 1) - 1e-6;
    ASSERT_LT(f(lo) * f(hi), 0.0);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(lo) * f(mid) <= 0.0 ? hi : lo) = mid;
    }
    EXPECT_NEAR(0.5 * (lo + hi), fd(n), 1e-3 * std::max(1.0, fd(n))) << "n = " << n;
  }
}

TEST(RankOneNorm, DecaysAlongImaginaryAxis) {
  EXPECT_GT(rank_one_norm(10.0 * I), rank_one_norm(100.0 * I));
  EXPECT_GT(rank_one_norm(100.0 * I), rank_one_norm(1000.0 * I));
}

TEST(RankOneNorm, ConjugationSymmetric) {
  EXPECT_DOUBLE_EQ(rank_one_norm(cplx(-1.0, 1.0)), rank_one_norm(cplx(-1.0, -1.0)));
}

TEST(RankOneNorm, RealAxisRejected) { EXPECT_THROW(rank_one_norm(cplx(3.0, 1e-14)), RealAxis); }

TEST(RankOneNorm, MatchesTruncatedMatrixNorm) {
  // R0 tau* tau R0 in the first 2001 Neumann modes is u u^T; its largest singular value.
  const int n_max = 2000;
  const Vector u = boundary_resolvent_vector(2.0 * I, n_max);
  const Matrix m = u * u.transpose();
  EXPECT_NEAR(linalg::operator_norm(m), rank_one_norm(2.0 * I), 1e-6);
  EXPECT_NEAR(rank_one_norm(2.0 * I), 0.27140892618758190750, 1e-15);
}

TEST(AlphaBound, ClosedFormValues) {
  EXPECT_NEAR(alpha_bound(4.0), std::sqrt(2.0) / 2.0, 1e-15);
  EXPECT_NEAR(alpha_bound(1.0), std::sqrt(5.0), 1e-15);
  EXPECT_GT(alpha_bound(1.0), alpha_bound(2.0));
  EXPECT_GT(alpha_bound(2.0), alpha_bound(4.0));
  EXPECT_THROW(alpha_bound(0.0), NonPositive);
  EXPECT_THROW(alpha_bound(-1.0), NonPositive);
}

TEST(Bounds, TraceAndRankOneBoundsOnGrid) {
  for (double s0 : {0.5, 1.0, 2.0, 4.0})
    for (double sign : {1.0, -1.0})
      for (int i = 0; i <= 200; ++i) {
        const cplx z(-20.0 + 0.5 * i, sign * s0);
        EXPECT_LE(std::abs(tau_R0_tau(z)), alpha_bound(s0)) << z;
        EXPECT_LE(rank_one_norm(z), alpha_bound(s0) / s0) << z;
      }
}

TEST(SpatialResolventMatrix, ZeroCouplingIsDiagonal) {
  const Matrix r = spatial_resolvent_matrix(0.0, 2.0 * I, 10);
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(r(n, n), 1.0 / (NeumannBasis::eigenvalue(n) - 2.0 * I));
  EXPECT_EQ((r - Matrix(r.diagonal().asDiagonal())).norm(), 0.0);
}

TEST(SpatialResolventMatrix, CorrectionTraceMatchesSeries) {
  const double g = 0.5;
  const cplx z = 2.0 * I;
  const int n_max = 4000;
  const Matrix corr = spatial_krein_correction(g, z, n_max);
  const cplx expected = krein_coefficient(g, SpectralParameter(z)) * oracle::eigen_series_tau_sq(z, 200000);
  EXPECT_LT(std::abs(corr.trace() - expected), 1e-12);
}

TEST(SpatialResolventMatrix, CornerElementStableUnderDoubling) {
  const double g = 0.5;
  const cplx z = 2.0 * I;
  cplx previous = spatial_resolvent_matrix(g, z, 250)(0, 0);
  for (int n_max : {500, 1000}) {
    const cplx next = spatial_resolvent_matrix(g, z, n_max)(0, 0);
    EXPECT_LT(std::abs(next - previous), 1e-6);
    previous = next;
  }
}

TEST(SpatialResolventMatrix, TruncatedClosureInvertsGalerkinMatrix) {
  const double g = 0.8;
  const cplx z(3.0, 1.5);
  const int n_max = 30;
  const NeumannBasis b{n_max};
  const Eigen::VectorXd tau = b.boundary_values();
  Matrix h = (g * tau * tau.transpose()).cast<cplx>();
  h.diagonal() += b.eigenvalues().cast<cplx>();
  h.diagonal().array() -= z;
  const Matrix r = spatial_resolvent_matrix(g, z, n_max, TraceClosure::truncated);
  EXPECT_LT((h * r - Matrix::Identity(n_max + 1, n_max + 1)).norm(), 1e-12);
}

TEST(SpatialResolventMatrix, KreinPoleAtRobinEigenvalue) {
  EXPECT_THROW(spatial_resolvent_matrix(1.0, 0.740173884394967042, 5), KreinPole);
}
