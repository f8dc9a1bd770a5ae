#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace karner {

/// Base class for every numerical failure raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// tensor_core

class InvalidModel : public Error {
 public:
  using Error::Error;
};

class BadPartition : public Error {
 public:
  using Error::Error;
};

/// H_j + lambda_k - z is numerically singular.
class SingularShift : public Error {
 public:
  SingularShift(int j, int k, double rcond)
      : Error("singular shifted operator H_" + std::to_string(j) + " + lambda_" +
              std::to_string(k) + " - z (rcond " + std::to_string(rcond) + ")"),
        j(j), k(k), rcond(rcond) {}
  int j;
  int k;
  double rcond;
};

/// I + [D x I, Lambda(z)] is numerically singular.
class SingularFactor : public Error {
 public:
  explicit SingularFactor(double rcond)
      : Error("commutator factor is singular (rcond " + std::to_string(rcond) + ")"),
        rcond(rcond) {}
  double rcond;
};

/// K - z (or K0 - z) is numerically singular: z sits on the spectrum.
class SpectrumHit : public Error {
 public:
  explicit SpectrumHit(double rcond)
      : Error("z lies in the spectrum (rcond " + std::to_string(rcond) + ")"), rcond(rcond) {}
  double rcond;
};

// krein_boundary

/// z is within the guard distance of a Neumann eigenvalue n^2 pi^2.
class NearPole : public Error {
 public:
  NearPole(std::complex<double> z, int n, std::optional<int> mode = std::nullopt)
      : Error(describe(z, n, mode)), z(z), n(n), mode(mode) {}
  std::complex<double> z;
  int n;
  std::optional<int> mode;  ///< Fourier mode k when raised from a shifted evaluation.

 private:
  static std::string describe(std::complex<double> z, int n, std::optional<int> mode) {
    std::string s = "z = (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                    ") is at a Neumann eigenvalue (n = " + std::to_string(n) + ")";
    if (mode) s += " for Fourier mode k = " + std::to_string(*mode);
    return s;
  }
};

/// 1 + g tau R0(z) tau* vanishes: z is an eigenvalue of H_g.
class KreinPole : public Error {
 public:
  KreinPole(double g, std::complex<double> z, std::optional<int> mode = std::nullopt)
      : Error("Krein denominator vanishes for g = " + std::to_string(g) +
              (mode ? " at Fourier mode k = " + std::to_string(*mode) : std::string{})),
        g(g), z(z), mode(mode) {}
  double g;
  std::complex<double> z;
  std::optional<int> mode;
};

class RealAxis : public Error {
 public:
  using Error::Error;
};

class NonPositive : public Error {
 public:
  using Error::Error;
};

// floquet_fermi

/// sup|g| * alpha(|Im z|) >= 1: the perturbation series is not known to converge.
class RadiusViolation : public Error {
 public:
  using Error::Error;
};

class SeriesDivergence : public Error {
 public:
  using Error::Error;
};

class Unattainable : public Error {
 public:
  using Error::Error;
};

// experiment_cli

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace karner
