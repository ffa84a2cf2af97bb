#pragma once

// Partial transpose, negativity and their closed-form oracles.

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <string>

#include "qutrit/errors.hpp"
#include "qutrit/model.hpp"
#include "qutrit/numerics.hpp"
#include "qutrit/spin_algebra.hpp"
#include "qutrit/thermal.hpp"

namespace qutrit {

enum class Subsystem { kA, kB };

/// Below this a negativity is numerical noise; states above it count as entangled.
inline constexpr double kEntanglementThreshold = 1e-9;

template <typename Scalar = double>
struct PartialTranspose {
  OperatorMatrix<Scalar> matrix;
  Subsystem subsystem = Subsystem::kA;
};

template <typename Scalar>
OperatorMatrix<Scalar> partial_transpose(const OperatorMatrix<Scalar>& rho, Subsystem subsystem) {
  OperatorMatrix<Scalar> out;
  for (int a = 0; a < kSiteDim; ++a) {
    for (int ap = 0; ap < kSiteDim; ++ap) {
      // Block (a, ap) is a 3x3 matrix over the second site's indices.
      if (subsystem == Subsystem::kA) {
        out.template block<kSiteDim, kSiteDim>(kSiteDim * a, kSiteDim * ap) =
            rho.template block<kSiteDim, kSiteDim>(kSiteDim * ap, kSiteDim * a);
      } else {
        out.template block<kSiteDim, kSiteDim>(kSiteDim * a, kSiteDim * ap) =
            rho.template block<kSiteDim, kSiteDim>(kSiteDim * a, kSiteDim * ap).transpose();
      }
    }
  }
  return out;
}

template <typename Scalar>
PartialTranspose<Scalar> partial_transpose(const DensityMatrix<Scalar>& rho, Subsystem subsystem) {
  return {partial_transpose<Scalar>(rho.matrix(), subsystem), subsystem};
}

/// Scalars entering the closed-form partial transpose of the Gibbs state:
///   M+- = +-3 + 3 cosh(sqrt3 K / 2T) - sqrt3 sinh(sqrt3 K / 2T)
///   Q   = exp(-m/T) (exp(sqrt3 K/T) - 1) / (2 sqrt3)
///   P   = exp(-m/T) (3 - sqrt3 + (3 + sqrt3) exp(sqrt3 K/T)) / 6
///   m   = (2 + sqrt3) K / 2
/// Values are raw (not divided by Z) and may overflow for extreme K/T;
/// analytic_pt_matrix does not use them directly.
template <typename Scalar = double>
struct AnalyticPTEntries {
  Scalar M_plus;
  Scalar M_minus;
  Scalar Q;
  Scalar P;
  Scalar m;
};

template <typename Scalar>
AnalyticPTEntries<Scalar> analytic_pt_entries(const ModelParams<Scalar>& p, Scalar temperature) {
  require_positive_temperature(temperature);
  require_closed_form(p);
  const Scalar r3 = std::sqrt(Scalar(3));
  const Scalar T = temperature;
  const Scalar x = r3 * p.K / (2 * T);
  AnalyticPTEntries<Scalar> e;
  e.m = (2 + r3) / 2 * p.K;
  e.M_plus = Scalar(3) + 3 * std::cosh(x) - r3 * std::sinh(x);
  e.M_minus = Scalar(-3) + 3 * std::cosh(x) - r3 * std::sinh(x);
  e.Q = std::exp(-e.m / T) / (2 * r3) * (std::exp(r3 * p.K / T) - 1);
  e.P = std::exp(-e.m / T) / 6 * (3 - r3 + (3 + r3) * std::exp(r3 * p.K / T));
  return e;
}

/// The closed-form partial transpose (subsystem A) of the Gibbs state,
/// already divided by Z. Each entry is expanded into signed exponentials and
/// evaluated relative to the partition function's largest term.
template <typename Scalar>
PartialTranspose<Scalar> analytic_pt_matrix(const ModelParams<Scalar>& p, Scalar temperature) {
  require_positive_temperature(temperature);
  require_closed_form(p);
  const Scalar r3 = std::sqrt(Scalar(3));
  const Scalar T = temperature;
  const Scalar K = p.K;
  const Scalar B = p.B;
  const auto z = partition_function_closed(p, temperature);
  // exp(a) / Z
  const auto scaled = [&](Scalar a) { return std::exp(a + z.shift) / z.mantissa; };

  const Scalar x = r3 * K / (2 * T);
  const Scalar mt = (2 + r3) / 2 * K / T;
  // 3cosh(x) - sqrt3 sinh(x), times e^{-K/T}
  const Scalar hyperbolic = (3 - r3) / 2 * scaled(x - K / T) + (3 + r3) / 2 * scaled(-x - K / T);
  const Scalar corner = (-3 * scaled(-K / T) + hyperbolic) / 6;  // M- e^{-K/T} / 6
  const Scalar middle = (3 * scaled(-K / T) + hyperbolic) / 6;   // M+ e^{-K/T} / 6
  const Scalar q = (scaled(-mt + r3 * K / T) - scaled(-mt)) / (2 * r3);
  const Scalar pp = ((3 - r3) * scaled(-mt) + (3 + r3) * scaled(-mt + r3 * K / T)) / 6;

  OperatorMatrix<Scalar> m = OperatorMatrix<Scalar>::Zero();
  m(0, 0) = scaled(-(K + 2 * B) / T);
  m(1, 1) = m(3, 3) = scaled(-(K + 4 * B) / (4 * T));
  m(5, 5) = m(7, 7) = scaled(-(K - 4 * B) / (4 * T));
  m(8, 8) = scaled(-(K - 2 * B) / T);
  m(2, 2) = m(6, 6) = middle;
  m(4, 4) = pp;
  m(0, 8) = m(8, 0) = corner;
  m(1, 5) = m(5, 1) = q;
  m(3, 7) = m(7, 3) = q;
  return {m, Subsystem::kA};
}

template <typename Scalar = double>
struct NegativityReport {
  Scalar value;               // clamped negative-eigenvalue route
  Scalar negative_sum;        // -sum of negative PT eigenvalues
  Scalar trace_norm_route;    // (||rho^T||_1 - 1) / 2
  Eigen::Matrix<Scalar, 9, 1> pt_spectrum;
};

/// Both negativity formulas from one PT spectrum. Throws FormulaMismatch if
/// they differ by more than 1e-9.
template <typename Scalar>
NegativityReport<Scalar> negativity_report(const DensityMatrix<Scalar>& rho, Subsystem subsystem = Subsystem::kA) {
  const OperatorMatrix<Scalar> pt = partial_transpose<Scalar>(rho.matrix(), subsystem);
  NegativityReport<Scalar> r;
  r.pt_spectrum = eigh_symmetric(pt).eigenvalues;
  r.negative_sum = Scalar(0);
  for (int i = 0; i < r.pt_spectrum.size(); ++i) {
    if (r.pt_spectrum(i) < 0) r.negative_sum -= r.pt_spectrum(i);
  }
  r.trace_norm_route = (r.pt_spectrum.cwiseAbs().sum() - 1) / 2;
  if (!(std::abs(r.trace_norm_route - r.negative_sum) <= Scalar(1e-9))) {
    throw Error(ErrorCode::kFormulaMismatch,
                "trace-norm route " + std::to_string(static_cast<double>(r.trace_norm_route)) +
                    " vs negative-eigenvalue route " + std::to_string(static_cast<double>(r.negative_sum)));
  }
  r.value = std::max(r.negative_sum, Scalar(0));
  return r;
}

template <typename Scalar>
Scalar negativity(const DensityMatrix<Scalar>& rho, Subsystem subsystem = Subsystem::kA) {
  return negativity_report(rho, subsystem).value;
}

/// ((sum_i |c_i|)^2 - 1) / 2 for Schmidt amplitudes c.
template <typename Scalar>
Scalar pure_state_negativity(const Eigen::Matrix<Scalar, 3, 1>& amplitudes) {
  if (!(std::abs(amplitudes.squaredNorm() - Scalar(1)) <= Scalar(1e-12))) {
    throw Error(ErrorCode::kNotNormalized,
                "sum |c_i|^2 = " + std::to_string(static_cast<double>(amplitudes.squaredNorm())));
  }
  const Scalar l1 = amplitudes.cwiseAbs().sum();
  return (l1 * l1 - 1) / 2;
}

/// Schmidt amplitudes of a two-qutrit pure state (singular values of its
/// 3x3 coefficient matrix), descending.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> schmidt_coefficients(const PairVector<Scalar>& psi) {
  Eigen::Matrix<Scalar, 3, 3> c;
  for (int a = 0; a < kSiteDim; ++a) {
    for (int b = 0; b < kSiteDim; ++b) c(a, b) = psi(kSiteDim * a + b);
  }
  return Eigen::JacobiSVD<Eigen::Matrix<Scalar, 3, 3>>(c).singularValues();
}

}  // namespace qutrit
