#pragma once

// Gibbs states and the partition function, by trace and by closed form.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qutrit/errors.hpp"
#include "qutrit/model.hpp"
#include "qutrit/numerics.hpp"
#include "qutrit/spin_algebra.hpp"

namespace qutrit {

/// Real symmetric, positive semidefinite, unit-trace two-qutrit state.
template <typename Scalar = double>
class DensityMatrix {
 public:
  /// Validates symmetry (1e-13), trace (1e-12) and positivity (1e-12).
  static DensityMatrix from_matrix(const OperatorMatrix<Scalar>& m) {
    const Scalar defect = symmetry_defect(m);
    if (!(defect <= Scalar(1e-13))) {
      throw Error(ErrorCode::kNotSymmetric, "density matrix asymmetry " + std::to_string(static_cast<double>(defect)));
    }
    if (!(std::abs(m.trace() - Scalar(1)) <= Scalar(1e-12))) {
      throw Error(ErrorCode::kNotNormalized, "density matrix trace " + std::to_string(static_cast<double>(m.trace())));
    }
    const Scalar min_eig = eigh_symmetric(m).eigenvalues(0);
    if (!(min_eig > Scalar(-1e-12))) {
      throw Error(ErrorCode::kNotNormalized,
                  "density matrix has negative eigenvalue " + std::to_string(static_cast<double>(min_eig)));
    }
    return DensityMatrix(m);
  }

  /// |psi><psi| for a normalised state vector.
  static DensityMatrix pure(const PairVector<Scalar>& psi) {
    if (!(std::abs(psi.squaredNorm() - Scalar(1)) <= Scalar(1e-12))) {
      throw Error(ErrorCode::kNotNormalized, "state norm^2 " + std::to_string(static_cast<double>(psi.squaredNorm())));
    }
    return DensityMatrix(psi * psi.transpose());
  }

  /// Caller guarantees the invariants (states assembled from an eigenbasis).
  static DensityMatrix trusted(const OperatorMatrix<Scalar>& m) { return DensityMatrix(m); }

  const OperatorMatrix<Scalar>& matrix() const { return m_; }
  Scalar operator()(int r, int c) const { return m_(r, c); }

 private:
  explicit DensityMatrix(const OperatorMatrix<Scalar>& m) : m_(Scalar(0.5) * (m + m.transpose())) {}
  OperatorMatrix<Scalar> m_;
};

/// rho = V diag(w) V^T with w the shifted Boltzmann weights of eig(h).
template <typename Scalar>
DensityMatrix<Scalar> gibbs_state(const OperatorMatrix<Scalar>& h, Scalar temperature) {
  require_positive_temperature(temperature);
  const auto eig = eigh_symmetric(h);
  const auto w = boltzmann_weights(eig.eigenvalues, temperature);
  return DensityMatrix<Scalar>::trusted(eig.eigenvectors * w.asDiagonal() * eig.eigenvectors.transpose());
}

/// Tr exp(-h/T) = exp(-E_min/T) * sum_l exp(-(E_l - E_min)/T).
template <typename Scalar>
LogScaled<Scalar> partition_function_trace(const OperatorMatrix<Scalar>& h, Scalar temperature) {
  require_positive_temperature(temperature);
  return boltzmann_sum(eigh_symmetric(h).eigenvalues, temperature);
}

namespace detail {

// sum_i coef_i * exp(exponent_i), returned with the largest exponent factored out.
template <typename Scalar, std::size_t N>
LogScaled<Scalar> sum_of_exponentials(const std::array<Scalar, N>& coef, const std::array<Scalar, N>& exponent) {
  const Scalar top = *std::max_element(exponent.begin(), exponent.end());
  Scalar sum = 0;
  for (std::size_t i = 0; i < N; ++i) sum += coef[i] * std::exp(exponent[i] - top);
  return {sum, -top};
}

}  // namespace detail

/// Z = e^{-K/T} (1 + 2cosh(2B/T) + 2cosh(sqrt3 K/(2T)) + 4 e^{3K/(4T)} cosh(B/T)),
/// with every cosh expanded into exponentials so the largest term can be
/// factored out.
template <typename Scalar>
LogScaled<Scalar> partition_function_closed(const ModelParams<Scalar>& p, Scalar temperature) {
  require_positive_temperature(temperature);
  require_closed_form(p);
  const Scalar T = temperature;
  const Scalar base = -p.K / T;
  const Scalar x = std::sqrt(Scalar(3)) * p.K / (2 * T);
  const std::array<Scalar, 7> coef = {1, 1, 1, 1, 1, 2, 2};
  const std::array<Scalar, 7> exponent = {
      base,
      base + 2 * p.B / T,
      base - 2 * p.B / T,
      base + x,
      base - x,
      base + 3 * p.K / (4 * T) + p.B / T,
      base + 3 * p.K / (4 * T) - p.B / T,
  };
  return detail::sum_of_exponentials(coef, exponent);
}

}  // namespace qutrit
