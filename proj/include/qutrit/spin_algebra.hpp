#pragma once

// Spin-1 single-site operators and their two-site lifts.
//
// Two-site basis ordering is alpha-major: |1,1>, |1,0>, |1,-1>, |0,1>, |0,0>,
// |0,-1>, |-1,1>, |-1,0>, |-1,-1>, i.e. index = 3 * (1 - alpha) + (1 - beta).

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "qutrit/errors.hpp"

namespace qutrit {

inline constexpr int kSiteDim = 3;
inline constexpr int kPairDim = 9;

template <typename Scalar>
using SiteOperator = Eigen::Matrix<std::complex<Scalar>, kSiteDim, kSiteDim>;

template <typename Scalar>
using OperatorMatrix = Eigen::Matrix<Scalar, kPairDim, kPairDim>;

template <typename Scalar>
using PairVector = Eigen::Matrix<Scalar, kPairDim, 1>;

/// Index of the product state |alpha, beta> with alpha, beta in {1, 0, -1}.
constexpr int basis_index(int alpha, int beta) { return 3 * (1 - alpha) + (1 - beta); }

template <typename Scalar>
PairVector<Scalar> product_state(int alpha, int beta) {
  PairVector<Scalar> v = PairVector<Scalar>::Zero();
  v(basis_index(alpha, beta)) = Scalar(1);
  return v;
}

template <typename Scalar = double>
struct SpinComponents {
  SiteOperator<Scalar> x;
  SiteOperator<Scalar> y;
  SiteOperator<Scalar> z;
};

template <typename Scalar = double>
SpinComponents<Scalar> spin1_components() {
  using C = std::complex<Scalar>;
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  const C i(0, 1);
  SpinComponents<Scalar> s;
  s.x << C(0), C(r), C(0),
         C(r), C(0), C(r),
         C(0), C(r), C(0);
  s.y << C(0), -i * r, C(0),
         i * r, C(0), -i * r,
         C(0), i * r, C(0);
  s.z = SiteOperator<Scalar>::Zero();
  s.z(0, 0) = C(1);
  s.z(2, 2) = C(-1);
  return s;
}

/// Real part of a two-site operator whose imaginary residue must vanish.
template <typename Scalar>
OperatorMatrix<Scalar> drop_imaginary(const Eigen::Matrix<std::complex<Scalar>, kPairDim, kPairDim>& m) {
  const Scalar residue = m.imag().cwiseAbs().maxCoeff();
  if (residue >= Scalar(1e-14)) {
    throw Error(ErrorCode::kComplexResidue,
                "two-site operator has imaginary residue " + std::to_string(static_cast<double>(residue)));
  }
  return m.real();
}

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, kPairDim, kPairDim> kron_complex(const SiteOperator<Scalar>& a,
                                                                     const SiteOperator<Scalar>& b) {
  Eigen::Matrix<std::complex<Scalar>, kPairDim, kPairDim> out;
  for (int r = 0; r < kSiteDim; ++r) {
    for (int c = 0; c < kSiteDim; ++c) {
      out.template block<kSiteDim, kSiteDim>(kSiteDim * r, kSiteDim * c) = a(r, c) * b;
    }
  }
  return out;
}

/// Kronecker product a (x) b, returned real. Throws ComplexResidue unless the
/// imaginary part cancels (real factors, or S_y (x) S_y).
template <typename Scalar>
OperatorMatrix<Scalar> kron(const SiteOperator<Scalar>& a, const SiteOperator<Scalar>& b) {
  return drop_imaginary<Scalar>(kron_complex<Scalar>(a, b));
}

template <typename Scalar = double>
SiteOperator<Scalar> site_identity() {
  return SiteOperator<Scalar>::Identity();
}

/// S_1z + S_2z.
template <typename Scalar = double>
OperatorMatrix<Scalar> total_sz() {
  const auto s = spin1_components<Scalar>();
  return kron<Scalar>(s.z, site_identity<Scalar>()) + kron<Scalar>(site_identity<Scalar>(), s.z);
}

/// S_1 . S_2 = sum over x, y, z of S_a (x) S_a.
template <typename Scalar = double>
OperatorMatrix<Scalar> heisenberg_dot() {
  const auto s = spin1_components<Scalar>();
  return kron<Scalar>(s.x, s.x) + kron<Scalar>(s.y, s.y) + kron<Scalar>(s.z, s.z);
}

/// Which exchange operator D enters J*D + K*D^2.
///
/// kHalfTransverse is S_1z S_2z + (S_1x S_2x + S_1y S_2y) / 2. Its square
/// carries the closed-form nine-level spectrum (K+2B, K/4+B, (2+-sqrt3)K/2, ...)
/// together with the matching partition function and partial-transpose
/// entries. kIsotropic is the full S_1 . S_2, whose square is {4 (singlet),
/// 1 (x8)}; none of the closed forms apply to it.
enum class ExchangeForm { kHalfTransverse, kIsotropic };

template <typename Scalar = double>
OperatorMatrix<Scalar> exchange_operator(ExchangeForm form) {
  if (form == ExchangeForm::kIsotropic) {
    return heisenberg_dot<Scalar>();
  }
  const auto s = spin1_components<Scalar>();
  return kron<Scalar>(s.z, s.z) + Scalar(0.5) * (kron<Scalar>(s.x, s.x) + kron<Scalar>(s.y, s.y));
}

}  // namespace qutrit
