#pragma once

// Two-qutrit Hamiltonian H = J*D + K*D^2 + B*(S_1z + S_2z), coupling
// constants from the Bose-Hubbard strong-coupling expansion, and the
// closed-form nine-level spectrum used as an oracle.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qutrit/errors.hpp"
#include "qutrit/spin_algebra.hpp"

namespace qutrit {

/// Physical knobs; k_B = hbar = 1 so K, B, J and T share energy units.
template <typename Scalar = double>
struct ModelParams {
  Scalar K = Scalar(0);
  Scalar B = Scalar(0);
  Scalar J = Scalar(0);
  ExchangeForm exchange = ExchangeForm::kHalfTransverse;
};

template <typename Scalar = double>
struct CouplingSet {
  Scalar J;
  Scalar K;
  Scalar epsilon;
};

/// J = -2t^2/U2, K = -2t^2/(3 U2) - 4t^2/U0, epsilon = J - K.
template <typename Scalar>
CouplingSet<Scalar> derive_couplings(Scalar hopping, Scalar u0, Scalar u2) {
  if (u0 == Scalar(0) || u2 == Scalar(0)) {
    throw Error(ErrorCode::kZeroRepulsion, "U0 and U2 must be nonzero");
  }
  const Scalar t2 = hopping * hopping;
  CouplingSet<Scalar> c;
  c.J = -Scalar(2) * t2 / u2;
  c.K = -Scalar(2) * t2 / (Scalar(3) * u2) - Scalar(4) * t2 / u0;
  c.epsilon = c.J - c.K;
  return c;
}

/// The constant epsilon is never added: it shifts every level equally.
template <typename Scalar>
OperatorMatrix<Scalar> build_hamiltonian(const ModelParams<Scalar>& p) {
  const OperatorMatrix<Scalar> d = exchange_operator<Scalar>(p.exchange);
  OperatorMatrix<Scalar> h = p.K * (d * d) + p.B * total_sz<Scalar>();
  if (p.J != Scalar(0)) h += p.J * d;
  return Scalar(0.5) * (h + h.transpose());
}

enum class Level { kPsi1, kPsi2, kPsi3, kPsi4, kPsi5, kPsi6, kPsi7, kPsi8Plus, kPsi8Minus };

constexpr const char* level_label(Level level) {
  switch (level) {
    case Level::kPsi1: return "Psi1";
    case Level::kPsi2: return "Psi2";
    case Level::kPsi3: return "Psi3";
    case Level::kPsi4: return "Psi4";
    case Level::kPsi5: return "Psi5";
    case Level::kPsi6: return "Psi6";
    case Level::kPsi7: return "Psi7";
    case Level::kPsi8Plus: return "Psi8+";
    case Level::kPsi8Minus: return "Psi8-";
  }
  return "?";
}

template <typename Scalar>
struct AnalyticLevel {
  Level label;
  Scalar energy;
  PairVector<Scalar> state;
};

template <typename Scalar>
using AnalyticSpectrum = std::array<AnalyticLevel<Scalar>, 9>;

/// (|1,-1> + (1 -+ sqrt3)|0,0> + |-1,1>) / sqrt(2 + (sqrt3 -+ 1)^2); sign = +1 for Psi8+.
template <typename Scalar>
PairVector<Scalar> psi8_state(int sign) {
  const Scalar r3 = std::sqrt(Scalar(3));
  const Scalar middle = Scalar(1) - Scalar(sign) * r3;
  const Scalar norm = std::sqrt(Scalar(2) + (r3 - Scalar(sign)) * (r3 - Scalar(sign)));
  PairVector<Scalar> v = product_state<Scalar>(1, -1) + middle * product_state<Scalar>(0, 0) +
                         product_state<Scalar>(-1, 1);
  return v / norm;
}

template <typename Scalar>
PairVector<Scalar> psi7_state() {
  return (product_state<Scalar>(-1, 1) - product_state<Scalar>(1, -1)) / std::sqrt(Scalar(2));
}

template <typename Scalar>
void require_closed_form(const ModelParams<Scalar>& p) {
  if (p.J != Scalar(0)) {
    throw Error(ErrorCode::kBilinearTermPresent, "closed forms require J = 0, got J = " + std::to_string(p.J));
  }
  if (p.exchange != ExchangeForm::kHalfTransverse) {
    throw Error(ErrorCode::kClosedFormUnavailable, "closed forms hold only for the half-transverse exchange");
  }
}

/// Nine labelled levels in the fixed order Psi1..Psi7, Psi8+, Psi8-.
template <typename Scalar>
AnalyticSpectrum<Scalar> analytic_spectrum(const ModelParams<Scalar>& p) {
  require_closed_form(p);
  const Scalar K = p.K;
  const Scalar B = p.B;
  const Scalar r3 = std::sqrt(Scalar(3));
  return {{
      {Level::kPsi1, K + 2 * B, product_state<Scalar>(1, 1)},
      {Level::kPsi2, K - 2 * B, product_state<Scalar>(-1, -1)},
      {Level::kPsi3, K / 4 + B, product_state<Scalar>(1, 0)},
      {Level::kPsi4, K / 4 + B, product_state<Scalar>(0, 1)},
      {Level::kPsi5, K / 4 - B, product_state<Scalar>(0, -1)},
      {Level::kPsi6, K / 4 - B, product_state<Scalar>(-1, 0)},
      {Level::kPsi7, K, psi7_state<Scalar>()},
      {Level::kPsi8Plus, (2 + r3) / 2 * K, psi8_state<Scalar>(+1)},
      {Level::kPsi8Minus, (2 - r3) / 2 * K, psi8_state<Scalar>(-1)},
  }};
}

template <typename Scalar>
Eigen::Matrix<Scalar, 9, 1> sorted_energies(const AnalyticSpectrum<Scalar>& spectrum) {
  Eigen::Matrix<Scalar, 9, 1> e;
  for (int i = 0; i < 9; ++i) e(i) = spectrum[i].energy;
  std::sort(e.data(), e.data() + 9);
  return e;
}

}  // namespace qutrit
