#pragma once

// Dense symmetric eigensolver (cyclic Jacobi), shifted Boltzmann weights and
// trace norm. Sized for the 9x9 two-qutrit problem but generic in dimension.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "qutrit/errors.hpp"

namespace qutrit {

template <typename Scalar>
inline constexpr Scalar kSymmetryTolerance = Scalar(1e-12);

template <typename Derived>
typename Derived::Scalar symmetry_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

template <typename Derived>
void require_symmetric(const Eigen::MatrixBase<Derived>& m, typename Derived::Scalar tol) {
  const auto defect = symmetry_defect(m);
  if (!(defect <= tol)) {
    throw Error(ErrorCode::kNotSymmetric,
                "max |m - m^T| = " + std::to_string(static_cast<double>(defect)));
  }
}

template <typename Scalar, int N>
struct EigenDecomposition {
  Eigen::Matrix<Scalar, N, 1> eigenvalues;   // ascending
  Eigen::Matrix<Scalar, N, N> eigenvectors;  // column k pairs with eigenvalues(k)

  Eigen::Matrix<Scalar, N, N> reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
  }
};

namespace detail {

template <typename Scalar, int N>
Scalar off_diagonal_norm(const Eigen::Matrix<Scalar, N, N>& a) {
  Scalar sum = 0;
  for (int p = 0; p < a.rows(); ++p) {
    for (int q = 0; q < a.cols(); ++q) {
      if (p != q) sum += a(p, q) * a(p, q);
    }
  }
  return std::sqrt(sum);
}

// Lexicographic order on vector entries; used to fix the order of
// eigenvectors inside a degenerate cluster.
template <typename Vec>
bool lexicographic_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (b(i) < a(i)) return false;
  }
  return false;
}

// Sign convention: the largest-magnitude entry (first on ties) is positive.
template <typename Vec>
void canonical_sign(Vec&& v) {
  int pivot = 0;
  for (int i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(pivot)) * (1 + 1e-10)) pivot = i;
  }
  if (v(pivot) < 0) v = -v;
}

}  // namespace detail

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi sweeps.
///
/// Converges when the off-diagonal Frobenius norm drops below
/// 1e-13 * (||diag||_F + 1). Eigenpairs come back ascending; inside a
/// degenerate cluster eigenvectors are sorted lexicographically after a
/// sign normalisation, so the output is deterministic.
template <typename Derived>
auto eigh_symmetric(const Eigen::MatrixBase<Derived>& input)
    -> EigenDecomposition<typename Derived::Scalar, Derived::RowsAtCompileTime> {
  using Scalar = typename Derived::Scalar;
  constexpr int N = Derived::RowsAtCompileTime;
  using Mat = Eigen::Matrix<Scalar, N, N>;
  require_symmetric(input, kSymmetryTolerance<Scalar>);

  Mat a = Scalar(0.5) * (input + input.transpose());
  const int n = static_cast<int>(a.rows());
  Mat v = Mat::Identity(n, n);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const Scalar threshold = Scalar(1e-13) * (a.diagonal().norm() + Scalar(1));
    if (detail::off_diagonal_norm(a) < threshold) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        // Rotation angle from the standard stable formulation (Golub & Van Loan 8.5.2).
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar t = (theta >= 0 ? Scalar(1) : Scalar(-1)) /
                         (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        for (int k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        for (int k = 0; k < n; ++k) {
          const Scalar vkp = v(k, p);
          const Scalar vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

  EigenDecomposition<Scalar, N> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]);
    out.eigenvectors.col(k) = v.col(order[k]);
    detail::canonical_sign(out.eigenvectors.col(k));
  }

  // Degenerate clusters: equal eigenvalues up to 1e-10 relative.
  const Scalar scale = std::max(Scalar(1), out.eigenvalues.cwiseAbs().maxCoeff());
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n && out.eigenvalues(stop) - out.eigenvalues(stop - 1) <= Scalar(1e-10) * scale) ++stop;
    if (stop - start > 1) {
      std::vector<Eigen::Matrix<Scalar, N, 1>> cluster;
      for (int k = start; k < stop; ++k) cluster.push_back(out.eigenvectors.col(k));
      std::sort(cluster.begin(), cluster.end(),
                [](const auto& x, const auto& y) { return detail::lexicographic_less(x, y); });
      for (int k = start; k < stop; ++k) out.eigenvectors.col(k) = cluster[k - start];
    }
    start = stop;
  }
  return out;
}

/// A positive quantity stored as mantissa * exp(-shift), so that sums of
/// exp(-E/T) at very small T stay finite.
template <typename Scalar>
struct LogScaled {
  Scalar mantissa;
  Scalar shift;

  Scalar log() const { return std::log(mantissa) - shift; }
  Scalar value() const { return mantissa * std::exp(-shift); }
};

/// |a/b - 1| evaluated through the logarithms.
template <typename Scalar>
Scalar relative_difference(const LogScaled<Scalar>& a, const LogScaled<Scalar>& b) {
  return std::abs(std::expm1(a.log() - b.log()));
}

template <typename Scalar>
void require_positive_temperature(Scalar temperature) {
  if (!(temperature > Scalar(0))) {
    throw Error(ErrorCode::kNonPositiveTemperature, "T = " + std::to_string(static_cast<double>(temperature)));
  }
}

template <typename Derived>
auto boltzmann_weights(const Eigen::MatrixBase<Derived>& energies, typename Derived::Scalar temperature)
    -> Eigen::Matrix<typename Derived::Scalar, Derived::RowsAtCompileTime, 1> {
  using Scalar = typename Derived::Scalar;
  require_positive_temperature(temperature);
  const Scalar e_min = energies.minCoeff();
  Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, 1> w =
      ((energies.array() - e_min) / -temperature).exp().matrix();
  return w / w.sum();
}

/// Sum of exp(-E_l / T) as (sum of shifted weights, E_min / T).
template <typename Derived>
auto boltzmann_sum(const Eigen::MatrixBase<Derived>& energies, typename Derived::Scalar temperature)
    -> LogScaled<typename Derived::Scalar> {
  using Scalar = typename Derived::Scalar;
  require_positive_temperature(temperature);
  const Scalar e_min = energies.minCoeff();
  const Scalar sum = ((energies.array() - e_min) / -temperature).exp().sum();
  return {sum, e_min / temperature};
}

template <typename Derived>
typename Derived::Scalar trace_norm(const Eigen::MatrixBase<Derived>& m) {
  return eigh_symmetric(m).eigenvalues.cwiseAbs().sum();
}

}  // namespace qutrit
