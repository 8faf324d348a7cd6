#pragma once

#include <cmath>
#include <utility>

#include "cosmoferm/types.hpp"

namespace cosmoferm::detail {

// Largest singular value of a 2x2 matrix from the eigenvalues of A^dagger A.
inline double operator_norm(const Mat2& m) {
  const Mat2 g = m.adjoint() * m;
  const double tr = g(0, 0).real() + g(1, 1).real();
  const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
  const double disc = std::max(0.0, tr * tr - 4.0 * det);
  return std::sqrt(std::max(0.0, 0.5 * (tr + std::sqrt(disc))));
}

// Eigenvalues of the Hermitian part, ascending.
inline std::pair<double, double> hermitian_eigenvalues(const Mat2& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = 0.5 * (m(0, 1) + std::conj(m(1, 0)));
  const double mid = 0.5 * (a + d);
  const double r = std::hypot(0.5 * (a - d), std::abs(b));
  return {mid - r, mid + r};
}

}  // namespace cosmoferm::detail
