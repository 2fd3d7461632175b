#pragma once

// Random generators and independent oracles shared by the test suites.
// Nothing here calls into the library's numerical paths.

#include <cmath>
#include <complex>
#include <random>
#include <utility>

#include "tricoh/field.hpp"

namespace tricoh::testing {

using cd = std::complex<double>;

inline cd random_complex(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}

inline CMatrix<double> random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  CMatrix<double> m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = random_complex(rng);
  }
  return m;
}

inline FieldState<double> random_field(Index K, Index M, std::mt19937_64& rng) {
  FieldState<double> f(K, M);
  for (Index m = 0; m < M; ++m) {
    for (Index k = 0; k < K; ++k) {
      for (Index i = 0; i < 2; ++i) f(i, k, m) = random_complex(rng);
    }
  }
  return f;
}

/// Eigenvalues (descending) of the Hermitian matrix [[a, conj(b)], [b, d]]
/// found by bisection on the characteristic polynomial.
inline std::pair<double, double> bisect_hermitian2(double a, cd b, double d) {
  const long double la = a, ld = d, nb2 = std::norm(b);
  auto poly = [&](long double x) { return (la - x) * (ld - x) - nb2; };
  const long double mid = (la + ld) / 2;
  const long double reach = std::abs(la - ld) / 2 + std::sqrt(nb2) + 1;
  // poly(mid) <= 0 and poly(mid +- reach) > 0.
  auto root = [&](long double inside, long double outside) {
    for (int it = 0; it < 300; ++it) {
      const long double m = (inside + outside) / 2;
      if (poly(m) <= 0) inside = m; else outside = m;
    }
    return static_cast<double>((inside + outside) / 2);
  };
  return {root(mid, mid + reach), root(mid, mid - reach)};
}

/// Gram-matrix eigenvalues of a 2 x n (or n x 2) coefficient matrix via
/// explicit summation and bisection.
inline std::pair<double, double> brute_force_gram_eigenvalues(const CMatrix<double>& a) {
  const bool rows_two = a.rows() == 2;
  const Index n = rows_two ? a.cols() : a.rows();
  auto at = [&](int side, Index j) { return rows_two ? a(side, j) : a(j, side); };
  double g00 = 0, g11 = 0;
  cd g10 = 0;
  for (Index j = 0; j < n; ++j) {
    g00 += std::norm(at(0, j));
    g11 += std::norm(at(1, j));
    g10 += at(1, j) * std::conj(at(0, j));
  }
  return bisect_hermitian2(g00, g10, g11);
}

}  // namespace tricoh::testing
