#pragma once

// Independent reference computations used only by the tests.

#include <moyal/algebra.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace oracle {

using moyal::CMatrix;
using moyal::Complex;

/// Spectral norm from the largest eigenvalue of A^dagger A (no SVD).
inline double norm_via_eigs(const CMatrix& a) {
  const CMatrix g = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(g, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

inline double min_eig(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// Greedy saturation of the chain LP: every step between n and m at its bound.
inline double greedy_chain_distance(int m, int n, double theta, double omega = 0.0) {
  if (m < n) std::swap(m, n);
  double sum = 0.0;
  for (int k = n; k < m; ++k)
    sum += std::sqrt(theta / (k + 1.0)) / std::sqrt(2.0 * (1.0 + omega * omega));
  return sum;
}

/// P(X >= n) for X ~ Poisson(mu) by summing the far tail in long double.
inline double poisson_tail_direct(double mu, long n) {
  long double term = std::exp(static_cast<long double>(-mu));
  for (long k = 1; k <= n; ++k) term *= static_cast<long double>(mu) / k;
  long double sum = 0.0L;
  for (long k = n; k < n + 2000; ++k) {
    sum += term;
    term *= static_cast<long double>(mu) / (k + 1);
  }
  return static_cast<double>(sum);
}

/// B(m0) from the defining double sum, O(m0^2).
inline double divergence_double_sum(long m0, double s, double theta, double zeta) {
  double first = 0.0, second = 0.0;
  for (long m = 0; m <= m0; ++m)
    for (long k = m; k <= m0; ++k) first += 1.0 / std::sqrt(k + 1.0) / (zeta * std::pow(m + 1.0, s));
  for (long k = 0; k <= m0; ++k) second += 1.0 / std::sqrt(k + 1.0);
  return std::sqrt(theta / 2.0) * std::abs(first - second);
}

inline CMatrix random_matrix(std::mt19937_64& rng, int n, int support) {
  std::normal_distribution<double> g;
  CMatrix m = CMatrix::Zero(n, n);
  for (int c = 0; c < std::min(n, support); ++c)
    for (int r = 0; r < std::min(n, support); ++r) m(r, c) = Complex{g(rng), g(rng)};
  return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, int n, int support) {
  const CMatrix m = random_matrix(rng, n, support);
  return 0.5 * (m + m.adjoint());
}

/// Kronecker product, left factor outermost.
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace oracle
