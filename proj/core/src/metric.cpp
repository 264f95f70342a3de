#include "moyal/metric.hpp"

#include "moyal/error.hpp"
#include "moyal/lp.hpp"
#include "moyal/special.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace moyal {
namespace {

void check_omega(double omega, const char* where) {
  if (!(omega > 0.0 && omega <= 1.0))
    throw DomainError(std::string(where) + ": omega must lie in (0, 1]");
}

bool within_ball(double value) { return value <= 1.0 + 1e-12; }

using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

// Spinor factors gamma^mu + omega gamma^{mu+2} for mu = 1, 2 of the D2 family.
std::array<Mat4, 2> d2_spinors(double omega) {
  const Complex i{0.0, 1.0};
  Mat2 s1, s2, s3;
  s1 << 0.0, 1.0, 1.0, 0.0;
  s2 << 0.0, i, -i, 0.0;
  s3 << 1.0, 0.0, 0.0, -1.0;
  const Mat2 id = Mat2::Identity();
  return {kron(s3, s1) + omega * kron(s1, id), kron(s3, s2) + omega * kron(s2, id)};
}

}  // namespace

SeminormReport seminorm_d0(const AlgebraElement& a) {
  if (!a.bounded()) throw DomainError("seminorm_d0: element is flagged unbounded");
  SeminormReport r;
  r.norm_holo = operator_norm(derivative(a, DerivativeKind::holomorphic));
  r.norm_antiholo = operator_norm(derivative(a, DerivativeKind::antiholomorphic));
  r.value = std::numbers::sqrt2 * std::max(r.norm_holo, r.norm_antiholo);
  r.in_ball = within_ball(r.value);
  r.edge_warning = a.edge_mass_fraction(2) > kEdgeMassWarning;
  return r;
}

SeminormReport seminorm_dk(const AlgebraElement& a, double omega) {
  check_omega(omega, "seminorm_dk");
  SeminormReport r = seminorm_d0(a);
  r.value *= std::sqrt(1.0 + omega * omega);
  r.omega = omega;
  r.in_ball = within_ball(r.value);
  return r;
}

CMatrix dirac_commutator(const AlgebraElement& a, double omega, DiracFamily family) {
  if (!a.bounded()) throw DomainError("dirac_commutator: element is flagged unbounded");
  if (!(omega >= 0.0 && omega <= 1.0))
    throw DomainError("dirac_commutator: omega must lie in [0, 1]");
  const int n = a.truncation();
  if (n > kDiracGuard) throw GuardError("dirac_commutator: truncation exceeds 48");

  const CMatrix d = derivative(a, DerivativeKind::holomorphic).coeffs();
  const CMatrix db = derivative(a, DerivativeKind::antiholomorphic).coeffs();
  const Complex minus_i{0.0, -1.0};
  CMatrix out = CMatrix::Zero(4 * n, 4 * n);

  if (family == DiracFamily::d1) {
    // -i sqrt(2) [[0, Lb, w Lb, 0], [L, 0, 0, -w Lb], [w L, 0, 0, Lb], [0, -w L, L, 0]]
    out.block(0, n, n, n) = db;
    out.block(0, 2 * n, n, n) = omega * db;
    out.block(n, 0, n, n) = d;
    out.block(n, 3 * n, n, n) = -omega * db;
    out.block(2 * n, 0, n, n) = omega * d;
    out.block(2 * n, 3 * n, n, n) = db;
    out.block(3 * n, n, n, n) = -omega * d;
    out.block(3 * n, 2 * n, n, n) = d;
    out *= minus_i * std::numbers::sqrt2;
    return out;
  }

  // d_1 = (d + dbar)/sqrt(2), d_2 = i (d - dbar)/sqrt(2)
  const CMatrix d1 = (d + db) / std::numbers::sqrt2;
  const CMatrix d2 = Complex{0.0, 1.0} * (d - db) / std::numbers::sqrt2;
  const auto spin = d2_spinors(omega);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      const Complex g1 = spin[0](r, c);
      const Complex g2 = spin[1](r, c);
      if (g1 == Complex{} && g2 == Complex{}) continue;
      out.block(r * n, c * n, n, n) = minus_i * (g1 * d1 + g2 * d2);
    }
  }
  return out;
}

Eigen::SparseMatrix<Complex> dirac_commutator_full(const AlgebraElement& a, double omega,
                                                   DiracFamily family) {
  const CMatrix t = dirac_commutator(a, omega, family);
  const int n = a.truncation();
  const Eigen::Index dim = static_cast<Eigen::Index>(t.rows()) * n;
  std::vector<Eigen::Triplet<Complex>> entries;
  for (Eigen::Index r = 0; r < t.rows(); ++r)
    for (Eigen::Index c = 0; c < t.cols(); ++c)
      if (t(r, c) != Complex{})
        for (int j = 0; j < n; ++j) entries.emplace_back(r * n + j, c * n + j, t(r, c));
  Eigen::SparseMatrix<Complex> out(dim, dim);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

double seminorm_dk_direct(const AlgebraElement& a, double omega, DiracFamily family) {
  check_omega(omega, "seminorm_dk_direct");
  return spectral_norm(dirac_commutator(a, omega, family));
}

double distance_closed_form(int m, int n, double theta, std::optional<double> omega) {
  if (m < 0 || n < 0) throw DomainError("distance_closed_form: indices must be >= 0");
  if (!(theta > 0.0)) throw DomainError("distance_closed_form: theta must be positive");
  if (omega) check_omega(*omega, "distance_closed_form");
  if (m < n) std::swap(m, n);
  double sum = 0.0;
  for (int k = n + 1; k <= m; ++k) sum += 1.0 / std::sqrt(static_cast<double>(k));
  double d = std::sqrt(theta / 2.0) * sum;
  if (omega) d /= std::sqrt(1.0 + *omega * *omega);
  return d;
}

LpDistance distance_lp_oracle(int m, int n, double theta, int truncation,
                              std::optional<double> omega) {
  if (m < 0 || n < 0) throw DomainError("distance_lp_oracle: indices must be >= 0");
  if (!(theta > 0.0)) throw DomainError("distance_lp_oracle: theta must be positive");
  if (std::max(m, n) >= truncation - 1) {
    throw TruncationError("distance_lp_oracle: requires max(m, n) < N - 1",
                          std::max(m, n) + 2);
  }
  if (omega) check_omega(*omega, "distance_lp_oracle");
  const double step = 1.0 / std::sqrt(2.0 * (1.0 + (omega ? *omega * *omega : 0.0)));

  const int steps = truncation - 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * steps, truncation);
  Eigen::VectorXd b(2 * steps);
  for (int k = 0; k < steps; ++k) {
    const double bound = step * std::sqrt(theta / (k + 1.0));
    A(2 * k, k + 1) = 1.0;
    A(2 * k, k) = -1.0;
    A(2 * k + 1, k + 1) = -1.0;
    A(2 * k + 1, k) = 1.0;
    b(2 * k) = bound;
    b(2 * k + 1) = bound;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(truncation);
  c(m) += 1.0;
  c(n) -= 1.0;

  const LpResult lp = maximize(A, b, c);
  return {lp.value, lp.x, lp.pivots};
}

AlgebraElement optimal_element(int m0, int truncation, double theta) {
  if (m0 < 0 || m0 >= truncation - 1)
    throw DomainError("optimal_element: requires 0 <= m0 < N - 1");
  CMatrix c = CMatrix::Zero(truncation, truncation);
  const double scale = std::sqrt(theta / 2.0);
  double tail = 0.0;
  for (int p = m0; p >= 0; --p) {
    tail += 1.0 / std::sqrt(p + 1.0);
    c(p, p) = scale * tail;
  }
  return {std::move(c), theta};
}

DivergenceReport divergence_bound(long m0, double s, double theta) {
  if (m0 < 0) throw DomainError("divergence_bound: m0 must be >= 0");
  if (!(s > 1.0)) throw DomainError("divergence_bound: requires s > 1");
  if (!(theta > 0.0)) throw DomainError("divergence_bound: theta must be positive");

  DivergenceReport r;
  r.m0 = m0;
  r.s = s;
  r.theta = theta;
  r.zeta = riemann_zeta(s);

  double harmonic = 0.0;  // sum_{k<m} 1/sqrt(k+1)
  double zeta_partial = 0.0;
  double inner = 0.0;
  double minor = 0.0;
  double minor_unshifted = 0.0;
  for (long m = 0; m <= m0; ++m) {
    const double w = std::pow(m + 1.0, -s);
    inner += w * harmonic;
    zeta_partial += w;
    minor += w * (std::sqrt(m + 1.0) - 1.0);
    minor_unshifted += w * (std::sqrt(m + 2.0) - 1.0);
    harmonic += 1.0 / std::sqrt(m + 1.0);
  }
  r.a1 = (1.0 - zeta_partial / r.zeta) * harmonic;
  r.a2 = inner / r.zeta;
  r.a2_minorant = 2.0 * minor / r.zeta;
  r.a2_minorant_unshifted = 2.0 * minor_unshifted / r.zeta;
  r.bound = std::sqrt(theta / 2.0) * (r.a1 + r.a2);
  return r;
}

double finite_state_bound(const AlgebraElement& a, const StateVector& lambda, int n) {
  if (lambda.truncation() != a.truncation())
    throw CompositionError("finite_state_bound: truncations differ");
  if (n < 0 || n >= a.truncation()) throw DomainError("finite_state_bound: n out of range");
  const std::vector<int> support = lambda.support();
  double sum = 0.0;
  for (int p : support)
    for (int q : support) sum += std::abs(a(p, q));
  return sum + 2.0 * std::numbers::pi * a.theta() * std::abs(a(n, n));
}

}  // namespace moyal
