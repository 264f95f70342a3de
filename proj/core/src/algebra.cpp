#include "moyal/algebra.hpp"

#include "moyal/diagnostics.hpp"
#include "moyal/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace moyal {
namespace {

bool same_theta(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

Support combine(Support a, Support b) {
  return (a == Support::unbounded || b == Support::unbounded) ? Support::unbounded
                                                              : Support::bounded;
}

void warn_if_edge_heavy(const AlgebraElement& a, const char* op) {
  if (!a.bounded()) return;
  const double frac = a.edge_mass_fraction(2);
  if (frac > kEdgeMassWarning) {
    std::ostringstream os;
    os << op << ": " << frac << " of the l2 mass lies in the last two rows/columns at N = "
       << a.truncation() << "; truncation effects are not negligible";
    warn(os.str());
  }
}

}  // namespace

AlgebraElement::AlgebraElement(CMatrix coeffs, double theta, Support support)
    : coeffs_(std::move(coeffs)), theta_(theta), support_(support) {
  if (!(theta_ > 0.0) || !std::isfinite(theta_))
    throw DomainError("AlgebraElement: theta must be positive and finite");
  if (coeffs_.rows() < 1 || coeffs_.rows() != coeffs_.cols())
    throw DomainError("AlgebraElement: coefficient matrix must be square with N >= 1");
  if (!coeffs_.allFinite())
    throw DomainError("AlgebraElement: coefficients must be finite");
}

AlgebraElement AlgebraElement::zero(int truncation, double theta) {
  if (truncation < 1) throw DomainError("truncation must be >= 1");
  return {CMatrix::Zero(truncation, truncation), theta};
}

AlgebraElement AlgebraElement::identity(int truncation, double theta) {
  if (truncation < 1) throw DomainError("truncation must be >= 1");
  return {CMatrix::Identity(truncation, truncation), theta};
}

AlgebraElement AlgebraElement::basis(int m, int n, int truncation, double theta) {
  if (m < 0 || n < 0 || m >= truncation || n >= truncation)
    throw DomainError("basis: index out of range");
  CMatrix c = CMatrix::Zero(truncation, truncation);
  c(m, n) = 1.0;
  return {std::move(c), theta};
}

AlgebraElement AlgebraElement::resized(int truncation) const {
  if (truncation < 1) throw DomainError("resized: truncation must be >= 1");
  CMatrix c = CMatrix::Zero(truncation, truncation);
  const int k = std::min(truncation, this->truncation());
  c.topLeftCorner(k, k) = coeffs_.topLeftCorner(k, k);
  return {std::move(c), theta_, support_};
}

double AlgebraElement::edge_mass_fraction(int bands) const {
  const int n = truncation();
  const double total = coeffs_.squaredNorm();
  if (total == 0.0) return 0.0;
  const int inner = std::max(0, n - bands);
  const double interior = coeffs_.topLeftCorner(inner, inner).squaredNorm();
  return std::max(0.0, total - interior) / total;
}

double AlgebraElement::hermiticity_residual() const {
  return (coeffs_ - coeffs_.adjoint()).cwiseAbs().maxCoeff();
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  require_composable(*this, other);
  coeffs_ += other.coeffs_;
  support_ = combine(support_, other.support_);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  require_composable(*this, other);
  coeffs_ -= other.coeffs_;
  support_ = combine(support_, other.support_);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex scale) {
  coeffs_ *= scale;
  return *this;
}

void require_composable(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.truncation() != b.truncation())
    throw CompositionError("elements have different truncations");
  if (!same_theta(a.theta(), b.theta()))
    throw CompositionError("elements have different theta");
}

AlgebraElement star(const AlgebraElement& a, const AlgebraElement& b) {
  require_composable(a, b);
  return {a.coeffs() * b.coeffs(), a.theta(), combine(a.support(), b.support())};
}

AlgebraElement involution(const AlgebraElement& a) {
  return {a.coeffs().adjoint(), a.theta(), a.support()};
}

Complex integral(const AlgebraElement& a) {
  return 2.0 * std::numbers::pi * a.theta() * a.coeffs().trace();
}

double l2_norm(const AlgebraElement& a) {
  return std::sqrt(2.0 * std::numbers::pi * a.theta()) * a.coeffs().norm();
}

double gst_norm(const AlgebraElement& a, double s, double t) {
  const int n = a.truncation();
  const double scale = std::pow(a.theta(), s + t);
  double sum = 0.0;
  for (int q = 0; q < n; ++q) {
    const double wq = std::pow(q + 0.5, t);
    for (int p = 0; p < n; ++p) sum += std::pow(p + 0.5, s) * wq * std::norm(a(p, q));
  }
  return std::sqrt(scale * sum);
}

namespace {

CMatrix holomorphic_map(const CMatrix& a, double theta) {
  const int n = static_cast<int>(a.rows());
  CMatrix out = CMatrix::Zero(n, n);
  for (int q = 0; q < n; ++q) {
    for (int p = 0; p < n; ++p) {
      Complex v = 0.0;
      if (q + 1 < n) v += std::sqrt((q + 1) / theta) * a(p, q + 1);
      if (p >= 1) v -= std::sqrt(p / theta) * a(p - 1, q);
      out(p, q) = v;
    }
  }
  return out;
}

// Lightcone derivative with phases (up, down): for d_- these are
// (lambda, conj(lambda)), for d_+ they are swapped.
CMatrix lightcone_map(const CMatrix& a, double theta, Complex up, Complex down) {
  const int n = static_cast<int>(a.rows());
  CMatrix out = CMatrix::Zero(n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      Complex v = 0.0;
      if (r + 1 < n) v += a(r + 1, c) * up * std::sqrt((r + 1) / theta);
      if (c + 1 < n) v += a(r, c + 1) * down * std::sqrt((c + 1) / theta);
      if (r >= 1) v -= a(r - 1, c) * down * std::sqrt(r / theta);
      if (c >= 1) v -= a(r, c - 1) * up * std::sqrt(c / theta);
      out(r, c) = v;
    }
  }
  return out;
}

}  // namespace

AlgebraElement derivative(const AlgebraElement& a, DerivativeKind kind) {
  warn_if_edge_heavy(a, "derivative");
  const double theta = a.theta();
  switch (kind) {
    case DerivativeKind::holomorphic:
      return {holomorphic_map(a.coeffs(), theta), theta, a.support()};
    case DerivativeKind::antiholomorphic:
      // dbar(a) = (d(a^dagger))^dagger
      return {holomorphic_map(a.coeffs().adjoint(), theta).adjoint(), theta, a.support()};
    case DerivativeKind::lorentz_minus:
      return {lightcone_map(a.coeffs(), theta, kLambda, std::conj(kLambda)), theta, a.support()};
    case DerivativeKind::lorentz_plus:
      return {lightcone_map(a.coeffs(), theta, std::conj(kLambda), kLambda), theta, a.support()};
  }
  throw DomainError("derivative: unknown kind");
}

AlgebraElement approximate_unit(int k, int truncation, double theta) {
  if (k < 0 || k >= truncation) throw DomainError("approximate_unit: need 0 <= k < N");
  CMatrix c = CMatrix::Zero(truncation, truncation);
  for (int j = 0; j <= k; ++j) c(j, j) = 1.0;
  return {std::move(c), theta};
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

double operator_norm(const AlgebraElement& a) {
  if (!a.bounded())
    throw DomainError("operator_norm: element is flagged unbounded (coordinate monomial)");
  return spectral_norm(a.coeffs());
}

}  // namespace moyal
