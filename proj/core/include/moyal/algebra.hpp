#pragma once

// Truncated Moyal algebra in the matrix basis {f_mn}.
//
// An element a = sum a_mn f_mn is stored as its N x N coefficient matrix.
// In this basis the star product is the matrix product, the involution is the
// conjugate transpose and the integral is 2*pi*theta times the trace. Entries
// with an index >= N are taken to be zero (Dirichlet truncation).

#include <Eigen/Dense>

#include <complex>
#include <numbers>

namespace moyal {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Lightcone phase lambda = (1 + i) / sqrt(2).
inline const Complex kLambda{std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2};

/// Elements built from coordinate monomials are unbounded as operators; they
/// may be evaluated on states and fed to the causal-cone machinery, but not to
/// operator-norm based APIs.
enum class Support { bounded, unbounded };

class AlgebraElement {
 public:
  AlgebraElement(CMatrix coeffs, double theta, Support support = Support::bounded);

  static AlgebraElement zero(int truncation, double theta);
  static AlgebraElement identity(int truncation, double theta);
  /// The basis element f_mn.
  static AlgebraElement basis(int m, int n, int truncation, double theta);

  const CMatrix& coeffs() const noexcept { return coeffs_; }
  double theta() const noexcept { return theta_; }
  int truncation() const noexcept { return static_cast<int>(coeffs_.rows()); }
  Support support() const noexcept { return support_; }
  bool bounded() const noexcept { return support_ == Support::bounded; }

  Complex operator()(int m, int n) const { return coeffs_(m, n); }

  /// Leading block when shrinking, zero padding when growing.
  AlgebraElement resized(int truncation) const;

  /// Fraction of the squared Frobenius mass sitting in the last `bands`
  /// rows and columns. Zero for the zero element.
  double edge_mass_fraction(int bands = 2) const;

  /// max |a_mn - conj(a_nm)|.
  double hermiticity_residual() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex scale);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(AlgebraElement a, Complex s) { return a *= s; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= -1.0; }

 private:
  CMatrix coeffs_;
  double theta_;
  Support support_;
};

/// Throws CompositionError unless theta and truncation agree.
void require_composable(const AlgebraElement& a, const AlgebraElement& b);

AlgebraElement star(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement involution(const AlgebraElement& a);

/// Integral over the plane: 2*pi*theta * trace.
Complex integral(const AlgebraElement& a);

/// L2 norm of the function: sqrt(2*pi*theta) * Frobenius norm.
double l2_norm(const AlgebraElement& a);

/// ||a||_{s,t}^2 = sum theta^{s+t} (m+1/2)^s (n+1/2)^t |a_mn|^2, with the
/// theta^{s+t} weight kept as written. At s = t = 0 this is the Frobenius
/// norm, i.e. l2_norm(a) / sqrt(2*pi*theta).
double gst_norm(const AlgebraElement& a, double s, double t);

enum class DerivativeKind {
  holomorphic,      ///< d = (d_1 - i d_2) / sqrt(2)
  antiholomorphic,  ///< dbar, defined through (d a)^dagger = dbar(a^dagger)
  lorentz_plus,     ///< d_+ = d_0 + d_1 on the Lorentzian section
  lorentz_minus,    ///< d_- = d_0 - d_1
};

/// Banded coefficient map of a first-order derivative. Output truncation
/// equals the input truncation; references to indices >= N read as zero.
/// Warns when a bounded input carries non-negligible mass near the edge.
AlgebraElement derivative(const AlgebraElement& a, DerivativeKind kind);

/// e_k = sum_{j <= k} f_jj at truncation N.
AlgebraElement approximate_unit(int k, int truncation, double theta);

/// Largest singular value of a dense complex matrix.
double spectral_norm(const CMatrix& m);

/// ||L(a)|| on L^2, which equals the spectral norm of the coefficient matrix
/// because left multiplication acts column by column as the same matrix.
/// Rejects unbounded elements with DomainError.
double operator_norm(const AlgebraElement& a);

/// Mass threshold above which derivative-based operations warn.
inline constexpr double kEdgeMassWarning = 1e-8;

}  // namespace moyal
