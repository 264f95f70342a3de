#pragma once

// Pure vector states omega_psi(a) = 2*pi*theta * sum_{m,n} conj(psi_m) a_mn psi_n
// and the coordinate monomials they are evaluated on.

#include "moyal/algebra.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace moyal {

enum class StateKind { basis, coherent, zeta, finite, curve };

/// Coherent-state parameter kappa (units of sqrt(area), like z).
struct CoherentParam {
  Complex kappa;
};

/// Tolerance on 2*pi*theta*sum|psi_m|^2 + tail_mass = 1.
inline constexpr double kNormalizationTolerance = 1e-9;
inline constexpr double kDefaultTailTolerance = 1e-12;

class StateVector {
 public:
  /// Validates theta, finiteness and the normalization invariant; the declared
  /// tail mass accounts for the probability left beyond the truncation.
  StateVector(CVector components, double theta, StateKind kind, std::string label,
              double tail_mass = 0.0);

  const CVector& components() const noexcept { return components_; }
  double theta() const noexcept { return theta_; }
  int truncation() const noexcept { return static_cast<int>(components_.size()); }
  StateKind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  double tail_mass() const noexcept { return tail_mass_; }

  /// 2*pi*theta * sum |psi_m|^2 at the truncation.
  double truncated_norm() const;

  /// Indices with nonzero components.
  std::vector<int> support() const;

 private:
  CVector components_;
  double theta_;
  StateKind kind_;
  std::string label_;
  double tail_mass_;
};

StateVector make_basis_state(int n, int truncation, double theta);

/// phi_m = e^{-|kappa|^2 / 2 theta} kappa^m / sqrt(2 pi theta m! theta^m),
/// assembled in log space. Throws TruncationError (carrying the minimal N)
/// when the Poisson tail beyond N exceeds tail_tol.
StateVector make_coherent(CoherentParam kappa, int truncation, double theta,
                          double tail_tol = kDefaultTailTolerance);

/// psi_m = (2 pi theta zeta(s) (m+1)^s)^{-1/2}; s > 1. The truncated
/// remainder sum_{m >= N} (m+1)^{-s} / zeta(s) is declared as tail mass.
StateVector make_zeta(double s, int truncation, double theta);

/// State with finitely many nonzero components, normalized so that
/// 2*pi*theta * sum |lambda_m|^2 = 1. Weights need not be normalized.
StateVector make_finite(std::span<const std::pair<int, Complex>> weights, int truncation,
                        double theta);

/// omega_psi(a). Throws CompositionError on theta or truncation mismatch.
Complex evaluate(const StateVector& omega, const AlgebraElement& a);

enum class MonomialKind { z, zbar };

/// z^q has a_{m,m+q} = sqrt(theta^q (m+q)! / m!); zbar^q is its adjoint.
/// Flagged unbounded. Requires 0 <= q < N.
AlgebraElement monomial(MonomialKind kind, int q, int truncation, double theta);

/// Exact truncation error |omega_kappa(z^q) - kappa^q| = |kappa|^q P(X >= N - q)
/// with X ~ Poisson(|kappa|^2 / theta).
double coherent_monomial_error_bound(CoherentParam kappa, int q, int truncation, double theta);

std::string format_complex(Complex z);

}  // namespace moyal
