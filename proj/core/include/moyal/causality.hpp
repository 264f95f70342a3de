#pragma once

// Causal structure of the Lorentzian Moyal plane: lightcone coefficient
// matrices, the causal cone, and the order between coherent states.

#include "moyal/algebra.hpp"
#include "moyal/states.hpp"

#include <string_view>

namespace moyal {

/// Coefficients of d_- a: alpha_mn.
CMatrix alpha_matrix(const AlgebraElement& a);
/// Coefficients of d_+ a: beta_mn (alpha with lambda and conj(lambda) swapped).
CMatrix beta_matrix(const AlgebraElement& a);

enum class ConeVerdict { in_cone, not_in_cone, inconclusive_boundary };

std::string_view to_string(ConeVerdict v);

struct ConeOptions {
  /// PSD tolerance is rel_tol times the larger matrix 1-norm of alpha, beta.
  double rel_tol = 1e-10;
  /// l2 mass fraction in the outer two bands above which a marginal verdict
  /// is reported as inconclusive.
  double edge_mass = kEdgeMassWarning;
};

struct CausalCertificate {
  double min_eig_alpha = 0.0;
  double min_eig_beta = 0.0;
  double herm_residual_alpha = 0.0;
  double herm_residual_beta = 0.0;
  double edge_mass = 0.0;
  ConeVerdict verdict = ConeVerdict::in_cone;
  double tol = 0.0;
};

/// Cone membership: alpha and beta jointly positive semidefinite. Only the
/// leading (N-1) x (N-1) blocks are examined; their entries involve no
/// coefficient beyond the truncation. Throws DomainError for non-Hermitian a
/// and for N < 2.
CausalCertificate cone_membership(const AlgebraElement& a, const ConeOptions& options = {});

enum class Witness { a, a_tilde };

/// a = lambda z + conj(lambda) zbar (alpha = 2, beta = 0) or
/// a~ = conj(lambda) z + lambda zbar (alpha = 0, beta = 2). Flagged unbounded.
AlgebraElement witness_element(Witness which, int truncation, double theta);

enum class Direction { forward, backward, none, equal };

std::string_view to_string(Direction d);

struct CausalVerdict {
  bool related = false;
  Direction direction = Direction::none;
  Complex delta_kappa;
  double arg_delta = 0.0;  ///< principal value in (-pi, pi]
};

/// Coherent states at k1, k2 are causally related iff delta = k2 - k1 lies in
/// the closed cone |Im delta| <= |Re delta|; forward when Re delta >= 0.
CausalVerdict causal_classifier(CoherentParam k1, CoherentParam k2);

/// omega_k2(w) - omega_k1(w) in closed form:
/// 2 |dk| cos(pi/4 + arg dk) for a, 2 |dk| cos(arg dk - pi/4) for a~.
double witness_value(CoherentParam k1, CoherentParam k2, Witness which);

/// The same difference by state evaluation at truncation N.
double witness_value_numeric(CoherentParam k1, CoherentParam k2, Witness which, int truncation,
                             double theta, double tail_tol = kDefaultTailTolerance);

/// chi_m(t) with kappa(t) = k1 + t dk and phase exponent
/// conj(dk) (k1 t + dk t^2 / 2); normalized like a coherent state.
StateVector curve_state(CoherentParam k1, CoherentParam k2, double t, int truncation,
                        double theta, double tail_tol = kDefaultTailTolerance);

/// d chi_m / dt = (dk / sqrt(theta)) sqrt(m) chi_{m-1}
///              - (conj(dk) / sqrt(theta)) sqrt(m+1) chi_{m+1}.
/// The chi_{m+1} term at m = N-1 is taken from a curve built at N+1.
CVector curve_derivative(CoherentParam k1, CoherentParam k2, double t, int truncation,
                         double theta, double tail_tol = kDefaultTailTolerance);

struct MonotonicityReport {
  bool monotone = false;
  double min_increment = 0.0;
  bool derivative_ok = false;
  double max_derivative_error = 0.0;  ///< relative, over 5 interior points
  bool passed() const { return monotone && derivative_ok; }
};

/// Checks that t -> omega_chi(t)(a) is nondecreasing on steps+1 grid points of
/// [0, 1] (each increment >= -1e-9) and verifies the derivative identity by
/// central differences (h = 1e-4, relative error < 1e-6) at 5 interior points.
/// Throws PreconditionError unless a is in the cone and dk is forward.
MonotonicityReport monotonicity_check(const AlgebraElement& a, CoherentParam k1,
                                      CoherentParam k2, int steps,
                                      double tail_tol = kDefaultTailTolerance);

}  // namespace moyal
