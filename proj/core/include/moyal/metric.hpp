#pragma once

// Lipschitz seminorms of the Euclidean Dirac operators D0, D1, D2 and the
// spectral distance between diagonal (harmonic-oscillator) states.

#include "moyal/algebra.hpp"
#include "moyal/states.hpp"

#include <Eigen/SparseCore>

#include <optional>

namespace moyal {

struct SeminormReport {
  double value = 0.0;
  double norm_holo = 0.0;      ///< ||L(d a)||
  double norm_antiholo = 0.0;  ///< ||L(dbar a)||
  std::optional<double> omega;
  bool in_ball = false;  ///< value <= 1 (up to 1e-12 relative rounding)
  bool edge_warning = false;
};

/// l_D0(a) = sqrt(2) max(||L(d a)||, ||L(dbar a)||). Rejects unbounded input.
SeminormReport seminorm_d0(const AlgebraElement& a);

/// l_Dk(a) = sqrt(1 + omega^2) l_D0(a), omega in (0, 1].
SeminormReport seminorm_dk(const AlgebraElement& a, double omega);

enum class DiracFamily { d1, d2 };

/// Largest N accepted by the explicit commutator constructions.
inline constexpr int kDiracGuard = 48;

/// [D_k, pi(a)] restricted to C^N (x) C^4, spinor index outermost:
/// -i sum_mu (gamma^mu + omega gamma^{mu+2}) (x) (d_mu a). On the full
/// truncated matrix space L(b) acts as b (x) 1, so the commutator there is
/// this matrix tensored with the identity and has the same norm.
CMatrix dirac_commutator(const AlgebraElement& a, double omega, DiracFamily family);

/// The same operator on the full 4 N^2 dimensional space (C^4 (x) C^N (x) C^N,
/// column index of the matrix-space vector innermost).
Eigen::SparseMatrix<Complex> dirac_commutator_full(const AlgebraElement& a, double omega,
                                                   DiracFamily family);

/// ||[D_k, pi(a)]|| from the explicit block operator, independent of the
/// seminorm formula. Guard N <= 48.
double seminorm_dk_direct(const AlgebraElement& a, double omega,
                          DiracFamily family = DiracFamily::d1);

/// sqrt(theta/2) sum_{k=n+1}^{m} 1/sqrt(k) (symmetric in m, n), divided by
/// sqrt(1 + omega^2) when omega is given.
double distance_closed_form(int m, int n, double theta, std::optional<double> omega = {});

struct LpDistance {
  double value = 0.0;
  Eigen::VectorXd diagonal;  ///< optimizing diagonal a_kk
  int pivots = 0;
};

/// Supremum of a_mm - a_nn over real diagonal elements with
/// sqrt((k+1)/theta) |a_{k+1,k+1} - a_kk| <= 1/sqrt(2 (1 + omega^2)), k < N-1,
/// solved as a linear program. Requires max(m, n) < N - 1.
LpDistance distance_lp_oracle(int m, int n, double theta, int truncation,
                              std::optional<double> omega = {});

/// Diagonal element a_pp = sqrt(theta/2) sum_{k=p}^{m0} 1/sqrt(k+1), m0 < N-1.
AlgebraElement optimal_element(int m0, int truncation, double theta);

struct DivergenceReport {
  long m0 = 0;
  double s = 0.0;
  double theta = 0.0;
  double zeta = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double bound = 0.0;  ///< B = sqrt(theta/2) (A1 + A2)
  /// (2/zeta) sum_m (sqrt(m+1) - 1) / (m+1)^s, the minorant of A2.
  double a2_minorant = 0.0;
  /// (2/zeta) sum_m (sqrt(m+2) - 1) / (m+1)^s, same estimate before the
  /// index shift; reported for comparison, not itself a lower bound.
  double a2_minorant_unshifted = 0.0;
};

/// B(m0, psi(s)) = |omega_0(a(m0)) - omega_psi(s)(a(m0))| via O(m0) prefix sums.
DivergenceReport divergence_bound(long m0, double s, double theta);

/// sum_{p,q in I} |a_pq| + 2 pi theta |a_nn| for a finite state Lambda with
/// support I. Bounds |omega_Lambda(a) - omega_n(a)| when 2 pi theta >= 1.
double finite_state_bound(const AlgebraElement& a, const StateVector& lambda, int n);

}  // namespace moyal
