#include "moyal/causality.hpp"

#include "moyal/error.hpp"
#include "moyal/special.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace moyal {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double min_eigenvalue(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  const CMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double one_norm(const CMatrix& m) {
  return m.size() ? m.cwiseAbs().colwise().sum().maxCoeff() : 0.0;
}

// Log-space coherent components for kappa(t) with an extra complex log
// prefactor; returns the vector and the Poisson tail beyond N.
CVector coherent_like(Complex kappa, Complex log_prefactor, int truncation, double theta) {
  CVector v = CVector::Zero(truncation);
  if (kappa == Complex{}) {
    v(0) = std::exp(log_prefactor);
    return v;
  }
  const Complex log_kappa = std::log(kappa);
  const double log_theta = std::log(theta);
  for (int m = 0; m < truncation; ++m)
    v(m) = std::exp(log_prefactor + static_cast<double>(m) * log_kappa -
                    0.5 * std::lgamma(m + 1.0) - 0.5 * m * log_theta);
  return v;
}

void require_tail(double mu, int truncation, double tail_tol, const char* where) {
  const double tail = poisson_tail(mu, truncation);
  if (tail > tail_tol) {
    const long need = minimal_poisson_truncation(mu, tail_tol);
    std::ostringstream os;
    os << where << ": Poisson tail " << tail << " beyond N = " << truncation << " exceeds "
       << tail_tol << "; use N >= " << need;
    throw TruncationError(os.str(), static_cast<int>(need));
  }
}

CVector curve_components(CoherentParam k1, CoherentParam k2, double t, int truncation,
                         double theta) {
  const Complex dk = k2.kappa - k1.kappa;
  const Complex kt = k1.kappa + t * dk;
  const Complex exponent = std::conj(dk) * (k1.kappa * t + dk * (t * t / 2.0));
  const Complex log_prefactor =
      -0.5 * std::log(kTwoPi * theta) - std::norm(k1.kappa) / (2.0 * theta) - exponent / theta;
  return coherent_like(kt, log_prefactor, truncation, theta);
}

}  // namespace

CMatrix alpha_matrix(const AlgebraElement& a) {
  return derivative(a, DerivativeKind::lorentz_minus).coeffs();
}

CMatrix beta_matrix(const AlgebraElement& a) {
  return derivative(a, DerivativeKind::lorentz_plus).coeffs();
}

std::string_view to_string(ConeVerdict v) {
  switch (v) {
    case ConeVerdict::in_cone:
      return "in_cone";
    case ConeVerdict::not_in_cone:
      return "not_in_cone";
    case ConeVerdict::inconclusive_boundary:
      return "inconclusive_boundary";
  }
  return "unknown";
}

CausalCertificate cone_membership(const AlgebraElement& a, const ConeOptions& options) {
  const int n = a.truncation();
  if (n < 2) throw DomainError("cone_membership: requires N >= 2");
  if (!(options.rel_tol > 0.0)) throw DomainError("cone_membership: rel_tol must be positive");

  const double scale = std::max(1.0, max_abs(a.coeffs()));
  if (a.hermiticity_residual() > options.rel_tol * scale)
    throw DomainError("cone_membership: element is not Hermitian");

  const int k = n - 1;
  const CMatrix alpha = alpha_matrix(a).topLeftCorner(k, k);
  const CMatrix beta = beta_matrix(a).topLeftCorner(k, k);

  CausalCertificate c;
  const double norm = std::max(one_norm(alpha), one_norm(beta));
  c.tol = norm > 0.0 ? options.rel_tol * norm : options.rel_tol;
  c.herm_residual_alpha = max_abs(alpha - alpha.adjoint());
  c.herm_residual_beta = max_abs(beta - beta.adjoint());
  c.min_eig_alpha = min_eigenvalue(alpha);
  c.min_eig_beta = min_eigenvalue(beta);
  c.edge_mass = a.edge_mass_fraction(2);

  const double lowest = std::min(c.min_eig_alpha, c.min_eig_beta);
  if (lowest < -c.tol || std::max(c.herm_residual_alpha, c.herm_residual_beta) > c.tol)
    c.verdict = ConeVerdict::not_in_cone;
  else if (a.bounded() && c.edge_mass > options.edge_mass && lowest < c.tol)
    c.verdict = ConeVerdict::inconclusive_boundary;
  else
    c.verdict = ConeVerdict::in_cone;
  return c;
}

AlgebraElement witness_element(Witness which, int truncation, double theta) {
  if (truncation < 2) throw DomainError("witness_element: requires N >= 2");
  const Complex up = which == Witness::a ? kLambda : std::conj(kLambda);
  CMatrix c = CMatrix::Zero(truncation, truncation);
  const double st = std::sqrt(theta);
  for (int m = 0; m + 1 < truncation; ++m) {
    c(m, m + 1) = up * st * std::sqrt(m + 1.0);
    c(m + 1, m) = std::conj(up) * st * std::sqrt(m + 1.0);
  }
  return {std::move(c), theta, Support::unbounded};
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::forward:
      return "forward";
    case Direction::backward:
      return "backward";
    case Direction::none:
      return "none";
    case Direction::equal:
      return "equal";
  }
  return "unknown";
}

CausalVerdict causal_classifier(CoherentParam k1, CoherentParam k2) {
  CausalVerdict v;
  v.delta_kappa = k2.kappa - k1.kappa;
  if (v.delta_kappa == Complex{}) {
    v.related = true;
    v.direction = Direction::equal;
    v.arg_delta = 0.0;
    return v;
  }
  v.arg_delta = std::arg(v.delta_kappa);
  if (v.arg_delta <= -std::numbers::pi) v.arg_delta = std::numbers::pi;

  // Closed cone. Points constructed on the lightlike boundary carry rounding
  // of a few ulps in Re/Im, so the comparison allows 1e-12 relative slack.
  const double re = v.delta_kappa.real();
  const double im = std::abs(v.delta_kappa.imag());
  const double slack = 1e-12 * std::abs(v.delta_kappa);
  if (re >= im - slack)
    v.direction = Direction::forward;
  else if (-re >= im - slack)
    v.direction = Direction::backward;
  else
    v.direction = Direction::none;
  v.related = v.direction != Direction::none;
  return v;
}

double witness_value(CoherentParam k1, CoherentParam k2, Witness which) {
  const Complex dk = k2.kappa - k1.kappa;
  if (dk == Complex{}) return 0.0;
  const double shift = which == Witness::a ? std::numbers::pi / 4 : -std::numbers::pi / 4;
  return 2.0 * std::abs(dk) * std::cos(shift + std::arg(dk));
}

double witness_value_numeric(CoherentParam k1, CoherentParam k2, Witness which, int truncation,
                             double theta, double tail_tol) {
  const AlgebraElement w = witness_element(which, truncation, theta);
  const StateVector xi = make_coherent(k1, truncation, theta, tail_tol);
  const StateVector phi = make_coherent(k2, truncation, theta, tail_tol);
  return (evaluate(phi, w) - evaluate(xi, w)).real();
}

StateVector curve_state(CoherentParam k1, CoherentParam k2, double t, int truncation,
                        double theta, double tail_tol) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("curve_state: t must lie in [0, 1]");
  if (truncation < 1) throw DomainError("curve_state: truncation must be >= 1");
  if (!(theta > 0.0)) throw DomainError("curve_state: theta must be positive");
  const Complex kt = k1.kappa + t * (k2.kappa - k1.kappa);
  const double mu = std::norm(kt) / theta;
  require_tail(mu, truncation, tail_tol, "curve_state");
  std::ostringstream label;
  label << "curve t=" << t;
  return {curve_components(k1, k2, t, truncation, theta), theta, StateKind::curve, label.str(),
          poisson_tail(mu, truncation)};
}

CVector curve_derivative(CoherentParam k1, CoherentParam k2, double t, int truncation,
                         double theta, double tail_tol) {
  const StateVector chi = curve_state(k1, k2, t, truncation, theta, tail_tol);
  const CVector wide = curve_components(k1, k2, t, truncation + 1, theta);
  const Complex dk = k2.kappa - k1.kappa;
  const double st = std::sqrt(theta);
  CVector d(truncation);
  for (int m = 0; m < truncation; ++m) {
    Complex v = -std::conj(dk) / st * std::sqrt(m + 1.0) * wide(m + 1);
    if (m >= 1) v += dk / st * std::sqrt(static_cast<double>(m)) * wide(m - 1);
    d(m) = v;
  }
  return d;
}

MonotonicityReport monotonicity_check(const AlgebraElement& a, CoherentParam k1,
                                      CoherentParam k2, int steps, double tail_tol) {
  if (steps < 1) throw DomainError("monotonicity_check: steps must be >= 1");
  const CausalCertificate cert = cone_membership(a);
  if (cert.verdict == ConeVerdict::not_in_cone)
    throw PreconditionError("monotonicity_check: element is not in the causal cone");
  const CausalVerdict verdict = causal_classifier(k1, k2);
  if (verdict.direction != Direction::forward && verdict.direction != Direction::equal)
    throw PreconditionError("monotonicity_check: delta kappa is not in the forward cone");

  const int n = a.truncation();
  const double theta = a.theta();
  MonotonicityReport r;
  double previous = 0.0;
  r.min_increment = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const double value = evaluate(curve_state(k1, k2, t, n, theta, tail_tol), a).real();
    if (i > 0) r.min_increment = std::min(r.min_increment, value - previous);
    previous = value;
  }
  r.monotone = r.min_increment >= -1e-9;

  constexpr double h = 1e-4;
  for (int i = 1; i <= 5; ++i) {
    const double t = i / 6.0;
    const CVector fd = (curve_state(k1, k2, t + h, n, theta, tail_tol).components() -
                        curve_state(k1, k2, t - h, n, theta, tail_tol).components()) /
                       (2.0 * h);
    const CVector exact = curve_derivative(k1, k2, t, n, theta, tail_tol);
    const double denom = std::max(exact.norm(), 1e-300);
    r.max_derivative_error = std::max(r.max_derivative_error, (fd - exact).norm() / denom);
  }
  r.derivative_ok = r.max_derivative_error < 1e-6;
  return r;
}

}  // namespace moyal
