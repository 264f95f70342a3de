#include "moyal/states.hpp"

#include "moyal/error.hpp"
#include "moyal/special.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace moyal {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

StateVector::StateVector(CVector components, double theta, StateKind kind, std::string label,
                         double tail_mass)
    : components_(std::move(components)),
      theta_(theta),
      kind_(kind),
      label_(std::move(label)),
      tail_mass_(tail_mass) {
  if (!(theta_ > 0.0) || !std::isfinite(theta_))
    throw DomainError("StateVector: theta must be positive and finite");
  if (components_.size() < 1) throw DomainError("StateVector: empty component vector");
  if (!components_.allFinite()) throw DomainError("StateVector: components must be finite");
  if (!(tail_mass_ >= 0.0 && tail_mass_ <= 1.0))
    throw DomainError("StateVector: tail mass must lie in [0, 1]");
  const double defect = std::abs(truncated_norm() + tail_mass_ - 1.0);
  if (defect > kNormalizationTolerance) {
    std::ostringstream os;
    os << "StateVector: normalization defect " << defect << " exceeds "
       << kNormalizationTolerance;
    throw DomainError(os.str());
  }
}

double StateVector::truncated_norm() const {
  return kTwoPi * theta_ * components_.squaredNorm();
}

std::vector<int> StateVector::support() const {
  std::vector<int> out;
  for (int m = 0; m < truncation(); ++m)
    if (components_(m) != Complex{0.0, 0.0}) out.push_back(m);
  return out;
}

StateVector make_basis_state(int n, int truncation, double theta) {
  if (truncation < 1 || n < 0 || n >= truncation)
    throw DomainError("make_basis_state: need 0 <= n < N");
  CVector psi = CVector::Zero(truncation);
  psi(n) = 1.0 / std::sqrt(kTwoPi * theta);
  return {std::move(psi), theta, StateKind::basis, "basis " + std::to_string(n)};
}

StateVector make_coherent(CoherentParam param, int truncation, double theta, double tail_tol) {
  if (truncation < 1) throw DomainError("make_coherent: truncation must be >= 1");
  if (!(theta > 0.0)) throw DomainError("make_coherent: theta must be positive");
  const Complex kappa = param.kappa;
  if (!std::isfinite(kappa.real()) || !std::isfinite(kappa.imag()))
    throw DomainError("make_coherent: kappa must be finite");

  const double r2 = std::norm(kappa);
  const double mu = r2 / theta;
  const double tail = poisson_tail(mu, truncation);
  if (tail > tail_tol) {
    const long need = minimal_poisson_truncation(mu, tail_tol);
    std::ostringstream os;
    os << "make_coherent: Poisson tail " << tail << " beyond N = " << truncation
       << " exceeds " << tail_tol << "; use N >= " << need;
    throw TruncationError(os.str(), static_cast<int>(need));
  }

  CVector phi = CVector::Zero(truncation);
  const double log_prefactor = -0.5 * std::log(kTwoPi * theta) - r2 / (2.0 * theta);
  if (r2 == 0.0) {
    phi(0) = std::exp(log_prefactor);
  } else {
    const double log_r = std::log(std::abs(kappa));
    const double phase = std::arg(kappa);
    const double log_theta = std::log(theta);
    for (int m = 0; m < truncation; ++m) {
      const double log_mod =
          log_prefactor + m * log_r - 0.5 * std::lgamma(m + 1.0) - 0.5 * m * log_theta;
      phi(m) = std::polar(std::exp(log_mod), m * phase);
    }
  }
  return {std::move(phi), theta, StateKind::coherent, "coherent " + format_complex(kappa), tail};
}

StateVector make_zeta(double s, int truncation, double theta) {
  if (!(s > 1.0)) throw DomainError("make_zeta: requires s > 1");
  if (truncation < 1) throw DomainError("make_zeta: truncation must be >= 1");
  const double zeta = riemann_zeta(s);
  CVector psi(truncation);
  const double pref = 1.0 / std::sqrt(kTwoPi * theta * zeta);
  for (int m = 0; m < truncation; ++m) psi(m) = pref * std::pow(m + 1.0, -0.5 * s);
  const double tail = std::max(0.0, 1.0 - zeta_partial_sum(s, truncation) / zeta);
  std::ostringstream label;
  label << "zeta " << s;
  return {std::move(psi), theta, StateKind::zeta, label.str(), tail};
}

StateVector make_finite(std::span<const std::pair<int, Complex>> weights, int truncation,
                        double theta) {
  if (truncation < 1) throw DomainError("make_finite: truncation must be >= 1");
  CVector psi = CVector::Zero(truncation);
  for (const auto& [index, w] : weights) {
    if (index < 0 || index >= truncation) throw DomainError("make_finite: index out of range");
    psi(index) += w;
  }
  const double norm2 = psi.squaredNorm();
  if (norm2 == 0.0) throw DomainError("make_finite: all weights vanish");
  psi /= std::sqrt(kTwoPi * theta * norm2);
  return {std::move(psi), theta, StateKind::finite, "finite"};
}

Complex evaluate(const StateVector& omega, const AlgebraElement& a) {
  if (omega.truncation() != a.truncation())
    throw CompositionError("evaluate: state and element truncations differ");
  if (std::abs(omega.theta() - a.theta()) > 1e-12 * std::max(omega.theta(), a.theta()))
    throw CompositionError("evaluate: state and element theta differ");
  const CVector& psi = omega.components();
  return kTwoPi * omega.theta() * psi.dot(a.coeffs() * psi);
}

AlgebraElement monomial(MonomialKind kind, int q, int truncation, double theta) {
  if (q < 0 || q >= truncation) throw DomainError("monomial: need 0 <= q < N");
  CMatrix c = CMatrix::Zero(truncation, truncation);
  const double log_theta_q = 0.5 * q * std::log(theta);
  for (int m = 0; m + q < truncation; ++m) {
    const double v =
        std::exp(log_theta_q + 0.5 * (std::lgamma(m + q + 1.0) - std::lgamma(m + 1.0)));
    if (kind == MonomialKind::z)
      c(m, m + q) = v;
    else
      c(m + q, m) = v;
  }
  return {std::move(c), theta, Support::unbounded};
}

double coherent_monomial_error_bound(CoherentParam kappa, int q, int truncation, double theta) {
  const double mu = std::norm(kappa.kappa) / theta;
  return std::pow(std::abs(kappa.kappa), q) * poisson_tail(mu, truncation - q);
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << (std::signbit(z.imag()) ? "-" : "+")
     << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace moyal
