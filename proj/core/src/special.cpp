#include "moyal/special.hpp"

#include "moyal/error.hpp"

#include <array>
#include <cmath>

namespace moyal {
namespace {

// B_{2k} / (2k)! for k = 1..10.
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
};

constexpr int kDirectTerms = 32;

}  // namespace

double riemann_zeta(double s) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("riemann_zeta: requires finite s > 1");
  const double m = kDirectTerms;
  double sum = 0.0;
  // Sum backwards so the small terms accumulate first.
  for (int n = kDirectTerms - 1; n >= 1; --n) sum += std::pow(n, -s);
  // Euler-Maclaurin tail for sum_{n >= m} n^{-s}.
  double tail = std::pow(m, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(m, -s);
  // Rising factorial s (s+1) ... (s+2k-2) times m^{-s-2k+1}.
  double rising = s;
  double power = std::pow(m, -s - 1.0);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    const double term = kBernoulliOverFactorial[k] * rising * power;
    tail += term;
    if (std::abs(term) < 1e-17 * sum) break;
    rising *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
    power /= m * m;
  }
  return sum + tail;
}

double zeta_partial_sum(double s, long count) {
  double sum = 0.0;
  for (long m = count - 1; m >= 0; --m) sum += std::pow(static_cast<double>(m + 1), -s);
  return sum;
}

double poisson_tail(double mu, long n) {
  if (mu < 0.0) throw DomainError("poisson_tail: mu must be >= 0");
  if (n <= 0) return 1.0;
  if (mu == 0.0) return 0.0;
  auto log_pmf = [mu](long k) {
    return -mu + k * std::log(mu) - std::lgamma(static_cast<double>(k) + 1.0);
  };
  if (static_cast<double>(n) > mu) {
    // Terms decrease from k = n onward; sum until they stop contributing.
    double sum = 0.0;
    double term = std::exp(log_pmf(n));
    for (long k = n; term > 0.0; ++k) {
      sum += term;
      if (term < 1e-18 * sum) break;
      term *= mu / static_cast<double>(k + 1);
    }
    return std::min(1.0, sum);
  }
  double head = 0.0;
  for (long k = 0; k < n; ++k) head += std::exp(log_pmf(k));
  return std::max(0.0, 1.0 - head);
}

long minimal_poisson_truncation(double mu, double tol) {
  long n = static_cast<long>(std::floor(mu));
  while (poisson_tail(mu, n) > tol) ++n;
  // Step back while the previous size still satisfies the tolerance.
  while (n > 1 && poisson_tail(mu, n - 1) <= tol) --n;
  return n;
}

}  // namespace moyal
