#pragma once

namespace moyal {

/// Riemann zeta for real s > 1: direct summation of the first terms plus an
/// Euler-Maclaurin tail whose remainder is below 1e-13. Throws DomainError
/// for s <= 1.
double riemann_zeta(double s);

/// Partial sum sum_{m=0}^{count-1} (m+1)^{-s}.
double zeta_partial_sum(double s, long count);

/// P(X >= n) for X ~ Poisson(mu), accurate in the far tail (no 1 - head
/// cancellation when n > mu).
double poisson_tail(double mu, long n);

/// Smallest n with poisson_tail(mu, n) <= tol.
long minimal_poisson_truncation(double mu, double tol);

}  // namespace moyal
