#pragma once

// Small dense linear programs for the distance oracle.

#include <Eigen/Dense>

namespace moyal {

struct LpResult {
  double value = 0.0;
  Eigen::VectorXd x;
  int pivots = 0;
};

/// maximize c^T x subject to A x <= b with x free and b >= 0, so the origin
/// is feasible. Tableau simplex with Bland's rule (no cycling). Throws
/// DomainError on shape errors or b < 0 and Error if the LP is unbounded.
LpResult maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace moyal
