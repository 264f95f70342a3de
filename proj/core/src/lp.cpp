#include "moyal/lp.hpp"

#include "moyal/error.hpp"

#include <limits>
#include <vector>

namespace moyal {

LpResult maximize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const Eigen::Index rows = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != rows || c.size() != n) throw DomainError("maximize: shape mismatch");
  if ((b.array() < 0.0).any()) throw DomainError("maximize: requires b >= 0");

  // Columns: x+ (n), x- (n), slacks (rows), rhs. Last row holds reduced costs.
  const Eigen::Index cols = 2 * n + rows;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(rows + 1, cols + 1);
  t.block(0, 0, rows, n) = A;
  t.block(0, n, rows, n) = -A;
  t.block(0, 2 * n, rows, rows).setIdentity();
  t.block(0, cols, rows, 1) = b;
  t.block(rows, 0, 1, n) = -c.transpose();
  t.block(rows, n, 1, n) = c.transpose();

  std::vector<Eigen::Index> basis(rows);
  for (Eigen::Index i = 0; i < rows; ++i) basis[i] = 2 * n + i;

  constexpr double eps = 1e-12;
  LpResult result;
  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (t(rows, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (t(i, enter) > eps) {
        const double ratio = t(i, cols) / t(i, enter);
        if (ratio < best - eps || (ratio <= best + eps && leave >= 0 && basis[i] < basis[leave])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
    }
    if (leave < 0) throw Error("maximize: objective is unbounded");

    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= rows; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[leave] = enter;
    ++result.pivots;
  }

  Eigen::VectorXd z = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index i = 0; i < rows; ++i) z(basis[i]) = t(i, cols);
  result.x = z.head(n) - z.segment(n, n);
  result.value = c.dot(result.x);
  return result;
}

}  // namespace moyal
