#include "moyal/gridspace.hpp"

#include "moyal/error.hpp"

#include <cmath>
#include <numbers>

namespace moyal {
namespace {

constexpr int kMinPoints = 8;

void require_same_grid(const GridFunction& f, const GridFunction& g, const char* where) {
  if (f.points() != g.points() ||
      std::abs(f.half_width() - g.half_width()) > 1e-12 * f.half_width())
    throw CompositionError(std::string(where) + ": grids differ");
}

bool decays(const GridFunction& f) {
  const double peak = f.samples().cwiseAbs().maxCoeff();
  return peak == 0.0 || f.boundary_max() <= kDecayThreshold * peak;
}

Eigen::VectorXd trapezoid_weights(int m) {
  Eigen::VectorXd w = Eigen::VectorXd::Ones(m);
  w(0) = w(m - 1) = 0.5;
  return w;
}

CMatrix weighted(const CMatrix& s) {
  const Eigen::VectorXd w = trapezoid_weights(static_cast<int>(s.rows()));
  return w.asDiagonal() * s * w.asDiagonal();
}

Eigen::MatrixXd spectral_matrix(int m, double h) {
  // Periodic differentiation on m points with period m h.
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  const double k = 2.0 * std::numbers::pi / (m * h);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const int diff = i - j;
      const double sign = (diff % 2 == 0) ? 1.0 : -1.0;
      const double x = diff * std::numbers::pi / m;
      d(i, j) = k * 0.5 * sign * (m % 2 == 0 ? 1.0 / std::tan(x) : 1.0 / std::sin(x));
    }
  }
  return d;
}

Eigen::MatrixXd central4_matrix(int m, double h) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  const double s = 1.0 / (12.0 * h);
  for (int i = 2; i < m - 2; ++i) {
    d(i, i - 2) = s;
    d(i, i - 1) = -8.0 * s;
    d(i, i + 1) = 8.0 * s;
    d(i, i + 2) = -s;
  }
  const double forward0[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
  const double forward1[5] = {-3.0, -10.0, 18.0, -6.0, 1.0};
  for (int k = 0; k < 5; ++k) {
    d(0, k) = forward0[k] * s;
    d(1, k) = forward1[k] * s;
    d(m - 1, m - 1 - k) = -forward0[k] * s;
    d(m - 2, m - 1 - k) = -forward1[k] * s;
  }
  return d;
}

Eigen::MatrixXd derivative_matrix(int m, double h, GridDerivative kind) {
  return kind == GridDerivative::spectral ? spectral_matrix(m, h) : central4_matrix(m, h);
}

}  // namespace

GridFunction::GridFunction(CMatrix samples, double half_width)
    : samples_(std::move(samples)), half_width_(half_width) {
  if (!(half_width_ > 0.0)) throw DomainError("GridFunction: half width must be positive");
  if (samples_.rows() != samples_.cols() || samples_.rows() < kMinPoints)
    throw DomainError("GridFunction: samples must be square with M >= 8");
  if (!samples_.allFinite()) throw DomainError("GridFunction: samples must be finite");
}

GridFunction GridFunction::zero(const Grid& grid) {
  return {CMatrix::Zero(grid.points, grid.points), grid.half_width};
}

double GridFunction::boundary_max() const {
  const int m = points();
  const double rows = std::max(samples_.row(0).cwiseAbs().maxCoeff(),
                               samples_.row(m - 1).cwiseAbs().maxCoeff());
  const double cols = std::max(samples_.col(0).cwiseAbs().maxCoeff(),
                               samples_.col(m - 1).cwiseAbs().maxCoeff());
  return std::max(rows, cols);
}

GridFunction GridFunction::conj() const { return {samples_.conjugate(), half_width_}; }

GridFunction sample_f00(const Grid& grid, double theta) {
  if (!(theta > 0.0)) throw DomainError("sample_f00: theta must be positive");
  if (grid.half_width < 4.0 * std::sqrt(theta))
    throw DomainError("sample_f00: box too small, need L >= 4 sqrt(theta)");
  CMatrix s(grid.points, grid.points);
  for (int i = 0; i < grid.points; ++i) {
    const double x1 = grid.coordinate(i);
    for (int j = 0; j < grid.points; ++j) {
      const double x2 = grid.coordinate(j);
      s(i, j) = 2.0 * std::exp(-(x1 * x1 + x2 * x2) / theta);
    }
  }
  return {std::move(s), grid.half_width};
}

GridFunction sample_coordinate(const Grid& grid, Coordinate which) {
  const double sign = which == Coordinate::z ? 1.0 : -1.0;
  CMatrix s(grid.points, grid.points);
  for (int i = 0; i < grid.points; ++i)
    for (int j = 0; j < grid.points; ++j)
      s(i, j) = Complex{grid.coordinate(i), sign * grid.coordinate(j)} / std::numbers::sqrt2;
  return {std::move(s), grid.half_width};
}

Complex quadrature(const GridFunction& f) {
  const double h = f.spacing();
  return weighted(f.samples()).sum() * h * h;
}

Complex inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g, "inner_product");
  const double h = f.spacing();
  return weighted(f.samples().conjugate().cwiseProduct(g.samples())).sum() * h * h;
}

GridFunction star_integral(const GridFunction& f, const GridFunction& g, double theta,
                           const std::optional<std::vector<std::pair<int, int>>>& points) {
  require_same_grid(f, g, "star_integral");
  if (!(theta > 0.0)) throw DomainError("star_integral: theta must be positive");
  const int m = f.points();
  if (m > kStarGuard) throw GuardError("star_integral: grid exceeds 64 points per side");
  if (!decays(f) && !decays(g))
    throw DomainError("star_integral: neither input decays at the boundary frame");

  const double h = f.spacing();
  const double c = 2.0 * h * h / theta;
  // phase(a, b) = exp(i c a b) for integer offsets a, b in (-M, M).
  const int span = 2 * m - 1;
  CMatrix phase(span, span);
  for (int a = 0; a < span; ++a)
    for (int b = 0; b < span; ++b)
      phase(a, b) = std::polar(1.0, c * static_cast<double>(a - (m - 1)) * (b - (m - 1)));

  const CMatrix fw = weighted(f.samples());
  const CMatrix gw = weighted(g.samples());
  const double scale = std::pow(h, 4) / std::pow(std::numbers::pi * theta, 2);

  CMatrix out = CMatrix::Zero(m, m);
  CMatrix e1(m, m), e2(m, m);
  auto evaluate_at = [&](int i, int j) {
    // Sum over v = (r, s) first: T(r, p) = sum_s g(r, s) exp(i c (p - i)(s - j)).
    for (int p = 0; p < m; ++p)
      for (int s = 0; s < m; ++s) e1(p, s) = phase(p - i + m - 1, s - j + m - 1);
    for (int q = 0; q < m; ++q)
      for (int r = 0; r < m; ++r) e2(q, r) = std::conj(phase(q - j + m - 1, r - i + m - 1));
    const CMatrix w = e2 * (gw * e1.transpose());
    out(i, j) = fw.cwiseProduct(w.transpose()).sum() * scale;
  };

  if (points) {
    for (const auto& [i, j] : *points) {
      if (i < 0 || j < 0 || i >= m || j >= m)
        throw DomainError("star_integral: output point out of range");
      evaluate_at(i, j);
    }
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) evaluate_at(i, j);
  }
  return {std::move(out), f.half_width()};
}

GridFunction grid_derivative(const GridFunction& f, int axis, GridDerivative kind) {
  if (axis != 0 && axis != 1) throw DomainError("grid_derivative: axis must be 0 or 1");
  const Eigen::MatrixXd d = derivative_matrix(f.points(), f.spacing(), kind);
  if (axis == 0) return {d.cast<Complex>() * f.samples(), f.half_width()};
  return {f.samples() * d.transpose().cast<Complex>(), f.half_width()};
}

MatrixBasisOnGrid::MatrixBasisOnGrid(const Grid& grid, double theta, int size,
                                     GridDerivative kind)
    : grid_(grid), theta_(theta), size_(size) {
  if (size < 1 || size > kReconstructGuard + 1)
    throw GuardError("MatrixBasisOnGrid: size must lie in [1, 13]");

  const int m = grid.points;
  const Eigen::MatrixXcd d = derivative_matrix(m, grid.spacing(), kind).cast<Complex>();
  const CMatrix z = sample_coordinate(grid, Coordinate::z).samples();
  const CMatrix zbar = z.conjugate();
  const Complex i{0.0, 1.0};
  // d = (d1 - i d2)/sqrt(2), dbar = (d1 + i d2)/sqrt(2)
  auto del = [&](const CMatrix& g) {
    return CMatrix((d * g - i * (g * d.transpose())) / std::numbers::sqrt2);
  };
  auto delbar = [&](const CMatrix& g) {
    return CMatrix((d * g + i * (g * d.transpose())) / std::numbers::sqrt2);
  };

  std::vector<CMatrix> f(static_cast<std::size_t>(size * size));
  auto at = [&](int a, int b) -> CMatrix& { return f[static_cast<std::size_t>(a * size + b)]; };
  at(0, 0) = sample_f00(grid, theta).samples();
  for (int a = 0; a < size; ++a) {
    if (a > 0) {
      const CMatrix& g = at(a - 1, 0);
      at(a, 0) = (zbar.cwiseProduct(g) - (theta / 2.0) * del(g)) / std::sqrt(theta * a);
    }
    for (int b = 1; b < size && a + b <= kReconstructGuard; ++b) {
      const CMatrix& g = at(a, b - 1);
      at(a, b) = (z.cwiseProduct(g) - (theta / 2.0) * delbar(g)) / std::sqrt(theta * b);
    }
  }
  basis_.reserve(f.size());
  for (auto& s : f) {
    if (s.size() == 0) s = CMatrix::Zero(m, m);
    basis_.emplace_back(std::move(s), grid.half_width);
  }
}

const GridFunction& MatrixBasisOnGrid::operator()(int m, int n) const {
  if (m < 0 || n < 0 || m >= size_ || n >= size_)
    throw DomainError("MatrixBasisOnGrid: index out of range");
  if (m + n > kReconstructGuard) throw GuardError("MatrixBasisOnGrid: m + n exceeds 12");
  return basis_[static_cast<std::size_t>(m * size_ + n)];
}

GridFunction reconstruct(const AlgebraElement& a, const MatrixBasisOnGrid& basis) {
  const int n = a.truncation();
  CMatrix out = CMatrix::Zero(basis.grid().points, basis.grid().points);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (a(p, q) == Complex{}) continue;
      if (p + q > kReconstructGuard) throw GuardError("reconstruct: m + n exceeds 12");
      if (p >= basis.size() || q >= basis.size())
        throw DomainError("reconstruct: basis cache too small for the element");
      out += a(p, q) * basis(p, q).samples();
    }
  }
  return {std::move(out), basis.grid().half_width};
}

GridFunction reconstruct(const AlgebraElement& a, const Grid& grid, GridDerivative kind) {
  int needed = 1;
  for (int p = 0; p < a.truncation(); ++p) {
    for (int q = 0; q < a.truncation(); ++q) {
      if (a(p, q) == Complex{}) continue;
      if (p + q > kReconstructGuard) throw GuardError("reconstruct: m + n exceeds 12");
      needed = std::max({needed, p + 1, q + 1});
    }
  }
  return reconstruct(a, MatrixBasisOnGrid(grid, a.theta(), needed, kind));
}

AlgebraElement coefficients_from_grid(const GridFunction& f, const MatrixBasisOnGrid& basis) {
  if (f.points() != basis.grid().points ||
      std::abs(f.half_width() - basis.grid().half_width) > 1e-12 * f.half_width())
    throw CompositionError("coefficients_from_grid: grids differ");
  const int n = basis.size();
  if (2 * (n - 1) > kReconstructGuard)
    throw GuardError("coefficients_from_grid: requires 2 (N - 1) <= 12");
  CMatrix c(n, n);
  const double norm = 2.0 * std::numbers::pi * basis.theta();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) c(p, q) = inner_product(basis(p, q), f) / norm;
  return {std::move(c), basis.theta()};
}

AlgebraElement coefficients_from_grid(const GridFunction& f, int truncation, double theta,
                                      GridDerivative kind) {
  return coefficients_from_grid(f, MatrixBasisOnGrid(f.grid(), theta, truncation, kind));
}

}  // namespace moyal
