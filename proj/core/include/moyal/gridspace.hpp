#pragma once

// Continuum cross-checks: functions sampled on a square grid, trapezoidal
// quadrature of the integral star product, and the matrix basis f_mn built on
// the grid by coordinate star multiplication.

#include "moyal/algebra.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace moyal {

/// Uniform M x M grid on [-L, L]^2; first index runs along x1, second along x2.
struct Grid {
  int points = 32;
  double half_width = 6.0;

  double spacing() const { return 2.0 * half_width / (points - 1); }
  double coordinate(int i) const { return -half_width + i * spacing(); }
};

class GridFunction {
 public:
  /// Requires a square sample matrix with M >= 8, L > 0 and finite samples.
  GridFunction(CMatrix samples, double half_width);

  static GridFunction zero(const Grid& grid);

  const CMatrix& samples() const noexcept { return samples_; }
  double half_width() const noexcept { return half_width_; }
  int points() const noexcept { return static_cast<int>(samples_.rows()); }
  Grid grid() const { return {points(), half_width_}; }
  double spacing() const { return grid().spacing(); }
  double coordinate(int i) const { return grid().coordinate(i); }

  /// max |f| over the outer frame of the grid.
  double boundary_max() const;

  GridFunction conj() const;

 private:
  CMatrix samples_;
  double half_width_;
};

/// f00 = 2 exp(-(x1^2 + x2^2) / theta). Requires L >= 4 sqrt(theta).
GridFunction sample_f00(const Grid& grid, double theta);

enum class Coordinate { z, zbar };

/// z = (x1 + i x2) / sqrt(2) or its conjugate (no decay).
GridFunction sample_coordinate(const Grid& grid, Coordinate which);

/// Trapezoidal integral over the box.
Complex quadrature(const GridFunction& f);

/// Trapezoidal <f, g> = integral of conj(f) g.
Complex inner_product(const GridFunction& f, const GridFunction& g);

/// Largest grid accepted by star_integral.
inline constexpr int kStarGuard = 64;
/// Boundary frame must lie below this fraction of the peak for a decaying input.
inline constexpr double kDecayThreshold = 1e-3;

/// (f * g)(x) = (pi theta)^{-2} integral f(u) g(v) exp(-2i/theta [(u2-x2)(v1-x1)
/// - (u1-x1)(v2-x2)]) d^2u d^2v by trapezoidal quadrature at every output
/// point, or only at `points` (other samples are zero). The phase factorizes
/// per output point so each point costs O(M^3). Requires matching grids,
/// M <= 64, and at least one input decaying at the frame.
GridFunction star_integral(const GridFunction& f, const GridFunction& g, double theta,
                           const std::optional<std::vector<std::pair<int, int>>>& points = {});

enum class GridDerivative { spectral, central4 };

/// Derivative along x1 (axis 0) or x2 (axis 1). Spectral uses the periodic
/// differentiation matrix on the grid; central4 uses fourth-order stencils,
/// one-sided at the frame.
GridFunction grid_derivative(const GridFunction& f, int axis, GridDerivative kind);

/// Largest m + n accepted by the grid reconstruction.
inline constexpr int kReconstructGuard = 12;

/// f_mn on the grid for m, n < size and m + n <= 12, built from f00 by
/// f_{m,n+1} = (f_mn * z) / sqrt(theta (n+1)), f_{m+1,n} = (zbar * f_mn) / sqrt(theta (m+1))
/// with the exact coordinate rules z*g = z g + (theta/2) dbar g,
/// zbar*g = zbar g - (theta/2) d g, g*z = z g - (theta/2) dbar g.
class MatrixBasisOnGrid {
 public:
  /// size <= 13; requesting an entry with m + n > 12 throws GuardError.
  MatrixBasisOnGrid(const Grid& grid, double theta, int size,
                    GridDerivative kind = GridDerivative::spectral);

  int size() const noexcept { return size_; }
  double theta() const noexcept { return theta_; }
  const Grid& grid() const noexcept { return grid_; }
  const GridFunction& operator()(int m, int n) const;

 private:
  Grid grid_;
  double theta_;
  int size_;
  std::vector<GridFunction> basis_;
};

/// sum a_mn f_mn on the grid. Guard: nonzero entries need m + n <= 12.
GridFunction reconstruct(const AlgebraElement& a, const Grid& grid,
                         GridDerivative kind = GridDerivative::spectral);
GridFunction reconstruct(const AlgebraElement& a, const MatrixBasisOnGrid& basis);

/// a_mn = (1 / 2 pi theta) <f_mn, f> for m, n < N. Guard 2 (N - 1) <= 12.
AlgebraElement coefficients_from_grid(const GridFunction& f, int truncation, double theta,
                                      GridDerivative kind = GridDerivative::spectral);
AlgebraElement coefficients_from_grid(const GridFunction& f, const MatrixBasisOnGrid& basis);

}  // namespace moyal
