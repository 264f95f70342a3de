#include <doctest.h>

#include "oracles.hpp"

#include <moyal/error.hpp>
#include <moyal/gridspace.hpp>

#include <cmath>
#include <random>

using namespace moyal;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("grid function invariants") {
  CHECK_THROWS_AS(GridFunction(CMatrix::Zero(7, 7), 1.0), DomainError);
  CHECK_THROWS_AS(GridFunction(CMatrix::Zero(8, 9), 1.0), DomainError);
  CHECK_THROWS_AS(GridFunction(CMatrix::Zero(8, 8), 0.0), DomainError);
  const Grid g{9, 4.0};
  CHECK(g.spacing() == 1.0);
  CHECK(g.coordinate(0) == -4.0);
  CHECK(g.coordinate(8) == 4.0);
}

TEST_CASE("sampled f00") {
  const double theta = 2.0;
  const Grid grid{33, 8.0};
  const auto f = sample_f00(grid, theta);
  CHECK(f.samples()(16, 16) == Complex{2.0, 0.0});
  CHECK(f.samples() == f.samples().colwise().reverse().rowwise().reverse().eval());
  GridFunction sq(f.samples().cwiseAbs2().cast<Complex>(), grid.half_width);
  CHECK(std::abs(quadrature(sq) / (2 * kPi * theta) - 1.0) < 1e-6);
  CHECK(f.boundary_max() < 1e-10);
  CHECK_THROWS_AS(sample_f00(Grid{32, 5.0}, theta), DomainError);
}

TEST_CASE("coordinates and inner products") {
  const Grid grid{16, 3.0};
  const auto z = sample_coordinate(grid, Coordinate::z);
  const auto zb = sample_coordinate(grid, Coordinate::zbar);
  CHECK(max_abs(z.conj().samples() - zb.samples()) == 0.0);
  CHECK(z.samples()(15, 0) == Complex{3.0 / std::numbers::sqrt2, -3.0 / std::numbers::sqrt2});
  const auto f00 = sample_f00(Grid{40, 7.0}, 2.0);
  CHECK(std::abs(inner_product(f00, f00) - 2 * kPi * 2.0) < 1e-8);
}

TEST_CASE("star integral of f00 with itself") {
  const double theta = 2.0;
  const Grid grid{32, 6.0};
  const auto f00 = sample_f00(grid, theta);
  const auto p = star_integral(f00, f00, theta);
  CHECK(max_abs(p.samples() - f00.samples()) <= 1e-3);
  CHECK(max_abs(star_integral(f00, GridFunction::zero(grid), theta).samples()) == 0.0);
}

TEST_CASE("zbar star f00") {
  const double theta = 2.0;
  const Grid grid{32, 6.0};
  const auto f00 = sample_f00(grid, theta);
  const auto zb = sample_coordinate(grid, Coordinate::zbar);
  const auto p = star_integral(zb, f00, theta);
  const CMatrix expected = 2.0 * zb.samples().cwiseProduct(f00.samples());
  // The coordinate does not decay, so only the interior is quadrature-accurate.
  double err = 0.0;
  for (int i = 0; i < grid.points; ++i)
    for (int j = 0; j < grid.points; ++j)
      if (std::abs(grid.coordinate(i)) <= 3.0 && std::abs(grid.coordinate(j)) <= 3.0)
        err = std::max(err, std::abs(p.samples()(i, j) - expected(i, j)));
  CHECK(err < 1e-3);
}

TEST_CASE("star integral guards") {
  const double theta = 2.0;
  const auto f = sample_f00(Grid{16, 6.0}, theta);
  CHECK_THROWS_AS(star_integral(f, sample_f00(Grid{17, 6.0}, theta), theta), CompositionError);
  CHECK_THROWS_AS(star_integral(sample_f00(Grid{65, 8.0}, theta),
                                sample_f00(Grid{65, 8.0}, theta), theta),
                  GuardError);
  const auto z = sample_coordinate(Grid{16, 6.0}, Coordinate::z);
  CHECK_THROWS_AS(star_integral(z, z, theta), DomainError);
  // Sub-lattice evaluation fills only the requested points.
  const std::vector<std::pair<int, int>> pts{{7, 7}, {3, 10}};
  const auto sub = star_integral(f, f, theta, pts);
  const auto full = star_integral(f, f, theta);
  CHECK(sub.samples()(7, 7) == full.samples()(7, 7));
  CHECK(sub.samples()(3, 10) == full.samples()(3, 10));
  CHECK(sub.samples()(0, 0) == Complex{});
}

TEST_CASE("trace and involution of the integral star product") {
  const double theta = 2.0;
  const Grid grid{32, 6.0};
  std::mt19937_64 rng(41);
  CMatrix ca = oracle::random_matrix(rng, 4, 3), cb = oracle::random_matrix(rng, 4, 3);
  const auto f = reconstruct(AlgebraElement(ca, theta), grid);
  const auto g = reconstruct(AlgebraElement(cb, theta), grid);
  const auto fg = star_integral(f, g, theta);
  GridFunction pointwise(f.samples().cwiseProduct(g.samples()), grid.half_width);
  const double scale = std::abs(quadrature(pointwise));
  CHECK(std::abs(quadrature(fg) - quadrature(pointwise)) <= 1e-3 * std::max(1.0, scale));
  const auto rev = star_integral(g.conj(), f.conj(), theta);
  CHECK(max_abs(rev.samples() - fg.conj().samples()) <= 1e-3 * max_abs(fg.samples()));
}

TEST_CASE("grid derivatives") {
  const double theta = 2.0;
  const Grid grid{40, 7.0};
  const auto f = sample_f00(grid, theta);
  CMatrix exact(grid.points, grid.points);
  for (int i = 0; i < grid.points; ++i)
    for (int j = 0; j < grid.points; ++j)
      exact(i, j) = -2.0 * grid.coordinate(i) / theta * f.samples()(i, j);
  const double spectral = max_abs(grid_derivative(f, 0, GridDerivative::spectral).samples() - exact);
  const double central = max_abs(grid_derivative(f, 0, GridDerivative::central4).samples() - exact);
  CHECK(spectral < 1e-8);
  CHECK(central < 1e-2);
  CHECK(spectral < central);
  CHECK_THROWS_AS(grid_derivative(f, 2, GridDerivative::spectral), DomainError);
}

TEST_CASE("matrix basis on the grid") {
  const double theta = 2.0;
  const Grid grid{40, 7.0};
  const MatrixBasisOnGrid basis(grid, theta, 8);
  CHECK(max_abs(basis(0, 0).samples() - sample_f00(grid, theta).samples()) < 1e-6);
  const double norm = 2 * kPi * theta;
  CHECK(std::abs(inner_product(basis(0, 1), basis(0, 1)) - norm) < 1e-3);
  CHECK(std::abs(inner_product(basis(0, 1), basis(1, 0))) < 1e-3);
  // Gram matrix over a block of basis functions.
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          const Complex ip = inner_product(basis(m, n), basis(k, l));
          const double expected = (m == k && n == l) ? norm : 0.0;
          CHECK(std::abs(ip - expected) < 1e-6 * norm);
        }
  // f_mn^dagger = f_nm.
  CHECK(max_abs(basis(1, 3).conj().samples() - basis(3, 1).samples()) < 1e-10);
  CHECK_THROWS_AS(MatrixBasisOnGrid(grid, theta, 14), GuardError);
  CHECK_THROWS_AS(basis(7, 7), GuardError);
}

TEST_CASE("coefficients and reconstruction") {
  const double theta = 2.0;
  const Grid grid{40, 7.0};
  const MatrixBasisOnGrid basis(grid, theta, 7);
  const auto c = coefficients_from_grid(sample_f00(grid, theta), basis);
  CMatrix unit = CMatrix::Zero(7, 7);
  unit(0, 0) = 1.0;
  CHECK(max_abs(c.coeffs() - unit) < 1e-4);
  CHECK(max_abs(coefficients_from_grid(GridFunction::zero(grid), basis).coeffs()) == 0.0);

  std::mt19937_64 rng(42);
  for (int i = 0; i < 5; ++i) {
    const AlgebraElement a(oracle::random_matrix(rng, 7, 5), theta);
    const auto back = coefficients_from_grid(reconstruct(a, basis), basis);
    CHECK(max_abs(back.coeffs() - a.coeffs()) <= 1e-3);
  }
  CHECK_THROWS_AS(coefficients_from_grid(sample_f00(grid, theta), 8, theta), GuardError);
  CHECK_THROWS_AS(reconstruct(AlgebraElement::basis(7, 6, 8, theta), grid), GuardError);
}

TEST_CASE("commuting square between the matrix basis and the grid") {
  // Elements on an 8 x 8 truncation supported on indices <= 3; the product is
  // read back on the leading 7 x 7 block, the largest the grid basis covers.
  const double theta = 2.0;
  const Grid grid{32, 6.0};
  const MatrixBasisOnGrid basis(grid, theta, 7);
  std::mt19937_64 rng(43);
  const AlgebraElement a(oracle::random_matrix(rng, 8, 4), theta);
  const AlgebraElement b(oracle::random_matrix(rng, 8, 4), theta);
  const auto fa = reconstruct(a.resized(7), basis);
  const auto fb = reconstruct(b.resized(7), basis);
  const auto back = coefficients_from_grid(star_integral(fa, fb, theta), basis);
  const CMatrix expected = star(a, b).coeffs().topLeftCorner(7, 7);
  const double scale = std::max(1.0, max_abs(expected));
  CHECK(max_abs(back.coeffs() - expected) <= 1e-3 * scale);
}
