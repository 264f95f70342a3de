#include <doctest.h>

#include "oracles.hpp"

#include <moyal/diagnostics.hpp>
#include <moyal/error.hpp>
#include <moyal/lp.hpp>
#include <moyal/metric.hpp>
#include <moyal/special.hpp>

#include <cmath>
#include <random>

using namespace moyal;

namespace {

struct SilenceWarnings {
  WarningSink previous = warning_sink();
  SilenceWarnings() { set_warning_sink(nullptr); }
  ~SilenceWarnings() { set_warning_sink(previous); }
};

CMatrix pauli(int k) {
  const Complex i{0.0, 1.0};
  CMatrix s(2, 2);
  if (k == 0) s << 1.0, 0.0, 0.0, 1.0;
  if (k == 1) s << 0.0, 1.0, 1.0, 0.0;
  if (k == 2) s << 0.0, i, -i, 0.0;
  if (k == 3) s << 1.0, 0.0, 0.0, -1.0;
  return s;
}

// -i sum_mu (gamma^mu + omega gamma^{mu+2}) (x) d_mu a from the Clifford
// generators of each family.
CMatrix commutator_from_gammas(const AlgebraElement& a, double omega, DiracFamily family) {
  const CMatrix d = derivative(a, DerivativeKind::holomorphic).coeffs();
  const CMatrix db = derivative(a, DerivativeKind::antiholomorphic).coeffs();
  const CMatrix dmu[2] = {(d + db) / std::numbers::sqrt2,
                          Complex{0, 1} * (d - db) / std::numbers::sqrt2};
  CMatrix out = CMatrix::Zero(4 * a.truncation(), 4 * a.truncation());
  for (int mu = 1; mu <= 2; ++mu) {
    const CMatrix g = family == DiracFamily::d1
                          ? CMatrix(oracle::kron(pauli(0), pauli(mu)) +
                                    omega * oracle::kron(pauli(mu), pauli(3)))
                          : CMatrix(oracle::kron(pauli(3), pauli(mu)) +
                                    omega * oracle::kron(pauli(mu), pauli(0)));
    out += Complex{0, -1} * oracle::kron(g, dmu[mu - 1]);
  }
  return out;
}

}  // namespace

TEST_CASE("seminorm_d0 examples") {
  const auto f00 = AlgebraElement::basis(0, 0, 8, 2.0);
  const auto r = seminorm_d0(f00);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.norm_holo == doctest::Approx(std::sqrt(0.5)));
  CHECK(r.in_ball);
  CHECK(seminorm_d0(AlgebraElement::zero(8, 2.0)).value == 0.0);
  for (int m0 : {0, 3, 10}) {
    const auto opt = optimal_element(m0, 16, 2.0);
    CHECK(seminorm_d0(opt).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(seminorm_d0(opt).in_ball);
  }
  CHECK_THROWS_AS(seminorm_d0(AlgebraElement(CMatrix::Identity(3, 3), 1.0, Support::unbounded)),
                  DomainError);
}

TEST_CASE("seminorm_dk scaling") {
  const auto f00 = AlgebraElement::basis(0, 0, 8, 2.0);
  CHECK(seminorm_dk(f00, 1.0).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_FALSE(seminorm_dk(f00, 1.0).in_ball);
  CHECK(*seminorm_dk(f00, 0.5).omega == 0.5);
  CHECK(std::abs(seminorm_dk(f00, 1e-8).value - seminorm_d0(f00).value) < 1e-7);
  CHECK_THROWS_AS(seminorm_dk(f00, 0.0), DomainError);
  CHECK_THROWS_AS(seminorm_dk(f00, 1.5), DomainError);
}

TEST_CASE("explicit Dirac commutators") {
  SilenceWarnings quiet;
  const auto f00 = AlgebraElement::basis(0, 0, 16, 2.0);
  CHECK(seminorm_dk_direct(f00, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(seminorm_dk_direct(AlgebraElement::zero(6, 2.0), 0.3) == 0.0);

  std::mt19937_64 rng(21);
  for (int i = 0; i < 30; ++i) {
    const int n = 4 + i % 10;
    const AlgebraElement a(oracle::random_matrix(rng, n, n), 1.0 + 0.1 * i);
    const double omega = 0.05 + 0.03 * i;
    for (auto family : {DiracFamily::d1, DiracFamily::d2}) {
      const CMatrix t = dirac_commutator(a, omega, family);
      CHECK((t - commutator_from_gammas(a, omega, family)).cwiseAbs().maxCoeff() <
            1e-12 * t.norm());
      const double direct = seminorm_dk_direct(a, omega, family);
      CHECK(direct == doctest::Approx(seminorm_dk(a, omega).value).epsilon(1e-9));
    }
  }

  // Diagonal real element at omega = 0.5.
  CMatrix diag = CMatrix::Zero(10, 10);
  for (int k = 0; k < 10; ++k) diag(k, k) = std::sin(k + 1.0);
  const AlgebraElement d(diag, 2.0);
  CHECK(seminorm_dk_direct(d, 0.5) ==
        doctest::Approx(std::sqrt(1.25) * seminorm_d0(d).value).epsilon(1e-12));
}

TEST_CASE("full matrix-space commutator has the same norm") {
  SilenceWarnings quiet;
  std::mt19937_64 rng(22);
  for (int i = 0; i < 5; ++i) {
    const AlgebraElement a(oracle::random_matrix(rng, 5, 5), 1.5);
    for (auto family : {DiracFamily::d1, DiracFamily::d2}) {
      const CMatrix full = CMatrix(dirac_commutator_full(a, 0.7, family));
      CHECK(full.rows() == 4 * 25);
      CHECK(oracle::norm_via_eigs(full) ==
            doctest::Approx(seminorm_dk_direct(a, 0.7, family)).epsilon(1e-10));
    }
  }
}

TEST_CASE("commutator guards") {
  SilenceWarnings quiet;
  CHECK_THROWS_AS(seminorm_dk_direct(AlgebraElement::identity(49, 1.0), 0.5), GuardError);
  CHECK_NOTHROW(seminorm_dk_direct(AlgebraElement::identity(48, 1.0), 0.5));
  CHECK_THROWS_AS(dirac_commutator(AlgebraElement::identity(4, 1.0), -0.1, DiracFamily::d1),
                  DomainError);
}

TEST_CASE("closed-form distance") {
  CHECK(distance_closed_form(1, 0, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(distance_closed_form(0, 1, 2.0) == distance_closed_form(1, 0, 2.0));
  CHECK(distance_closed_form(4, 4, 2.0) == 0.0);
  CHECK(distance_closed_form(2, 0, 2.0) == doctest::Approx(1.0 + 1.0 / std::sqrt(2.0)));
  for (double omega : {0.1, 0.5, 1.0})
    CHECK(distance_closed_form(7, 2, 1.3, omega) ==
          distance_closed_form(7, 2, 1.3) / std::sqrt(1.0 + omega * omega));
  // Triangle equality along the chain.
  CHECK(distance_closed_form(9, 0, 1.0) ==
        doctest::Approx(distance_closed_form(9, 4, 1.0) + distance_closed_form(4, 0, 1.0)));
  CHECK_THROWS_AS(distance_closed_form(-1, 0, 1.0), DomainError);
}

TEST_CASE("LP distance oracle") {
  for (int n = 0; n < 6; ++n) {
    for (int m = 0; m < 12; ++m) {
      const auto lp = distance_lp_oracle(m, n, 2.0, 16);
      CHECK(lp.value == doctest::Approx(oracle::greedy_chain_distance(m, n, 2.0)).epsilon(1e-12));
      CHECK(lp.value == doctest::Approx(distance_closed_form(m, n, 2.0)).epsilon(1e-12));
    }
  }
  const auto w = distance_lp_oracle(8, 3, 0.7, 12, 0.6);
  CHECK(w.value == doctest::Approx(distance_closed_form(8, 3, 0.7, 0.6)).epsilon(1e-12));
  CHECK(w.value == doctest::Approx(oracle::greedy_chain_distance(8, 3, 0.7, 0.6)).epsilon(1e-12));
  CHECK_THROWS_AS(distance_lp_oracle(15, 0, 2.0, 16), TruncationError);
  try {
    distance_lp_oracle(30, 0, 2.0, 16);
  } catch (const TruncationError& e) {
    CHECK(e.suggested_truncation() == 32);
  }
}

TEST_CASE("LP optimizer lies in the seminorm ball") {
  SilenceWarnings quiet;
  const auto lp = distance_lp_oracle(6, 1, 2.0, 12);
  CMatrix diag = CMatrix::Zero(12, 12);
  for (int k = 0; k < 12; ++k) diag(k, k) = lp.diagonal(k);
  const AlgebraElement a(diag, 2.0);
  const auto r = seminorm_d0(a);
  CHECK(r.value <= 1.0 + 1e-12);
  CHECK(std::abs(a(6, 6) - a(1, 1)) == doctest::Approx(lp.value));
}

TEST_CASE("non-diagonal perturbations never beat the diagonal optimum") {
  SilenceWarnings quiet;
  const int n = 12, m = 5, k = 0;
  const double theta = 2.0;
  const double best = distance_lp_oracle(m, k, theta, n).value;
  const auto opt = optimal_element(m - 1, n, theta);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const CMatrix h = oracle::random_hermitian(rng, n, n - 2);
    const AlgebraElement a = opt + AlgebraElement(0.05 * h, theta);
    const double l = seminorm_d0(a).value;
    const double gap = std::abs(a(m, m) - a(k, k)) / l;
    CHECK(gap <= best * (1 + 1e-12));
  }
}

TEST_CASE("optimal element") {
  const double theta = 2.0;
  for (int m0 : {0, 4, 9}) {
    const auto a = optimal_element(m0, 12, theta);
    CHECK(a(m0 + 1, m0 + 1) == Complex{});
    CHECK(std::abs(a(0, 0) - a(m0 + 1, m0 + 1)) ==
          doctest::Approx(distance_closed_form(m0 + 1, 0, theta)));
  }
  CHECK_THROWS_AS(optimal_element(11, 12, theta), DomainError);
}

TEST_CASE("simplex") {
  // maximize x + y with x <= 1, y <= 2, x + y <= 2.5
  Eigen::MatrixXd A(3, 2);
  A << 1, 0, 0, 1, 1, 1;
  Eigen::VectorXd b(3), c(2);
  b << 1, 2, 2.5;
  c << 1, 1;
  const auto r = maximize(A, b, c);
  CHECK(r.value == doctest::Approx(2.5));
  CHECK((A * r.x - b).maxCoeff() <= 1e-12);
  Eigen::MatrixXd open(1, 2);
  open << 1, -1;
  Eigen::VectorXd b1(1);
  b1 << 1;
  CHECK_THROWS_AS(maximize(open, b1, c), Error);
  b1 << -1;
  CHECK_THROWS_AS(maximize(open, b1, c), DomainError);
}

TEST_CASE("divergence bound") {
  const double theta = 2.0;
  for (double s : {1.2, 1.4, 2.0}) {
    const auto r = divergence_bound(200, s, theta);
    CHECK(r.bound == doctest::Approx(oracle::divergence_double_sum(200, s, theta, r.zeta))
                         .epsilon(1e-10));
    CHECK(r.a1 >= 0.0);
    CHECK(r.a2 >= r.a2_minorant);
  }
  double previous = 0.0;
  for (long m0 : {100L, 1000L, 10000L}) {
    const auto r = divergence_bound(m0, 1.4, theta);
    CHECK(r.bound > previous);
    CHECK(r.a2 >= r.a2_minorant);
    previous = r.bound;
  }
  CHECK(divergence_bound(10000, 1.4, theta).bound > 2 * divergence_bound(100, 1.4, theta).bound);
  // The unshifted estimate is larger than the minorant and exceeds A2 at m0 = 0.
  const auto r0 = divergence_bound(0, 1.4, theta);
  CHECK(r0.a2 == 0.0);
  CHECK(r0.a2_minorant == 0.0);
  CHECK(r0.a2_minorant_unshifted > r0.a2);
  CHECK_THROWS_AS(divergence_bound(10, 1.0, theta), DomainError);
  CHECK_THROWS_AS(divergence_bound(-1, 1.4, theta), DomainError);
}

TEST_CASE("finite-state bound") {
  std::mt19937_64 rng(24);
  std::uniform_int_distribution<int> idx(0, 9);
  std::normal_distribution<double> g;
  for (int i = 0; i < 500; ++i) {
    const double theta = 1.0 / (2 * std::numbers::pi) * (1.0 + i % 7);
    const AlgebraElement a(oracle::random_matrix(rng, 10, 10), theta);
    std::vector<std::pair<int, Complex>> w;
    for (int j = 0; j < 1 + i % 4; ++j) w.emplace_back(idx(rng), Complex{g(rng), g(rng)});
    if (std::all_of(w.begin(), w.end(), [](auto& p) { return p.second == Complex{}; })) continue;
    const auto lambda = make_finite(w, 10, theta);
    const int n = idx(rng);
    const double lhs =
        std::abs(evaluate(lambda, a) - evaluate(make_basis_state(n, 10, theta), a));
    CHECK(lhs <= finite_state_bound(a, lambda, n) * (1 + 1e-12));
  }
  // With 2 pi theta < 1 the bound fails for a = f_nn and Lambda supported off n.
  const double theta = 0.05;
  const std::vector<std::pair<int, Complex>> off{{0, 1.0}};
  const auto lambda = make_finite(off, 4, theta);
  const auto f22 = AlgebraElement::basis(2, 2, 4, theta);
  const double lhs =
      std::abs(evaluate(lambda, f22) - evaluate(make_basis_state(2, 4, theta), f22));
  CHECK(lhs == doctest::Approx(1.0));
  CHECK(finite_state_bound(f22, lambda, 2) < lhs);
  CHECK_THROWS_AS(finite_state_bound(AlgebraElement::zero(5, theta), lambda, 0), CompositionError);
}
