#include "acceptance.hpp"

#include <moyal/moyal.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

namespace moyal::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

struct Context {
  const Options& options;
  std::mt19937_64 rng;

  double tol(double pinned) const {
    return options.tol ? std::min(pinned, *options.tol) : pinned;
  }
  int truncation(int pinned) const { return options.truncation.value_or(pinned); }
};

CMatrix random_matrix(std::mt19937_64& rng, int n, int support) {
  std::normal_distribution<double> g;
  CMatrix m = CMatrix::Zero(n, n);
  for (int c = 0; c < std::min(n, support); ++c)
    for (int r = 0; r < std::min(n, support); ++r) m(r, c) = Complex{g(rng), g(rng)};
  return m;
}

AlgebraElement random_element(std::mt19937_64& rng, int n, double theta, int support) {
  return {random_matrix(rng, n, support), theta};
}

constexpr const char* kNames[] = {
    "",
    "distance table reproduction",
    "homothety of D1/D2 seminorms",
    "optimal-element saturation",
    "divergence trend of the zeta state",
    "finite-state distance bound",
    "algebra identities",
    "causal classifier vs witnesses",
    "witness cone certificates",
    "causal curve",
    "grid cross-validation",
    "coherent monomial evaluation",
};

Result start(int id) {
  Result r;
  r.id = id;
  r.name = kNames[id];
  return r;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

Result distance_table(Context& ctx) {
  Result r = start(1);
  r.tol = ctx.tol(1e-9);
  r.runtime_limit = 10.0;
  const int n_trunc = ctx.truncation(64);
  double worst = 0.0;
  int count = 0;
  for (double theta : {0.5, 1.0, 2.0}) {
    for (int m = 1; m <= 20; ++m) {
      for (int n = 0; n < m; ++n) {
        const double lp = distance_lp_oracle(m, n, theta, n_trunc).value;
        worst = std::max(worst, std::abs(lp - distance_closed_form(m, n, theta)));
        ++count;
      }
    }
  }
  r.metric = worst;
  r.passed = worst <= r.tol;
  r.detail = std::to_string(count) + " pairs at N = " + std::to_string(n_trunc) +
             ", max |lp - closed form| = " + fmt(worst);
  return r;
}

Result homothety(Context& ctx) {
  Result r = start(2);
  r.tol = ctx.tol(1e-9);
  r.runtime_limit = 60.0;
  const int n = ctx.truncation(16);
  const double theta = 2.0;
  double worst = 0.0;
  for (int sample = 0; sample < 100; ++sample) {
    // Interior support keeps the derivatives free of truncation effects.
    const AlgebraElement a = random_element(ctx.rng, n, theta, std::max(1, n - 2));
    const double d0 = seminorm_d0(a).value;
    for (double omega : {0.25, 0.5, 1.0}) {
      const double expected = std::sqrt(1.0 + omega * omega);
      for (DiracFamily f : {DiracFamily::d1, DiracFamily::d2})
        worst = std::max(worst, rel(seminorm_dk_direct(a, omega, f) / d0, expected));
    }
  }
  r.metric = worst;
  r.passed = worst <= r.tol;
  r.detail = "100 elements x 3 omegas x {D1, D2} at N = " + std::to_string(n) +
             ", max relative deviation " + fmt(worst);
  return r;
}

Result optimal_saturation(Context& ctx) {
  Result r = start(3);
  r.tol = ctx.tol(1e-10);
  const int n = ctx.truncation(32);
  double worst_norm = 0.0, worst_tri = 0.0;
  for (double theta : {0.5, 1.0, 2.0}) {
    for (int m0 = 0; m0 <= 30; ++m0) {
      const AlgebraElement a = optimal_element(m0, n, theta);
      worst_norm = std::max(worst_norm, std::abs(seminorm_d0(a).value - 1.0));
      for (int big = 1; big <= m0; ++big) {
        for (int small = 0; small < big; ++small) {
          const double lhs = std::abs(evaluate(make_basis_state(big, n, theta), a) -
                                      evaluate(make_basis_state(small, n, theta), a));
          worst_tri = std::max(worst_tri, rel(lhs, distance_closed_form(big, small, theta)));
        }
      }
    }
  }
  const double exact_tol = 1e-12;
  r.metric = std::max(worst_norm, worst_tri);
  r.passed = worst_norm <= r.tol && worst_tri <= exact_tol;
  r.detail = "|l_D0 - 1| max " + fmt(worst_norm) + ", triangle equality max rel " +
             fmt(worst_tri) + " (<= " + fmt(exact_tol) + "), theta in {0.5, 1, 2}, N = " +
             std::to_string(n);
  return r;
}

Result divergence(Context&) {
  Result r = start(4);
  const double s = 1.4, theta = 2.0;
  const double b2 = divergence_bound(100, s, theta).bound;
  const double b3 = divergence_bound(1000, s, theta).bound;
  const double b4 = divergence_bound(10000, s, theta).bound;
  int minorant_violations = 0;
  for (long m0 : {0L, 1L, 2L, 5L, 10L, 30L, 100L, 300L, 1000L, 3000L, 10000L}) {
    const DivergenceReport d = divergence_bound(m0, s, theta);
    if (d.a2 < d.a2_minorant) ++minorant_violations;
  }
  r.metric = minorant_violations;
  r.passed = b4 > b3 && b3 > b2 && b4 > 2.0 * b2 && minorant_violations == 0;
  r.detail = "B(1e2) = " + fmt(b2) + ", B(1e3) = " + fmt(b3) + ", B(1e4) = " + fmt(b4) +
             ", A2 minorant violations " + std::to_string(minorant_violations);
  return r;
}

Result finite_bound(Context& ctx) {
  Result r = start(5);
  const int n = ctx.truncation(16);
  const double theta = 2.0;
  std::uniform_int_distribution<int> index(0, n - 1);
  std::uniform_int_distribution<int> size(1, std::min(n, 5));
  std::normal_distribution<double> g;
  int violations = 0;
  for (int sample = 0; sample < 1000; ++sample) {
    const AlgebraElement a = random_element(ctx.rng, n, theta, n);
    std::vector<std::pair<int, Complex>> weights;
    const int k = size(ctx.rng);
    for (int i = 0; i < k; ++i) weights.emplace_back(index(ctx.rng), Complex{g(ctx.rng), g(ctx.rng)});
    const StateVector lambda = make_finite(weights, n, theta);
    const int m = index(ctx.rng);
    const double lhs = std::abs(evaluate(lambda, a) - evaluate(make_basis_state(m, n, theta), a));
    const double bound = finite_state_bound(a, lambda, m);
    if (lhs > bound * (1.0 + 1e-12)) ++violations;
  }
  r.metric = violations;
  r.passed = violations == 0;
  r.detail = "1000 samples at N = " + std::to_string(n) + ", theta = 2: " +
             std::to_string(violations) + " violations";
  return r;
}

Result algebra_identities(Context& ctx) {
  Result r = start(6);
  const double exact = 1e-12;
  const int n = ctx.truncation(32);
  const double theta = 2.0;
  const double two_pi_theta = 2.0 * std::numbers::pi * theta;
  int assoc = 0, invol = 0, trace = 0, submult = 0, leibniz = 0;
  double worst = 0.0;
  for (int sample = 0; sample < 1000; ++sample) {
    const AlgebraElement a = random_element(ctx.rng, n, theta, n);
    const AlgebraElement b = random_element(ctx.rng, n, theta, n);
    const AlgebraElement c = random_element(ctx.rng, n, theta, n);
    const double scale3 = a.coeffs().norm() * b.coeffs().norm() * c.coeffs().norm();
    const double scale2 = a.coeffs().norm() * b.coeffs().norm();

    double e = (star(star(a, b), c).coeffs() - star(a, star(b, c)).coeffs()).norm() / scale3;
    worst = std::max(worst, e);
    if (e > exact) ++assoc;

    e = (involution(star(a, b)).coeffs() - star(involution(b), involution(a)).coeffs()).norm() /
        scale2;
    worst = std::max(worst, e);
    if (e > exact) ++invol;

    e = std::abs(integral(star(a, b)) - integral(star(b, a))) / (two_pi_theta * scale2);
    worst = std::max(worst, e);
    if (e > exact) ++trace;

    if (l2_norm(star(a, b)) > l2_norm(a) * l2_norm(b) / std::sqrt(two_pi_theta) * (1.0 + exact))
      ++submult;

    // Leibniz on elements supported in the leading half, away from the edge.
    const int half = n / 2 - 1;
    const AlgebraElement p = random_element(ctx.rng, n, theta, half);
    const AlgebraElement q = random_element(ctx.rng, n, theta, half);
    for (DerivativeKind kind : {DerivativeKind::holomorphic, DerivativeKind::antiholomorphic,
                                DerivativeKind::lorentz_plus, DerivativeKind::lorentz_minus}) {
      const CMatrix lhs = derivative(star(p, q), kind).coeffs();
      const CMatrix rhs = (star(derivative(p, kind), q) + star(p, derivative(q, kind))).coeffs();
      e = (lhs - rhs).norm() / std::max(lhs.norm(), 1e-300);
      worst = std::max(worst, e);
      if (e > exact) ++leibniz;
    }
  }
  const int total = assoc + invol + trace + submult + leibniz;
  r.metric = total;
  r.tol = exact;
  r.passed = total == 0;
  std::ostringstream os;
  os << "1000 cases each at N = " << n << ": violations assoc " << assoc << ", involution "
     << invol << ", trace " << trace << ", l2 " << submult << ", Leibniz " << leibniz
     << "; worst relative residual " << fmt(worst);
  r.detail = os.str();
  return r;
}

Result classifier_witnesses(Context& ctx) {
  Result r = start(7);
  r.tol = ctx.tol(1e-8);
  const int n = ctx.truncation(128);
  const double theta = 2.0;
  const Complex base{0.25, -0.5};
  int mismatches = 0;
  double worst = 0.0;
  for (double radius : {0.5, 1.0, 2.0}) {
    for (int k = 1; k <= 72; ++k) {
      const double phi = -std::numbers::pi + 2.0 * std::numbers::pi * k / 72.0;
      const Complex dk = std::polar(radius, phi);
      const CoherentParam k1{base}, k2{base + dk};
      const CausalVerdict v = causal_classifier(k1, k2);
      const double slack = 1e-12 * radius;
      auto negative_witness = [&](CoherentParam from, CoherentParam to) {
        return witness_value(from, to, Witness::a) < -slack ||
               witness_value(from, to, Witness::a_tilde) < -slack;
      };
      const bool fwd = !negative_witness(k1, k2);
      const bool bwd = !negative_witness(k2, k1);
      if ((v.direction == Direction::forward) != fwd) ++mismatches;
      if ((v.direction == Direction::backward) != (bwd && !fwd)) ++mismatches;
      if (v.related != (fwd || bwd)) ++mismatches;
      for (Witness w : {Witness::a, Witness::a_tilde}) {
        const double numeric = witness_value_numeric(k1, k2, w, n, theta);
        worst = std::max(worst, std::abs(numeric - witness_value(k1, k2, w)));
      }
    }
  }
  r.metric = worst;
  r.passed = mismatches == 0 && worst <= r.tol;
  r.detail = "216 pairs: " + std::to_string(mismatches) +
             " verdict/witness mismatches; closed form vs state evaluation at N = " +
             std::to_string(n) + " max error " + fmt(worst);
  return r;
}

Result witness_certificates(Context& ctx) {
  Result r = start(8);
  const double exact = 1e-12;
  const int n = ctx.truncation(64);
  const double theta = 2.0;
  const AlgebraElement a = witness_element(Witness::a, n, theta);
  const AlgebraElement at = witness_element(Witness::a_tilde, n, theta);
  const int k = n - 1;
  const CMatrix two = 2.0 * CMatrix::Identity(k, k);
  const double e_alpha = (alpha_matrix(a).topLeftCorner(k, k) - two).cwiseAbs().maxCoeff();
  const double e_beta = beta_matrix(a).topLeftCorner(k, k).cwiseAbs().maxCoeff();
  const double e_talpha = alpha_matrix(at).topLeftCorner(k, k).cwiseAbs().maxCoeff();
  const double e_tbeta = (beta_matrix(at).topLeftCorner(k, k) - two).cwiseAbs().maxCoeff();
  const ConeVerdict va = cone_membership(a).verdict;
  const ConeVerdict vt = cone_membership(at).verdict;
  const ConeVerdict vn = cone_membership(-a).verdict;
  r.metric = std::max({e_alpha, e_beta, e_talpha, e_tbeta});
  r.tol = exact;
  r.passed = r.metric <= exact && va == ConeVerdict::in_cone && vt == ConeVerdict::in_cone &&
             vn == ConeVerdict::not_in_cone;
  r.detail = "N = " + std::to_string(n) + ", leading " + std::to_string(k) +
             " block: max |alpha - 2I| " + fmt(e_alpha) + ", max |beta| " + fmt(e_beta) +
             "; a " + std::string(to_string(va)) + ", a~ " + std::string(to_string(vt)) +
             ", -a " + std::string(to_string(vn));
  return r;
}

Result causal_curve(Context& ctx) {
  Result r = start(9);
  r.tol = ctx.tol(1e-10);
  const int n = ctx.truncation(64);
  const double theta = 2.0;
  const CoherentParam k1{0.0}, k2{1.0};
  double worst_norm = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const StateVector chi = curve_state(k1, k2, i / 10.0, n, theta);
    worst_norm = std::max(worst_norm, std::abs(chi.truncated_norm() - 1.0));
  }
  const MonotonicityReport ma = monotonicity_check(witness_element(Witness::a, n, theta), k1, k2, 10);
  const MonotonicityReport mt =
      monotonicity_check(witness_element(Witness::a_tilde, n, theta), k1, k2, 10);
  const double fd = std::max(ma.max_derivative_error, mt.max_derivative_error);
  r.metric = worst_norm;
  r.passed = worst_norm <= r.tol && ma.passed() && mt.passed() && fd < 1e-6;
  r.detail = "N = " + std::to_string(n) + ": normalization max defect " + fmt(worst_norm) +
             ", derivative identity FD rel error " + fmt(fd) + ", monotone a " +
             (ma.monotone ? "yes" : "no") + ", a~ " + (mt.monotone ? "yes" : "no");
  return r;
}

Result grid_cross(Context& ctx) {
  Result r = start(10);
  r.tol = ctx.tol(1e-3);
  r.runtime_limit = 300.0;
  const GridReport g = grid_report(32, 6.0, 2.0, ctx.rng());
  r.metric = g.worst();
  r.passed = r.metric <= r.tol;
  r.detail = "M = 32, L = 6: |f00*f00 - f00| " + fmt(g.f00_square) +
             ", |zbar*f00 - 2 zbar f00| (|x| <= 3) " + fmt(g.zbar_f00) +
             ", commuting square (indices <= 3) " + fmt(g.commuting_square);
  return r;
}

Result coherent_monomials(Context& ctx) {
  Result r = start(11);
  r.tol = ctx.tol(1e-8);
  r.expected_failure = true;
  const int n = ctx.truncation(128);
  const double theta = 2.0;
  const Complex kappas[] = {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0},  {-1.5, 0.0}, {1.0, 1.0},
                            {0.0, 2.0}, {-1.2, 0.9}, {0.5, -1.5}, {-1.0, -1.0}};
  double worst_bar = 0.0, worst_plain = 0.0;
  for (Complex kappa : kappas) {
    const StateVector phi = make_coherent({kappa}, n, theta);
    for (int q = 0; q <= 4; ++q) {
      const Complex value = evaluate(phi, monomial(MonomialKind::z, q, n, theta));
      worst_bar = std::max(worst_bar, std::abs(value - std::pow(std::conj(kappa), q)));
      worst_plain = std::max(worst_plain, std::abs(value - std::pow(kappa, q)));
    }
  }
  r.metric = worst_bar;
  r.passed = worst_bar <= r.tol;
  r.detail = "max |omega(z^q) - conj(kappa)^q| = " + fmt(worst_bar) +
             "; max |omega(z^q) - kappa^q| = " + fmt(worst_plain) +
             " (the state definition yields kappa^q, consistent with criterion 7)";
  return r;
}

}  // namespace

double GridReport::worst() const { return std::max({f00_square, zbar_f00, commuting_square}); }

GridReport grid_report(int points, double half_width, double theta, std::uint64_t seed) {
  const Grid grid{points, half_width};
  const GridFunction f00 = sample_f00(grid, theta);
  GridReport report;

  const GridFunction sq = star_integral(f00, f00, theta);
  report.f00_square = (sq.samples() - f00.samples()).cwiseAbs().maxCoeff();

  // The coordinate factor does not decay; compare on the inner half of the box
  // where the truncated quadrature is unaffected by the frame.
  std::vector<std::pair<int, int>> inner;
  for (int i = 0; i < grid.points; ++i)
    for (int j = 0; j < grid.points; ++j)
      if (std::abs(grid.coordinate(i)) <= grid.half_width / 2 &&
          std::abs(grid.coordinate(j)) <= grid.half_width / 2)
        inner.emplace_back(i, j);
  const GridFunction zbar = sample_coordinate(grid, Coordinate::zbar);
  const GridFunction zf = star_integral(zbar, f00, theta, inner);
  for (const auto& [i, j] : inner)
    report.zbar_f00 = std::max(
        report.zbar_f00,
        std::abs(zf.samples()(i, j) - 2.0 * zbar.samples()(i, j) * f00.samples()(i, j)));

  std::mt19937_64 rng(seed);
  const MatrixBasisOnGrid basis(grid, theta, 4);
  const AlgebraElement a = random_element(rng, 4, theta, 4);
  const AlgebraElement b = random_element(rng, 4, theta, 4);
  const GridFunction ab = star_integral(reconstruct(a, basis), reconstruct(b, basis), theta);
  report.commuting_square =
      (coefficients_from_grid(ab, basis).coeffs() - star(a, b).coeffs()).cwiseAbs().maxCoeff();
  return report;
}

std::vector<Result> run(const Options& options) {
  using Check = Result (*)(Context&);
  const std::pair<int, Check> checks[] = {
      {1, distance_table},       {2, homothety},          {3, optimal_saturation},
      {4, divergence},           {5, finite_bound},       {6, algebra_identities},
      {7, classifier_witnesses}, {8, witness_certificates}, {9, causal_curve},
      {10, grid_cross},          {11, coherent_monomials}};
  const WarningSink previous = warning_sink();
  set_warning_sink(nullptr);
  std::vector<Result> results;
  for (const auto& [id, check] : checks) {
    if (!options.only.empty() && !options.only.count(id)) continue;
    // Each criterion draws from its own stream so subsets reproduce the full run.
    Context ctx{options, std::mt19937_64(options.seed + static_cast<std::uint64_t>(id))};
    const auto t0 = Clock::now();
    Result r;
    try {
      r = check(ctx);
    } catch (const std::exception& e) {
      r = start(id);
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.id = id;
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.runtime_limit > 0.0 && r.seconds > r.runtime_limit) {
      r.passed = false;
      r.detail += "; runtime " + fmt(r.seconds) + " s exceeds " + fmt(r.runtime_limit) + " s";
    }
    results.push_back(std::move(r));
  }
  set_warning_sink(previous);
  return results;
}

std::string format_line(const Result& r) {
  std::ostringstream os;
  os << "criterion " << r.id << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.name;
  if (!r.passed && r.expected_failure) os << "  [expected failure: conflicts with criterion 7, see README]";
  os << "  -- " << r.detail;
  return os.str();
}

nlohmann::json to_json(const Result& r, bool with_timing) {
  nlohmann::json j = {{"criterion", r.id},
                      {"name", r.name},
                      {"passed", r.passed},
                      {"expected_failure", r.expected_failure},
                      {"metric", r.metric},
                      {"tol", r.tol},
                      {"detail", r.detail}};
  if (r.runtime_limit > 0.0) j["runtime_limit_s"] = r.runtime_limit;
  if (with_timing) j["seconds"] = r.seconds;
  return j;
}

bool as_expected(const std::vector<Result>& results) {
  for (const Result& r : results)
    if (r.passed == r.expected_failure) return false;
  return true;
}

}  // namespace moyal::acceptance
