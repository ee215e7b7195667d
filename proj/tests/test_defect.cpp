#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "infostab/defect.hpp"
#include "testutil.hpp"

using namespace infostab;

namespace {

const Alpha kMinusOne(-1.0);

double local_scale_with_sum(const EvaluableFunction& f, Alpha alpha, const D2Point& p) {
  const PointDefect d = fe_defect_at(f, alpha, p);
  return std::max(d.local_scale, std::abs(f(p.x() + p.y())));
}

}  // namespace

TEST_CASE("pointwise defect: solutions, constants, diagonal") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  for (double a : {-3.0, -1.0, -0.5}) {
    const Alpha alpha(a);
    const auto f = EvaluableFunction::family({coeff(rng), coeff(rng)}, alpha);
    const PointDefect d = fe_defect_at(f, alpha, D2Point(0.5, 0.25));
    CHECK(d.defect <= 1e-12 * std::max(1.0, d.local_scale));
  }

  // Constant 1 at (0.5, 0.25), alpha = -1: |(1-x)^-1 - (1-y)^-1| = 2 - 4/3.
  const auto one = testutil::constant_fn(1.0);
  CHECK(fe_defect(one, kMinusOne, D2Point(0.5, 0.25)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-13));

  // The expression is antisymmetric under x <-> y, so the diagonal vanishes.
  const auto wiggly = EvaluableFunction::perturbed({0.7, -1.2}, kMinusOne, {0.3, -0.4});
  for (double t : {0.1, 0.25, 0.4999, 0.3333333}) {
    CHECK(fe_defect(wiggly, kMinusOne, D2Point(t, t)) == 0.0);
  }
}

TEST_CASE("grid sup defect: family members and the constant-function oracle") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  const GridSpec spec(200, 1e-3);
  for (double a : {-3.0, -1.0, -0.5}) {
    const Alpha alpha(a);
    const auto f = EvaluableFunction::family({coeff(rng), coeff(rng)}, alpha);
    const DefectReport report = fe_defect_sup(f, alpha, spec);
    CHECK(report.sup_rel_defect <= 1e-10);
    CHECK(report.sup_defect >= report.mean_defect);
    CHECK(report.mean_defect >= 0.0);
    // argmax is a grid member attaining the sup
    CHECK(fe_defect(f, alpha, report.argmax) == report.sup_defect);
  }

  // Constant f == 1: the defect reduces to |(1-x)^a - (1-y)^a|, computable in
  // closed form per point; the report must match the direct maximum.
  const auto one = testutil::constant_fn(1.0);
  const DefectReport report = fe_defect_sup(one, kMinusOne, spec);
  double oracle = 0.0;
  for (const D2Point& p : grid_d2(spec))
    oracle = std::max(oracle, std::abs(1.0 / (1.0 - p.x()) - 1.0 / (1.0 - p.y())));
  CHECK(testutil::close_rel(report.sup_defect, oracle, 1e-12));
  // Order h^-1: the extreme weight sits 2h from the boundary.
  CHECK(report.sup_defect >= 0.1 / 1e-3 * 0.5);
  CHECK(report.sup_defect <= 1.0 / 1e-3);

  const DefectReport repeat = fe_defect_sup(one, kMinusOne, spec);
  CHECK(repeat.sup_defect == report.sup_defect);
  CHECK(repeat.argmax.x() == report.argmax.x());
  CHECK(repeat.mean_defect == report.mean_defect);
}

TEST_CASE("per-point records and extrapolation flag") {
  const auto lin = EvaluableFunction::sampled({0.3, 0.7}, {1.0, 2.0});
  const DefectReport report = fe_defect_sup(lin, kMinusOne, GridSpec(20, 1e-2), true);
  REQUIRE(report.per_point.has_value());
  CHECK(static_cast<long>(report.per_point->size()) == report.n_points);
  CHECK(report.extrapolated);  // grid reaches below 0.3 and above 0.7
  for (const PerPointRecord& rec : *report.per_point) {
    CHECK(rec.defect >= 0.0);
    CHECK(rec.local_scale >= 0.0);
  }
  const auto fam = EvaluableFunction::family({1.0, 1.0}, kMinusOne);
  CHECK_FALSE(fe_defect_sup(fam, kMinusOne, GridSpec(20, 1e-2)).extrapolated);
}

TEST_CASE("G values at fixed points") {
  const auto inv = EvaluableFunction::family({1.0, 0.0}, kMinusOne);  // f(x) = 1/x
  // 1/x + 1/y - 1/(x+y) at (0.5, 0.25) and its mirror: 2 + 4 - 4/3.
  CHECK(g_value(inv, kMinusOne, D2Point(0.5, 0.25)) ==
        doctest::Approx(14.0 / 3.0).epsilon(1e-13));
  CHECK(g_value(inv, kMinusOne, D2Point(0.25, 0.5)) ==
        doctest::Approx(14.0 / 3.0).epsilon(1e-13));
  const auto zero = EvaluableFunction::family({0.0, 0.0}, kMinusOne);
  CHECK(g_value(zero, kMinusOne, D2Point(0.3, 0.4)) == 0.0);
}

TEST_CASE("symmetry gap equals the equation defect") {
  std::mt19937_64 rng(17);
  const double alphas[] = {-3.0, -1.0, -0.5, 0.5, 2.0};
  for (int i = 0; i < 10000; ++i) {
    const Alpha alpha(alphas[i % 5]);
    const auto f = testutil::rand_function(rng, alpha, i);
    const D2Point p = testutil::rand_d2(rng);
    const double gap = g_symmetry_gap(f, alpha, p);
    const double defect = fe_defect(f, alpha, p);
    CHECK(std::abs(gap - defect) <= 1e-12 * std::max(1.0, local_scale_with_sum(f, alpha, p)));
  }
  const auto one = testutil::constant_fn(1.0);
  CHECK(g_symmetry_gap(one, kMinusOne, D2Point(0.5, 0.25)) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("cocycle identity holds for every function") {
  // Fixed case from the piecewise-linear square stand-in.
  const auto sq = testutil::sampled_square();
  const Alpha minus_two(-2.0);
  {
    const D3Point q(0.2, 0.3, 0.1);
    const double scale = cocycle_local_scale(sq, minus_two, q);
    CHECK(cocycle_residual(sq, minus_two, q) <= 1e-12 * std::max(1.0, scale));
  }

  // Bulk draws: the two routes to the nested argument differ by an ulp, and
  // that difference is amplified by (1-x)/(1-x-y) before it meets the
  // tolerance, so the sampler stays away from the boundary.
  std::mt19937_64 rng(29);
  const double alphas[] = {-3.0, -1.0, -0.5, 0.5, 2.0};
  for (int i = 0; i < 10000; ++i) {
    const Alpha alpha(alphas[i % 5]);
    const auto f = testutil::rand_function(rng, alpha, i);
    const D3Point q = testutil::rand_d3(rng, 0.05);
    const double scale = std::max(1.0, cocycle_local_scale(f, alpha, q));
    CHECK(cocycle_residual(f, alpha, q) <= 1e-12 * scale);
  }

  const auto zero = EvaluableFunction::family({0.0, 0.0}, kMinusOne);
  CHECK(cocycle_residual(zero, kMinusOne, D3Point(0.2, 0.3, 0.1)) == 0.0);
}

TEST_CASE("homogeneity gap stays within its certified bound") {
  // Exact solutions make G symmetric, so both the gap and the bound vanish.
  const auto fam = EvaluableFunction::family({1.5, -2.0}, kMinusOne);
  {
    const HomogeneityGap hg = homogeneity_gap(fam, kMinusOne, D3Point(0.2, 0.3, 0.1));
    CHECK(hg.gap <= 1e-10 * std::max(1.0, hg.scale));
  }

  // Direct expansion oracle at a fixed point: the signed gap expression
  // equals the sum of the three signed symmetry differences.
  const auto one = testutil::constant_fn(1.0);
  {
    const double x = 0.2, y = 0.3, z = 0.1;
    const double a = -1.0;
    const double wx = std::pow(1.0 - x, a);
    const double wy = std::pow(1.0 - y, a);
    const auto g = [&](double u, double v) { return g_value(one, kMinusOne, D2Point(u, v)); };
    const double signed_gap = g(y, z) - wx * g(y / (1.0 - x), z / (1.0 - x));
    const double signed_sum = (g(y, x) - g(x, y)) + (g(x, y + z) - g(y + z, x)) +
                              wy * (g(z / (1.0 - y), x / (1.0 - y)) -
                                    g(x / (1.0 - y), z / (1.0 - y)));
    CHECK(signed_gap == doctest::Approx(signed_sum).epsilon(1e-12));
    const HomogeneityGap hg = homogeneity_gap(one, kMinusOne, D3Point(x, y, z));
    CHECK(hg.gap <= hg.certified_bound + 1e-12 * std::max(1.0, hg.scale));
    CHECK(hg.gap == doctest::Approx(std::abs(signed_gap)).epsilon(1e-12));
  }

  std::mt19937_64 rng(31);
  const double alphas[] = {-3.0, -1.0, -0.5, 0.5, 2.0};
  for (int i = 0; i < 10000; ++i) {
    const Alpha alpha(alphas[i % 5]);
    const auto f = testutil::rand_function(rng, alpha, i);
    const D3Point q = testutil::rand_d3(rng, 0.05);
    const HomogeneityGap hg = homogeneity_gap(f, alpha, q);
    CHECK(hg.gap <= hg.certified_bound + 1e-12 * std::max(1.0, hg.scale));
  }
}

TEST_CASE("margin scaling probe recovers the trichotomy") {
  const std::vector<double> margins{1e-2, 1e-3, 1e-4, 1e-5};
  const double delta = 1e-3;
  const auto sine = [](Alpha alpha) {
    return EvaluableFunction::perturbed({0.0, 0.0}, alpha, {1.0});
  };

  // Independent corner oracle: the defect of delta*sin(pi x) evaluated
  // directly at (1-2h, h), where the boundary weight peaks.
  const auto oracle = [&](double a, double h) {
    const double pi = std::numbers::pi;
    const double x = 1.0 - 2.0 * h;
    const double y = h;
    const double v = std::sin(pi * x) + std::pow(2.0 * h, a) * std::sin(pi * (y / (1.0 - x))) -
                     std::sin(pi * y) - std::pow(1.0 - y, a) * std::sin(pi * (x / (1.0 - y)));
    return delta * std::abs(v);
  };

  for (double a : {-2.0, -1.0, -0.5}) {
    const Alpha alpha(a);
    const ScalingTable t =
        scaling_exponent({1.0, 0.0}, sine(alpha), delta, alpha, margins, 100);
    CHECK(std::abs(t.slope - a) <= 0.15);
    REQUIRE(t.table.size() == margins.size());
    for (std::size_t i = 0; i < margins.size(); ++i) {
      CHECK(t.table[i].first == margins[i]);
      // The grid contains the extreme corner, so the sup tracks the oracle.
      CHECK(t.table[i].second >= oracle(a, margins[i]) * 0.99);
      CHECK(t.table[i].second <= oracle(a, margins[i]) * 1.35);
    }
    // Oracle slope from the endpoints agrees with the fitted slope.
    const double oracle_slope = (std::log(oracle(a, margins.back())) -
                                 std::log(oracle(a, margins.front()))) /
                                (std::log(margins.back()) - std::log(margins.front()));
    CHECK(std::abs(t.slope - oracle_slope) <= 0.1);
  }

  for (double a : {0.0, 0.5}) {
    const Alpha alpha(a);
    const ScalingTable t =
        scaling_exponent({1.0, 0.0}, sine(alpha), delta, alpha, margins, 100);
    CHECK(std::abs(t.slope) <= (a == 0.0 ? 0.1 : 0.15));
    // Bounded weights: triangle inequality caps the defect at 4*delta.
    for (const auto& [h, sup] : t.table) CHECK(sup <= 4.0 * delta);
  }
}

TEST_CASE("scaling probe input validation") {
  const auto g = EvaluableFunction::perturbed({0.0, 0.0}, kMinusOne, {1.0});
  const std::vector<double> inc{1e-3, 1e-2};
  CHECK_THROWS_AS(scaling_exponent({0.0, 0.0}, g, 1e-3, kMinusOne, inc, 50), DomainViolation);
  const std::vector<double> one_entry{1e-3};
  CHECK_THROWS_AS(scaling_exponent({0.0, 0.0}, g, 1e-3, kMinusOne, one_entry, 50),
                  DomainViolation);
  const std::vector<double> ok{1e-2, 1e-3};
  CHECK_THROWS_AS(scaling_exponent({0.0, 0.0}, g, 0.0, kMinusOne, ok, 50), DomainViolation);

  // Identically zero perturbation over the zero family: defect is exactly 0.
  const auto zero = EvaluableFunction::family({0.0, 0.0}, kMinusOne);
  CHECK_THROWS_AS(scaling_exponent({0.0, 0.0}, zero, 1e-3, kMinusOne, ok, 50),
                  SlopeUndefined);
}

TEST_CASE("closed-domain boundary defect") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> coeff(-3.0, 3.0);
  for (double a : {-3.0, -1.0, -0.5}) {
    const Alpha alpha(a);
    const SolutionParams params{coeff(rng), coeff(rng)};
    for (int i = 1; i < 100; ++i) {
      const double x = i / 100.0;
      // y = 0 pairs
      CHECK(fe_defect_closed(params, alpha, ClosedD2Point(x, 0.0)) == 0.0);
      // y = 1 - x pairs
      const double scale = std::abs(params.c) * (pow_alpha(x, a) + 1.0) +
                           std::abs(params.d) * (pow_alpha(1.0 - x, a) + 1.0);
      CHECK(fe_defect_closed(params, alpha, ClosedD2Point(x, 1.0 - x)) <=
            1e-10 * std::max(1.0, scale));
    }
  }
}
