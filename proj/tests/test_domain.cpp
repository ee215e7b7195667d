#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "infostab/domain.hpp"
#include "testutil.hpp"

using namespace infostab;

TEST_CASE("alpha rejects 1 and non-finite values") {
  CHECK_NOTHROW(Alpha(-1.0));
  CHECK_NOTHROW(Alpha(0.0));
  CHECK_NOTHROW(Alpha(2.0));
  CHECK_THROWS_AS(Alpha(1.0), DomainViolation);
  CHECK_THROWS_AS(Alpha(std::numeric_limits<double>::infinity()), DomainViolation);
  CHECK_THROWS_AS(Alpha(std::nan("")), DomainViolation);
}

TEST_CASE("make_d2 validates the open triangle") {
  const D2Point p = make_d2(0.5, 0.25);
  CHECK(p.x() == 0.5);
  CHECK(p.y() == 0.25);
  CHECK_THROWS_WITH_AS(make_d2(0.5, 0.5), "D2Point: constraint violated: x+y must be < 1",
                       DomainViolation);
  CHECK_THROWS_WITH_AS(make_d2(0.0, 0.3), "D2Point: constraint violated: x must exceed 0",
                       DomainViolation);
}

TEST_CASE("constructors accept exactly their domains") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int i = 0; i < 100000; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    const bool expect = x > 0.0 && y > 0.0 && x + y < 1.0;
    CHECK(D2Point::is_valid(x, y) == expect);
    bool constructed = true;
    try {
      make_d2(x, y);
    } catch (const DomainViolation&) {
      constructed = false;
    }
    CHECK(constructed == expect);
  }
  for (int i = 0; i < 20000; ++i) {
    const double x = u(rng);
    const double y = u(rng);
    const bool expect = x >= 0.0 && x < 1.0 && y >= 0.0 && y < 1.0 && x + y <= 1.0;
    CHECK(ClosedD2Point::is_valid(x, y) == expect);
    const double z = u(rng);
    const bool expect3 = x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0 && z > 0.0 && z < 1.0 &&
                         x + y + z < 1.0;
    CHECK(D3Point::is_valid(x, y, z) == expect3);
  }
}

TEST_CASE("simplex points renormalize near-unit sums and reject the rest") {
  const SimplexPoint p(std::vector<double>{0.5, 0.25, 0.25});
  CHECK(p.size() == 3);
  CHECK(p[0] == 0.5);
  CHECK_THROWS_AS(SimplexPoint(std::vector<double>{0.5, 0.6}), DomainViolation);
  CHECK_THROWS_AS(SimplexPoint(std::vector<double>{1.0, 0.0}), DomainViolation);
  CHECK_THROWS_AS(SimplexPoint(std::vector<double>{0.7}), DomainViolation);

  // Within-tolerance drift snaps back to a unit sum.
  const SimplexPoint q(std::vector<double>{0.5 + 4e-13, 0.25, 0.25});
  double sum = 0.0;
  for (int i = 0; i < q.size(); ++i) sum += q[i];
  CHECK(std::abs(sum - 1.0) <= 1e-15);
}

TEST_CASE("grid_d2 three-node lattice") {
  const auto pts = grid_d2(GridSpec(3, 0.01));
  REQUIRE(pts.size() == 3);
  // Hand enumeration: corners of the shrunk triangle.
  CHECK(pts[0].x() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(pts[0].y() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(pts[1].x() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(pts[1].y() == doctest::Approx(0.98).epsilon(1e-12));
  CHECK(pts[2].x() == doctest::Approx(0.98).epsilon(1e-12));
  CHECK(pts[2].y() == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("grid_d2 respects margins and the point-count bound") {
  const GridSpec spec(100, 1e-3);
  const auto pts = grid_d2(spec);
  CHECK(pts.size() <= 100 * 99 / 2);
  CHECK(pts.size() == 99 * 100 / 2);
  for (const auto& p : pts) {
    CHECK(p.x() >= 1e-3);
    CHECK(p.y() >= 1e-3);
    CHECK(1.0 - p.x() - p.y() >= 1e-3);
    CHECK(1.0 - (p.x() + p.y()) >= 1e-3);
  }
}

TEST_CASE("grid_d2 infeasible margin") {
  // Brute-force oracle: the region {x >= 0.4, y >= 0.4, x+y <= 0.6} has no
  // point at all, so no lattice rule can populate it.
  bool any = false;
  for (int i = 0; i <= 1000 && !any; ++i)
    for (int j = 0; j <= 1000 && !any; ++j) {
      const double x = i / 1000.0;
      const double y = j / 1000.0;
      any = x >= 0.4 && y >= 0.4 && 1.0 - x - y >= 0.4;
    }
  CHECK_FALSE(any);
  CHECK_THROWS_AS(grid_d2(GridSpec(2, 0.4)), EmptyGrid);

  // Feasible single-point case at a workable margin.
  const auto single = grid_d2(GridSpec(2, 0.2));
  REQUIRE(single.size() == 1);
  CHECK(single[0].x() == 0.2);
  CHECK(single[0].y() == 0.2);
}

TEST_CASE("grid_d2 deterministic repeat") {
  const auto a = grid_d2(GridSpec(37, 2e-3));
  const auto b = grid_d2(GridSpec(37, 2e-3));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x() == b[i].x());
    CHECK(a[i].y() == b[i].y());
  }
}

TEST_CASE("grid_d3 margins and degenerate margin") {
  const auto pts = grid_d3(GridSpec(4, 0.05));
  CHECK(pts.size() == 10);  // 4 barycentric labels over 2 levels
  for (const auto& p : pts) {
    CHECK(p.x() >= 0.05);
    CHECK(p.y() >= 0.05);
    CHECK(p.z() >= 0.05);
    CHECK(1.0 - p.x() - p.y() - p.z() >= 0.05);
  }
  // Oracle: {x,y,z >= 0.3, x+y+z <= 0.7} is empty since 3*0.3 > 0.7.
  CHECK_THROWS_AS(grid_d3(GridSpec(3, 0.3)), EmptyGrid);

  const auto a = grid_d3(GridSpec(9, 1e-2));
  const auto b = grid_d3(GridSpec(9, 1e-2));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].z() == b[i].z());
}

TEST_CASE("grid_simplex enumerates positive compositions") {
  const auto pts = grid_simplex(2, 4);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0][0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(pts[0][1] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(pts[1][0] == doctest::Approx(0.50).epsilon(1e-15));
  CHECK(pts[2][0] == doctest::Approx(0.75).epsilon(1e-15));

  const auto single = grid_simplex(3, 3);
  REQUIRE(single.size() == 1);
  CHECK(single[0][0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(grid_simplex(3, 2), EmptyGrid);

  // Count oracle: compositions of 10 into 3 positive parts = C(9,2) = 36.
  CHECK(grid_simplex(3, 10).size() == 36);
}

TEST_CASE("nested coordinate identity") {
  {
    const auto [lhs, rhs] = nested_coords(D3Point(0.2, 0.3, 0.1));
    CHECK(lhs == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(rhs == doctest::Approx(0.2).epsilon(1e-14));
  }
  {
    const auto [lhs, rhs] = nested_coords(D3Point(0.1, 0.1, 0.1));
    CHECK(lhs == doctest::Approx(0.125).epsilon(1e-14));
    CHECK(rhs == doctest::Approx(0.125).epsilon(1e-14));
  }
  // Bulk sampling: the literal right-hand composition loses ~(1-x)/(1-x-y)
  // digits to cancellation, so the pinned 1e-14 tolerance needs draws away
  // from the boundary.
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100000; ++i) {
    const auto q = testutil::rand_d3(rng, 0.05);
    const auto [lhs, rhs] = nested_coords(q);
    CHECK(std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("grid spec validation") {
  CHECK_THROWS_AS(GridSpec(0, 0.1), DomainViolation);
  CHECK_THROWS_AS(GridSpec(10, 0.0), DomainViolation);
  CHECK_THROWS_AS(GridSpec(10, 0.5), DomainViolation);
  CHECK_NOTHROW(GridSpec(1, 0.1));
  CHECK_THROWS_AS(grid_d2(GridSpec(1, 0.1)), EmptyGrid);
}
