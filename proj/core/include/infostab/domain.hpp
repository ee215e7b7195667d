#pragma once

#include <utility>
#include <vector>

#include "infostab/errors.hpp"

namespace infostab {

/// Exponent parameter of the weight (1-x)^alpha. Any finite value except 1 is
/// admitted; the hyperstable regime is alpha < 0, the stable/superstable
/// regimes are alpha = 0 and alpha > 0.
class Alpha {
 public:
  explicit Alpha(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Open two-variable domain: 0 < x, 0 < y, x + y < 1.
class D2Point {
 public:
  D2Point(double x, double y);
  double x() const { return x_; }
  double y() const { return y_; }
  static bool is_valid(double x, double y);

 private:
  double x_, y_;
};

/// Open three-variable domain: x, y, z in (0,1) and x + y + z in (0,1).
class D3Point {
 public:
  D3Point(double x, double y, double z);
  double x() const { return x_; }
  double y() const { return y_; }
  double z() const { return z_; }
  static bool is_valid(double x, double y, double z);

 private:
  double x_, y_, z_;
};

/// Closed variant: x, y in [0,1), x + y <= 1.
class ClosedD2Point {
 public:
  ClosedD2Point(double x, double y);
  double x() const { return x_; }
  double y() const { return y_; }
  static bool is_valid(double x, double y);

 private:
  double x_, y_;
};

/// Interior point of the probability simplex: n >= 2 coordinates, each in
/// (0,1), summing to 1 within 1e-12. The constructor renormalizes the sum to
/// exactly 1 so that decimal inputs are not spuriously rejected.
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> p);
  int size() const { return static_cast<int>(p_.size()); }
  double operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& coords() const { return p_; }
  static bool is_valid(const std::vector<double>& p);

 private:
  std::vector<double> p_;
};

/// Deterministic lattice request: resolution m and a boundary standoff
/// (margin) h. The open domains force a standoff because the weight
/// (1-x)^alpha diverges at the boundary for alpha < 0; every generated point
/// keeps all margin constraints, and reports quote (m, h) so that any
/// sup-over-grid claim is scoped.
struct GridSpec {
  int resolution;
  double margin;
  GridSpec(int resolution, double margin);
};

/// Validating constructor for D2Point, exposed as a named operation.
D2Point make_d2(double x, double y);

/// Uniform lattice over the margin-shrunk triangle {x >= h, y >= h,
/// 1-(x+y) >= h}, corners included, at most m(m-1)/2 points, in ascending
/// (x, y) order. Throws EmptyGrid when the shrunk triangle is empty.
std::vector<D2Point> grid_d2(const GridSpec& spec);

/// Analogue of grid_d2 on the interior of the 3-simplex with standoff h on
/// all four faces.
std::vector<D3Point> grid_d3(const GridSpec& spec);

/// All lattice points (k1/m, ..., kn/m) with every ki >= 1 and sum(ki) = m,
/// in ascending lexicographic order of (k1, ..., kn). Throws EmptyGrid when
/// m < n.
std::vector<SimplexPoint> grid_simplex(int n, int m);

/// Both sides of the nesting identity z/(1-(x+y)) = (z/(1-x))/(1-y/(1-x)),
/// computed independently. Domain validity of q keeps all denominators
/// positive.
std::pair<double, double> nested_coords(const D3Point& q);

}  // namespace infostab
