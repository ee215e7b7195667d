#include "infostab/domain.hpp"

#include <cmath>
#include <sstream>

namespace infostab {

namespace {

[[noreturn]] void reject(const char* type, const char* constraint) {
  std::ostringstream oss;
  oss << type << ": constraint violated: " << constraint;
  throw DomainViolation(oss.str());
}

}  // namespace

Alpha::Alpha(double value) : value_(value) {
  if (!std::isfinite(value)) reject("Alpha", "value must be finite");
  if (value == 1.0) reject("Alpha", "value must differ from 1");
}

D2Point::D2Point(double x, double y) : x_(x), y_(y) {
  if (!(x > 0.0)) reject("D2Point", "x must exceed 0");
  if (!(y > 0.0)) reject("D2Point", "y must exceed 0");
  if (!(x < 1.0)) reject("D2Point", "x must be below 1");
  if (!(y < 1.0)) reject("D2Point", "y must be below 1");
  if (!(x + y < 1.0)) reject("D2Point", "x+y must be < 1");
}

bool D2Point::is_valid(double x, double y) {
  return x > 0.0 && y > 0.0 && x < 1.0 && y < 1.0 && x + y < 1.0;
}

D3Point::D3Point(double x, double y, double z) : x_(x), y_(y), z_(z) {
  if (!(x > 0.0 && x < 1.0)) reject("D3Point", "x must lie in (0,1)");
  if (!(y > 0.0 && y < 1.0)) reject("D3Point", "y must lie in (0,1)");
  if (!(z > 0.0 && z < 1.0)) reject("D3Point", "z must lie in (0,1)");
  if (!(x + y + z < 1.0)) reject("D3Point", "x+y+z must be < 1");
}

bool D3Point::is_valid(double x, double y, double z) {
  return x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0 && z > 0.0 && z < 1.0 &&
         x + y + z > 0.0 && x + y + z < 1.0;
}

ClosedD2Point::ClosedD2Point(double x, double y) : x_(x), y_(y) {
  if (!(x >= 0.0 && x < 1.0)) reject("ClosedD2Point", "x must lie in [0,1)");
  if (!(y >= 0.0 && y < 1.0)) reject("ClosedD2Point", "y must lie in [0,1)");
  if (!(x + y <= 1.0)) reject("ClosedD2Point", "x+y must be <= 1");
}

bool ClosedD2Point::is_valid(double x, double y) {
  return x >= 0.0 && x < 1.0 && y >= 0.0 && y < 1.0 && x + y <= 1.0;
}

SimplexPoint::SimplexPoint(std::vector<double> p) : p_(std::move(p)) {
  if (p_.size() < 2) reject("SimplexPoint", "needs at least 2 coordinates");
  double sum = 0.0;
  for (double v : p_) {
    if (!(v > 0.0 && v < 1.0)) reject("SimplexPoint", "every coordinate must lie in (0,1)");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) reject("SimplexPoint", "coordinates must sum to 1 within 1e-12");
  for (double& v : p_) v /= sum;
}

bool SimplexPoint::is_valid(const std::vector<double>& p) {
  if (p.size() < 2) return false;
  double sum = 0.0;
  for (double v : p) {
    if (!(v > 0.0 && v < 1.0)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= 1e-12;
}

GridSpec::GridSpec(int resolution_, double margin_)
    : resolution(resolution_), margin(margin_) {
  if (resolution < 1) reject("GridSpec", "resolution must be a positive integer");
  if (!(margin > 0.0 && margin < 0.5)) reject("GridSpec", "margin must lie in (0, 0.5)");
}

D2Point make_d2(double x, double y) { return D2Point(x, y); }

namespace {

// Rounding on the outermost lattice row can push the sum constraint below
// the margin by an ulp or two; walk the largest coordinate down until the
// constraint holds with enough slack that any summation order sees it.
// Returns false for the rare degenerate request where no nudge can satisfy
// all margins at once.
bool enforce_margins(std::vector<double*> coords, double h) {
  constexpr double kOrderSlack = 1e-15;
  const auto slack = [&] {
    double sum = 0.0;
    for (const double* c : coords) sum += *c;
    return 1.0 - sum - h;
  };
  for (int guard = 0; guard < 64 && slack() < kOrderSlack; ++guard) {
    double* largest = coords.front();
    for (double* c : coords)
      if (*c > *largest) largest = c;
    *largest = std::nextafter(*largest, 0.0);
  }
  if (slack() < kOrderSlack) return false;
  for (const double* c : coords)
    if (*c < h) return false;
  return true;
}

}  // namespace

std::vector<D2Point> grid_d2(const GridSpec& spec) {
  const int m = spec.resolution;
  const double h = spec.margin;
  const double side = 1.0 - 3.0 * h;
  if (m < 2 || side < 0.0)
    throw EmptyGrid("grid_d2: no lattice point satisfies the margin constraints");
  std::vector<D2Point> points;
  const int levels = m == 2 ? 0 : m - 2;
  points.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
  for (int i = 0; i <= levels; ++i) {
    for (int j = 0; j <= levels - i; ++j) {
      double x = levels == 0 ? h : h + side * (static_cast<double>(i) / levels);
      double y = levels == 0 ? h : h + side * (static_cast<double>(j) / levels);
      if (enforce_margins({&x, &y}, h)) points.emplace_back(x, y);
    }
  }
  if (points.empty())
    throw EmptyGrid("grid_d2: no lattice point satisfies the margin constraints");
  return points;
}

std::vector<D3Point> grid_d3(const GridSpec& spec) {
  const int m = spec.resolution;
  const double h = spec.margin;
  const double side = 1.0 - 4.0 * h;
  if (m < 2 || side < 0.0)
    throw EmptyGrid("grid_d3: no lattice point satisfies the margin constraints");
  std::vector<D3Point> points;
  const int levels = m == 2 ? 0 : m - 2;
  for (int i = 0; i <= levels; ++i) {
    for (int j = 0; j <= levels - i; ++j) {
      for (int k = 0; k <= levels - i - j; ++k) {
        double x = levels == 0 ? h : h + side * (static_cast<double>(i) / levels);
        double y = levels == 0 ? h : h + side * (static_cast<double>(j) / levels);
        double z = levels == 0 ? h : h + side * (static_cast<double>(k) / levels);
        if (enforce_margins({&x, &y, &z}, h)) points.emplace_back(x, y, z);
      }
    }
  }
  if (points.empty())
    throw EmptyGrid("grid_d3: no lattice point satisfies the margin constraints");
  return points;
}

std::vector<SimplexPoint> grid_simplex(int n, int m) {
  if (n < 2) throw DomainViolation("grid_simplex: n must be at least 2");
  if (m < n) throw EmptyGrid("grid_simplex: m < n leaves no positive composition");
  std::vector<SimplexPoint> points;
  // Enumerate compositions of m into n positive parts in lexicographic order.
  std::vector<double> coords(static_cast<std::size_t>(n));
  const auto emit = [&](const std::vector<int>& parts) {
    for (std::size_t i = 0; i < parts.size(); ++i)
      coords[i] = static_cast<double>(parts[i]) / m;
    points.emplace_back(coords);
  };
  std::vector<int> parts;
  parts.reserve(static_cast<std::size_t>(n));
  const auto recurse = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == n - 1) {
      parts.push_back(remaining);
      emit(parts);
      parts.pop_back();
      return;
    }
    for (int v = 1; v <= remaining - (n - 1 - pos); ++v) {
      parts.push_back(v);
      self(self, pos + 1, remaining - v);
      parts.pop_back();
    }
  };
  recurse(recurse, 0, m);
  return points;
}

std::pair<double, double> nested_coords(const D3Point& q) {
  const double lhs = q.z() / (1.0 - (q.x() + q.y()));
  const double rhs = (q.z() / (1.0 - q.x())) / (1.0 - q.y() / (1.0 - q.x()));
  return {lhs, rhs};
}

}  // namespace infostab
