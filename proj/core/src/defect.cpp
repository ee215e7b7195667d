#include "infostab/defect.hpp"

#include <algorithm>
#include <cmath>

namespace infostab {

namespace {

template <class F>
PointDefect point_defect(F&& f, double a, double x, double y) {
  const double t1 = f(x);
  const double t2 = pow_alpha(1.0 - x, a) * f(y / (1.0 - x));
  const double t3 = f(y);
  const double t4 = pow_alpha(1.0 - y, a) * f(x / (1.0 - y));
  // Grouped so the antisymmetric pairs cancel exactly on the diagonal x = y.
  const double defect = std::abs((t1 - t3) + (t2 - t4));
  const double scale = std::max(std::max(std::abs(t1), std::abs(t2)),
                                std::max(std::abs(t3), std::abs(t4)));
  return {defect, scale};
}

template <class F>
double g_impl(F&& f, double a, double x, double y) {
  return f(x) + pow_alpha(1.0 - x, a) * f(y / (1.0 - x)) - f(x + y);
}

// G value together with the largest absolute magnitude among its three
// terms. The value itself can cancel internally, so relative tolerances are
// anchored on the terms.
template <class F>
double g_term_scale(F&& f, double a, double x, double y) {
  return std::max({std::abs(f(x)), std::abs(pow_alpha(1.0 - x, a) * f(y / (1.0 - x))),
                   std::abs(f(x + y))});
}

template <class F>
DefectReport sup_impl(F&& f, double a, const GridSpec& spec, bool keep_per_point,
                      const EvaluableFunction* traced) {
  const std::vector<D2Point> grid = grid_d2(spec);
  double sup = -1.0;
  double sup_rel = 0.0;
  double sum = 0.0;
  std::size_t arg = 0;
  bool extrapolated = false;
  std::optional<std::vector<PerPointRecord>> records;
  if (keep_per_point) {
    records.emplace();
    records->reserve(grid.size());
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i].x();
    const double y = grid[i].y();
    if (traced && !extrapolated) {
      extrapolated = traced->extrapolates_at(x) || traced->extrapolates_at(y) ||
                     traced->extrapolates_at(y / (1.0 - x)) ||
                     traced->extrapolates_at(x / (1.0 - y));
    }
    const PointDefect d = point_defect(f, a, x, y);
    if (d.defect > sup) {
      sup = d.defect;
      arg = i;
    }
    if (d.local_scale > 0.0) sup_rel = std::max(sup_rel, d.defect / d.local_scale);
    sum += d.defect;
    if (records) records->push_back({grid[i], d.defect, d.local_scale});
  }
  return DefectReport{sup,
                      sum / static_cast<double>(grid.size()),
                      sup_rel,
                      grid[arg],
                      spec,
                      static_cast<long>(grid.size()),
                      extrapolated,
                      std::move(records)};
}

}  // namespace

double fe_defect(const EvaluableFunction& f, Alpha alpha, const D2Point& p) {
  return fe_defect_at(f, alpha, p).defect;
}

PointDefect fe_defect_at(const EvaluableFunction& f, Alpha alpha, const D2Point& p) {
  return point_defect([&f](double t) { return f(t); }, alpha.value(), p.x(), p.y());
}

DefectReport fe_defect_sup(const EvaluableFunction& f, Alpha alpha, const GridSpec& spec,
                           bool keep_per_point) {
  return sup_impl([&f](double t) { return f(t); }, alpha.value(), spec, keep_per_point, &f);
}

double g_value(const EvaluableFunction& f, Alpha alpha, const D2Point& p) {
  return g_impl([&f](double t) { return f(t); }, alpha.value(), p.x(), p.y());
}

double g_symmetry_gap(const EvaluableFunction& f, Alpha alpha, const D2Point& p) {
  const auto fn = [&f](double t) { return f(t); };
  const double a = alpha.value();
  return std::abs(g_impl(fn, a, p.x(), p.y()) - g_impl(fn, a, p.y(), p.x()));
}

double cocycle_residual(const EvaluableFunction& f, Alpha alpha, const D3Point& q) {
  const auto fn = [&f](double t) { return f(t); };
  const double a = alpha.value();
  const double x = q.x(), y = q.y(), z = q.z();
  const double lhs = g_impl(fn, a, x, y) + g_impl(fn, a, x + y, z);
  const double rhs = g_impl(fn, a, x, y + z) +
                     pow_alpha(1.0 - x, a) * g_impl(fn, a, y / (1.0 - x), z / (1.0 - x));
  return std::abs(lhs - rhs);
}

double cocycle_local_scale(const EvaluableFunction& f, Alpha alpha, const D3Point& q) {
  const auto fn = [&f](double t) { return f(t); };
  const double a = alpha.value();
  const double x = q.x(), y = q.y(), z = q.z();
  const double wx = pow_alpha(1.0 - x, a);
  return std::max({g_term_scale(fn, a, x, y), g_term_scale(fn, a, x + y, z),
                   g_term_scale(fn, a, x, y + z),
                   wx * g_term_scale(fn, a, y / (1.0 - x), z / (1.0 - x))});
}

HomogeneityGap homogeneity_gap(const EvaluableFunction& f, Alpha alpha, const D3Point& q) {
  const auto fn = [&f](double t) { return f(t); };
  const double a = alpha.value();
  const double x = q.x(), y = q.y(), z = q.z();
  const double wx = pow_alpha(1.0 - x, a);
  const double wy = pow_alpha(1.0 - y, a);

  const double g_yz = g_impl(fn, a, y, z);
  const double g_scaled = g_impl(fn, a, y / (1.0 - x), z / (1.0 - x));
  const double g_xy = g_impl(fn, a, x, y);
  const double g_yx = g_impl(fn, a, y, x);
  const double g_x_yz = g_impl(fn, a, x, y + z);
  const double g_yz_x = g_impl(fn, a, y + z, x);
  const double g_xz_y = g_impl(fn, a, x / (1.0 - y), z / (1.0 - y));
  const double g_zx_y = g_impl(fn, a, z / (1.0 - y), x / (1.0 - y));

  const double gap = std::abs(g_yz - wx * g_scaled);
  const double bound =
      std::abs(g_xy - g_yx) + std::abs(g_x_yz - g_yz_x) + wy * std::abs(g_xz_y - g_zx_y);
  const double scale = std::max(
      {g_term_scale(fn, a, y, z), wx * g_term_scale(fn, a, y / (1.0 - x), z / (1.0 - x)),
       g_term_scale(fn, a, x, y), g_term_scale(fn, a, y, x), g_term_scale(fn, a, x, y + z),
       g_term_scale(fn, a, y + z, x), wy * g_term_scale(fn, a, x / (1.0 - y), z / (1.0 - y)),
       wy * g_term_scale(fn, a, z / (1.0 - y), x / (1.0 - y))});
  return {gap, bound, scale};
}

ScalingTable scaling_exponent(const SolutionParams& base, const EvaluableFunction& g,
                              double delta, Alpha alpha, std::span<const double> margins,
                              int resolution) {
  if (margins.size() < 2)
    throw DomainViolation("scaling_exponent: needs at least 2 margins");
  for (std::size_t i = 1; i < margins.size(); ++i)
    if (!(margins[i] < margins[i - 1]))
      throw DomainViolation("scaling_exponent: margins must be strictly decreasing");
  if (!(delta > 0.0)) throw DomainViolation("scaling_exponent: delta must be positive");

  const double a = alpha.value();
  const auto f = [&](double x) { return eval_family(base, alpha, x) + delta * g(x); };

  ScalingTable result;
  result.table.reserve(margins.size());
  for (double h : margins) {
    const GridSpec spec(resolution, h);
    const DefectReport report = sup_impl(f, a, spec, false, nullptr);
    if (report.sup_defect == 0.0)
      throw SlopeUndefined("scaling_exponent: sup defect vanished at margin " +
                           std::to_string(h));
    result.table.emplace_back(h, report.sup_defect);
  }

  const auto fit_slope = [](std::span<const std::pair<double, double>> rows,
                            double* residual_rms) {
    const std::size_t n = rows.size();
    double mx = 0.0, my = 0.0;
    for (const auto& [h, s] : rows) {
      mx += std::log(h);
      my += std::log(s);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [h, s] : rows) {
      const double dx = std::log(h) - mx;
      sxx += dx * dx;
      sxy += dx * (std::log(s) - my);
    }
    const double slope = sxy / sxx;
    if (residual_rms) {
      double ss = 0.0;
      for (const auto& [h, s] : rows) {
        const double r = (std::log(s) - my) - slope * (std::log(h) - mx);
        ss += r * r;
      }
      *residual_rms = std::sqrt(ss / static_cast<double>(n));
    }
    return slope;
  };

  double residual = 0.0;
  result.slope = fit_slope(result.table, &residual);
  // Pre-asymptotic bias guard: when the full fit is poor, trust only the
  // smallest three margins.
  if (residual > 0.05 && result.table.size() > 3) {
    std::span<const std::pair<double, double>> tail(result.table);
    result.slope = fit_slope(tail.subspan(tail.size() - 3), nullptr);
  }
  return result;
}

double fe_defect_closed(const SolutionParams& params, Alpha alpha, const ClosedD2Point& p) {
  const double x = p.x();
  const double y = p.y();
  // x + y <= 1 keeps the ratios in [0,1]. On the diagonal x + y = 1 both
  // ratios are exactly 1; recomputing them as quotients would land an ulp
  // inside the interval and hit the boundary singularity instead of the
  // closed-domain value.
  const bool diagonal = x + y == 1.0;
  const double rx = diagonal ? 1.0 : std::min(1.0, y / (1.0 - x));
  const double ry = diagonal ? 1.0 : std::min(1.0, x / (1.0 - y));
  const double a = alpha.value();
  const double t1 = eval_closed_family(params, alpha, x);
  const double t2 = pow_alpha(1.0 - x, a) * eval_closed_family(params, alpha, rx);
  const double t3 = eval_closed_family(params, alpha, y);
  const double t4 = pow_alpha(1.0 - y, a) * eval_closed_family(params, alpha, ry);
  return std::abs(t1 + t2 - t3 - t4);
}

}  // namespace infostab
