#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "infostab/measures.hpp"

namespace infostab {

/// Defect of f at one point together with the local scale (the largest
/// absolute magnitude among the four equation terms at that point). Relative
/// tolerances are scaled by it because the terms diverge like h^alpha near
/// the boundary, where absolute tolerances are meaningless.
struct PointDefect {
  double defect = 0.0;
  double local_scale = 0.0;
};

struct PerPointRecord {
  D2Point point;
  double defect;
  double local_scale;
};

/// Grid sweep summary. The sup over a grid stands in for the sup over the
/// open domain, which is why the grid spec travels with the numbers: a
/// grid-measured sup is a lower bound for the true one.
struct DefectReport {
  double sup_defect = 0.0;
  double mean_defect = 0.0;
  double sup_rel_defect = 0.0;  // max over the grid of defect / local_scale
  D2Point argmax;
  GridSpec grid;
  long n_points = 0;
  bool extrapolated = false;  // a sampled function clamped outside its nodes
  std::optional<std::vector<PerPointRecord>> per_point;
};

/// |f(x) + (1-x)^a f(y/(1-x)) - f(y) - (1-y)^a f(x/(1-y))|.
double fe_defect(const EvaluableFunction& f, Alpha alpha, const D2Point& p);

/// fe_defect together with its local scale.
PointDefect fe_defect_at(const EvaluableFunction& f, Alpha alpha, const D2Point& p);

/// Sup/mean/argmax of fe_defect over grid_d2(spec). Deterministic: ties on
/// the sup are broken toward the lexicographically smallest grid point.
DefectReport fe_defect_sup(const EvaluableFunction& f, Alpha alpha, const GridSpec& spec,
                           bool keep_per_point = false);

/// G(x, y) = f(x) + (1-x)^a f(y/(1-x)) - f(x+y).
double g_value(const EvaluableFunction& f, Alpha alpha, const D2Point& p);

/// |G(x, y) - G(y, x)|. Identically equal to fe_defect at the same point:
/// the f(x+y) terms cancel.
double g_symmetry_gap(const EvaluableFunction& f, Alpha alpha, const D2Point& p);

/// |G(x,y) + G(x+y,z) - G(x,y+z) - (1-x)^a G(y/(1-x), z/(1-x))|.
/// An algebraic identity: zero (up to roundoff) for every f, not only for
/// solutions.
double cocycle_residual(const EvaluableFunction& f, Alpha alpha, const D3Point& q);

/// The largest absolute constituent-term magnitude in the cocycle identity at
/// q; the scale "zero up to roundoff" is relative to. The G values themselves
/// can cancel internally, so they understate it.
double cocycle_local_scale(const EvaluableFunction& f, Alpha alpha, const D3Point& q);

/// gap = |G(y,z) - (1-x)^a G(y/(1-x), z/(1-x))| and the bound it provably
/// stays below: the sum of the three symmetry gaps the expansion produces,
///   sym(x,y) + sym(x,y+z) + (1-y)^a sym(x/(1-y), z/(1-y)).
/// scale is the largest constituent-term magnitude encountered, for relative
/// tolerances.
struct HomogeneityGap {
  double gap = 0.0;
  double certified_bound = 0.0;
  double scale = 0.0;
};

HomogeneityGap homogeneity_gap(const EvaluableFunction& f, Alpha alpha, const D3Point& q);

/// Sweep result of the margin-scaling probe: sup defect of
/// family(base) + delta * g over grid(m, h) for each margin h, plus the
/// fitted log-log slope. The slope exposes the trichotomy: near alpha for
/// alpha < 0 (the defect of any perturbation is forced unbounded), near 0
/// with bounded sup for alpha in [0,1) or (1,inf).
struct ScalingTable {
  double slope = 0.0;
  std::vector<std::pair<double, double>> table;  // (h, sup_defect)
};

ScalingTable scaling_exponent(const SolutionParams& base, const EvaluableFunction& g,
                              double delta, Alpha alpha, std::span<const double> margins,
                              int resolution);

/// Closed-domain defect of the extended family member at a point of the
/// closed triangle, including the boundary pairs y = 0 and y = 1 - x.
double fe_defect_closed(const SolutionParams& params, Alpha alpha, const ClosedD2Point& p);

}  // namespace infostab
