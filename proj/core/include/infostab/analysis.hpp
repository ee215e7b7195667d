#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "infostab/defect.hpp"

namespace infostab {

/// Least-squares recovery of (c, d) from samples of the linear model
/// y = c x^alpha + d ((1-x)^alpha - 1).
struct FitResult {
  SolutionParams params;
  double residual_l2 = 0.0;   // Euclidean norm of the residual vector
  double residual_sup = 0.0;  // max |residual|
  double condition = 0.0;     // 2-norm condition of the effective design
  int n_samples = 0;
};

FitResult fit_family(std::span<const double> xs, std::span<const double> ys, Alpha alpha);

/// m sample abscissas uniformly spaced on [h, 1-h]; the one-dimensional
/// companion of a GridSpec, used by the fit-based operations.
std::vector<double> sample_grid_1d(const GridSpec& spec);

/// Residual norms of f after projecting out the best-fitting family member
/// on the sample grid. dist_sup carries the hyperstability claim; the fit
/// itself is least-squares.
struct FamilyDistance {
  double dist_sup = 0.0;
  double dist_l2 = 0.0;
  SolutionParams best;
};

FamilyDistance distance_to_family(const EvaluableFunction& f, Alpha alpha,
                                  const GridSpec& spec);

enum class OptimizerKind { NelderMead, CoordinateSearch };

/// Configuration of the constrained counterexample search: maximize the
/// distance from the solution family over sine-basis coefficients theta,
/// subject to sup defect <= eps, via the penalized objective
/// distance - penalty_weight * max(0, defect - eps).
struct SearchConfig {
  Alpha alpha;
  double eps = 1e-3;
  GridSpec grid;
  int basis_size = 6;
  OptimizerKind optimizer = OptimizerKind::NelderMead;
  int max_iters = 200;
  std::uint64_t seed = 0;
  double penalty_weight = 1e3;
  int restarts = 8;
};

struct SearchHistoryEntry {
  int iter = 0;
  double distance = 0.0;
  double defect = 0.0;
};

/// Best feasible point found. A nonzero best_distance with best_defect
/// within eps would exhibit a near-solution of the inequality that is far
/// from every exact solution; in the hyperstable regime the feasible set
/// starves and the ratio best_distance/eps collapses instead.
struct SearchReport {
  double best_distance = 0.0;
  double best_defect = 0.0;
  std::vector<double> best_coefficients;
  int iterations = 0;
  bool converged = false;
  std::vector<SearchHistoryEntry> history;
};

SearchReport counterexample_search(const SearchConfig& cfg);

}  // namespace infostab
