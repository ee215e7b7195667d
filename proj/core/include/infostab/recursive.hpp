#pragma once

#include <functional>
#include <map>
#include <vector>

#include "infostab/measures.hpp"

namespace infostab {

/// Per-level perturbation budgets. Slot 1 holds the semi-symmetry bound of
/// the three-argument swap; slots 2, 3, ... bound the recursion defect at
/// levels 3, 4, ... (the level-n defect is budgeted by eps_{n-1}). Entries
/// beyond the stored list default to 0. cumulative(n) follows the empty-sum
/// convention cumulative(2) = 0.
class EpsilonBudget {
 public:
  EpsilonBudget() = default;
  explicit EpsilonBudget(std::vector<double> eps);  // eps[0] = eps_1, eps[1] = eps_2, ...

  double at(int k) const;          // eps_k, zero when k is beyond the list
  double cumulative(int n) const;  // sum of eps_k for k = 2 .. n-1

 private:
  std::vector<double> eps_;
};

using SimplexFunction = std::function<double(const SimplexPoint&)>;

/// A measure sequence {I_n} built from a two-argument kernel plus the
/// recursion I_n = I_{n-1}(p1+p2, p3, ...) + (p1+p2)^alpha I_2(split ratio),
/// with optional injected per-level perturbations delta_n held to the
/// epsilon budget. The kernel is stored in the convention f(x) = I_2(1-x, x),
/// i.e. I_2(p1, p2) = f(p2).
struct MeasureSequence {
  EvaluableFunction kernel;
  Alpha alpha;
  std::map<int, SimplexFunction> perturbations{};  // level n >= 3 -> delta_n
  EpsilonBudget budget{};
};

/// delta(p) = amplitude * prod_i sin(pi p_i); sup-norm at most |amplitude|
/// on the whole simplex, so an amplitude of eps_{n-1} respects the budget.
SimplexFunction sine_product_perturbation(double amplitude);

/// Evaluate I_n at p (n = p.size() >= 2). Throws BudgetViolation when a
/// supplied delta_n exceeds eps_{n-1} at p.
double eval_measure(const MeasureSequence& seq, const SimplexPoint& p);

/// |I_n(p) - I_{n-1}(p1+p2, p3, ...) - (p1+p2)^alpha I_2(split ratio)| for
/// n >= 3. Zero for unperturbed sequences by construction; at most eps_{n-1}
/// when the level-n perturbation respects its budget.
double recursivity_defect(const MeasureSequence& seq, const SimplexPoint& p);

/// |I_3(p1, p2, p3) - I_3(p1, p3, p2)| on the 3-simplex.
double semisymmetry_defect(const MeasureSequence& seq, const SimplexPoint& p);

/// The bound 2 eps_2 + eps_1 under which the kernel f(x) = I_2(1-x, x)
/// satisfies the two-variable defect inequality.
double kernel_stability_eps(const EpsilonBudget& eps);

struct GapTableRow {
  int n = 0;
  double max_gap = 0.0;
  double bound = 0.0;
  double scale = 0.0;  // largest |I_n| or |J_n| magnitude seen on the grid
  bool ok = false;     // max_gap <= bound + 1e-10 * scale
};

/// For each n = 2 .. n_max, the max over grid_simplex(n, m) of
/// |I_n(p) - J_n(p)| against the cumulative budget sum_{k=2}^{n-1} eps_k.
std::vector<GapTableRow> measure_gap_table(const MeasureSequence& seq, const JParams& params,
                                  int n_max, int m);

/// The kernel as a function on (0,1): x -> I_2(1-x, x).
EvaluableFunction kernel_from_sequence(const MeasureSequence& seq);

}  // namespace infostab
