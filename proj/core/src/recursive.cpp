#include "infostab/recursive.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace infostab {

EpsilonBudget::EpsilonBudget(std::vector<double> eps) : eps_(std::move(eps)) {
  for (double e : eps_)
    if (!(e >= 0.0)) throw DomainViolation("EpsilonBudget: entries must be nonnegative");
}

double EpsilonBudget::at(int k) const {
  if (k < 1) throw DomainViolation("EpsilonBudget: index starts at 1");
  const std::size_t i = static_cast<std::size_t>(k - 1);
  return i < eps_.size() ? eps_[i] : 0.0;
}

double EpsilonBudget::cumulative(int n) const {
  double sum = 0.0;
  for (int k = 2; k <= n - 1; ++k) sum += at(k);
  return sum;
}

SimplexFunction sine_product_perturbation(double amplitude) {
  return [amplitude](const SimplexPoint& p) {
    double v = amplitude;
    for (int i = 0; i < p.size(); ++i) v *= std::sin(std::numbers::pi * p[i]);
    return v;
  };
}

namespace {

// (p1+p2, p3, ..., pn)
SimplexPoint merge_head(const SimplexPoint& p) {
  std::vector<double> merged;
  merged.reserve(static_cast<std::size_t>(p.size()) - 1);
  merged.push_back(p[0] + p[1]);
  for (int i = 2; i < p.size(); ++i) merged.push_back(p[i]);
  return SimplexPoint(std::move(merged));
}

double kernel_at_split(const MeasureSequence& seq, const SimplexPoint& p) {
  // I_2(p1/(p1+p2), p2/(p1+p2)) with I_2(q1, q2) = kernel(q2).
  return seq.kernel(p[1] / (p[0] + p[1]));
}

double perturbation_at(const MeasureSequence& seq, int n, const SimplexPoint& p) {
  const auto it = seq.perturbations.find(n);
  if (it == seq.perturbations.end()) return 0.0;
  const double d = it->second(p);
  const double budget = seq.budget.at(n - 1);
  if (std::abs(d) > budget * (1.0 + 1e-12)) {
    std::ostringstream oss;
    oss << "eval_measure: delta_" << n << " = " << d << " exceeds budget eps_" << (n - 1)
        << " = " << budget;
    throw BudgetViolation(oss.str());
  }
  return d;
}

}  // namespace

double eval_measure(const MeasureSequence& seq, const SimplexPoint& p) {
  const int n = p.size();
  if (n == 2) return seq.kernel(p[1]);
  const double weight = pow_alpha(p[0] + p[1], seq.alpha.value());
  return eval_measure(seq, merge_head(p)) + weight * kernel_at_split(seq, p) +
         perturbation_at(seq, n, p);
}

double recursivity_defect(const MeasureSequence& seq, const SimplexPoint& p) {
  if (p.size() < 3) throw DomainViolation("recursivity_defect: needs n >= 3");
  const double weight = pow_alpha(p[0] + p[1], seq.alpha.value());
  return std::abs(eval_measure(seq, p) - eval_measure(seq, merge_head(p)) -
                  weight * kernel_at_split(seq, p));
}

double semisymmetry_defect(const MeasureSequence& seq, const SimplexPoint& p) {
  if (p.size() != 3) throw DomainViolation("semisymmetry_defect: defined on the 3-simplex");
  const SimplexPoint swapped(std::vector<double>{p[0], p[2], p[1]});
  return std::abs(eval_measure(seq, p) - eval_measure(seq, swapped));
}

double kernel_stability_eps(const EpsilonBudget& eps) {
  return 2.0 * eps.at(2) + eps.at(1);
}

std::vector<GapTableRow> measure_gap_table(const MeasureSequence& seq, const JParams& params,
                                  int n_max, int m) {
  if (n_max < 2) throw DomainViolation("measure_gap_table: n_max must be at least 2");
  std::vector<GapTableRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max - 1));
  for (int n = 2; n <= n_max; ++n) {
    GapTableRow row;
    row.n = n;
    row.bound = seq.budget.cumulative(n);
    for (const SimplexPoint& p : grid_simplex(n, m)) {
      const double in = eval_measure(seq, p);
      const double jn = eval_J(params, seq.alpha, p);
      row.max_gap = std::max(row.max_gap, std::abs(in - jn));
      row.scale = std::max(row.scale, std::max(std::abs(in), std::abs(jn)));
    }
    row.ok = row.max_gap <= row.bound + 1e-10 * row.scale;
    rows.push_back(row);
  }
  return rows;
}

EvaluableFunction kernel_from_sequence(const MeasureSequence& seq) {
  // I_2(1-x, x) = kernel(x) under the stored convention, so the kernel is
  // already the requested function.
  return seq.kernel;
}

}  // namespace infostab
