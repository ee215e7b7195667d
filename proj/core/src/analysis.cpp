#include "infostab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace infostab {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Thin QR of the two-column design [x^alpha, (1-x)^alpha - 1] on fixed
// abscissas. The second column vanishes identically at alpha = 0, where the
// family span degenerates to multiples of the first column; that case is
// rank-1 by structure, not by sample, and is solved with d = 0 rather than
// rejected.
struct FamilyDesign {
  std::vector<double> col1, col2;
  std::vector<double> q1, q2;
  double r11 = 0.0, r12 = 0.0, r22 = 0.0;
  bool rank2 = true;
  double condition = 1.0;

  static FamilyDesign build(std::span<const double> xs, double a) {
    FamilyDesign d;
    const std::size_t n = xs.size();
    d.col1.resize(n);
    d.col2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      d.col1[i] = pow_alpha(xs[i], a);
      d.col2[i] = pow_alpha(1.0 - xs[i], a) - 1.0;
    }
    d.r11 = norm2(d.col1);
    d.q1 = d.col1;
    for (double& v : d.q1) v /= d.r11;
    const double n2 = norm2(d.col2);
    if (n2 <= 1e-12 * std::sqrt(static_cast<double>(n))) {
      d.rank2 = false;
      d.condition = 1.0;
      return d;
    }
    d.r12 = dot(d.q1, d.col2);
    d.q2.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.q2[i] = d.col2[i] - d.r12 * d.q1[i];
    d.r22 = norm2(d.q2);
    if (d.r22 <= 1e-10 * n2)
      throw SingularDesign("fit_family: basis columns are numerically dependent on the samples");
    for (double& v : d.q2) v /= d.r22;
    // Condition of R from the eigenvalues of R^T R.
    const double tr = d.r11 * d.r11 + d.r12 * d.r12 + d.r22 * d.r22;
    const double det = d.r11 * d.r22;
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det * det));
    const double lmax = 0.5 * (tr + disc);
    const double lmin = 0.5 * (tr - disc);
    d.condition = lmin > 0.0 ? std::sqrt(lmax / lmin) : std::numeric_limits<double>::infinity();
    return d;
  }

  SolutionParams solve(std::span<const double> y) const {
    const double u1 = dot({q1.data(), y.size()}, y);
    if (!rank2) return SolutionParams{u1 / r11, 0.0};
    const double u2 = dot({q2.data(), y.size()}, y);
    const double dval = u2 / r22;
    const double cval = (u1 - r12 * dval) / r11;
    return SolutionParams{cval, dval};
  }

  void residual(std::span<const double> y, const SolutionParams& p,
                std::vector<double>& r) const {
    r.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
      r[i] = y[i] - p.c * col1[i] - (rank2 ? p.d * col2[i] : 0.0);
  }
};

}  // namespace

FitResult fit_family(std::span<const double> xs, std::span<const double> ys, Alpha alpha) {
  if (xs.size() != ys.size())
    throw DomainViolation("fit_family: xs and ys must have equal length");
  if (xs.size() < 2) throw DomainViolation("fit_family: needs at least 2 samples");
  for (double y : ys)
    if (!std::isfinite(y)) throw DomainViolation("fit_family: samples must be finite");

  const FamilyDesign design = FamilyDesign::build(xs, alpha.value());
  const SolutionParams params = design.solve(ys);
  std::vector<double> r;
  design.residual(ys, params, r);
  FitResult out;
  out.params = params;
  out.residual_l2 = norm2(r);
  for (double v : r) out.residual_sup = std::max(out.residual_sup, std::abs(v));
  out.condition = design.condition;
  out.n_samples = static_cast<int>(xs.size());
  return out;
}

std::vector<double> sample_grid_1d(const GridSpec& spec) {
  const int m = spec.resolution;
  if (m < 2) throw EmptyGrid("sample_grid_1d: needs resolution >= 2");
  const double h = spec.margin;
  std::vector<double> xs(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    xs[static_cast<std::size_t>(i)] = h + (1.0 - 2.0 * h) * (static_cast<double>(i) / (m - 1));
  return xs;
}

FamilyDistance distance_to_family(const EvaluableFunction& f, Alpha alpha,
                                  const GridSpec& spec) {
  const std::vector<double> xs = sample_grid_1d(spec);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);
  const FitResult fit = fit_family(xs, ys, alpha);
  FamilyDistance out;
  out.best = fit.params;
  out.dist_l2 = fit.residual_l2;
  out.dist_sup = fit.residual_sup;
  return out;
}

namespace {

struct ObjectiveEval {
  double objective = 0.0;
  double distance = 0.0;
  double defect = 0.0;
};

// The defect and sample operators are linear in theta, so both grid sweeps
// reduce to precomputed response columns; one objective evaluation is a pair
// of dense matrix-vector products instead of a fresh transcendental sweep.
class SearchProblem {
 public:
  SearchProblem(const SearchConfig& cfg)
      : basis_(cfg.basis_size),
        eps_(cfg.eps),
        penalty_(cfg.penalty_weight),
        xs_(sample_grid_1d(cfg.grid)),
        design_(FamilyDesign::build(xs_, cfg.alpha.value())) {
    const double a = cfg.alpha.value();
    const std::vector<D2Point> grid = grid_d2(cfg.grid);
    n_grid_ = grid.size();
    defect_cols_.resize(n_grid_ * static_cast<std::size_t>(basis_));
    for (std::size_t p = 0; p < n_grid_; ++p) {
      const double x = grid[p].x();
      const double y = grid[p].y();
      const double w1 = pow_alpha(1.0 - x, a);
      const double w2 = pow_alpha(1.0 - y, a);
      const double u = y / (1.0 - x);
      const double v = x / (1.0 - y);
      for (int j = 0; j < basis_; ++j) {
        const double k = (j + 1) * std::numbers::pi;
        defect_cols_[p * basis_ + static_cast<std::size_t>(j)] =
            std::sin(k * x) + w1 * std::sin(k * u) - std::sin(k * y) - w2 * std::sin(k * v);
      }
    }
    basis_samples_.resize(xs_.size() * static_cast<std::size_t>(basis_));
    for (std::size_t i = 0; i < xs_.size(); ++i)
      for (int j = 0; j < basis_; ++j)
        basis_samples_[i * basis_ + static_cast<std::size_t>(j)] =
            std::sin((j + 1) * std::numbers::pi * xs_[i]);
    samples_.resize(xs_.size());
    residual_.resize(xs_.size());
  }

  ObjectiveEval evaluate(std::span<const double> theta) {
    double defect_sup = 0.0;
    for (std::size_t p = 0; p < n_grid_; ++p) {
      double acc = 0.0;
      const double* row = &defect_cols_[p * basis_];
      for (int j = 0; j < basis_; ++j) acc += theta[static_cast<std::size_t>(j)] * row[j];
      defect_sup = std::max(defect_sup, std::abs(acc));
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      double acc = 0.0;
      const double* row = &basis_samples_[i * basis_];
      for (int j = 0; j < basis_; ++j) acc += theta[static_cast<std::size_t>(j)] * row[j];
      samples_[i] = acc;
    }
    const SolutionParams fitted = design_.solve(samples_);
    design_.residual(samples_, fitted, residual_);
    double dist_sup = 0.0;
    for (double v : residual_) dist_sup = std::max(dist_sup, std::abs(v));
    ObjectiveEval e;
    e.distance = dist_sup;
    e.defect = defect_sup;
    e.objective = dist_sup - penalty_ * std::max(0.0, defect_sup - eps_);
    return e;
  }

 private:
  int basis_;
  double eps_;
  double penalty_;
  std::vector<double> xs_;
  FamilyDesign design_;
  std::size_t n_grid_ = 0;
  std::vector<double> defect_cols_;    // point-major, basis_ per point
  std::vector<double> basis_samples_;  // abscissa-major
  std::vector<double> samples_;
  std::vector<double> residual_;
};

struct FeasibleBest {
  double feas_tol;
  double eps;
  bool any = false;
  double distance = 0.0;
  double defect = 0.0;
  std::vector<double> theta;

  void observe(std::span<const double> t, const ObjectiveEval& e) {
    if (e.defect > eps + feas_tol) return;
    if (!any || e.distance > distance) {
      any = true;
      distance = e.distance;
      defect = e.defect;
      theta.assign(t.begin(), t.end());
    }
  }
};

struct Vertex {
  std::vector<double> x;
  ObjectiveEval e;
};

bool nelder_mead_maximize(SearchProblem& problem, FeasibleBest& best,
                          std::vector<double> start, double step, int max_iters,
                          std::vector<SearchHistoryEntry>& history, int& global_iter) {
  const std::size_t n = start.size();
  const auto eval = [&](const std::vector<double>& x) {
    const ObjectiveEval e = problem.evaluate(x);
    best.observe(x, e);
    return e;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({start, eval(start)});
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> x = start;
    x[j] += step;
    simplex.push_back({std::move(x), ObjectiveEval{}});
    simplex.back().e = eval(simplex.back().x);
  }
  const auto by_objective = [](const Vertex& l, const Vertex& r) {
    return l.e.objective > r.e.objective;
  };
  std::stable_sort(simplex.begin(), simplex.end(), by_objective);

  bool hit_tol = false;
  for (int iter = 0; iter < max_iters; ++iter) {
    history.push_back({global_iter++, simplex.front().e.distance, simplex.front().e.defect});
    const double spread = simplex.front().e.objective - simplex.back().e.objective;
    if (spread <= 1e-14 + 1e-9 * std::abs(simplex.front().e.objective)) {
      hit_tol = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[v].x[j];
    for (double& c : centroid) c /= static_cast<double>(n);
    Vertex& worst = simplex.back();

    std::vector<double> xr(n);
    for (std::size_t j = 0; j < n; ++j) xr[j] = centroid[j] + (centroid[j] - worst.x[j]);
    const ObjectiveEval er = eval(xr);

    if (er.objective > simplex.front().e.objective) {
      std::vector<double> xe(n);
      for (std::size_t j = 0; j < n; ++j) xe[j] = centroid[j] + 2.0 * (xr[j] - centroid[j]);
      const ObjectiveEval ee = eval(xe);
      if (ee.objective > er.objective)
        worst = {std::move(xe), ee};
      else
        worst = {std::move(xr), er};
    } else if (er.objective > simplex[n - 1].e.objective) {
      worst = {std::move(xr), er};
    } else {
      const bool outside = er.objective > worst.e.objective;
      std::vector<double> xc(n);
      if (outside)
        for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] + 0.5 * (xr[j] - centroid[j]);
      else
        for (std::size_t j = 0; j < n; ++j) xc[j] = centroid[j] + 0.5 * (worst.x[j] - centroid[j]);
      const ObjectiveEval ec = eval(xc);
      const bool accept = outside ? ec.objective >= er.objective : ec.objective > worst.e.objective;
      if (accept) {
        worst = {std::move(xc), ec};
      } else {
        for (std::size_t v = 1; v <= n; ++v) {
          for (std::size_t j = 0; j < n; ++j)
            simplex[v].x[j] = simplex[0].x[j] + 0.5 * (simplex[v].x[j] - simplex[0].x[j]);
          simplex[v].e = eval(simplex[v].x);
        }
      }
    }
    std::stable_sort(simplex.begin(), simplex.end(), by_objective);
  }
  return hit_tol;
}

bool coordinate_search_maximize(SearchProblem& problem, FeasibleBest& best,
                                std::vector<double> theta, double step, int max_iters,
                                std::vector<SearchHistoryEntry>& history, int& global_iter) {
  ObjectiveEval current = problem.evaluate(theta);
  best.observe(theta, current);
  for (int iter = 0; iter < max_iters; ++iter) {
    history.push_back({global_iter++, current.distance, current.defect});
    bool improved = false;
    for (std::size_t j = 0; j < theta.size(); ++j) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> cand = theta;
        cand[j] += sign * step;
        const ObjectiveEval e = problem.evaluate(cand);
        best.observe(cand, e);
        if (e.objective > current.objective) {
          theta = std::move(cand);
          current = e;
          improved = true;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
      if (step < 1e-14) return true;
    }
  }
  return false;
}

}  // namespace

SearchReport counterexample_search(const SearchConfig& cfg) {
  if (!(cfg.eps >= 0.0)) throw DomainViolation("counterexample_search: eps must be >= 0");
  if (cfg.max_iters < 1) throw DomainViolation("counterexample_search: max_iters must be >= 1");
  if (!(cfg.penalty_weight > 0.0))
    throw DomainViolation("counterexample_search: penalty_weight must be positive");
  if (cfg.basis_size < 1) throw DomainViolation("counterexample_search: basis_size must be >= 1");
  if (cfg.restarts < 1) throw DomainViolation("counterexample_search: restarts must be >= 1");

  SearchProblem problem(cfg);
  const double feas_tol = cfg.eps * 1e-6 + 1e-12;
  FeasibleBest best{feas_tol, cfg.eps, false, 0.0, 0.0, {}};

  const std::size_t n = static_cast<std::size_t>(cfg.basis_size);
  // The all-zero point is the exact solution f = 0: always feasible.
  {
    const std::vector<double> zero(n, 0.0);
    best.observe(zero, problem.evaluate(zero));
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  const double start_scale = std::max(cfg.eps, 1e-4);
  const double step = start_scale / 4.0;

  SearchReport report;
  int global_iter = 0;
  int tol_hits = 0;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> start(n, 0.0);
    if (r == 0) {
      // Canonical start: a bounded perturbation on the first basis function,
      // sized so that it is feasible whenever the weights stay <= 1.
      start[0] = cfg.eps > 0.0 ? cfg.eps / 4.0 : step;
    } else {
      for (double& s : start) s = start_scale * coeff(rng);
    }
    const bool hit =
        cfg.optimizer == OptimizerKind::NelderMead
            ? nelder_mead_maximize(problem, best, std::move(start), step, cfg.max_iters,
                                   report.history, global_iter)
            : coordinate_search_maximize(problem, best, std::move(start), step, cfg.max_iters,
                                         report.history, global_iter);
    if (hit) ++tol_hits;
  }

  report.iterations = global_iter;
  report.converged = tol_hits == cfg.restarts;
  report.best_coefficients = best.theta;

  // Report the winner through the public operations so the numbers match
  // what a standalone evaluation of those coefficients would produce.
  const EvaluableFunction best_f =
      EvaluableFunction::perturbed(SolutionParams{0.0, 0.0}, cfg.alpha, best.theta);
  report.best_distance = distance_to_family(best_f, cfg.alpha, cfg.grid).dist_sup;
  report.best_defect = fe_defect_sup(best_f, cfg.alpha, cfg.grid).sup_defect;
  return report;
}

}  // namespace infostab
