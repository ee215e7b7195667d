#include "infostab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace infostab {

double pow_alpha(double base, double exponent) {
  if (!(base > 0.0)) {
    std::ostringstream oss;
    oss << "pow_alpha: base must be positive, got " << base;
    throw DomainViolation(oss.str());
  }
  return std::pow(base, exponent);
}

namespace {

void require_open_unit(double x, const char* who) {
  if (!(x > 0.0 && x < 1.0)) {
    std::ostringstream oss;
    oss << who << ": x must lie in (0,1), got " << x;
    throw DomainViolation(oss.str());
  }
}

double family_value(const SolutionParams& params, double a, double x) {
  return params.c * pow_alpha(x, a) + params.d * pow_alpha(1.0 - x, a) - params.d;
}

}  // namespace

double eval_family(const SolutionParams& params, Alpha alpha, double x) {
  require_open_unit(x, "eval_family");
  return family_value(params, alpha.value(), x);
}

double eval_closed_family(const SolutionParams& params, Alpha alpha, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainViolation("eval_closed_family: x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return params.c - params.d;
  return family_value(params, alpha.value(), x);
}

double entropy_alpha(Alpha alpha, const SimplexPoint& p) {
  const double a = alpha.value();
  double sum = 0.0;
  for (int i = 0; i < p.size(); ++i) sum += pow_alpha(p[i], a);
  return (sum - 1.0) / (std::pow(2.0, 1.0 - a) - 1.0);
}

double eval_J(const JParams& params, Alpha alpha, const SimplexPoint& p) {
  return params.a * entropy_alpha(alpha, p) +
         params.b * (pow_alpha(p[0], alpha.value()) - 1.0);
}

JParams params_from_fit(double c, double d, Alpha alpha) {
  return JParams{(std::pow(2.0, 1.0 - alpha.value()) - 1.0) * c, d - c};
}

EvaluableFunction EvaluableFunction::family(SolutionParams params, Alpha alpha) {
  return EvaluableFunction(Family{params, alpha});
}

EvaluableFunction EvaluableFunction::perturbed(SolutionParams params, Alpha alpha,
                                               std::vector<double> coefficients) {
  return EvaluableFunction(BasisPerturbed{params, alpha, std::move(coefficients)});
}

EvaluableFunction EvaluableFunction::sampled(std::vector<double> nodes,
                                             std::vector<double> values) {
  if (nodes.size() != values.size())
    throw DomainViolation("sampled: nodes and values must have equal length");
  if (nodes.size() < 2)
    throw DomainViolation("sampled: needs at least 2 nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i] > 0.0 && nodes[i] < 1.0))
      throw DomainViolation("sampled: nodes must lie in (0,1)");
    if (i > 0 && !(nodes[i] > nodes[i - 1]))
      throw DomainViolation("sampled: nodes must be strictly increasing");
    if (!std::isfinite(values[i]))
      throw DomainViolation("sampled: values must be finite");
  }
  return EvaluableFunction(Sampled{std::move(nodes), std::move(values)});
}

namespace {

double sine_sum(const std::vector<double>& coefficients, double x) {
  double acc = 0.0;
  for (std::size_t j = 0; j < coefficients.size(); ++j)
    acc += coefficients[j] * std::sin(static_cast<double>(j + 1) * std::numbers::pi * x);
  return acc;
}

double sampled_value(const EvaluableFunction::Sampled& s, double x) {
  if (x <= s.nodes.front()) return s.values.front();
  if (x >= s.nodes.back()) return s.values.back();
  const auto it = std::upper_bound(s.nodes.begin(), s.nodes.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - s.nodes.begin());
  const std::size_t lo = hi - 1;
  const double t = (x - s.nodes[lo]) / (s.nodes[hi] - s.nodes[lo]);
  return s.values[lo] + t * (s.values[hi] - s.values[lo]);
}

}  // namespace

double EvaluableFunction::operator()(double x) const {
  require_open_unit(x, "EvaluableFunction");
  if (const auto* f = std::get_if<Family>(&repr_))
    return family_value(f->params, f->alpha.value(), x);
  if (const auto* p = std::get_if<BasisPerturbed>(&repr_))
    return family_value(p->params, p->alpha.value(), x) + sine_sum(p->coefficients, x);
  return sampled_value(std::get<Sampled>(repr_), x);
}

bool EvaluableFunction::extrapolates_at(double x) const {
  if (const auto* s = std::get_if<Sampled>(&repr_))
    return x < s->nodes.front() || x > s->nodes.back();
  return false;
}

double eval_function(const EvaluableFunction& f, double x) { return f(x); }

}  // namespace infostab
