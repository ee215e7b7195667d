#pragma once

#include <variant>
#include <vector>

#include "infostab/domain.hpp"

namespace infostab {

/// Parameters (c, d) of the two-parameter solution family
/// f(x) = c x^alpha + d (1-x)^alpha - d.
struct SolutionParams {
  double c = 0.0;
  double d = 0.0;
};

/// Parameters (a, b) of the comparison measure family
/// J_n(p) = a H_n^alpha(p) + b (p_1^alpha - 1).
struct JParams {
  double a = 0.0;
  double b = 0.0;
};

/// base^exponent for positive base, guarded: the open domains guarantee
/// positive arguments, so a nonpositive base indicates a caller bug and
/// raises DomainViolation.
double pow_alpha(double base, double exponent);

/// c x^alpha + d (1-x)^alpha - d for x in (0,1).
double eval_family(const SolutionParams& params, Alpha alpha, double x);

/// Closed-domain extension: 0 at x=0, c-d at x=1, eval_family in between.
double eval_closed_family(const SolutionParams& params, Alpha alpha, double x);

/// Entropy of degree alpha: (2^{1-alpha} - 1)^{-1} (sum p_i^alpha - 1).
double entropy_alpha(Alpha alpha, const SimplexPoint& p);

/// a H_n^alpha(p) + b (p_1^alpha - 1).
double eval_J(const JParams& params, Alpha alpha, const SimplexPoint& p);

/// Map family parameters to the measure-family parameters they induce:
/// a = (2^{1-alpha} - 1) c, b = d - c.
JParams params_from_fit(double c, double d, Alpha alpha);

/// A real function on (0,1): a closed-form family member, a family member
/// plus a sine-basis perturbation sum(theta_j sin(j pi x)), or sampled data
/// with piecewise-linear interpolation. The sampled variant clamps to its end
/// values outside the node range and reports that it extrapolated.
class EvaluableFunction {
 public:
  struct Family {
    SolutionParams params;
    Alpha alpha;
  };
  struct BasisPerturbed {
    SolutionParams params;
    Alpha alpha;
    std::vector<double> coefficients;  // theta_1 ... theta_J on sin(j pi x)
  };
  struct Sampled {
    std::vector<double> nodes;   // strictly increasing, in (0,1)
    std::vector<double> values;
  };

  static EvaluableFunction family(SolutionParams params, Alpha alpha);
  static EvaluableFunction perturbed(SolutionParams params, Alpha alpha,
                                     std::vector<double> coefficients);
  static EvaluableFunction sampled(std::vector<double> nodes, std::vector<double> values);

  /// Evaluate at x in (0,1); DomainViolation outside.
  double operator()(double x) const;

  /// True when evaluation at x would clamp beyond the sampled node range.
  /// Always false for the closed-form variants.
  bool extrapolates_at(double x) const;

  const Family* as_family() const { return std::get_if<Family>(&repr_); }
  const BasisPerturbed* as_perturbed() const { return std::get_if<BasisPerturbed>(&repr_); }
  const Sampled* as_sampled() const { return std::get_if<Sampled>(&repr_); }

 private:
  using Repr = std::variant<Family, BasisPerturbed, Sampled>;
  explicit EvaluableFunction(Repr repr) : repr_(std::move(repr)) {}
  Repr repr_;
};

/// Named form of EvaluableFunction::operator().
double eval_function(const EvaluableFunction& f, double x);

}  // namespace infostab
