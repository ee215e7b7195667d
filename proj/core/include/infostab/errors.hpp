#pragma once

#include <stdexcept>
#include <string>

namespace infostab {

/// An input lies outside the domain a type or operation is defined on.
/// The message names the violated constraint.
class DomainViolation : public std::invalid_argument {
 public:
  explicit DomainViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// A grid request produced no feasible lattice point.
class EmptyGrid : public std::runtime_error {
 public:
  explicit EmptyGrid(const std::string& what) : std::runtime_error(what) {}
};

/// The two basis columns of a fit are numerically dependent on the sample set.
class SingularDesign : public std::runtime_error {
 public:
  explicit SingularDesign(const std::string& what) : std::runtime_error(what) {}
};

/// A supplied per-level perturbation exceeds its epsilon budget.
class BudgetViolation : public std::runtime_error {
 public:
  explicit BudgetViolation(const std::string& what) : std::runtime_error(what) {}
};

/// A log-log slope fit is impossible because a sweep produced an exact zero.
class SlopeUndefined : public std::runtime_error {
 public:
  explicit SlopeUndefined(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace infostab
