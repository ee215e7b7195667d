#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "infostab/measures.hpp"

namespace testutil {

// |a - b| <= rel * max(|a|, |b|, floor)
inline bool close_rel(double a, double b, double rel, double floor = 1.0) {
  const double scale = std::max(std::max(std::abs(a), std::abs(b)), floor);
  return std::abs(a - b) <= rel * scale;
}

// Uniform draw from the open triangle with a standoff that keeps the
// boundary weights representable.
inline infostab::D2Point rand_d2(std::mt19937_64& rng, double standoff = 1e-4) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const double x = u(rng);
    const double y = u(rng);
    if (x >= standoff && y >= standoff && 1.0 - x - y >= standoff)
      return infostab::D2Point(x, y);
  }
}

inline infostab::D3Point rand_d3(std::mt19937_64& rng, double standoff = 1e-4) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    const double x = u(rng);
    const double y = u(rng);
    const double z = u(rng);
    if (x >= standoff && y >= standoff && z >= standoff && 1.0 - x - y - z >= standoff)
      return infostab::D3Point(x, y, z);
  }
}

inline infostab::SimplexPoint rand_simplex(std::mt19937_64& rng, int n,
                                           double standoff = 1e-3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (;;) {
    std::vector<double> p(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& v : p) {
      v = -std::log(u(rng));
      sum += v;
    }
    bool ok = true;
    for (double& v : p) {
      v /= sum;
      ok = ok && v >= standoff;
    }
    if (ok) return infostab::SimplexPoint(std::move(p));
  }
}

// A random instance of each EvaluableFunction variant in rotation.
inline infostab::EvaluableFunction rand_function(std::mt19937_64& rng,
                                                 infostab::Alpha alpha, int variant) {
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  switch (variant % 3) {
    case 0:
      return infostab::EvaluableFunction::family({coeff(rng), coeff(rng)}, alpha);
    case 1: {
      std::vector<double> theta(4);
      for (double& t : theta) t = 0.5 * coeff(rng);
      return infostab::EvaluableFunction::perturbed({coeff(rng), coeff(rng)}, alpha,
                                                    std::move(theta));
    }
    default: {
      // Jittered nodes with spacing >= ~0.05 keep the interpolant's slopes
      // moderate; steeper slopes would amplify ulp-level argument noise past
      // the identity-test tolerances.
      std::uniform_real_distribution<double> jitter(0.0, 0.5);
      std::vector<double> xs(8);
      for (std::size_t i = 0; i < xs.size(); ++i)
        xs[i] = 0.05 + 0.9 * (static_cast<double>(i) + jitter(rng)) / 8.5;
      std::vector<double> ys(xs.size());
      for (double& y : ys) y = coeff(rng);
      return infostab::EvaluableFunction::sampled(std::move(xs), std::move(ys));
    }
  }
}

// Piecewise-linear stand-in for x^2 on a fine node set; any fixed function
// works for the identity checks, and this one is asymmetric enough to give
// nonzero defects where a test wants them.
inline infostab::EvaluableFunction sampled_square(int n_nodes = 2001) {
  std::vector<double> xs(static_cast<std::size_t>(n_nodes));
  std::vector<double> ys(xs.size());
  for (int i = 0; i < n_nodes; ++i) {
    const double x = (i + 1.0) / (n_nodes + 1.0);
    xs[static_cast<std::size_t>(i)] = x;
    ys[static_cast<std::size_t>(i)] = x * x;
  }
  return infostab::EvaluableFunction::sampled(std::move(xs), std::move(ys));
}

// Exact constant function via clamped linear interpolation.
inline infostab::EvaluableFunction constant_fn(double value) {
  return infostab::EvaluableFunction::sampled({0.25, 0.75}, {value, value});
}

}  // namespace testutil
