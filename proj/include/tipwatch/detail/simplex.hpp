#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tipwatch::detail {

struct SimplexOptions {
  int max_evals = 1000;
  /// Stop when the spread of objective values over the simplex falls below this.
  double ftol = 1e-9;
  /// ... and the simplex diameter falls below this.
  double xtol = 1e-7;
  double initial_step = 0.3;
  /// Coordinates are clamped into [-bound, bound].
  double bound = 1e300;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Nelder-Mead minimisation (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0, const SimplexOptions& options = {});

}  // namespace tipwatch::detail
