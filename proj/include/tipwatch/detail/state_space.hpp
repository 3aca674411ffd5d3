#pragma once

#include <span>
#include <vector>

namespace tipwatch::arma::detail {

/// Sufficient statistics of one Kalman pass with unit innovation variance.
struct FilterSums {
  std::size_t n = 0;
  double sum_log_f = 0.0;
  /// Weighted cross products of the innovations of the data (y) and of a constant 1.
  double syy = 0.0;
  double sy1 = 0.0;
  double s11 = 0.0;

  /// Weighted residual sum of squares for a given process mean.
  [[nodiscard]] double rss(double mu) const noexcept { return syy - 2.0 * mu * sy1 + mu * mu * s11; }
  /// GLS estimate of the process mean.
  [[nodiscard]] double mu_hat() const noexcept { return s11 > 0.0 ? sy1 / s11 : 0.0; }
};

/**
 * Companion-form state-space filter for ARMA(p,q) with r = max(p, q + 1) states,
 * initialised at the stationary covariance. The state covariance is frozen once
 * the innovation variance has converged.
 */
class ArmaFilter {
 public:
  ArmaFilter(std::span<const double> phi, std::span<const double> theta);

  /// False when the stationary covariance could not be formed (unit root).
  [[nodiscard]] bool valid() const noexcept { return valid_; }
  [[nodiscard]] int states() const noexcept { return r_; }
  [[nodiscard]] const std::vector<double>& initial_covariance() const noexcept { return p0_; }

  [[nodiscard]] FilterSums run(std::span<const double> y) const;

 private:
  int r_;
  bool valid_ = true;
  std::vector<double> phi_;    // padded to r
  std::vector<double> rvec_;   // (1, theta_1, ..., theta_{r-1})
  std::vector<double> p0_;     // r x r row-major
};

/// Profiled log-likelihood: intercept at its GLS value, sigma^2 = rss / n.
double concentrated_loglik(const FilterSums& sums);

}  // namespace tipwatch::arma::detail
