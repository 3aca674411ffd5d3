#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tipwatch::arma {

/// Admissibility margin: every AR/MA root must satisfy |z| > 1 + kRootMargin.
inline constexpr double kRootMargin = 1e-3;

/**
 * x_t = nu + sum_i phi_i x_{t-i} + sum_j theta_j w_{t-j} + w_t,  w_t ~ N(0, sigma2).
 */
struct ArmaModel {
  double nu = 0.0;
  std::vector<double> phi;
  std::vector<double> theta;
  double sigma2 = 1.0;

  [[nodiscard]] int p() const noexcept { return static_cast<int>(phi.size()); }
  [[nodiscard]] int q() const noexcept { return static_cast<int>(theta.size()); }
  /// Stationary mean nu / (1 - sum phi).
  [[nodiscard]] double mean() const noexcept;
};

/// Smallest root modulus of 1 - a_1 z - ... - a_k z^k (infinity for k = 0).
double min_root_modulus_ar(std::span<const double> phi);
/// Smallest root modulus of 1 + b_1 z + ... + b_k z^k.
double min_root_modulus_ma(std::span<const double> theta);

/// Stationary and invertible with roots outside the circle of radius 1 + margin.
bool admissible(const ArmaModel& model, double margin = kRootMargin);

struct FittedArma {
  ArmaModel model;
  /// Differencing applied upstream of the fit.
  int d = 0;
  /// Sample length the model was fitted on (after differencing).
  std::size_t n = 0;
  double loglik = 0.0;
  double bic = 0.0;
  bool admissible = true;
  bool converged = true;
  /// Conditional least-squares AR(1) slope; only set for (p,q) = (1,0).
  std::optional<double> cls_phi;

  [[nodiscard]] int p() const noexcept { return model.p(); }
  [[nodiscard]] int q() const noexcept { return model.q(); }
};

struct FitOptions {
  /// Random simplex restarts in addition to the Hannan-Rissanen start.
  int restarts = 2;
  std::uint64_t seed = 0;
  /// Lower-order optima to embed as extra starting points (zero-padded in PACF space).
  std::vector<ArmaModel> warm_starts;
  double root_margin = kRootMargin;
  /// Count sigma^2 in the BIC penalty (p + q + 2 instead of p + q + 1).
  bool count_sigma2 = false;
  /// Per-start evaluation budget; 0 selects 200 * (p + q) + 300.
  int max_evals = 0;
};

/// Simulate n values after `burn_in` discarded steps (default 10 (p + q + 1)).
std::vector<double> simulate(const ArmaModel& model, std::size_t n, std::uint64_t seed,
                             std::optional<std::size_t> burn_in = std::nullopt);

/// Exact Gaussian log-likelihood of a stationary ARMA model.
double log_likelihood(const ArmaModel& model, std::span<const double> data);

/**
 * Exact maximum-likelihood fit of ARMA(p,q).
 *
 * The intercept and innovation variance are profiled out; the remaining
 * coefficients are searched with Nelder-Mead over a partial-autocorrelation
 * parameterisation, so every iterate is stationary and invertible.
 * Fits that press against the root margin are returned with admissible = false.
 */
FittedArma fit(std::span<const double> data, int p, int q, const FitOptions& options = {});

/// BIC = -2 loglik + ln(tau) (p + q + 1), or p + q + 2 when count_sigma2.
double bic(double loglik, int p, int q, std::size_t tau, bool count_sigma2 = false);
double bic(const FittedArma& fitted, std::size_t tau, bool count_sigma2 = false);

/// Minimum data length accepted by fit(): max(20, 5 (p + q + 1)).
[[nodiscard]] constexpr std::size_t min_fit_length(int p, int q) noexcept {
  const auto k = static_cast<std::size_t>(5 * (p + q + 1));
  return k > 20 ? k : 20;
}

/// Sample variance floor below which data counts as constant.
bool is_degenerate(std::span<const double> data);

}  // namespace tipwatch::arma
