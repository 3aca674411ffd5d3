#pragma once

#include <cstddef>
#include <optional>
#include <span>

namespace tipwatch::stationarity {

/// Asymptotic 5% critical value of the level-stationarity KPSS statistic.
inline constexpr double kKpssCritical5 = 0.463;

struct KpssResult {
  double statistic = 0.0;
  std::size_t lags = 0;
  double critical_value = kKpssCritical5;
  bool reject_stationarity = false;
};

/// Bartlett truncation lag floor(4 (n / 100)^(1/4)).
std::size_t kpss_auto_lags(std::size_t n);

/**
 * Level-stationarity KPSS test with a Bartlett-kernel long-run variance.
 * `lags` defaults to kpss_auto_lags(n). Needs n >= 12; constant input throws ZeroVariance.
 */
KpssResult kpss(std::span<const double> values, std::optional<std::size_t> lags = std::nullopt,
                double critical_value = kKpssCritical5);

/// Smallest d <= d_max whose d-th difference is not rejected; d_max if all reject.
int choose_d(std::span<const double> values, int d_max);

}  // namespace tipwatch::stationarity
