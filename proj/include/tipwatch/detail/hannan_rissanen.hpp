#pragma once

#include <span>
#include <vector>

namespace tipwatch::arma::detail {

struct HannanRissanen {
  std::vector<double> phi;
  std::vector<double> theta;
};

/**
 * Two-stage regression estimate: a long autoregression supplies innovation
 * proxies, then x_t is regressed on its own lags and the lagged proxies.
 * Input is assumed demeaned. Non-admissible estimates are shrunk toward zero.
 */
HannanRissanen hannan_rissanen(std::span<const double> x, int p, int q);

/// Sample autocovariances with divisor n, lags 0..max_lag.
std::vector<double> sample_autocovariance(std::span<const double> x, std::size_t max_lag);

}  // namespace tipwatch::arma::detail
