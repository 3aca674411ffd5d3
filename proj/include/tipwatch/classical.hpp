#pragma once

#include <cstddef>
#include <span>

#include "tipwatch/series.hpp"

namespace tipwatch::classical {

/// Population variance (divisor N) of the linearly detrended window.
double window_variance(std::span<const double> window);

/**
 * Lag-k autocorrelation of the linearly detrended window,
 * r_k = sum_{i<N-k} (Y_i - Ybar)(Y_{i+k} - Ybar) / (N sigma^2).
 * Zero-variance windows yield NaN.
 */
double window_autocorr(std::span<const double> window, std::size_t lag);

/// Rolling detrended variance; each value is stamped with its window's final time.
TimeSeries rolling_variance(const TimeSeries& series, std::size_t tau, std::size_t stride);

/// Rolling detrended lag-k autocorrelation; throws LagTooLarge unless k < tau.
/// Zero-variance windows are reported as 0.
TimeSeries rolling_autocorr(const TimeSeries& series, std::size_t tau, std::size_t stride,
                            std::size_t lag);

}  // namespace tipwatch::classical
