#include "tipwatch/classical.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "tipwatch/error.hpp"

namespace tipwatch::classical {

double window_variance(std::span<const double> window) {
  const auto y = detrend_linear(window);
  const double n = static_cast<double>(y.size());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double s = 0.0;
  for (double v : y) s += (v - mean) * (v - mean);
  return s / n;
}

double window_autocorr(std::span<const double> window, std::size_t lag) {
  if (lag >= window.size()) throw Error(ErrorKind::LagTooLarge, "lag must be < window length");
  const auto y = detrend_linear(window);
  const std::size_t n = y.size();
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double s0 = 0.0;
  for (double v : y) s0 += (v - mean) * (v - mean);
  if (!(s0 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  double sk = 0.0;
  for (std::size_t i = 0; i + lag < n; ++i) sk += (y[i] - mean) * (y[i + lag] - mean);
  // N sigma^2 with sigma^2 = s0 / N
  return sk / s0;
}

TimeSeries rolling_variance(const TimeSeries& series, std::size_t tau, std::size_t stride) {
  const auto ws = windows(series, tau, stride);
  std::vector<double> out(ws.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < ws.size(); ++i) out[i] = window_variance(window_values(series, ws[i]));
  return TimeSeries(window_end_time(series, ws.front()), series.dt() * static_cast<double>(stride),
                    std::move(out), series.unit_label());
}

TimeSeries rolling_autocorr(const TimeSeries& series, std::size_t tau, std::size_t stride,
                            std::size_t lag) {
  if (lag >= tau) throw Error(ErrorKind::LagTooLarge, "lag must be < window length");
  const auto ws = windows(series, tau, stride);
  std::vector<double> out(ws.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < ws.size(); ++i) {
    out[i] = window_autocorr(window_values(series, ws[i]), lag);
  }
  // A NaN here would be rejected by TimeSeries; map zero-variance windows to 0.
  for (double& v : out)
    if (std::isnan(v)) v = 0.0;
  return TimeSeries(window_end_time(series, ws.front()), series.dt() * static_cast<double>(stride),
                    std::move(out), "");
}

}  // namespace tipwatch::classical
