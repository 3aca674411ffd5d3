#include "tipwatch/series.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "tipwatch/error.hpp"

namespace tipwatch {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::NonUniformSampling: return "NonUniformSampling";
    case ErrorKind::NonNumericEntry: return "NonNumericEntry";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::WindowTooLong: return "WindowTooLong";
    case ErrorKind::LagTooLarge: return "LagTooLarge";
    case ErrorKind::InadmissibleModel: return "InadmissibleModel";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::AllCandidatesFailed: return "AllCandidatesFailed";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidRamp: return "InvalidRamp";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

TimeSeries::TimeSeries(double t0, double dt, std::vector<double> values, std::string unit_label)
    : t0_(t0), dt_(dt), values_(std::move(values)), unit_label_(std::move(unit_label)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw Error(ErrorKind::InvalidArgument, "time step must be positive and finite");
  }
  if (values_.empty()) throw Error(ErrorKind::TooShort, "time series has no values");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      std::ostringstream msg;
      msg << "non-finite value at index " << i;
      throw Error(ErrorKind::NonNumericEntry, msg.str());
    }
  }
}

std::vector<double> difference(std::span<const double> values, std::size_t d) {
  if (values.empty() || d > values.size() - 1) {
    throw Error(ErrorKind::TooShort, "differencing order exceeds series length - 1");
  }
  std::vector<double> out(values.begin(), values.end());
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = out[i + 1] - out[i];
    out.pop_back();
  }
  return out;
}

TimeSeries difference(const TimeSeries& series, std::size_t d) {
  auto diffed = difference(series.values(), d);
  return TimeSeries(series.time_at(d), series.dt(), std::move(diffed), series.unit_label());
}

std::vector<double> detrend_linear(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) throw Error(ErrorKind::TooShort, "linear detrending needs at least 2 points");

  // Centered abscissa keeps the normal equations diagonal.
  const double xbar = 0.5 * static_cast<double>(n - 1);
  const double ybar = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = static_cast<double>(i) - xbar;
    sxy += dx * (values[i] - ybar);
    sxx += dx * dx;
  }
  const double slope = sxy / sxx;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = (values[i] - ybar) - slope * (static_cast<double>(i) - xbar);
  }
  return out;
}

std::vector<Window> windows(std::size_t series_length, std::size_t tau, std::size_t stride) {
  if (stride == 0) throw Error(ErrorKind::InvalidArgument, "stride must be >= 1");
  if (tau < kMinWindow) {
    throw Error(ErrorKind::InvalidArgument,
                "window length must be >= " + std::to_string(kMinWindow));
  }
  if (tau > series_length) {
    throw Error(ErrorKind::WindowTooLong, "window length " + std::to_string(tau) +
                                              " exceeds series length " +
                                              std::to_string(series_length));
  }
  std::vector<Window> out;
  out.reserve((series_length - tau) / stride + 1);
  for (std::size_t start = 0; start + tau <= series_length; start += stride) {
    out.push_back({start, tau});
  }
  return out;
}

std::vector<Window> windows(const TimeSeries& series, std::size_t tau, std::size_t stride) {
  return windows(series.size(), tau, stride);
}

}  // namespace tipwatch
