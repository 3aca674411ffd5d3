#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tipwatch {

/// Smallest window length accepted by any windowed operation.
inline constexpr std::size_t kMinWindow = 10;

/**
 * Uniformly sampled scalar series.
 *
 * Construction validates dt > 0, a non-empty value vector and finite entries;
 * afterwards the object is immutable.
 */
class TimeSeries {
 public:
  TimeSeries(double t0, double dt, std::vector<double> values, std::string unit_label = {});

  [[nodiscard]] double t0() const noexcept { return t0_; }
  [[nodiscard]] double dt() const noexcept { return dt_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] const std::string& unit_label() const noexcept { return unit_label_; }
  [[nodiscard]] double time_at(std::size_t i) const noexcept {
    return t0_ + dt_ * static_cast<double>(i);
  }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  double t0_;
  double dt_;
  std::vector<double> values_;
  std::string unit_label_;
};

struct Window {
  std::size_t start_index = 0;
  std::size_t length = 0;

  [[nodiscard]] std::size_t end_index() const noexcept { return start_index + length - 1; }
  friend bool operator==(const Window&, const Window&) = default;
};

/// d-th forward difference. Length shrinks by d; d = 0 is the identity.
std::vector<double> difference(std::span<const double> values, std::size_t d);

/// Differenced series; t0 moves to the time of the first retained point.
TimeSeries difference(const TimeSeries& series, std::size_t d);

/// Residuals of an ordinary-least-squares line fit against the sample index.
std::vector<double> detrend_linear(std::span<const double> values);

/// Sliding windows starting at 0 and advancing by `stride`; the last one ends inside the series.
std::vector<Window> windows(std::size_t series_length, std::size_t tau, std::size_t stride);
std::vector<Window> windows(const TimeSeries& series, std::size_t tau, std::size_t stride);

/// Values covered by a window.
[[nodiscard]] inline std::span<const double> window_values(const TimeSeries& series,
                                                           const Window& w) {
  return series.values().subspan(w.start_index, w.length);
}

/// Windows are reported at the time of their final sample.
[[nodiscard]] inline double window_end_time(const TimeSeries& series, const Window& w) {
  return series.time_at(w.end_index());
}

}  // namespace tipwatch
