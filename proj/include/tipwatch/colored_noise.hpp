#pragma once

#include <cstdint>
#include <cstddef>

#include "tipwatch/series.hpp"

namespace tipwatch::box {

/// Ramp settings for dx/dt = -5x + xi(t) driven by a ramped AR(1) sequence.
struct ColoredNoiseConfig {
  std::size_t n = 10000;
  double dt = 0.5;
  double ar_start = 0.0;
  double ar_end = 0.95;
  double sd_start = 1.0;
  double sd_end = 10.0;
  std::uint64_t seed = 1;
  /// Euler sub-steps per output interval.
  int substeps = 50;

  /// Throws InvalidRamp on coefficients outside [0,1) or non-positive sd.
  void validate() const;
};

/**
 * xi_k = a_k xi_{k-1} + s_k eps_k with a_k, s_k linear in k; xi is held over
 * each output interval while x is stepped with dt / substeps.
 */
TimeSeries colored_noise_series(const ColoredNoiseConfig& config);

TimeSeries colored_noise_series(std::size_t n, double dt, double ar_start, double ar_end,
                                double sd_start, double sd_end, std::uint64_t seed);

}  // namespace tipwatch::box
