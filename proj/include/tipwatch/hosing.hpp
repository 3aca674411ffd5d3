#pragma once

#include <cstdint>
#include <limits>

namespace tipwatch::box {

/// Where a trajectory starts.
struct InitialState {
  enum class Kind { UpperEquilibrium, LowerEquilibrium, Explicit };
  Kind kind = Kind::UpperEquilibrium;
  double SN = 0.0;
  double ST = 0.0;
};

/**
 * Piecewise-linear freshwater forcing plus run settings.
 *
 * H(t) = H0 for t < 0, ramps to Hpert over Trise, holds for Tpert, ramps back
 * over Tfall and stays at H0 afterwards. Tpert may be infinite.
 */
struct HosingScenario {
  double H0 = 0.0;
  double Hpert = 0.0;
  double Trise = 1.0;
  double Tpert = std::numeric_limits<double>::infinity();
  double Tfall = 1.0;
  double duration = 2000.0;
  /// Additive noise amplitude on dS_N/dt and dS_T/dt, salinity / sqrt(yr).
  double noise_amplitude = 0.0;
  std::uint64_t seed = 0;
  double output_dt = 0.2;
  double dt_int = 0.01;
  InitialState initial;

  [[nodiscard]] double rise_rate() const noexcept;
  [[nodiscard]] double fall_rate() const noexcept;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

/// Hosing level at time t (years).
double hosing(double t, const HosingScenario& scenario) noexcept;

}  // namespace tipwatch::box
