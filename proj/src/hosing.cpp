#include "tipwatch/hosing.hpp"

#include <cmath>

#include "tipwatch/error.hpp"

namespace tipwatch::box {

double HosingScenario::rise_rate() const noexcept { return std::abs(Hpert - H0) / Trise; }
double HosingScenario::fall_rate() const noexcept { return std::abs(Hpert - H0) / Tfall; }

void HosingScenario::validate() const {
  if (!(Trise > 0.0)) throw Error(ErrorKind::ConfigError, "Trise must be > 0");
  if (!(Tpert >= 0.0)) throw Error(ErrorKind::ConfigError, "Tpert must be >= 0");
  if (!(Tfall > 0.0)) throw Error(ErrorKind::ConfigError, "Tfall must be > 0");
  if (!(duration >= Trise) || !std::isfinite(duration)) {
    throw Error(ErrorKind::ConfigError, "duration must be finite and >= Trise");
  }
  if (!(output_dt > 0.0)) throw Error(ErrorKind::ConfigError, "output_dt must be > 0");
  if (!(dt_int > 0.0)) throw Error(ErrorKind::ConfigError, "dt_int must be > 0");
  const double ratio = output_dt / dt_int;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio || std::round(ratio) < 1.0) {
    throw Error(ErrorKind::ConfigError, "dt_int must divide output_dt");
  }
  if (!(noise_amplitude >= 0.0)) throw Error(ErrorKind::ConfigError, "noise_amplitude must be >= 0");
}

double hosing(double t, const HosingScenario& s) noexcept {
  // Signed slopes so the ramps stay continuous for Hpert < H0 as well.
  const double rise = (s.Hpert - s.H0) / s.Trise;
  const double fall = (s.Hpert - s.H0) / s.Tfall;
  if (t < 0.0) return s.H0;
  if (t <= s.Trise) return s.H0 + rise * t;
  if (t - s.Trise <= s.Tpert) return s.Hpert;
  const double since = t - s.Trise - s.Tpert;
  if (since <= s.Tfall) return s.Hpert - fall * since;
  return s.H0;
}

}  // namespace tipwatch::box
