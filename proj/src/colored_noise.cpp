#include "tipwatch/colored_noise.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "tipwatch/error.hpp"
#include "tipwatch/rng.hpp"

namespace tipwatch::box {

void ColoredNoiseConfig::validate() const {
  auto coef_ok = [](double a) { return a >= 0.0 && a < 1.0; };
  if (!coef_ok(ar_start) || !coef_ok(ar_end)) {
    throw Error(ErrorKind::InvalidRamp, "AR coefficients must lie in [0, 1)");
  }
  if (!(sd_start > 0.0) || !(sd_end > 0.0)) {
    throw Error(ErrorKind::InvalidRamp, "innovation sd must be > 0");
  }
  if (n < 2) throw Error(ErrorKind::InvalidRamp, "n must be >= 2");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidRamp, "dt must be > 0");
  if (substeps < 1) throw Error(ErrorKind::InvalidRamp, "substeps must be >= 1");
  if (5.0 * dt / substeps >= 1.0) {
    throw Error(ErrorKind::InvalidRamp, "Euler sub-step too large for the -5x relaxation");
  }
}

TimeSeries colored_noise_series(const ColoredNoiseConfig& c) {
  c.validate();
  Rng rng(c.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double h = c.dt / c.substeps;
  const double last = static_cast<double>(c.n - 1);
  std::vector<double> x(c.n);
  double xi = 0.0;
  double state = 0.0;
  for (std::size_t k = 0; k < c.n; ++k) {
    x[k] = state;
    const double frac = static_cast<double>(k) / last;
    const double a = c.ar_start + (c.ar_end - c.ar_start) * frac;
    const double s = c.sd_start + (c.sd_end - c.sd_start) * frac;
    xi = a * xi + s * normal(rng);
    for (int j = 0; j < c.substeps; ++j) state += h * (-5.0 * state + xi);
  }
  return TimeSeries(0.0, c.dt, std::move(x), "x");
}

TimeSeries colored_noise_series(std::size_t n, double dt, double ar_start, double ar_end,
                                double sd_start, double sd_end, std::uint64_t seed) {
  ColoredNoiseConfig c;
  c.n = n;
  c.dt = dt;
  c.ar_start = ar_start;
  c.ar_end = ar_end;
  c.sd_start = sd_start;
  c.sd_end = sd_end;
  c.seed = seed;
  return colored_noise_series(c);
}

}  // namespace tipwatch::box
