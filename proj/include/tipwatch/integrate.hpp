#pragma once

#include <string_view>
#include <vector>

#include "tipwatch/box_model.hpp"
#include "tipwatch/hosing.hpp"
#include "tipwatch/series.hpp"

namespace tipwatch::box {

/// Sampled trajectory; every column has the same length and shares t.
struct Trajectory {
  double output_dt = 0.2;
  std::vector<double> t;
  std::vector<double> SN;
  std::vector<double> ST;
  std::vector<double> SIP;
  std::vector<double> Gamma;
  std::vector<double> H;

  [[nodiscard]] std::size_t size() const noexcept { return t.size(); }

  /// Column as a TimeSeries; name is one of S_N, S_T, S_IP, Gamma, H.
  [[nodiscard]] TimeSeries series(std::string_view name) const;

  /// Largest |salt(t) - total_salt| / total_salt over the run.
  [[nodiscard]] double max_salt_residual(const BoxModelParams& params) const;
};

/// Resolves scenario.initial to a concrete state (Newton for equilibrium starts).
BoxState initial_state(const HosingScenario& scenario, const BoxModelParams& params);

/**
 * Euler-Maruyama integration with step dt_int; output every output_dt.
 * Throws NonFiniteState naming the failing time.
 */
Trajectory integrate(const HosingScenario& scenario, const BoxModelParams& params);

/// Same as integrate but starting from an explicit state.
Trajectory integrate_from(const BoxState& start, const HosingScenario& scenario,
                          const BoxModelParams& params);

/// CSV with columns t, S_N, S_T, S_IP, Gamma, H.
void write_trajectory(const Trajectory& trajectory, std::ostream& out);

}  // namespace tipwatch::box
