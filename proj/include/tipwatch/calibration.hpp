#pragma once

#include <optional>
#include <vector>

#include "tipwatch/box_model.hpp"
#include "tipwatch/hosing.hpp"
#include "tipwatch/integrate.hpp"

namespace tipwatch::box {

/**
 * S_N of the unstable middle branch tabulated over an H range. Outside the
 * bistable range the nearest tabulated value is used, so past the fold the
 * threshold is the fold value.
 */
class BranchThreshold {
 public:
  BranchThreshold(double H_lo, double H_hi, const BoxModelParams& params, double step = 0.0025);
  /// Threshold for the H range a scenario sweeps.
  static BranchThreshold for_scenario(const HosingScenario& scenario, const BoxModelParams& params);

  [[nodiscard]] double operator()(double H) const;

 private:
  double H_lo_ = 0.0;
  double step_ = 1.0;
  std::vector<double> sn_;
};

enum class Crossing { Down, Up };

/// First output time at which S_N crosses the threshold in the given direction.
std::optional<double> transition_time(const Trajectory& trajectory, const BranchThreshold& threshold,
                                      Crossing direction = Crossing::Down);

/// True when the mean S_N over the last `years` lies above the unstable branch at the final H.
bool ends_on_upper(const Trajectory& trajectory, const BoxModelParams& params,
                   double years = 100.0);

enum class TransitionTest { CrossDown, CrossUp, EndsLower };

/**
 * Seeds 1..n_seeds with the scenario's noise; counts runs that pass the test.
 * For the crossing tests, `before` keeps only crossings earlier than that time.
 */
int count_transitions(const HosingScenario& scenario, const BoxModelParams& params,
                      TransitionTest test, int n_seeds = 20,
                      std::optional<double> before = std::nullopt);
int count_transitions_serial(const HosingScenario& scenario, const BoxModelParams& params,
                             TransitionTest test, int n_seeds = 20,
                             std::optional<double> before = std::nullopt);

/// 1e-7, 1e-6, ..., 1e-1.
std::vector<double> noise_decade_grid();

/// Largest grid amplitude with no transition in any seed; 0 if none qualifies.
double largest_quiet_amplitude(HosingScenario control, const BoxModelParams& params,
                               TransitionTest test, int n_seeds = 20);
/// Smallest grid amplitude with at least half the seeds transitioning; 0 if none.
double smallest_tipping_amplitude(HosingScenario scenario, const BoxModelParams& params,
                                  TransitionTest test, int n_seeds = 20);

/// H at which the upper and unstable branches merge, bisected in [H_lo, H_hi].
std::optional<double> fold_hosing(const BoxModelParams& params, double H_lo = 0.0,
                                  double H_hi = 1.0, double tol = 1e-6);

/// Time at which the rising ramp reaches the fold; nullopt if it never does.
std::optional<double> fold_time(const HosingScenario& scenario, const BoxModelParams& params);

/**
 * Noise for bifurcation runs: largest grid amplitude for which no seed leaves
 * the upper branch in the constant-H0 control and no seed of the ramp run
 * crosses before the ramp reaches the fold.
 */
double calibrate_noise_bifurcation(const HosingScenario& scenario, const BoxModelParams& params,
                                   int n_seeds = 20);

/// Noise for pulse runs: largest grid amplitude for which the returning companion run never ends lower.
double calibrate_noise_rate(const HosingScenario& returning, const BoxModelParams& params,
                            int n_seeds = 20);

/// Noise for constant-H runs from the lower branch: smallest grid amplitude tipping half the seeds up.
double calibrate_noise_noise_induced(const HosingScenario& scenario, const BoxModelParams& params,
                                     int n_seeds = 20);

/// Constant-H0 control for the bifurcation run (starts on the upper branch).
HosingScenario constant_control(const HosingScenario& scenario);

/**
 * T_fall at which the deterministic pulse run flips from returning to tipping,
 * bisected in [lo, hi]; nullopt if both ends give the same outcome.
 */
std::optional<double> critical_fall_time(HosingScenario scenario, const BoxModelParams& params,
                                         double lo = 100.0, double hi = 600.0, double tol = 0.5);

/**
 * volume_scale in [lo, hi] at which the deterministic critical T_fall equals
 * target_fall; bisection on the outcome at T_fall = target_fall.
 */
std::optional<double> calibrate_volume_scale(HosingScenario scenario, BoxModelParams params,
                                             double target_fall = 300.0, double lo = 1e10,
                                             double hi = 4e10, double rel_tol = 1e-3);

}  // namespace tipwatch::box
