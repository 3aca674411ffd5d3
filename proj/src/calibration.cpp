#include "tipwatch/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tipwatch/equilibria.hpp"
#include "tipwatch/error.hpp"
#include "tipwatch/rng.hpp"

namespace tipwatch::box {

BranchThreshold::BranchThreshold(double H_lo, double H_hi, const BoxModelParams& params,
                                 double step)
    : H_lo_(H_lo), step_(step) {
  if (!(step > 0.0) || !(H_hi >= H_lo)) {
    throw Error(ErrorKind::InvalidArgument, "bad threshold range");
  }
  const auto n = static_cast<std::size_t>(std::ceil((H_hi - H_lo) / step)) + 1;
  std::vector<std::optional<double>> raw(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      raw[i] = unstable_branch_SN(H_lo + step * static_cast<double>(i), params);
    } catch (const Error&) {
    }
  }
  // Gaps take the nearest tabulated value; with no bistable range at all the
  // flow-reversal salinity is used.
  const double reversal =
      params.SS - params.alpha * (params.TS - params.T0) * 100.0 / params.beta;
  sn_.assign(n, reversal);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = n;
    std::size_t best_dist = n + 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (!raw[j]) continue;
      const std::size_t d = j > i ? j - i : i - j;
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best < n) sn_[i] = *raw[best];
  }
}

BranchThreshold BranchThreshold::for_scenario(const HosingScenario& s, const BoxModelParams& p) {
  return BranchThreshold(std::min(s.H0, s.Hpert), std::max(s.H0, s.Hpert), p);
}

double BranchThreshold::operator()(double H) const {
  const double x = (H - H_lo_) / step_;
  if (x <= 0.0) return sn_.front();
  const auto i = static_cast<std::size_t>(x);
  if (i + 1 >= sn_.size()) return sn_.back();
  const double w = x - static_cast<double>(i);
  return (1.0 - w) * sn_[i] + w * sn_[i + 1];
}

std::optional<double> transition_time(const Trajectory& tr, const BranchThreshold& thr,
                                      Crossing dir) {
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double level = thr(tr.H[i]);
    if (dir == Crossing::Down ? tr.SN[i] < level : tr.SN[i] > level) return tr.t[i];
  }
  return std::nullopt;
}

bool ends_on_upper(const Trajectory& tr, const BoxModelParams& params, double years) {
  if (tr.size() == 0) throw Error(ErrorKind::TooShort, "empty trajectory");
  const auto count = std::max<std::size_t>(
      1, std::min(tr.size(), static_cast<std::size_t>(std::llround(years / tr.output_dt))));
  const double mean =
      std::accumulate(tr.SN.end() - static_cast<std::ptrdiff_t>(count), tr.SN.end(), 0.0) /
      static_cast<double>(count);
  const auto pts = find_equilibria(tr.H.back(), params);
  if (pts.size() >= 3) return mean > pts[1].SN;
  return pts.front().branch == BranchLabel::Upper;
}

namespace {

bool passes(const Trajectory& tr, const BoxModelParams& params, const BranchThreshold& thr,
            TransitionTest test, std::optional<double> before) {
  auto early = [&](std::optional<double> t) { return t && (!before || *t < *before); };
  switch (test) {
    case TransitionTest::CrossDown: return early(transition_time(tr, thr, Crossing::Down));
    case TransitionTest::CrossUp: return early(transition_time(tr, thr, Crossing::Up));
    case TransitionTest::EndsLower: return !ends_on_upper(tr, params);
  }
  return false;
}

}  // namespace

int count_transitions(const HosingScenario& scenario, const BoxModelParams& params,
                      TransitionTest test, int n_seeds, std::optional<double> before) {
  const BranchThreshold thr = BranchThreshold::for_scenario(scenario, params);
  const BoxState start = initial_state(scenario, params);
  int hits = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : hits)
  for (int k = 0; k < n_seeds; ++k) {
    HosingScenario s = scenario;
    s.seed = static_cast<std::uint64_t>(k + 1);
    bool hit = true;
    try {
      hit = passes(integrate_from(start, s, params), params, thr, test, before);
    } catch (const Error&) {
    }
    hits += hit ? 1 : 0;
  }
  return hits;
}

int count_transitions_serial(const HosingScenario& scenario, const BoxModelParams& params,
                             TransitionTest test, int n_seeds, std::optional<double> before) {
  const BranchThreshold thr = BranchThreshold::for_scenario(scenario, params);
  const BoxState start = initial_state(scenario, params);
  int hits = 0;
  for (int k = 0; k < n_seeds; ++k) {
    HosingScenario s = scenario;
    s.seed = static_cast<std::uint64_t>(k + 1);
    bool hit = true;
    try {
      hit = passes(integrate_from(start, s, params), params, thr, test, before);
    } catch (const Error&) {
    }
    hits += hit ? 1 : 0;
  }
  return hits;
}

std::vector<double> noise_decade_grid() {
  std::vector<double> g;
  for (int e = -7; e <= -1; ++e) g.push_back(std::pow(10.0, e));
  return g;
}

double largest_quiet_amplitude(HosingScenario control, const BoxModelParams& params,
                               TransitionTest test, int n_seeds) {
  auto grid = noise_decade_grid();
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    control.noise_amplitude = *it;
    if (count_transitions(control, params, test, n_seeds) == 0) return *it;
  }
  return 0.0;
}

double smallest_tipping_amplitude(HosingScenario scenario, const BoxModelParams& params,
                                  TransitionTest test, int n_seeds) {
  for (double a : noise_decade_grid()) {
    scenario.noise_amplitude = a;
    if (2 * count_transitions(scenario, params, test, n_seeds) >= n_seeds) return a;
  }
  return 0.0;
}

std::optional<double> fold_hosing(const BoxModelParams& params, double H_lo, double H_hi,
                                  double tol) {
  auto bistable = [&](double H) {
    try {
      return find_equilibria(H, params).size() >= 3;
    } catch (const Error&) {
      return false;
    }
  };
  if (!bistable(H_lo) || bistable(H_hi)) return std::nullopt;
  while (H_hi - H_lo > tol) {
    const double mid = 0.5 * (H_lo + H_hi);
    (bistable(mid) ? H_lo : H_hi) = mid;
  }
  return 0.5 * (H_lo + H_hi);
}

std::optional<double> fold_time(const HosingScenario& s, const BoxModelParams& params) {
  if (!(s.Hpert > s.H0)) return std::nullopt;
  const auto fold = fold_hosing(params, s.H0, s.Hpert);
  if (!fold) return std::nullopt;
  return s.Trise * (*fold - s.H0) / (s.Hpert - s.H0);
}

double calibrate_noise_bifurcation(const HosingScenario& scenario, const BoxModelParams& params,
                                   int n_seeds) {
  const auto limit = fold_time(scenario, params);
  HosingScenario control = constant_control(scenario);
  HosingScenario ramp = scenario;
  auto grid = noise_decade_grid();
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    control.noise_amplitude = *it;
    ramp.noise_amplitude = *it;
    if (count_transitions(control, params, TransitionTest::CrossDown, n_seeds) != 0) continue;
    if (limit && count_transitions(ramp, params, TransitionTest::CrossDown, n_seeds, limit) != 0) {
      continue;
    }
    return *it;
  }
  return 0.0;
}

double calibrate_noise_rate(const HosingScenario& returning, const BoxModelParams& params,
                            int n_seeds) {
  return largest_quiet_amplitude(returning, params, TransitionTest::EndsLower, n_seeds);
}

double calibrate_noise_noise_induced(const HosingScenario& scenario, const BoxModelParams& params,
                                     int n_seeds) {
  return smallest_tipping_amplitude(scenario, params, TransitionTest::CrossUp, n_seeds);
}

HosingScenario constant_control(const HosingScenario& scenario) {
  HosingScenario c = scenario;
  c.Hpert = c.H0;
  c.Tpert = std::numeric_limits<double>::infinity();
  c.initial.kind = InitialState::Kind::UpperEquilibrium;
  return c;
}

namespace {

bool tips(HosingScenario s, const BoxModelParams& params) {
  s.noise_amplitude = 0.0;
  return !ends_on_upper(integrate(s, params), params);
}

}  // namespace

std::optional<double> critical_fall_time(HosingScenario s, const BoxModelParams& params,
                                         double lo, double hi, double tol) {
  s.Tfall = lo;
  const bool tip_lo = tips(s, params);
  s.Tfall = hi;
  const bool tip_hi = tips(s, params);
  if (tip_lo == tip_hi) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    s.Tfall = mid;
    (tips(s, params) == tip_lo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::optional<double> calibrate_volume_scale(HosingScenario s, BoxModelParams params,
                                             double target_fall, double lo, double hi,
                                             double rel_tol) {
  s.Tfall = target_fall;
  params.volume_scale = lo;
  const bool tip_lo = tips(s, params);
  params.volume_scale = hi;
  const bool tip_hi = tips(s, params);
  if (tip_lo == tip_hi) return std::nullopt;
  while ((hi - lo) > rel_tol * lo) {
    const double mid = 0.5 * (lo + hi);
    params.volume_scale = mid;
    (tips(s, params) == tip_lo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tipwatch::box
