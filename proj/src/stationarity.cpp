#include "tipwatch/stationarity.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "tipwatch/error.hpp"
#include "tipwatch/series.hpp"

namespace tipwatch::stationarity {

std::size_t kpss_auto_lags(std::size_t n) {
  return static_cast<std::size_t>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

KpssResult kpss(std::span<const double> values, std::optional<std::size_t> lags,
                double critical_value) {
  const std::size_t n = values.size();
  if (n < 12) throw Error(ErrorKind::TooShort, "KPSS needs at least 12 points");
  const std::size_t l = std::min(lags.value_or(kpss_auto_lags(n)), n - 1);

  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  std::vector<double> e(n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = values[i] - mean;
    scale = std::max(scale, std::abs(e[i]));
  }
  if (scale <= 1e-14 * std::max(1.0, std::abs(mean))) {
    throw Error(ErrorKind::ZeroVariance, "KPSS input is constant");
  }
  // Normalising by the largest deviation leaves the statistic unchanged.
  for (double& v : e) v /= scale;

  double partial = 0.0;
  double eta = 0.0;
  for (double v : e) {
    partial += v;
    eta += partial * partial;
  }
  double lrv = 0.0;
  for (double v : e) lrv += v * v;
  for (std::size_t s = 1; s <= l; ++s) {
    double acc = 0.0;
    for (std::size_t t = s; t < n; ++t) acc += e[t] * e[t - s];
    lrv += 2.0 * (1.0 - static_cast<double>(s) / static_cast<double>(l + 1)) * acc;
  }
  const double nd = static_cast<double>(n);
  lrv /= nd;
  if (!(lrv > 0.0)) throw Error(ErrorKind::ZeroVariance, "KPSS long-run variance is zero");

  KpssResult r;
  r.statistic = eta / (nd * nd) / lrv;
  r.lags = l;
  r.critical_value = critical_value;
  r.reject_stationarity = r.statistic > critical_value;
  return r;
}

int choose_d(std::span<const double> values, int d_max) {
  if (d_max < 0 || d_max > 2) throw Error(ErrorKind::InvalidArgument, "d_max must be 0, 1 or 2");
  if (values.size() < 12 + static_cast<std::size_t>(d_max)) {
    throw Error(ErrorKind::TooShort, "choose_d needs at least 12 + d_max points");
  }
  if (d_max == 0) return 0;
  for (int d = 0; d < d_max; ++d) {
    const auto diffed = difference(values, static_cast<std::size_t>(d));
    if (!kpss(diffed).reject_stationarity) return d;
  }
  return d_max;
}

}  // namespace tipwatch::stationarity
