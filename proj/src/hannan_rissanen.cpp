#include "tipwatch/detail/hannan_rissanen.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "tipwatch/arma.hpp"

namespace tipwatch::arma::detail {

std::vector<double> sample_autocovariance(std::span<const double> x, std::size_t max_lag) {
  const std::size_t n = x.size();
  std::vector<double> acov(max_lag + 1, 0.0);
  for (std::size_t k = 0; k <= max_lag && k < n; ++k) {
    double s = 0.0;
    for (std::size_t t = k; t < n; ++t) s += x[t] * x[t - k];
    acov[k] = s / static_cast<double>(n);
  }
  return acov;
}

namespace {

// Yule-Walker AR(m) via Levinson recursion; always stationary for a positive-definite acov.
std::vector<double> yule_walker(std::span<const double> x, std::size_t m) {
  const auto acov = sample_autocovariance(x, m);
  std::vector<double> a(m, 0.0), prev(m, 0.0);
  double v = acov[0];
  if (!(v > 0.0)) return a;
  for (std::size_t k = 0; k < m; ++k) {
    double num = acov[k + 1];
    for (std::size_t j = 0; j < k; ++j) num -= a[j] * acov[k - j];
    const double r = num / v;
    std::copy(a.begin(), a.begin() + static_cast<long>(k), prev.begin());
    a[k] = r;
    for (std::size_t j = 0; j < k; ++j) a[j] = prev[j] - r * prev[k - 1 - j];
    v *= (1.0 - r * r);
    if (!(v > 0.0)) break;
  }
  return a;
}

void shrink_until_admissible(std::vector<double>& c, bool ma) {
  for (int it = 0; it < 60; ++it) {
    const double m = ma ? min_root_modulus_ma(c) : min_root_modulus_ar(c);
    if (m > 1.0 + 0.05) return;
    for (double& v : c) v *= 0.9;
  }
  std::fill(c.begin(), c.end(), 0.0);
}

}  // namespace

HannanRissanen hannan_rissanen(std::span<const double> x, int p, int q) {
  HannanRissanen out;
  out.phi.assign(static_cast<std::size_t>(p), 0.0);
  out.theta.assign(static_cast<std::size_t>(q), 0.0);
  const std::size_t n = x.size();
  if (p + q == 0) return out;

  if (q == 0) {
    out.phi = yule_walker(x, static_cast<std::size_t>(p));
    shrink_until_admissible(out.phi, false);
    return out;
  }

  // Stage 1: long autoregression for innovation proxies.
  const auto log_order = static_cast<std::size_t>(std::floor(10.0 * std::log10(static_cast<double>(n))));
  std::size_t m = std::max<std::size_t>(static_cast<std::size_t>(p + q + 1), log_order);
  m = std::min(m, n / 4);
  const auto a = yule_walker(x, m);
  std::vector<double> e(n, 0.0);
  for (std::size_t t = m; t < n; ++t) {
    double pred = 0.0;
    for (std::size_t j = 0; j < m; ++j) pred += a[j] * x[t - 1 - j];
    e[t] = x[t] - pred;
  }

  // Stage 2: regress on own lags and lagged proxies.
  const std::size_t start = m + static_cast<std::size_t>(std::max(p, q));
  if (start + static_cast<std::size_t>(p + q) + 2 >= n) return out;
  const auto rows = static_cast<Eigen::Index>(n - start);
  Eigen::MatrixXd design(rows, p + q);
  Eigen::VectorXd target(rows);
  for (std::size_t t = start; t < n; ++t) {
    const auto row = static_cast<Eigen::Index>(t - start);
    for (int i = 0; i < p; ++i) design(row, i) = x[t - 1 - static_cast<std::size_t>(i)];
    for (int j = 0; j < q; ++j) design(row, p + j) = e[t - 1 - static_cast<std::size_t>(j)];
    target(row) = x[t];
  }
  const Eigen::VectorXd beta = design.colPivHouseholderQr().solve(target);
  for (int i = 0; i < p; ++i) out.phi[i] = std::isfinite(beta(i)) ? beta(i) : 0.0;
  for (int j = 0; j < q; ++j) out.theta[j] = std::isfinite(beta(p + j)) ? beta(p + j) : 0.0;
  shrink_until_admissible(out.phi, false);
  shrink_until_admissible(out.theta, true);
  return out;
}

}  // namespace tipwatch::arma::detail
