#include "tipwatch/arma.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "tipwatch/detail/hannan_rissanen.hpp"
#include "tipwatch/detail/simplex.hpp"
#include "tipwatch/detail/state_space.hpp"
#include "tipwatch/detail/transforms.hpp"
#include "tipwatch/error.hpp"
#include "tipwatch/rng.hpp"

namespace tipwatch::arma {
namespace {

// Smallest root modulus of 1 - a_1 z - ... - a_k z^k, via the reciprocal-root companion matrix.
double min_root_modulus(std::span<const double> a) {
  std::size_t k = a.size();
  while (k > 0 && a[k - 1] == 0.0) --k;
  if (k == 0) return std::numeric_limits<double>::infinity();
  if (k == 1) return 1.0 / std::abs(a[0]);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) c(0, static_cast<Eigen::Index>(j)) = a[j];
  for (std::size_t i = 1; i < k; ++i) c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  const auto eig = c.eigenvalues();
  double rmax = 0.0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) rmax = std::max(rmax, std::abs(eig(i)));
  return rmax > 0.0 ? 1.0 / rmax : std::numeric_limits<double>::infinity();
}

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double biased_variance(std::span<const double> x, double mean) {
  double s = 0.0;
  for (double v : x) s += (v - mean) * (v - mean);
  return s / static_cast<double>(x.size());
}

// Conditional least squares slope of x_t on (1, x_{t-1}).
double cls_ar1(std::span<const double> x) {
  const std::size_t n = x.size();
  double my = 0.0, mx = 0.0;
  for (std::size_t t = 1; t < n; ++t) {
    my += x[t];
    mx += x[t - 1];
  }
  my /= static_cast<double>(n - 1);
  mx /= static_cast<double>(n - 1);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t t = 1; t < n; ++t) {
    sxy += (x[t] - my) * (x[t - 1] - mx);
    sxx += (x[t - 1] - mx) * (x[t - 1] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

std::vector<double> padded(const std::vector<double>& v, int len) {
  std::vector<double> out(static_cast<std::size_t>(len), 0.0);
  std::copy_n(v.begin(), std::min<std::size_t>(v.size(), out.size()), out.begin());
  return out;
}

}  // namespace

double ArmaModel::mean() const noexcept {
  return nu / (1.0 - std::accumulate(phi.begin(), phi.end(), 0.0));
}

double min_root_modulus_ar(std::span<const double> phi) { return min_root_modulus(phi); }

double min_root_modulus_ma(std::span<const double> theta) {
  std::vector<double> neg(theta.begin(), theta.end());
  for (double& v : neg) v = -v;
  return min_root_modulus(neg);
}

bool admissible(const ArmaModel& model, double margin) {
  return min_root_modulus_ar(model.phi) > 1.0 + margin &&
         min_root_modulus_ma(model.theta) > 1.0 + margin;
}

bool is_degenerate(std::span<const double> data) {
  if (data.size() < 2) return true;
  const double m = mean_of(data);
  return biased_variance(data, m) < 1e-12 * m * m + 1e-300;
}

std::vector<double> simulate(const ArmaModel& model, std::size_t n, std::uint64_t seed,
                             std::optional<std::size_t> burn_in) {
  if (!admissible(model)) throw Error(ErrorKind::InadmissibleModel, "cannot simulate model");
  if (!(model.sigma2 > 0.0)) throw Error(ErrorKind::InvalidArgument, "sigma2 must be positive");
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  const std::size_t p = model.phi.size();
  const std::size_t q = model.theta.size();
  const std::size_t burn = burn_in.value_or(10 * (p + q + 1));
  const std::size_t total = n + burn;

  Rng rng = make_rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(model.sigma2));
  const double mu = model.mean();
  // Pre-sample values sit at the mean with zero past shocks.
  std::vector<double> x(total + p, mu);
  std::vector<double> w(total + q, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    const double wt = noise(rng);
    double v = model.nu + wt;
    for (std::size_t i = 0; i < p; ++i) v += model.phi[i] * x[p + t - 1 - i];
    for (std::size_t j = 0; j < q; ++j) v += model.theta[j] * w[q + t - 1 - j];
    x[p + t] = v;
    w[q + t] = wt;
  }
  return {x.begin() + static_cast<long>(p + burn), x.end()};
}

double log_likelihood(const ArmaModel& model, std::span<const double> data) {
  if (!admissible(model)) throw Error(ErrorKind::InadmissibleModel, "likelihood of inadmissible model");
  if (data.size() < static_cast<std::size_t>(model.p() + model.q() + 1)) {
    throw Error(ErrorKind::TooShort, "likelihood needs at least p + q + 1 points");
  }
  const detail::ArmaFilter filter(model.phi, model.theta);
  if (!filter.valid()) throw Error(ErrorKind::InadmissibleModel, "no stationary covariance");
  const auto sums = filter.run(data);
  const double n = static_cast<double>(sums.n);
  return -0.5 * n * std::log(2.0 * std::numbers::pi * model.sigma2) - 0.5 * sums.sum_log_f -
         sums.rss(model.mean()) / (2.0 * model.sigma2);
}

double bic(double loglik, int p, int q, std::size_t tau, bool count_sigma2) {
  const int k = p + q + (count_sigma2 ? 2 : 1);
  return -2.0 * loglik + std::log(static_cast<double>(tau)) * static_cast<double>(k);
}

double bic(const FittedArma& fitted, std::size_t tau, bool count_sigma2) {
  return bic(fitted.loglik, fitted.p(), fitted.q(), tau, count_sigma2);
}

FittedArma fit(std::span<const double> data, int p, int q, const FitOptions& options) {
  if (p < 0 || q < 0) throw Error(ErrorKind::InvalidArgument, "orders must be non-negative");
  const std::size_t n = data.size();
  if (n < min_fit_length(p, q)) {
    throw Error(ErrorKind::TooShort, "ARMA(" + std::to_string(p) + "," + std::to_string(q) +
                                         ") needs at least " +
                                         std::to_string(min_fit_length(p, q)) + " points");
  }
  if (is_degenerate(data)) throw Error(ErrorKind::DegenerateInput, "data is (near-)constant");

  const double center = mean_of(data);
  const double var = biased_variance(data, center);
  const double scale = std::sqrt(var);

  FittedArma out;
  out.n = n;
  if (p == 0 && q == 0) {
    out.model.nu = center;
    out.model.sigma2 = var;
    out.loglik = -0.5 * static_cast<double>(n) * (std::log(2.0 * std::numbers::pi * var) + 1.0);
    out.bic = bic(out.loglik, 0, 0, n, options.count_sigma2);
    return out;
  }

  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = (data[i] - center) / scale;

  std::vector<double> phi, theta;
  auto objective = [&](std::span<const double> u) {
    detail::unpack(u, p, q, phi, theta);
    const detail::ArmaFilter filter(phi, theta);
    if (!filter.valid()) return std::numeric_limits<double>::infinity();
    return -detail::concentrated_loglik(filter.run(z));
  };

  const double bound = detail::kUnconstrainedBound;
  // Deterministic candidates: Hannan-Rissanen and any embedded lower-order fits.
  // Only the best of them seeds a simplex run.
  std::vector<double> seed_point;
  {
    const auto hr = detail::hannan_rissanen(z, p, q);
    auto u = detail::pack(hr.phi, hr.theta, bound);
    seed_point = u ? *u : std::vector<double>(static_cast<std::size_t>(p + q), 0.0);
  }
  double seed_value = objective(seed_point);
  for (const auto& warm : options.warm_starts) {
    if (warm.p() > p || warm.q() > q) continue;
    if (auto u = detail::pack(padded(warm.phi, p), padded(warm.theta, q), bound)) {
      const double v = objective(*u);
      if (v < seed_value) {
        seed_value = v;
        seed_point = std::move(*u);
      }
    }
  }
  std::vector<std::vector<double>> starts{seed_point};
  Rng rng = make_rng(options.seed, {static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(q)});
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  for (int k = 0; k < options.restarts; ++k) {
    std::vector<double> u(static_cast<std::size_t>(p + q));
    for (double& v : u) v = unif(rng);
    starts.push_back(std::move(u));
  }

  ::tipwatch::detail::SimplexOptions sopt;
  sopt.max_evals = options.max_evals > 0 ? options.max_evals : 200 * (p + q) + 300;
  sopt.bound = bound;
  sopt.ftol = 1e-6;
  sopt.xtol = 1e-2;

  ::tipwatch::detail::SimplexResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    auto r = ::tipwatch::detail::nelder_mead(objective, s, sopt);
    if (r.value < best.value) best = std::move(r);
  }
  // Restart from the incumbent to shake off simplex collapse.
  sopt.initial_step = 0.05;
  auto polished = ::tipwatch::detail::nelder_mead(objective, best.x, sopt);
  if (polished.value <= best.value) best = std::move(polished);
  else best.converged = polished.converged;

  detail::unpack(best.x, p, q, phi, theta);
  const detail::ArmaFilter filter(phi, theta);
  const auto sums = filter.run(z);
  const double mu_z = sums.mu_hat();
  const double sigma2_z = sums.rss(mu_z) / static_cast<double>(n);

  out.model.phi = phi;
  out.model.theta = theta;
  const double mu = center + scale * mu_z;
  out.model.nu = mu * (1.0 - std::accumulate(phi.begin(), phi.end(), 0.0));
  out.model.sigma2 = sigma2_z * var;
  out.loglik = detail::concentrated_loglik(sums) - static_cast<double>(n) * std::log(scale);
  out.bic = bic(out.loglik, p, q, n, options.count_sigma2);
  out.converged = best.converged && std::isfinite(out.loglik);
  out.admissible = admissible(out.model, options.root_margin);
  if (p == 1 && q == 0) {
    out.cls_phi = cls_ar1(data);
    if (std::abs(*out.cls_phi) >= 1.0 - options.root_margin) out.admissible = false;
  }
  return out;
}

}  // namespace tipwatch::arma
