#include "tipwatch/detail/state_space.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <type_traits>
#include <cmath>
#include <limits>
#include <numbers>

namespace tipwatch::arma::detail {
namespace {

constexpr double kSteadyTol = 1e-12;

}  // namespace

ArmaFilter::ArmaFilter(std::span<const double> phi, std::span<const double> theta)
    : r_(std::max<int>(static_cast<int>(phi.size()), static_cast<int>(theta.size()) + 1)),
      phi_(r_, 0.0),
      rvec_(r_, 0.0),
      p0_(static_cast<std::size_t>(r_ * r_), 0.0) {
  std::copy(phi.begin(), phi.end(), phi_.begin());
  rvec_[0] = 1.0;
  std::copy(theta.begin(), theta.end(), rvec_.begin() + 1);

  if (r_ == 1) {
    const double denom = 1.0 - phi_[0] * phi_[0];
    valid_ = denom > 0.0;
    p0_[0] = valid_ ? 1.0 / denom : 0.0;
    return;
  }

  // Stationary covariance P = T P T' + R R', solved over the r(r+1)/2 entries
  // of the upper triangle. T is the companion matrix: T(i,0) = phi_i, T(i,i+1) = 1.
  const int m = r_ * (r_ + 1) / 2;
  auto idx = [r = r_](int i, int j) {
    if (i > j) std::swap(i, j);
    return i * r - i * (i - 1) / 2 + (j - i);
  };
  auto t_entries = [this](int i, std::array<std::pair<int, double>, 2>& out) {
    int n = 0;
    if (phi_[i] != 0.0) out[n++] = {0, phi_[i]};
    if (i + 1 < r_) out[n++] = {i + 1, 1.0};
    return n;
  };
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
  Eigen::VectorXd rhs(m);
  std::array<std::pair<int, double>, 2> ti{}, tj{};
  for (int i = 0; i < r_; ++i) {
    const int ni = t_entries(i, ti);
    for (int j = i; j < r_; ++j) {
      const int row = idx(i, j);
      rhs(row) = rvec_[i] * rvec_[j];
      const int nj = t_entries(j, tj);
      for (int x = 0; x < ni; ++x)
        for (int y = 0; y < nj; ++y)
          a(row, idx(ti[x].first, tj[y].first)) -= ti[x].second * tj[y].second;
    }
  }
  const Eigen::VectorXd sol = a.partialPivLu().solve(rhs);
  for (int i = 0; i < r_; ++i)
    for (int j = i; j < r_; ++j) {
      const double v = sol(idx(i, j));
      if (!std::isfinite(v)) {
        valid_ = false;
        return;
      }
      p0_[i * r_ + j] = p0_[j * r_ + i] = v;
    }
  valid_ = p0_[0] > 0.0;
}

namespace {

// One filter pass with the state dimension fixed at compile time (R > 0) or
// taken from r at run time (R == 0).
template <int R>
FilterSums run_pass(int r_dyn, const double* phi, const double* rvec, const double* p0,
                    std::span<const double> y) {
  constexpr int kMax = R > 0 ? R : 1;
  const int r = R > 0 ? R : r_dyn;
  using Vec = std::conditional_t<(R > 0), std::array<double, kMax>, std::vector<double>>;
  using Mat = std::conditional_t<(R > 0), std::array<double, kMax * kMax>, std::vector<double>>;
  Vec ay{}, a1{}, k{}, c{}, by{}, b1{};
  Mat p{};
  if constexpr (R == 0) {
    for (auto* v : {&ay, &a1, &k, &c, &by, &b1}) v->assign(static_cast<std::size_t>(r), 0.0);
    p.assign(static_cast<std::size_t>(r * r), 0.0);
  }
  std::copy(p0, p0 + r * r, p.begin());

  FilterSums sums;
  sums.n = y.size();
  bool steady = false;
  for (double yt : y) {
    const double f = p[0];
    const double vy = yt - ay[0];
    const double v1 = 1.0 - a1[0];
    const double inv_f = 1.0 / f;
    if (!steady) sums.sum_log_f += std::log(f);
    sums.syy += vy * vy * inv_f;
    sums.sy1 += vy * v1 * inv_f;
    sums.s11 += v1 * v1 * inv_f;

    for (int i = 0; i < r; ++i) {
      c[i] = p[i * r];
      k[i] = c[i] * inv_f;
      by[i] = ay[i] + k[i] * vy;
      b1[i] = a1[i] + k[i] * v1;
    }
    // a <- T b
    for (int i = 0; i + 1 < r; ++i) {
      ay[i] = phi[i] * by[0] + by[i + 1];
      a1[i] = phi[i] * b1[0] + b1[i + 1];
    }
    ay[r - 1] = phi[r - 1] * by[0];
    a1[r - 1] = phi[r - 1] * b1[0];
    if (steady) continue;

    // The updated covariance has a zero first row, so T P T' only shifts it:
    // P(i,j) <- P(i+1,j+1) - k(i+1) c(j+1) + R(i) R(j). Ascending order reads
    // every old entry before it is overwritten.
    for (int i = 0; i < r; ++i)
      for (int j = i; j < r; ++j) {
        double v = rvec[i] * rvec[j];
        if (j + 1 < r) v += p[(i + 1) * r + j + 1] - k[i + 1] * c[j + 1];
        p[i * r + j] = v;
        p[j * r + i] = v;
      }
    if (std::abs(p[0] - 1.0) < kSteadyTol) steady = true;
  }
  return sums;
}

}  // namespace

FilterSums ArmaFilter::run(std::span<const double> y) const {
  const double* phi = phi_.data();
  const double* rv = rvec_.data();
  const double* p0 = p0_.data();
  switch (r_) {
    case 1: return run_pass<1>(r_, phi, rv, p0, y);
    case 2: return run_pass<2>(r_, phi, rv, p0, y);
    case 3: return run_pass<3>(r_, phi, rv, p0, y);
    case 4: return run_pass<4>(r_, phi, rv, p0, y);
    case 5: return run_pass<5>(r_, phi, rv, p0, y);
    case 6: return run_pass<6>(r_, phi, rv, p0, y);
    default: return run_pass<0>(r_, phi, rv, p0, y);
  }
}

double concentrated_loglik(const FilterSums& sums) {
  const double n = static_cast<double>(sums.n);
  const double sigma2 = sums.rss(sums.mu_hat()) / n;
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) return -std::numeric_limits<double>::infinity();
  return -0.5 * n * (std::log(2.0 * std::numbers::pi * sigma2) + 1.0) - 0.5 * sums.sum_log_f;
}

}  // namespace tipwatch::arma::detail
