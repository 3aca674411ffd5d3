#include "tipwatch/detail/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace tipwatch::arma::detail {

std::vector<double> pacf_to_ar(std::span<const double> pacf) {
  const std::size_t k = pacf.size();
  std::vector<double> a(k, 0.0);
  std::vector<double> prev(k, 0.0);
  for (std::size_t m = 0; m < k; ++m) {
    const double r = pacf[m];
    std::copy(a.begin(), a.begin() + static_cast<long>(m), prev.begin());
    a[m] = r;
    for (std::size_t j = 0; j < m; ++j) a[j] = prev[j] - r * prev[m - 1 - j];
  }
  return a;
}

std::optional<std::vector<double>> ar_to_pacf(std::span<const double> ar) {
  const std::size_t k = ar.size();
  std::vector<double> a(ar.begin(), ar.end());
  std::vector<double> pacf(k, 0.0);
  for (std::size_t m = k; m-- > 0;) {
    const double r = a[m];
    if (!(std::abs(r) < 1.0)) return std::nullopt;
    pacf[m] = r;
    const double denom = 1.0 - r * r;
    std::vector<double> prev(a.begin(), a.begin() + static_cast<long>(m));
    for (std::size_t j = 0; j < m; ++j) a[j] = (prev[j] + r * prev[m - 1 - j]) / denom;
  }
  return pacf;
}

void unpack(std::span<const double> u, int p, int q, std::vector<double>& phi,
            std::vector<double>& theta) {
  std::vector<double> r(static_cast<std::size_t>(std::max(p, q)));
  for (int i = 0; i < p; ++i) r[i] = std::tanh(u[i]);
  phi = pacf_to_ar(std::span<const double>(r.data(), static_cast<std::size_t>(p)));
  for (int j = 0; j < q; ++j) r[j] = std::tanh(u[p + j]);
  theta = pacf_to_ar(std::span<const double>(r.data(), static_cast<std::size_t>(q)));
  // 1 + sum theta_j z^j = 1 - sum a_j z^j
  for (double& t : theta) t = -t;
}

std::optional<std::vector<double>> pack(std::span<const double> phi,
                                        std::span<const double> theta, double bound) {
  auto ar = ar_to_pacf(phi);
  std::vector<double> neg(theta.begin(), theta.end());
  for (double& t : neg) t = -t;
  auto ma = ar_to_pacf(neg);
  if (!ar || !ma) return std::nullopt;
  std::vector<double> u;
  u.reserve(phi.size() + theta.size());
  for (double r : *ar) u.push_back(std::clamp(std::atanh(r), -bound, bound));
  for (double r : *ma) u.push_back(std::clamp(std::atanh(r), -bound, bound));
  return u;
}

}  // namespace tipwatch::arma::detail
