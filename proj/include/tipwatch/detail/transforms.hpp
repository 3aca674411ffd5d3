#pragma once

#include <optional>
#include <span>
#include <vector>

namespace tipwatch::arma::detail {

/// Durbin-Levinson map from partial autocorrelations in (-1,1) to AR coefficients.
std::vector<double> pacf_to_ar(std::span<const double> pacf);

/// Inverse map; nullopt when the coefficients are not stationary.
std::optional<std::vector<double>> ar_to_pacf(std::span<const double> ar);

/// Unconstrained vector (AR part then MA part) to (phi, theta).
void unpack(std::span<const double> u, int p, int q, std::vector<double>& phi,
            std::vector<double>& theta);

/// Inverse of unpack; components clamped to |u| <= bound. nullopt when not admissible.
std::optional<std::vector<double>> pack(std::span<const double> phi,
                                        std::span<const double> theta, double bound);

/// Box constraint on the unconstrained coordinates (tanh(7.5) = 1 - 6e-7).
inline constexpr double kUnconstrainedBound = 7.5;

}  // namespace tipwatch::arma::detail
