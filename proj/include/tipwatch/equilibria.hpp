#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "tipwatch/box_model.hpp"

namespace tipwatch::box {

enum class BranchLabel { Upper, Lower, Unstable };

std::string to_string(BranchLabel label);

struct EquilibriumPoint {
  double H = 0.0;
  double SN = 0.0;
  double ST = 0.0;
  std::complex<double> eig1;
  std::complex<double> eig2;
  bool stable = false;
  BranchLabel branch = BranchLabel::Upper;

  [[nodiscard]] double gamma(const BoxModelParams& params) const noexcept {
    return amoc_flow(SN, params);
  }
  /// Largest real part of the two eigenvalues.
  [[nodiscard]] double max_real() const noexcept { return std::max(eig1.real(), eig2.real()); }
  [[nodiscard]] bool complex_pair() const noexcept { return eig1.imag() != 0.0; }
};

/// Central-difference Jacobian (step 1e-8) eigenvalues at (SN, ST).
std::pair<std::complex<double>, std::complex<double>> jacobian_eigenvalues(
    double SN, double ST, double H, const BoxModelParams& params);

/**
 * All equilibria at hosing level H, ordered by decreasing S_N.
 * Newton multi-start over a lattice of initial guesses; roots are merged at 1e-9.
 * Three roots are labelled upper, unstable, lower; a lone root is labelled by
 * the sign of Gamma. Throws NoConvergence when no start converges.
 */
std::vector<EquilibriumPoint> find_equilibria(double H, const BoxModelParams& params);

/// Equilibria over an evenly spaced H grid (steps >= 2); OpenMP over the grid.
std::vector<EquilibriumPoint> equilibrium_sweep(double H_min, double H_max, int steps,
                                                const BoxModelParams& params);
/// Serial reference for equilibrium_sweep.
std::vector<EquilibriumPoint> equilibrium_sweep_serial(double H_min, double H_max, int steps,
                                                       const BoxModelParams& params);

/// S_N of the unstable middle root at H, if three roots exist.
std::optional<double> unstable_branch_SN(double H, const BoxModelParams& params);

/**
 * H where the upper branch loses stability through a complex pair,
 * located by bisection inside [H_lo, H_hi]; nullopt if no sign change.
 */
std::optional<double> locate_hopf(double H_lo, double H_hi, const BoxModelParams& params,
                                  double tol = 1e-6);

}  // namespace tipwatch::box
