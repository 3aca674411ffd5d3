#pragma once

namespace tipwatch::box {

/**
 * Constants of the stochastic 3-box AMOC model (2xCO2 parameter set).
 *
 * Fluxes are in m^3/s; the gyre strengths K_N, K_S are converted from Sv.
 * Volumes are the tabulated volumes (mantissa x 1e7 m^3) multiplied by
 * volume_scale; the default scale is the calibrated value that reproduces a
 * Hopf point near H = 0.33 with a B-tipping transition near t = 1000 yr.
 */
struct BoxModelParams {
  double alpha = 0.12;       // kg / (m^3 degC)
  double beta = 790.0;       // kg / m^3
  double S0 = 0.035;
  double TS = 7.919;         // degC
  double T0 = 3.870;         // degC
  double lambda = 1.62e7;    // m^6 / (kg s)
  double gamma = 0.36;
  double KN = 1.762e6;       // m^3/s
  double KS = 1.872e6;       // m^3/s
  double SS = 0.034427;
  double SB = 0.034538;
  double Y = 3.15e7;         // s / yr
  double FN0 = 0.486e6;      // m^3/s
  double FN_H = 0.1311e6;    // m^3/s per unit H
  double FT0 = -0.997e6;     // m^3/s
  double FT_H = 0.6961e6;    // m^3/s per unit H

  // Table volumes in units of 1e7 m^3.
  double VN_table = 0.3683;
  double VT_table = 0.5418;
  double VS_table = 0.6097;
  double VIP_table = 1.4860;
  double VB_table = 9.9250;
  double volume_scale = 2.47e10;

  // Reference salinities that close the salt budget.
  double SN_ref = 0.034912;
  double ST_ref = 0.035435;
  double SIP_ref = 0.034668;

  [[nodiscard]] double VN() const noexcept { return VN_table * 1e7 * volume_scale; }
  [[nodiscard]] double VT() const noexcept { return VT_table * 1e7 * volume_scale; }
  [[nodiscard]] double VS() const noexcept { return VS_table * 1e7 * volume_scale; }
  [[nodiscard]] double VIP() const noexcept { return VIP_table * 1e7 * volume_scale; }
  [[nodiscard]] double VB() const noexcept { return VB_table * 1e7 * volume_scale; }

  /// Conserved total salt content, fixed by the reference salinities.
  [[nodiscard]] double total_salt() const noexcept;

  /// Throws ConfigError on non-positive volumes or gamma outside [0,1].
  void validate() const;
};

struct BoxState {
  double SN = 0.0;
  double ST = 0.0;
};

struct BoxRates {
  double dSN = 0.0;  // salinity / yr
  double dST = 0.0;
};

/// AMOC strength Gamma = lambda [alpha (TS - T0) + beta/100 (SN - SS)] in m^3/s.
double amoc_flow(double SN, const BoxModelParams& params) noexcept;

/// Indo-Pacific salinity closing the salt budget.
double compute_SIP(double SN, double ST, const BoxModelParams& params) noexcept;

/// V_N S_N + V_T S_T + V_IP S_IP + V_S S_S + V_B S_B.
double salt_content(double SN, double ST, double SIP, const BoxModelParams& params) noexcept;

/// Freshwater fluxes at hosing level H.
double flux_north(double H, const BoxModelParams& params) noexcept;
double flux_tropical(double H, const BoxModelParams& params) noexcept;

/// Deterministic tendencies; the branch is chosen by the sign of Gamma.
BoxRates derivatives(const BoxState& state, double H, const BoxModelParams& params) noexcept;

}  // namespace tipwatch::box
