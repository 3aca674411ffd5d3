#include "tipwatch/box_model.hpp"

#include <cmath>

#include "tipwatch/error.hpp"

namespace tipwatch::box {

double BoxModelParams::total_salt() const noexcept {
  return VN() * SN_ref + VT() * ST_ref + VS() * SS + VIP() * SIP_ref + VB() * SB;
}

void BoxModelParams::validate() const {
  for (double v : {VN_table, VT_table, VS_table, VIP_table, VB_table, volume_scale}) {
    if (!(v > 0.0)) throw Error(ErrorKind::ConfigError, "box volumes must be positive");
  }
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(ErrorKind::ConfigError, "gamma must lie in [0,1]");
  if (!(Y > 0.0)) throw Error(ErrorKind::ConfigError, "Y must be positive");
}

double amoc_flow(double SN, const BoxModelParams& p) noexcept {
  return p.lambda * (p.alpha * (p.TS - p.T0) + p.beta / 100.0 * (SN - p.SS));
}

double compute_SIP(double SN, double ST, const BoxModelParams& p) noexcept {
  return (p.total_salt() - p.VN() * SN - p.VT() * ST - p.VS() * p.SS - p.VB() * p.SB) / p.VIP();
}

double salt_content(double SN, double ST, double SIP, const BoxModelParams& p) noexcept {
  return p.VN() * SN + p.VT() * ST + p.VIP() * SIP + p.VS() * p.SS + p.VB() * p.SB;
}

double flux_north(double H, const BoxModelParams& p) noexcept { return p.FN0 + H * p.FN_H; }
double flux_tropical(double H, const BoxModelParams& p) noexcept { return p.FT0 + H * p.FT_H; }

BoxRates derivatives(const BoxState& s, double H, const BoxModelParams& p) noexcept {
  const double gam = amoc_flow(s.SN, p);
  const double sip = compute_SIP(s.SN, s.ST, p);
  const double fn = flux_north(H, p);
  const double ft = flux_tropical(H, p);
  double north = 0.0;
  double tropical = 0.0;
  if (gam >= 0.0) {
    north = gam * (s.ST - s.SN) + p.KN * (s.ST - s.SN) - 100.0 * fn * p.S0;
    tropical = gam * (p.gamma * p.SS + (1.0 - p.gamma) * sip - s.ST) + p.KS * (p.SS - s.ST) +
               p.KN * (s.SN - s.ST) - 100.0 * ft * p.S0;
  } else {
    const double mag = std::abs(gam);
    north = mag * (p.SB - s.SN) + p.KN * (s.ST - s.SN) - 100.0 * fn * p.S0;
    tropical = mag * (s.SN - s.ST) + p.KS * (p.SS - s.ST) + p.KN * (s.SN - s.ST) -
               100.0 * ft * p.S0;
  }
  // (V / Y) dS/dt = flux  =>  dS/dt = flux * Y / V
  return {north * p.Y / p.VN(), tropical * p.Y / p.VT()};
}

}  // namespace tipwatch::box
