#include "tipwatch/integrate.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "tipwatch/csv.hpp"
#include "tipwatch/equilibria.hpp"
#include "tipwatch/error.hpp"
#include "tipwatch/rng.hpp"

namespace tipwatch::box {

TimeSeries Trajectory::series(std::string_view name) const {
  const std::vector<double>* col = nullptr;
  if (name == "S_N") col = &SN;
  else if (name == "S_T") col = &ST;
  else if (name == "S_IP") col = &SIP;
  else if (name == "Gamma") col = &Gamma;
  else if (name == "H") col = &H;
  else throw Error(ErrorKind::MissingColumn, "unknown trajectory column: " + std::string(name));
  return TimeSeries(t.empty() ? 0.0 : t.front(), output_dt, *col, std::string(name));
}

double Trajectory::max_salt_residual(const BoxModelParams& params) const {
  const double total = params.total_salt();
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = std::abs(salt_content(SN[i], ST[i], SIP[i], params) - total) / std::abs(total);
    worst = std::max(worst, r);
  }
  return worst;
}

BoxState initial_state(const HosingScenario& s, const BoxModelParams& params) {
  using Kind = InitialState::Kind;
  if (s.initial.kind == Kind::Explicit) return {s.initial.SN, s.initial.ST};
  const auto points = find_equilibria(s.H0, params);
  const BranchLabel want =
      s.initial.kind == Kind::UpperEquilibrium ? BranchLabel::Upper : BranchLabel::Lower;
  for (const auto& pt : points) {
    if (pt.branch == want) return {pt.SN, pt.ST};
  }
  throw Error(ErrorKind::NoConvergence,
              "no " + to_string(want) + " equilibrium at H0 = " + csv::format_double(s.H0));
}

Trajectory integrate_from(const BoxState& start, const HosingScenario& s,
                          const BoxModelParams& params) {
  s.validate();
  params.validate();
  const auto per_output = static_cast<std::size_t>(std::llround(s.output_dt / s.dt_int));
  const auto n_out = static_cast<std::size_t>(std::floor(s.duration / s.output_dt + 1e-9));
  const double dt = s.dt_int;
  const double noise = s.noise_amplitude * std::sqrt(dt);

  Trajectory out;
  out.output_dt = s.output_dt;
  for (auto* v : {&out.t, &out.SN, &out.ST, &out.SIP, &out.Gamma, &out.H}) v->reserve(n_out);

  Rng rng(s.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  BoxState x = start;
  for (std::size_t k = 0; k < n_out; ++k) {
    const double tk = static_cast<double>(k) * s.output_dt;
    out.t.push_back(tk);
    out.SN.push_back(x.SN);
    out.ST.push_back(x.ST);
    out.SIP.push_back(compute_SIP(x.SN, x.ST, params));
    out.Gamma.push_back(amoc_flow(x.SN, params));
    out.H.push_back(hosing(tk, s));
    if (k + 1 == n_out) break;
    for (std::size_t j = 0; j < per_output; ++j) {
      const double t = static_cast<double>(k * per_output + j) * dt;
      const BoxRates r = derivatives(x, hosing(t, s), params);
      x.SN += dt * r.dSN;
      x.ST += dt * r.dST;
      if (noise > 0.0) {
        x.SN += noise * normal(rng);
        x.ST += noise * normal(rng);
      }
      if (!std::isfinite(x.SN) || !std::isfinite(x.ST)) {
        throw Error(ErrorKind::NonFiniteState,
                    "non-finite state at t = " + csv::format_double(t + dt));
      }
    }
  }
  return out;
}

Trajectory integrate(const HosingScenario& s, const BoxModelParams& params) {
  s.validate();
  return integrate_from(initial_state(s, params), s, params);
}

void write_trajectory(const Trajectory& tr, std::ostream& out) {
  out << "t,S_N,S_T,S_IP,Gamma,H\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    out << csv::format_double(tr.t[i]) << ',' << csv::format_double(tr.SN[i]) << ','
        << csv::format_double(tr.ST[i]) << ',' << csv::format_double(tr.SIP[i]) << ','
        << csv::format_double(tr.Gamma[i]) << ',' << csv::format_double(tr.H[i]) << '\n';
  }
}

}  // namespace tipwatch::box
