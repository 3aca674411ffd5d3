#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tipwatch/calibration.hpp"
#include "tipwatch/colored_noise.hpp"
#include "tipwatch/csv.hpp"
#include "tipwatch/equilibria.hpp"
#include "tipwatch/error.hpp"
#include "tipwatch/integrate.hpp"
#include "tipwatch/manifest.hpp"
#include "tipwatch/preset.hpp"
#include "tipwatch/upsilon.hpp"

namespace fs = std::filesystem;
using namespace tipwatch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonFiniteState:
    case ErrorKind::NoConvergence:
    case ErrorKind::AllCandidatesFailed:
    case ErrorKind::NonConvergence:
      return kExitRuntime;
    default:
      return kExitConfig;
  }
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  out << body;
}

struct SimulateArgs {
  std::string preset;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
  if (a.preset.empty() == a.config.empty()) {
    throw Error(ErrorKind::ConfigError, "give exactly one of --preset or --config");
  }
  Preset p = a.config.empty() ? builtin_preset(a.preset) : load_preset(a.config);
  if (p.kind != PresetKind::Box) {
    throw Error(ErrorKind::ConfigError, "preset " + p.name + " is not a box-model scenario");
  }
  if (a.seed) p.scenario.seed = *a.seed;
  if (a.noise) p.scenario.noise_amplitude = *a.noise;
  p.scenario.validate();

  const auto traj = box::integrate(p.scenario, p.params);
  std::ostringstream body;
  box::write_trajectory(traj, body);
  write_text(a.out, body.str());

  RunManifest m;
  m.subcommand = "simulate";
  m.config_path = a.config.empty() ? "preset:" + a.preset : a.config;
  m.seed = p.scenario.seed;
  m.outputs = {a.out};
  m.config_text = to_text(p);
  m.config_hash = hex64(fnv1a64(m.config_text));
  write_manifest(m, a.out);
  return kExitOk;
}

struct IndicateArgs {
  std::string in;
  std::string column = "S_N";
  std::string out;
  std::size_t tau = 350;
  std::size_t stride = 1;
  int p_max = 5;
  int q_max = 5;
  int d_max = 2;
  int restarts = 2;
  std::uint64_t seed = 0;
  bool exclude_pure_ma = false;
  bool count_sigma2 = false;
  bool stepwise = false;
  double dt = 1.0;
};

std::string describe(const upsilon::SelectionConfig& c, const IndicateArgs& a) {
  std::ostringstream o;
  o << "column = " << a.column << "\n"
    << "tau = " << c.tau << "\n"
    << "stride = " << c.stride << "\n"
    << "p_max = " << c.p_max << "\n"
    << "q_max = " << c.q_max << "\n"
    << "d_max = " << c.d_max << "\n"
    << "restarts = " << c.restarts << "\n"
    << "seed = " << c.seed << "\n"
    << "exclude_pure_ma = " << (c.exclude_pure_ma ? "true" : "false") << "\n"
    << "count_sigma2 = " << (c.count_sigma2 ? "true" : "false") << "\n"
    << "search = " << (c.search == upsilon::SearchMode::Stepwise ? "stepwise" : "exhaustive")
    << "\n";
  return o.str();
}

int cmd_indicate(const IndicateArgs& a) {
  upsilon::SelectionConfig c;
  c.tau = a.tau;
  c.stride = a.stride;
  c.p_max = a.p_max;
  c.q_max = a.q_max;
  c.d_max = a.d_max;
  c.restarts = a.restarts;
  c.seed = a.seed;
  c.exclude_pure_ma = a.exclude_pure_ma;
  c.count_sigma2 = a.count_sigma2;
  c.search = a.stepwise ? upsilon::SearchMode::Stepwise : upsilon::SearchMode::Exhaustive;
  c.validate();

  csv::LoadOptions lo;
  lo.dt = a.dt;
  const TimeSeries series = csv::load_csv(a.in, a.column, lo);
  if (c.tau > series.size()) {
    throw Error(ErrorKind::WindowTooLong, "tau = " + std::to_string(c.tau) +
                                              " exceeds series length " +
                                              std::to_string(series.size()));
  }
  const auto results = upsilon::run_indicator(series, c);
  std::ostringstream body;
  upsilon::to_table(results).write(body);
  write_text(a.out, body.str());

  RunManifest m;
  m.subcommand = "indicate";
  m.seed = c.seed;
  m.inputs = {a.in};
  m.outputs = {a.out};
  m.config_text = describe(c, a);
  m.config_hash = hex64(fnv1a64(m.config_text));
  write_manifest(m, a.out);
  return kExitOk;
}

struct EquilibriaArgs {
  double h_min = -0.5;
  double h_max = 0.6;
  int steps = 221;
  std::optional<double> volume_scale;
  std::string out;
};

int cmd_equilibria(const EquilibriaArgs& a) {
  if (!(a.h_min < a.h_max)) throw Error(ErrorKind::ConfigError, "--h-min must be < --h-max");
  if (a.steps < 2) throw Error(ErrorKind::ConfigError, "--steps must be >= 2");
  box::BoxModelParams params;
  if (a.volume_scale) params.volume_scale = *a.volume_scale;
  params.validate();

  const auto points = box::equilibrium_sweep(a.h_min, a.h_max, a.steps, params);
  if (points.empty()) {
    throw Error(ErrorKind::NoConvergence, "no equilibria found in the requested H range");
  }
  csv::Table t;
  t.header = {"H", "S_N", "S_T", "Gamma", "eig1_re", "eig1_im", "eig2_re", "eig2_im", "stable",
              "branch"};
  for (const auto& pt : points) {
    t.rows.push_back({csv::format_double(pt.H), csv::format_double(pt.SN),
                      csv::format_double(pt.ST), csv::format_double(pt.gamma(params)),
                      csv::format_double(pt.eig1.real()), csv::format_double(pt.eig1.imag()),
                      csv::format_double(pt.eig2.real()), csv::format_double(pt.eig2.imag()),
                      pt.stable ? "true" : "false", box::to_string(pt.branch)});
  }
  std::ostringstream body;
  t.write(body);
  write_text(a.out, body.str());

  std::ostringstream cfg;
  cfg << "H_min = " << csv::format_double(a.h_min) << "\nH_max = " << csv::format_double(a.h_max)
      << "\nsteps = " << a.steps << "\nvolume_scale = " << csv::format_double(params.volume_scale)
      << "\n";
  RunManifest m;
  m.subcommand = "equilibria";
  m.outputs = {a.out};
  m.config_text = cfg.str();
  m.config_hash = hex64(fnv1a64(m.config_text));
  write_manifest(m, a.out);
  return kExitOk;
}

struct NoiseArgs {
  std::string config;
  std::optional<std::size_t> n;
  std::optional<double> dt, ar_start, ar_end, sd_start, sd_end;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_noise(const NoiseArgs& a) {
  Preset p = a.config.empty() ? builtin_preset("colored_noise") : load_preset(a.config);
  if (p.kind != PresetKind::ColoredNoise) {
    throw Error(ErrorKind::ConfigError, "config " + a.config + " is not a colored_noise preset");
  }
  auto& c = p.noise;
  if (a.n) c.n = *a.n;
  if (a.dt) c.dt = *a.dt;
  if (a.ar_start) c.ar_start = *a.ar_start;
  if (a.ar_end) c.ar_end = *a.ar_end;
  if (a.sd_start) c.sd_start = *a.sd_start;
  if (a.sd_end) c.sd_end = *a.sd_end;
  if (a.seed) c.seed = *a.seed;

  const TimeSeries x = box::colored_noise_series(c);
  csv::write_series(a.out, x, "x");

  RunManifest m;
  m.subcommand = "noise";
  m.config_path = a.config.empty() ? "preset:colored_noise" : a.config;
  m.seed = c.seed;
  m.outputs = {a.out};
  m.config_text = to_text(p);
  m.config_hash = hex64(fnv1a64(m.config_text));
  write_manifest(m, a.out);
  return kExitOk;
}

int cmd_calibrate(double target_fall) {
  box::BoxModelParams params;
  const auto r_tip = builtin_preset("r_tip").scenario;
  const auto r_notip = builtin_preset("r_notip").scenario;
  const auto scale = box::calibrate_volume_scale(r_tip, params, target_fall);
  if (!scale) throw Error(ErrorKind::NoConvergence, "volume_scale bracket does not straddle the target");
  params.volume_scale = *scale;
  const auto hopf = box::locate_hopf(0.2, 0.5, params);
  const auto fold = box::fold_hosing(params);
  std::cout << "volume_scale = " << csv::format_double(*scale) << "\n"
            << "hopf_H = " << (hopf ? csv::format_double(*hopf) : "none") << "\n"
            << "fold_H = " << (fold ? csv::format_double(*fold) : "none") << "\n"
            << "noise_b_tip = "
            << csv::format_double(box::calibrate_noise_bifurcation(builtin_preset("b_tip").scenario, params))
            << "\n"
            << "noise_r_tip = " << csv::format_double(box::calibrate_noise_rate(r_notip, params))
            << "\n"
            << "noise_n_tip = "
            << csv::format_double(
                   box::calibrate_noise_noise_induced(builtin_preset("n_tip_up").scenario, params))
            << "\n";
  return kExitOk;
}

int default_threads() {
  if (const char* env = std::getenv("TIPWATCH_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_num_procs();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tipwatch: ARMA-based early-warning indicators and a stochastic AMOC box model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: $TIPWATCH_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Integrate a box-model scenario");
  s->add_option("--preset", sim.preset, "Built-in preset name");
  s->add_option("--config", sim.config, "Preset file (key = value)");
  s->add_option("--seed", sim.seed, "Override the noise seed");
  s->add_option("--noise", sim.noise, "Override the noise amplitude");
  s->add_option("-o,--out", sim.out, "Trajectory CSV")->required();

  IndicateArgs ind;
  auto* i = app.add_subcommand("indicate", "Sliding-window indicator sweep over one CSV column");
  i->add_option("--in", ind.in, "Input CSV")->required();
  i->add_option("--column", ind.column, "Column name")->capture_default_str();
  i->add_option("--tau", ind.tau, "Window length in points")->capture_default_str();
  i->add_option("--stride", ind.stride, "Points between window ends")->capture_default_str();
  i->add_option("--p-max", ind.p_max)->capture_default_str();
  i->add_option("--q-max", ind.q_max)->capture_default_str();
  i->add_option("--d-max", ind.d_max)->capture_default_str();
  i->add_option("--restarts", ind.restarts, "Random optimizer restarts per fit")
      ->capture_default_str();
  i->add_option("--seed", ind.seed)->capture_default_str();
  i->add_option("--dt", ind.dt, "Sampling step when the file has no t column")
      ->capture_default_str();
  i->add_flag("--exclude-pure-ma", ind.exclude_pure_ma);
  i->add_flag("--count-sigma2", ind.count_sigma2, "Count sigma^2 as a BIC parameter");
  i->add_flag("--stepwise", ind.stepwise, "Neighbourhood search instead of the full grid");
  i->add_option("-o,--out", ind.out, "WindowResult CSV")->required();

  EquilibriaArgs eq;
  auto* e = app.add_subcommand("equilibria", "Equilibria and stability over an H grid");
  e->add_option("--h-min", eq.h_min)->capture_default_str();
  e->add_option("--h-max", eq.h_max)->capture_default_str();
  e->add_option("--steps", eq.steps)->capture_default_str();
  e->add_option("--volume-scale", eq.volume_scale);
  e->add_option("-o,--out", eq.out, "Branch CSV")->required();

  NoiseArgs nz;
  auto* n = app.add_subcommand("noise", "Colored-noise counterexample series");
  n->add_option("--config", nz.config, "colored_noise preset file");
  n->add_option("--n", nz.n);
  n->add_option("--dt", nz.dt);
  n->add_option("--ar-start", nz.ar_start);
  n->add_option("--ar-end", nz.ar_end);
  n->add_option("--sd-start", nz.sd_start);
  n->add_option("--sd-end", nz.sd_end);
  n->add_option("--seed", nz.seed);
  n->add_option("-o,--out", nz.out, "Series CSV")->required();

  double target_fall = 300.0;
  auto* c = app.add_subcommand("calibrate", "Re-derive volume_scale and the noise amplitudes");
  c->add_option("--target-fall", target_fall, "Critical T_fall in years")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& ok) {
    return app.exit(ok);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitConfig;
  }

  omp_set_num_threads(threads > 0 ? threads : default_threads());

  try {
    if (s->parsed()) return cmd_simulate(sim);
    if (i->parsed()) return cmd_indicate(ind);
    if (e->parsed()) return cmd_equilibria(eq);
    if (n->parsed()) return cmd_noise(nz);
    if (c->parsed()) return cmd_calibrate(target_fall);
  } catch (const Error& err) {
    std::cerr << "tipwatch: " << err.what() << "\n";
    return exit_code_for(err.kind());
  } catch (const std::exception& err) {
    std::cerr << "tipwatch: " << err.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
