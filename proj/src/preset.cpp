#include "tipwatch/preset.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "tipwatch/csv.hpp"
#include "tipwatch/error.hpp"

namespace tipwatch {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v) {
  if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::ConfigError,
                "field " + std::string(key) + ": not a number: '" + std::string(v) + "'");
  }
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorKind::ConfigError,
                "field " + std::string(key) + ": not a non-negative integer: '" + std::string(v) + "'");
  }
  return out;
}

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return csv::format_double(v);
}

}  // namespace

Preset parse_preset(std::string_view text, std::string name) {
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!kv.emplace(key, value).second) {
      throw Error(ErrorKind::ConfigError, "field " + key + ": given twice");
    }
  }

  Preset p;
  p.name = std::move(name);
  if (auto it = kv.find("name"); it != kv.end()) {
    if (p.name.empty()) p.name = it->second;
    kv.erase(it);
  }
  if (auto it = kv.find("kind"); it != kv.end()) {
    if (it->second == "box") p.kind = PresetKind::Box;
    else if (it->second == "colored_noise") p.kind = PresetKind::ColoredNoise;
    else throw Error(ErrorKind::ConfigError, "field kind: expected box or colored_noise");
    kv.erase(it);
  }

  for (const auto& [key, value] : kv) {
    if (p.kind == PresetKind::Box) {
      auto& s = p.scenario;
      if (key == "H0") s.H0 = to_double(key, value);
      else if (key == "Hpert") s.Hpert = to_double(key, value);
      else if (key == "Trise") s.Trise = to_double(key, value);
      else if (key == "Tpert") s.Tpert = to_double(key, value);
      else if (key == "Tfall") s.Tfall = to_double(key, value);
      else if (key == "duration") s.duration = to_double(key, value);
      else if (key == "noise_amplitude") s.noise_amplitude = to_double(key, value);
      else if (key == "seed") s.seed = to_uint(key, value);
      else if (key == "output_dt") s.output_dt = to_double(key, value);
      else if (key == "dt_int") s.dt_int = to_double(key, value);
      else if (key == "initial") {
        using K = box::InitialState::Kind;
        if (value == "upper") s.initial.kind = K::UpperEquilibrium;
        else if (value == "lower") s.initial.kind = K::LowerEquilibrium;
        else if (value == "explicit") s.initial.kind = K::Explicit;
        else throw Error(ErrorKind::ConfigError, "field initial: expected upper, lower or explicit");
      } else if (key == "SN_init") s.initial.SN = to_double(key, value);
      else if (key == "ST_init") s.initial.ST = to_double(key, value);
      else if (key == "volume_scale") p.params.volume_scale = to_double(key, value);
      else throw Error(ErrorKind::ConfigError, "field " + key + ": unknown key");
    } else {
      auto& c = p.noise;
      if (key == "n") c.n = to_uint(key, value);
      else if (key == "dt") c.dt = to_double(key, value);
      else if (key == "ar_start") c.ar_start = to_double(key, value);
      else if (key == "ar_end") c.ar_end = to_double(key, value);
      else if (key == "sd_start") c.sd_start = to_double(key, value);
      else if (key == "sd_end") c.sd_end = to_double(key, value);
      else if (key == "seed") c.seed = to_uint(key, value);
      else if (key == "substeps") c.substeps = static_cast<int>(to_uint(key, value));
      else throw Error(ErrorKind::ConfigError, "field " + key + ": unknown key");
    }
  }
  if (p.kind == PresetKind::Box) {
    p.scenario.validate();
    p.params.validate();
  }
  return p;
}

Preset load_preset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_preset(buf.str(), path.stem().string());
}

const std::vector<std::string>& builtin_preset_names() {
  static const std::vector<std::string> names{"b_tip",  "n_tip_up", "n_tip_down",
                                              "r_tip",  "r_notip",  "colored_noise"};
  return names;
}

Preset builtin_preset(std::string_view name) {
  using K = box::InitialState::Kind;
  Preset p;
  p.name = std::string(name);
  auto& s = p.scenario;
  s.seed = 1;
  if (name == "b_tip") {
    s.H0 = 0.0;
    s.Hpert = 0.5;
    s.Trise = 1000.0;
    s.duration = 2000.0;
    s.noise_amplitude = kNoiseBTip;
  } else if (name == "n_tip_up" || name == "n_tip_down") {
    const bool up = name == "n_tip_up";
    s.H0 = up ? -0.25 : 0.24;
    s.Hpert = s.H0;
    s.Trise = 1.0;
    s.duration = 2000.0;
    s.noise_amplitude = kNoiseNTip;
    s.initial.kind = up ? K::LowerEquilibrium : K::UpperEquilibrium;
  } else if (name == "r_tip" || name == "r_notip") {
    s.H0 = 0.0;
    s.Hpert = 0.37;
    s.Trise = 100.0;
    s.Tpert = 400.0;
    s.Tfall = name == "r_tip" ? 320.0 : 280.0;
    s.duration = 2000.0;
    s.noise_amplitude = kNoiseRTip;
  } else if (name == "colored_noise") {
    p.kind = PresetKind::ColoredNoise;
  } else {
    throw Error(ErrorKind::ConfigError, "unknown preset: " + std::string(name));
  }
  return p;
}

std::string to_text(const Preset& p) {
  std::ostringstream o;
  if (!p.name.empty()) o << "name = " << p.name << '\n';
  if (p.kind == PresetKind::ColoredNoise) {
    const auto& c = p.noise;
    o << "kind = colored_noise\n"
      << "n = " << c.n << "  # output points\n"
      << "dt = " << fmt(c.dt) << "  # time units between points\n"
      << "ar_start = " << fmt(c.ar_start) << "  # AR(1) coefficient at the start\n"
      << "ar_end = " << fmt(c.ar_end) << "  # AR(1) coefficient at the end\n"
      << "sd_start = " << fmt(c.sd_start) << "  # innovation sd at the start\n"
      << "sd_end = " << fmt(c.sd_end) << "  # innovation sd at the end\n"
      << "substeps = " << c.substeps << "  # Euler steps per output interval\n"
      << "seed = " << c.seed << '\n';
    return o.str();
  }
  const auto& s = p.scenario;
  const char* init = s.initial.kind == box::InitialState::Kind::UpperEquilibrium ? "upper"
                     : s.initial.kind == box::InitialState::Kind::LowerEquilibrium ? "lower"
                                                                                   : "explicit";
  o << "kind = box\n"
    << "H0 = " << fmt(s.H0) << "  # hosing before and after the pulse\n"
    << "Hpert = " << fmt(s.Hpert) << "  # hosing plateau\n"
    << "Trise = " << fmt(s.Trise) << "  # years\n"
    << "Tpert = " << fmt(s.Tpert) << "  # years, inf = never falls\n"
    << "Tfall = " << fmt(s.Tfall) << "  # years\n"
    << "duration = " << fmt(s.duration) << "  # years\n"
    << "noise_amplitude = " << fmt(s.noise_amplitude) << "  # salinity / sqrt(yr)\n"
    << "output_dt = " << fmt(s.output_dt) << "  # years\n"
    << "dt_int = " << fmt(s.dt_int) << "  # years\n"
    << "initial = " << init << '\n';
  if (s.initial.kind == box::InitialState::Kind::Explicit) {
    o << "SN_init = " << fmt(s.initial.SN) << '\n' << "ST_init = " << fmt(s.initial.ST) << '\n';
  }
  o << "volume_scale = " << fmt(p.params.volume_scale) << "  # multiplies the table volumes\n"
    << "seed = " << s.seed << '\n';
  return o.str();
}

}  // namespace tipwatch
