#include <cmath>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "tipwatch/colored_noise.hpp"
#include "tipwatch/error.hpp"
#include "tipwatch/manifest.hpp"
#include "tipwatch/preset.hpp"

using namespace tipwatch;

namespace {
std::string error_text(std::string_view text) {
  try {
    parse_preset(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigError);
    return e.what();
  }
  FAIL("accepted");
  return {};
}
}  // namespace

TEST_CASE("built-in presets round-trip through text") {
  for (const auto& name : builtin_preset_names()) {
    CAPTURE(name);
    const auto p = builtin_preset(name);
    const auto text = to_text(p);
    const auto back = parse_preset(text);
    CHECK(back.name == name);
    CHECK(to_text(back) == text);
  }
  CHECK_THROWS_AS(builtin_preset("nope"), Error);
}

TEST_CASE("shipped preset files match the built-ins") {
  for (const auto& name : builtin_preset_names()) {
    CAPTURE(name);
    const std::filesystem::path file = std::filesystem::path(TIPWATCH_PRESET_DIR) / (name + ".cfg");
    REQUIRE(std::filesystem::exists(file));
    CHECK(to_text(load_preset(file)) == to_text(builtin_preset(name)));
  }
}

TEST_CASE("preset values") {
  auto b = builtin_preset("b_tip");
  CHECK(b.kind == PresetKind::Box);
  CHECK(std::isinf(b.scenario.Tpert));
  CHECK(b.scenario.noise_amplitude == kNoiseBTip);
  auto r = builtin_preset("r_tip");
  auto rn = builtin_preset("r_notip");
  CHECK(r.scenario.Tfall == 320);
  CHECK(rn.scenario.Tfall == 280);
  CHECK(r.scenario.seed == rn.scenario.seed);
  CHECK(builtin_preset("colored_noise").kind == PresetKind::ColoredNoise);
}

TEST_CASE("parse errors name the culprit") {
  CHECK(std::string(error_text("kind = box\nbogus = 1\n")).find("bogus") != std::string::npos);
  CHECK(std::string(error_text("kind = box\nHpert = 1\nHpert = 2\n")).find("Hpert") !=
        std::string::npos);
  CHECK(std::string(error_text("kind = box\nHpert = abc\n")).find("Hpert") != std::string::npos);
  CHECK(std::string(error_text("kind = box\nno equals sign\n")).size() > 0);
  auto p = parse_preset("kind = box  # comment\nTpert = inf\nHpert=0.2\n");
  CHECK(std::isinf(p.scenario.Tpert));
  CHECK(p.scenario.Hpert == 0.2);
}

TEST_CASE("colored noise series") {
  box::ColoredNoiseConfig c;
  c.n = 500;
  auto a = box::colored_noise_series(c);
  CHECK(a.size() == 500);
  CHECK(a.dt() == 0.5);
  CHECK(a.values().front() == a.values().front());
  auto b = box::colored_noise_series(c);
  CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
  c.ar_end = 1.2;
  try {
    box::colored_noise_series(c);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidRamp);
  }
}

TEST_CASE("manifest") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(0xabcULL) == "0000000000000abc");
  CHECK(manifest_path("out/x.csv") == std::filesystem::path("out/x.csv.manifest.json"));
  RunManifest m;
  m.subcommand = "simulate";
  m.seed = 3;
  m.outputs = {"x.csv"};
  m.config_text = "seed = 3\n";
  m.config_hash = hex64(fnv1a64(m.config_text));
  auto j = nlohmann::json::parse(m.to_json());
  CHECK(j["subcommand"] == "simulate");
  CHECK(j["seed"] == 3);
  CHECK(j["tool_version"] == std::string(kToolVersion));
  CHECK(j["config_hash"] == m.config_hash);
}
