#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tipwatch/box_model.hpp"
#include "tipwatch/colored_noise.hpp"
#include "tipwatch/hosing.hpp"

namespace tipwatch {

enum class PresetKind { Box, ColoredNoise };

/**
 * A scenario read from a key = value file. Lines may carry '#' comments.
 * Box presets set HosingScenario fields plus volume_scale; colored-noise
 * presets set ColoredNoiseConfig fields.
 */
struct Preset {
  std::string name;
  PresetKind kind = PresetKind::Box;
  box::HosingScenario scenario;
  box::BoxModelParams params;
  box::ColoredNoiseConfig noise;
};

/// Calibrated defaults shared by the built-in presets.
inline constexpr double kNoiseBTip = 1e-4;
inline constexpr double kNoiseRTip = 1e-5;
inline constexpr double kNoiseNTip = 1e-2;

/// Throws ConfigError naming the line or key at fault.
Preset parse_preset(std::string_view text, std::string name = {});
Preset load_preset(const std::filesystem::path& path);

/// b_tip, n_tip_up, n_tip_down, r_tip, r_notip, colored_noise.
const std::vector<std::string>& builtin_preset_names();
/// Throws ConfigError for an unknown name.
Preset builtin_preset(std::string_view name);

/// Canonical key = value text; parse_preset(to_text(p)) reproduces p.
std::string to_text(const Preset& preset);

}  // namespace tipwatch
