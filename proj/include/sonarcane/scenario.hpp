// Line-oriented scenario files.
//
//   # comment
//   CONFIG key value        tick_ms temp temp_cal rays debounce jitter seed
//                           start_x user_height divergence min_range
//                           max_range calib_gain calib_offset
//   SENSOR name height sarl name is Chest, Knee, Toe or Arch
//   OBSTACLE x0 x1 z0 z1
//   GROUND x0 x1 dz
//   WALK speed seconds
//
// Lengths in cm, time in seconds, speed in cm/s. Omitted settings keep
// their defaults; GROUND lines may come in any order.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sonarcane/geometry.hpp"
#include "sonarcane/pipeline.hpp"

namespace sonarcane::scenario {

struct ScenarioFile {
  pipeline::SimConfig config;
  geometry::SagittalScene scene;
  pipeline::Trajectory trajectory;

  bool operator==(const ScenarioFile&) const = default;
};

/// Throws ParseError (with the 1-based line) on syntax errors, unknown
/// keys, inverted obstacles and overlapping ground; ConfigError when the
/// assembled configuration is inconsistent.
ScenarioFile parse_scenario(std::string_view text);

/// Canonical text; parse_scenario(print_scenario(s)) == s.
std::string print_scenario(const ScenarioFile& s);

ScenarioFile load_scenario(const std::filesystem::path& path);

}  // namespace sonarcane::scenario
