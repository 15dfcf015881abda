// Fixed-period sense/classify loop over a scripted walk.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sonarcane/classify.hpp"
#include "sonarcane/geometry.hpp"
#include "sonarcane/sensing.hpp"

namespace sonarcane::pipeline {

using classify::Advisory;
using classify::BuzzerFrame;
using classify::UpperLevel;
using sensing::Reading;

inline constexpr double kMaxSpeed = 500.0;  // cm/s

struct UserState {
  double x = 0.0;        // cm
  double speed = 0.0;    // cm/s, negative walks backwards
  double height = 175.0;
};

struct Flags {
  bool upstairs = false;
  bool downstep = false;
  std::optional<UpperLevel> inferred;

  bool operator==(const Flags&) const = default;
};

struct FrameOutput {
  std::int64_t tick = 0;
  double t_ms = 0.0;
  double user_x = 0.0;
  std::array<Reading, 4> readings{};  // indexed by SensorName
  BuzzerFrame frame;
  Advisory advisory;  // debounced
  Flags flags;
};

struct SimConfig {
  double tick_ms = 30.0;
  std::array<sensing::SensorSpec, 4> sensors = {
      sensing::default_spec(sensing::SensorName::Chest),
      sensing::default_spec(sensing::SensorName::Knee),
      sensing::default_spec(sensing::SensorName::Toe),
      sensing::default_spec(sensing::SensorName::Arch)};
  double temp = 20.0;      // actual air temperature, deg C
  double temp_cal = 20.0;  // temperature the ranger was calibrated at
  sensing::Calibration calib;
  int debounce_ticks = 2;
  int n_rays = 31;
  double jitter = 0.0;  // half-width of uniform reading noise, cm
  std::uint64_t seed = 0;

  const sensing::SensorSpec& sensor(sensing::SensorName name) const {
    return sensors[static_cast<std::size_t>(name)];
  }
  sensing::SensorSpec& sensor(sensing::SensorName name) {
    return sensors[static_cast<std::size_t>(name)];
  }

  bool operator==(const SimConfig&) const = default;
};

void validate(const SimConfig& config);

/// Tracks the chest buzzer across ticks so that an obstacle which drops out
/// of the cone while the user advances, and comes back when the user steps
/// back, can be placed at head, chest or waist height.
struct DisambiguationState {
  int prev_level = 0;
  Reading prev_distance;
  std::optional<double> pending;  // last active distance before dropout
  std::optional<UpperLevel> inferred;

  bool operator==(const DisambiguationState&) const = default;
};

DisambiguationState disambiguate(DisambiguationState state, int chest_level,
                                 Reading chest_distance, bool moving_back);

/// Single verdict from the buzzer levels and flags, by fixed priority.
Advisory fuse(const BuzzerFrame& frame, const Flags& flags);

struct DebounceState {
  Advisory current;
  Advisory candidate;
  int streak = 0;
};

/// Everything a scenario run carries from one tick to the next.
struct PipelineState {
  std::int64_t tick = 0;
  DisambiguationState disambiguation;
  DebounceState debounce;
  std::mt19937_64 rng;

  explicit PipelineState(std::uint64_t seed = 0) : rng(seed) {}
};

/// Fires Chest, Knee, Toe, Arch at the user's current position, classifies,
/// fuses and debounces, then advances `user.x` by one period of motion.
FrameOutput tick(const geometry::SagittalScene& scene, UserState& user, const SimConfig& config,
                 PipelineState& state);

/// Constant-speed stretch of a walk.
struct WalkSegment {
  double speed = 0.0;    // cm/s
  double seconds = 0.0;

  bool operator==(const WalkSegment&) const = default;
};

struct Trajectory {
  double start_x = 0.0;
  double user_height = 175.0;
  std::vector<WalkSegment> segments;

  bool operator==(const Trajectory&) const = default;
};

/// Ticks a segment occupies at the given period (rounded to nearest).
std::int64_t segment_ticks(const WalkSegment& segment, double tick_ms);

/// Runs the whole walk. Scene, config and trajectory are validated before
/// the first tick; identical inputs give identical output.
std::vector<FrameOutput> run_scenario(const geometry::SagittalScene& scene,
                                      const Trajectory& trajectory, const SimConfig& config);

}  // namespace sonarcane::pipeline
