#include "sonarcane/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sonarcane/error.hpp"

namespace sonarcane::pipeline {

using classify::AdvisoryKind;
using sensing::SensorName;

namespace {

Reading gate(Reading r, double sarl) {
  if (r && *r <= sarl) return r;
  return std::nullopt;
}

// Uniform in [-1, 1) from the top 53 bits, identical on every platform.
double symmetric_unit(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

void debounce(DebounceState& s, const Advisory& raw, int ticks) {
  if (raw == s.current) {
    s.streak = 0;
    return;
  }
  if (s.streak > 0 && raw == s.candidate) {
    ++s.streak;
  } else {
    s.candidate = raw;
    s.streak = 1;
  }
  if (s.streak >= ticks) {
    s.current = raw;
    s.streak = 0;
  }
}

void validate(const Trajectory& trajectory, const SimConfig& config) {
  if (trajectory.segments.empty()) throw ConfigError("trajectory has no segments");
  std::int64_t total = 0;
  for (const WalkSegment& s : trajectory.segments) {
    if (!(std::abs(s.speed) <= kMaxSpeed)) {
      throw ConfigError("walking speed beyond " + std::to_string(kMaxSpeed) + " cm/s");
    }
    if (!(s.seconds >= 0.0)) throw ConfigError("segment duration must be non-negative");
    total += segment_ticks(s, config.tick_ms);
  }
  if (total == 0) throw ConfigError("trajectory is shorter than one tick");
  for (const auto& spec : config.sensors) {
    if (spec.mount_height > trajectory.user_height) {
      throw ConfigError(std::string(sensing::to_string(spec.name)) +
                        " sensor is mounted above the user's height");
    }
  }
}

}  // namespace

void validate(const SimConfig& config) {
  if (!(config.tick_ms > 0.0)) throw ConfigError("tick period must be positive");
  if (config.debounce_ticks < 1) throw ConfigError("debounce_ticks must be at least 1");
  if (config.n_rays < 3 || config.n_rays % 2 == 0) {
    throw ConfigError("rays must be odd and at least 3");
  }
  if (!(config.jitter >= 0.0)) throw ConfigError("jitter must be non-negative");
  if (!(config.calib.gain > 0.0)) throw ConfigError("calibration gain must be positive");
  for (std::size_t i = 0; i < config.sensors.size(); ++i) {
    if (static_cast<std::size_t>(config.sensors[i].name) != i) {
      throw ConfigError("sensor table must hold Chest, Knee, Toe, Arch in that order");
    }
    sensing::validate(config.sensors[i]);
  }
}

DisambiguationState disambiguate(DisambiguationState state, int chest_level,
                                 Reading chest_distance, bool moving_back) {
  if (state.prev_level > 0 && chest_level == 0) {
    state.inferred.reset();
    if (!moving_back) state.pending = state.prev_distance;
  } else if (state.prev_level == 0 && chest_level > 0) {
    if (moving_back) {
      if (state.pending) {
        state.inferred = classify::infer_upper_level(*state.pending);
        state.pending.reset();
      }
    } else {
      state.pending.reset();
      state.inferred.reset();
    }
  }
  state.prev_level = chest_level;
  state.prev_distance = chest_level > 0 ? chest_distance : std::nullopt;
  return state;
}

Advisory fuse(const BuzzerFrame& frame, const Flags& flags) {
  if (frame.pothole >= 3) return {AdvisoryKind::StopImmediately};
  if (frame.pothole == 2) return {AdvisoryKind::AlternatePath};
  if (flags.upstairs) return {AdvisoryKind::UpStairsAhead};
  if (flags.inferred) return {AdvisoryKind::UpperObstacle, *flags.inferred};
  if (frame.knee > 0) return {AdvisoryKind::KneeObstacleAhead};
  if (frame.toe > 0) return {AdvisoryKind::ToeObstacleAhead};
  if (frame.chest > 0 || frame.pothole > 0 || flags.downstep) {
    return {AdvisoryKind::MoveForwardCaution};
  }
  return {AdvisoryKind::MoveForward};
}

FrameOutput tick(const geometry::SagittalScene& scene, UserState& user, const SimConfig& config,
                 PipelineState& state) {
  FrameOutput out;
  out.tick = state.tick;
  out.t_ms = static_cast<double>(state.tick) * config.tick_ms;
  out.user_x = user.x;

  for (SensorName name : sensing::kFiringOrder) {
    const auto& spec = config.sensor(name);
    Reading r = sensing::measure(scene, spec, user.x, config.temp, config.temp_cal, config.calib,
                                 config.n_rays);
    if (r && config.jitter > 0.0) {
      r = std::clamp(*r + config.jitter * symmetric_unit(state.rng), spec.min_range,
                     spec.max_range);
    }
    out.readings[static_cast<std::size_t>(name)] = r;
  }

  const Reading chest = out.readings[static_cast<std::size_t>(SensorName::Chest)];
  const Reading knee = out.readings[static_cast<std::size_t>(SensorName::Knee)];
  const Reading toe = out.readings[static_cast<std::size_t>(SensorName::Toe)];
  const Reading down = out.readings[static_cast<std::size_t>(SensorName::Arch)];

  const Reading chest_gated = gate(chest, config.sensor(SensorName::Chest).sarl);
  out.frame.chest = classify::classify_chest(chest_gated);
  out.frame.knee = classify::classify_knee(gate(knee, config.sensor(SensorName::Knee).sarl));
  out.frame.toe = classify::classify_toe(gate(toe, config.sensor(SensorName::Toe).sarl));

  // No floor echo at all means a drop deeper than the ranger can see.
  const auto& arch = config.sensor(SensorName::Arch);
  const double depth = down ? std::max(0.0, *down - arch.mount_height)
                            : std::numeric_limits<double>::infinity();
  out.frame.pothole = depth > arch.sarl ? classify::classify_depth(depth).level : 0;
  out.flags.downstep = classify::is_downstep(depth);

  out.flags.upstairs = classify::detect_upstairs(knee, toe).upstairs;

  state.disambiguation =
      disambiguate(state.disambiguation, out.frame.chest, chest_gated, user.speed < 0.0);
  out.flags.inferred = state.disambiguation.inferred;

  debounce(state.debounce, fuse(out.frame, out.flags), config.debounce_ticks);
  out.advisory = state.debounce.current;

  user.x += user.speed * config.tick_ms / 1000.0;
  ++state.tick;
  return out;
}

std::int64_t segment_ticks(const WalkSegment& segment, double tick_ms) {
  return std::llround(segment.seconds * 1000.0 / tick_ms);
}

std::vector<FrameOutput> run_scenario(const geometry::SagittalScene& scene,
                                      const Trajectory& trajectory, const SimConfig& config) {
  geometry::validate(scene);
  validate(config);
  validate(trajectory, config);

  PipelineState state(config.seed);
  UserState user{trajectory.start_x, 0.0, trajectory.user_height};
  std::vector<FrameOutput> frames;

  // Positions are recomputed from the segment start each tick so long walks
  // do not accumulate rounding.
  double segment_x = trajectory.start_x;
  for (const WalkSegment& segment : trajectory.segments) {
    const std::int64_t n = segment_ticks(segment, config.tick_ms);
    const double step = segment.speed * config.tick_ms / 1000.0;
    user.speed = segment.speed;
    for (std::int64_t k = 0; k < n; ++k) {
      user.x = segment_x + step * static_cast<double>(k);
      frames.push_back(tick(scene, user, config, state));
    }
    segment_x += step * static_cast<double>(n);
  }
  return frames;
}

}  // namespace sonarcane::pipeline
