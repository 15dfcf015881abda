// Sensor readings from scene geometry: range limits, temperature bias and
// the actual-vs-measured calibration line.
#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sonarcane/geometry.hpp"

namespace sonarcane::sensing {

enum class SensorName { Chest, Knee, Toe, Arch };

inline constexpr std::array<SensorName, 4> kFiringOrder = {
    SensorName::Chest, SensorName::Knee, SensorName::Toe, SensorName::Arch};

std::string_view to_string(SensorName name);
std::optional<SensorName> sensor_from_string(std::string_view text);

/// One ultrasonic transducer.
///
/// `sarl` is the solid-angle reference level. For the forward sensors it is
/// the distance past which echoes are ignored; for the downward arch
/// sensor it is the smallest depth reported as a pothole.
struct SensorSpec {
  SensorName name = SensorName::Chest;
  double mount_height = 150.0;
  geometry::Aim aim = geometry::Aim::Forward;
  double half_angle = 15.0;
  double min_range = 3.0;
  double max_range = 300.0;
  double sarl = 150.0;

  bool operator==(const SensorSpec&) const = default;
};

/// Chest 150 / knee 50 / toe 5 cm forward, arch 10 cm looking down.
SensorSpec default_spec(SensorName name);

/// Throws ConfigError when the spec breaks its range ordering.
void validate(const SensorSpec& spec);

/// Echo distance in cm; nullopt is "no echo".
using Reading = std::optional<double>;

/// measured = gain * actual + offset
struct Calibration {
  double gain = 1.0;
  double offset = 0.0;

  bool operator==(const Calibration&) const = default;
};

struct CalibrationPair {
  double actual = 0.0;
  double measured = 0.0;
};

/// Speed of sound in air, cm/s, linear in temperature (deg C).
double speed_of_sound(double temp_c);

/// Factor applied to a true distance by a ranger that converts time of
/// flight using the speed of sound at `temp_cal` while the air is actually
/// at `temp_actual`.
double temperature_bias(double temp_actual, double temp_cal);

/// Reading of `spec` mounted on a user standing at `user_x`.
///
/// The exact cone minimum is scaled by the temperature bias and passed
/// through `calib`. A true distance beyond max_range (or no hit) is NoEcho;
/// the reported value is clamped into [min_range, max_range]. A sensor
/// buried in raised ground also reads NoEcho.
Reading measure(const geometry::SagittalScene& scene, const SensorSpec& spec, double user_x,
                double temp_actual, double temp_cal, const Calibration& calib,
                int n_rays = 31);

/// Ordinary least-squares line through (actual, measured).
/// Throws DegenerateFit with fewer than two pairs or no spread in `actual`.
Calibration fit_calibration(std::span<const CalibrationPair> pairs);

/// Inverse of the calibration line.
double correct(const Calibration& calib, double measured);

/// Parses `actual measured` lines; `#` starts a comment.
std::vector<CalibrationPair> parse_calibration(std::string_view text);

/// Reads and fits a calibration file.
Calibration load_calibration(const std::filesystem::path& path);

}  // namespace sonarcane::sensing
