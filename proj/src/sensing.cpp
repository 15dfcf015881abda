#include "sonarcane/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sonarcane/error.hpp"
#include "text_util.hpp"

namespace sonarcane::sensing {

using geometry::Aim;

std::string_view to_string(SensorName name) {
  switch (name) {
    case SensorName::Chest: return "Chest";
    case SensorName::Knee: return "Knee";
    case SensorName::Toe: return "Toe";
    case SensorName::Arch: return "Arch";
  }
  return "?";
}

std::optional<SensorName> sensor_from_string(std::string_view text) {
  for (SensorName n : kFiringOrder) {
    if (text == to_string(n)) return n;
  }
  return std::nullopt;
}

SensorSpec default_spec(SensorName name) {
  SensorSpec s;
  s.name = name;
  switch (name) {
    case SensorName::Chest:
      s.mount_height = 150.0;
      s.sarl = 150.0;
      break;
    case SensorName::Knee:
      s.mount_height = 50.0;
      s.sarl = 60.0;
      break;
    case SensorName::Toe:
      s.mount_height = 5.0;
      s.sarl = 40.0;
      break;
    case SensorName::Arch:
      s.mount_height = 10.0;
      s.aim = Aim::Down;
      s.sarl = 10.0;
      break;
  }
  return s;
}

void validate(const SensorSpec& spec) {
  const std::string who(to_string(spec.name));
  if (!(spec.mount_height > 0.0)) throw ConfigError(who + ": mount height must be positive");
  if (!(spec.half_angle > 0.0 && spec.half_angle < 90.0)) {
    throw ConfigError(who + ": half-angle must lie in (0, 90) degrees");
  }
  if (!(spec.min_range > 0.0 && spec.min_range < spec.max_range)) {
    throw ConfigError(who + ": need 0 < min_range < max_range");
  }
  const bool down = spec.name == SensorName::Arch;
  if (down != (spec.aim == Aim::Down)) {
    throw ConfigError(who + ": only the arch sensor aims down");
  }
  if (spec.aim == Aim::Forward) {
    if (!(spec.min_range < spec.sarl && spec.sarl <= spec.max_range)) {
      throw ConfigError(who + ": need min_range < sarl <= max_range");
    }
  } else if (!(spec.sarl > 0.0)) {
    throw ConfigError(who + ": sarl must be positive");
  }
}

double speed_of_sound(double temp_c) { return 33130.0 + 60.6 * temp_c; }

double temperature_bias(double temp_actual, double temp_cal) {
  return speed_of_sound(temp_cal) / speed_of_sound(temp_actual);
}

Reading measure(const geometry::SagittalScene& scene, const SensorSpec& spec, double user_x,
                double temp_actual, double temp_cal, const Calibration& calib, int n_rays) {
  const geometry::Point origin{user_x, spec.mount_height};
  if (origin.z < geometry::elevation_at(scene, origin.x)) return std::nullopt;

  const auto truth = geometry::cone_min_distance(scene, origin, spec.aim, spec.half_angle, n_rays);
  if (!truth || *truth > spec.max_range) return std::nullopt;

  const double biased = *truth * temperature_bias(temp_actual, temp_cal);
  const double reported = calib.gain * biased + calib.offset;
  return std::clamp(reported, spec.min_range, spec.max_range);
}

Calibration fit_calibration(std::span<const CalibrationPair> pairs) {
  if (pairs.size() < 2) throw DegenerateFit("calibration needs at least two pairs");
  const double n = static_cast<double>(pairs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& p : pairs) {
    mean_x += p.actual;
    mean_y += p.measured;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& p : pairs) {
    sxx += (p.actual - mean_x) * (p.actual - mean_x);
    sxy += (p.actual - mean_x) * (p.measured - mean_y);
  }
  if (!(sxx > 0.0)) throw DegenerateFit("calibration actual distances are all identical");
  const double gain = sxy / sxx;
  if (!(gain > 0.0)) throw DegenerateFit("calibration gain must be positive");
  return {gain, mean_y - gain * mean_x};
}

double correct(const Calibration& calib, double measured) {
  return (measured - calib.offset) / calib.gain;
}

std::vector<CalibrationPair> parse_calibration(std::string_view text) {
  std::vector<CalibrationPair> pairs;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const auto tokens = detail::tokenize(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError(line_no, "expected `actual_cm measured_cm`");
    const auto actual = detail::parse_double(tokens[0]);
    const auto measured = detail::parse_double(tokens[1]);
    if (!actual || !measured) throw ParseError(line_no, "not a number");
    pairs.push_back({*actual, *measured});
  }
  return pairs;
}

Calibration load_calibration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open calibration file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto pairs = parse_calibration(buf.str());
  return fit_calibration(pairs);
}

}  // namespace sonarcane::sensing
