#include "sonarcane/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "sonarcane/error.hpp"
#include "text_util.hpp"

namespace sonarcane::scenario {

using detail::parse_double;
using detail::shortest;
using geometry::GroundSegment;
using geometry::Rect;

namespace {

struct GroundLine {
  GroundSegment segment;
  int line;
};

std::vector<double> numbers(const std::vector<std::string_view>& tokens, std::size_t first,
                            std::size_t count, int line) {
  if (tokens.size() != first + count) {
    throw ParseError(line, std::string(tokens[0]) + " takes " + std::to_string(count) +
                               " values");
  }
  std::vector<double> out;
  for (std::size_t i = first; i < tokens.size(); ++i) {
    auto v = parse_double(tokens[i]);
    if (!v) throw ParseError(line, "not a number: " + std::string(tokens[i]));
    out.push_back(*v);
  }
  return out;
}

void apply_config(ScenarioFile& s, std::string_view key, std::string_view value, int line) {
  auto num = [&]() {
    auto v = parse_double(value);
    if (!v) throw ParseError(line, "not a number: " + std::string(value));
    return *v;
  };
  auto integer = [&]() {
    auto v = detail::parse_int<int>(value);
    if (!v) throw ParseError(line, "not an integer: " + std::string(value));
    return *v;
  };
  auto& c = s.config;
  if (key == "tick_ms") {
    c.tick_ms = num();
  } else if (key == "temp") {
    c.temp = num();
  } else if (key == "temp_cal") {
    c.temp_cal = num();
  } else if (key == "rays") {
    c.n_rays = integer();
  } else if (key == "debounce") {
    c.debounce_ticks = integer();
  } else if (key == "jitter") {
    c.jitter = num();
  } else if (key == "seed") {
    auto v = detail::parse_int<std::uint64_t>(value);
    if (!v) throw ParseError(line, "not an unsigned integer: " + std::string(value));
    c.seed = *v;
  } else if (key == "start_x") {
    s.trajectory.start_x = num();
  } else if (key == "user_height") {
    s.trajectory.user_height = num();
  } else if (key == "divergence") {
    const double half = num() / 2.0;
    for (auto& spec : c.sensors) spec.half_angle = half;
  } else if (key == "min_range") {
    const double v = num();
    for (auto& spec : c.sensors) spec.min_range = v;
  } else if (key == "max_range") {
    const double v = num();
    for (auto& spec : c.sensors) spec.max_range = v;
  } else if (key == "calib_gain") {
    c.calib.gain = num();
  } else if (key == "calib_offset") {
    c.calib.offset = num();
  } else {
    throw ParseError(line, "unknown CONFIG key: " + std::string(key));
  }
}

}  // namespace

ScenarioFile parse_scenario(std::string_view text) {
  ScenarioFile s;
  std::vector<GroundLine> ground;
  int line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const auto tokens = detail::tokenize(text.substr(pos, end - pos));
    ++line;
    pos = end + 1;
    if (tokens.empty()) continue;

    const std::string_view directive = tokens[0];
    if (directive == "CONFIG") {
      if (tokens.size() != 3) throw ParseError(line, "CONFIG takes a key and a value");
      apply_config(s, tokens[1], tokens[2], line);
    } else if (directive == "SENSOR") {
      if (tokens.size() != 4) throw ParseError(line, "SENSOR takes name height sarl");
      auto name = sensing::sensor_from_string(tokens[1]);
      if (!name) throw ParseError(line, "unknown sensor: " + std::string(tokens[1]));
      const auto v = numbers(tokens, 2, 2, line);
      auto& spec = s.config.sensor(*name);
      spec.mount_height = v[0];
      spec.sarl = v[1];
    } else if (directive == "OBSTACLE") {
      const auto v = numbers(tokens, 1, 4, line);
      const Rect r{v[0], v[1], v[2], v[3]};
      if (!(r.x0 < r.x1) || !(r.z0 < r.z1)) {
        throw ParseError(line, "obstacle needs x0 < x1 and z0 < z1");
      }
      s.scene.obstacles.push_back(r);
    } else if (directive == "GROUND") {
      const auto v = numbers(tokens, 1, 3, line);
      const GroundSegment g{v[0], v[1], v[2]};
      if (!(g.x0 < g.x1)) throw ParseError(line, "ground segment needs x0 < x1");
      for (const auto& other : ground) {
        if (g.x0 < other.segment.x1 && other.segment.x0 < g.x1) {
          throw ParseError(line, "ground segment overlaps the one on line " +
                                     std::to_string(other.line));
        }
      }
      ground.push_back({g, line});
    } else if (directive == "WALK") {
      const auto v = numbers(tokens, 1, 2, line);
      if (v[1] < 0.0) throw ParseError(line, "WALK duration must be non-negative");
      s.trajectory.segments.push_back({v[0], v[1]});
    } else {
      throw ParseError(line, "unknown directive: " + std::string(directive));
    }
  }

  std::stable_sort(ground.begin(), ground.end(), [](const GroundLine& a, const GroundLine& b) {
    return a.segment.x0 < b.segment.x0;
  });
  for (const auto& g : ground) s.scene.ground.push_back(g.segment);

  pipeline::validate(s.config);
  return s;
}

std::string print_scenario(const ScenarioFile& s) {
  std::ostringstream out;
  const auto& c = s.config;
  const auto& chest = c.sensor(sensing::SensorName::Chest);
  out << "CONFIG tick_ms " << shortest(c.tick_ms) << '\n'
      << "CONFIG temp " << shortest(c.temp) << '\n'
      << "CONFIG temp_cal " << shortest(c.temp_cal) << '\n'
      << "CONFIG rays " << c.n_rays << '\n'
      << "CONFIG debounce " << c.debounce_ticks << '\n'
      << "CONFIG jitter " << shortest(c.jitter) << '\n'
      << "CONFIG seed " << c.seed << '\n'
      << "CONFIG start_x " << shortest(s.trajectory.start_x) << '\n'
      << "CONFIG user_height " << shortest(s.trajectory.user_height) << '\n'
      << "CONFIG divergence " << shortest(chest.half_angle * 2.0) << '\n'
      << "CONFIG min_range " << shortest(chest.min_range) << '\n'
      << "CONFIG max_range " << shortest(chest.max_range) << '\n'
      << "CONFIG calib_gain " << shortest(c.calib.gain) << '\n'
      << "CONFIG calib_offset " << shortest(c.calib.offset) << '\n';
  for (const auto& spec : c.sensors) {
    out << "SENSOR " << sensing::to_string(spec.name) << ' ' << shortest(spec.mount_height) << ' '
        << shortest(spec.sarl) << '\n';
  }
  for (const auto& r : s.scene.obstacles) {
    out << "OBSTACLE " << shortest(r.x0) << ' ' << shortest(r.x1) << ' ' << shortest(r.z0) << ' '
        << shortest(r.z1) << '\n';
  }
  for (const auto& g : s.scene.ground) {
    out << "GROUND " << shortest(g.x0) << ' ' << shortest(g.x1) << ' ' << shortest(g.dz) << '\n';
  }
  for (const auto& w : s.trajectory.segments) {
    out << "WALK " << shortest(w.speed) << ' ' << shortest(w.seconds) << '\n';
  }
  return out.str();
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace sonarcane::scenario
