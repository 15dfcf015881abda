#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "oracle/random_scene.hpp"
#include "sonarcane/error.hpp"
#include "sonarcane/scenario.hpp"
#include "sonarcane/trace.hpp"

using namespace sonarcane;
using namespace sonarcane::scenario;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = SONARCANE_SOURCE_DIR;

int error_line(std::string_view text) {
  try {
    parse_scenario(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("directives") {
  auto s = parse_scenario("OBSTACLE 100 102 0 200\n");
  REQUIRE(s.scene.obstacles.size() == 1);
  CHECK(s.scene.obstacles[0] == geometry::Rect{100, 102, 0, 200});

  s = parse_scenario("GROUND 500 560 -30\n");
  REQUIRE(s.scene.ground.size() == 1);
  CHECK(s.scene.ground[0].dz == -30);

  s = parse_scenario("WALK 140 3.0\n");
  REQUIRE(s.trajectory.segments.size() == 1);
  CHECK(pipeline::segment_ticks(s.trajectory.segments[0], s.config.tick_ms) == 100);

  s = parse_scenario(
      "# header\nCONFIG tick_ms 25\nCONFIG temp 31.5\nSENSOR Knee 55 58  # lower knee\n"
      "CONFIG divergence 40\nCONFIG seed 18446744073709551615\n");
  CHECK(s.config.tick_ms == 25);
  CHECK(s.config.temp == 31.5);
  CHECK(s.config.sensor(sensing::SensorName::Knee).mount_height == 55);
  CHECK(s.config.sensor(sensing::SensorName::Knee).sarl == 58);
  CHECK(s.config.sensor(sensing::SensorName::Arch).half_angle == 20);
  CHECK(s.config.seed == 18446744073709551615ull);
}

TEST_CASE("defaults fill omissions") {
  const auto s = parse_scenario("");
  CHECK(s.config == pipeline::SimConfig{});
  CHECK(s.scene.obstacles.empty());
  CHECK(s.trajectory.start_x == 0);
}

TEST_CASE("ground lines are sorted") {
  const auto s = parse_scenario("GROUND 300 320 -5\nGROUND 100 120 -10\n");
  CHECK(s.scene.ground[0].x0 == 100);
  CHECK(s.scene.ground[1].x0 == 300);
}

TEST_CASE("errors carry the offending line") {
  CHECK(error_line("WALK 1 1\nJUMP 3\n") == 2);
  CHECK(error_line("CONFIG colour red\n") == 1);
  CHECK(error_line("\n\nOBSTACLE 10 5 0 1\n") == 3);
  CHECK(error_line("OBSTACLE 1 5 3 3\n") == 1);
  CHECK(error_line("GROUND 0 50 -5\n# c\nGROUND 40 60 -5\n") == 3);
  CHECK(error_line("OBSTACLE 1 two 0 1\n") == 1);
  CHECK(error_line("OBSTACLE 1 2 0\n") == 1);
  CHECK(error_line("SENSOR Elbow 90 100\n") == 1);
  CHECK(error_line("CONFIG rays 3.5\n") == 1);
  CHECK(error_line("WALK 10 -1\n") == 1);
  CHECK_THROWS_AS(parse_scenario("CONFIG rays 4\n"), ConfigError);
  CHECK_THROWS_AS(parse_scenario("SENSOR Chest 150 500\n"), ConfigError);
}

TEST_CASE("print then parse returns the same scenario") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    ScenarioFile s;
    const auto c = oracle::random_case(rng);
    s.scene = c.scene;
    // Ground must be sorted and disjoint, which random_case guarantees.
    s.config.tick_ms = oracle::uniform(rng, 5, 60);
    s.config.temp = oracle::uniform(rng, -10, 40);
    s.config.temp_cal = oracle::uniform(rng, -10, 40);
    s.config.n_rays = 3 + 2 * static_cast<int>(oracle::uniform(rng, 0, 30));
    s.config.debounce_ticks = 1 + static_cast<int>(oracle::uniform(rng, 0, 5));
    s.config.jitter = oracle::uniform(rng, 0, 3);
    s.config.seed = rng();
    s.config.calib = {oracle::uniform(rng, 0.9, 1.1), oracle::uniform(rng, -3, 3)};
    const double half = oracle::uniform(rng, 5, 25);
    for (auto& spec : s.config.sensors) spec.half_angle = half;
    s.config.sensor(sensing::SensorName::Chest).mount_height = oracle::uniform(rng, 120, 160);
    s.config.sensor(sensing::SensorName::Chest).sarl = oracle::uniform(rng, 100, 300);
    s.trajectory.start_x = oracle::uniform(rng, -100, 100);
    s.trajectory.user_height = oracle::uniform(rng, 165, 200);
    for (int k = 0; k < 3; ++k) {
      s.trajectory.segments.push_back({oracle::uniform(rng, -200, 200), oracle::uniform(rng, 0, 3)});
    }
    const auto text = print_scenario(s);
    CHECK(parse_scenario(text) == s);
    CHECK(print_scenario(parse_scenario(text)) == text);
  }
}

TEST_CASE("trace format") {
  const auto s = parse_scenario("OBSTACLE 100 102 0 200\nWALK 0 0.09\n");
  const auto frames = pipeline::run_scenario(s.scene, s.trajectory, s.config);
  const auto text = trace::format(frames);
  std::istringstream in(text);
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  CHECK(header == trace::kHeader);
  CHECK(row0 == "0,0,0.0,100.0,100.0,100.0,10.0,1,0,0,0,0,0,None,MoveForward");
  CHECK(row1 == "1,30,0.0,100.0,100.0,100.0,10.0,1,0,0,0,0,0,None,MoveForwardCaution");

  const auto empty = parse_scenario("CONFIG tick_ms 12.5\nWALK 0 0.05\n");
  const auto quiet = trace::format(pipeline::run_scenario(empty.scene, empty.trajectory, empty.config));
  CHECK(quiet.find("\n3,37.5,0.0,-,-,-,10.0,0,0,0,0,0,0,None,MoveForward\n") != std::string::npos);
}

TEST_CASE("negative zero prints as zero") {
  pipeline::FrameOutput f;
  f.user_x = -0.01;
  CHECK(trace::format_row(f).rfind("0,0,0.0,", 0) == 0);
}

TEST_CASE("bundled scenarios match their golden traces") {
  int checked = 0;
  for (const auto& entry : fs::directory_iterator(kSource / "scenarios")) {
    if (entry.path().extension() != ".scn") continue;
    CAPTURE(entry.path().string());
    const auto s = load_scenario(entry.path());
    const auto text = trace::format(pipeline::run_scenario(s.scene, s.trajectory, s.config));
    const fs::path golden = kSource / "tests" / "golden" / (entry.path().stem().string() + ".csv");
    REQUIRE(fs::exists(golden));
    CHECK(text == slurp(golden));
    ++checked;
  }
  CHECK(checked >= 6);
}
