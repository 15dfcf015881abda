// sonarcane: run walk scenarios and check the classifier tables.
#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "sonarcane/error.hpp"
#include "sonarcane/geometry.hpp"
#include "sonarcane/pipeline.hpp"
#include "sonarcane/scenario.hpp"
#include "sonarcane/sensing.hpp"
#include "sonarcane/tables.hpp"
#include "sonarcane/trace.hpp"

namespace fs = std::filesystem;
using namespace sonarcane;

namespace {

struct RunFlags {
  std::optional<double> tick_ms;
  std::optional<double> temp;
  std::optional<double> temp_cal;
  std::optional<std::string> calib;
  std::optional<int> rays;
  std::optional<std::uint64_t> seed;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--tick-ms", f.tick_ms, "Tick period in ms (default 30)");
  cmd->add_option("--temp", f.temp, "Actual air temperature, deg C");
  cmd->add_option("--temp-cal", f.temp_cal, "Calibration temperature, deg C");
  cmd->add_option("--calib", f.calib, "Calibration file of `actual measured` pairs")
      ->check(CLI::ExistingFile);
  cmd->add_option("--rays", f.rays, "Uniform rays per cone (odd)");
  cmd->add_option("--seed", f.seed, "Seed for reading jitter");
}

scenario::ScenarioFile load_with_flags(const fs::path& path, const RunFlags& f) {
  auto s = scenario::load_scenario(path);
  auto& c = s.config;
  if (f.tick_ms) c.tick_ms = *f.tick_ms;
  if (f.temp) c.temp = *f.temp;
  if (f.temp_cal) c.temp_cal = *f.temp_cal;
  if (f.calib) c.calib = sensing::load_calibration(*f.calib);
  if (f.rays) c.n_rays = *f.rays;
  if (f.seed) c.seed = *f.seed;
  return s;
}

std::string run_to_string(const fs::path& path, const RunFlags& f) {
  const auto s = load_with_flags(path, f);
  const auto frames = pipeline::run_scenario(s.scene, s.trajectory, s.config);
  return trace::format(frames);
}

bool write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ultrasonic walking-aid simulator"};
  app.require_subcommand(1);

  RunFlags run_flags;
  std::string scenario_path;
  std::optional<std::string> out_path;
  auto* run = app.add_subcommand("run", "Simulate a scenario and write its trace");
  run->add_option("scenario", scenario_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_path, "Trace file (default stdout)");
  add_run_flags(run, run_flags);

  RunFlags batch_flags;
  std::vector<std::string> batch_paths;
  std::string out_dir;
  auto* batch = app.add_subcommand("batch", "Run several scenarios in parallel");
  batch->add_option("scenarios", batch_paths, "Scenario files")->required()->check(CLI::ExistingFile);
  batch->add_option("--out-dir", out_dir, "Directory for <name>.csv traces")->required();
  add_run_flags(batch, batch_flags);

  auto* verify = app.add_subcommand("verify-tables", "Sweep every classifier against its table");

  double h_upper = 0.0;
  double h_lower = 0.0;
  double divergence = 30.0;
  auto* overlap = app.add_subcommand("overlap", "Distance where two stacked cones meet");
  overlap->add_option("h_upper", h_upper, "Upper sensor height, cm")->required();
  overlap->add_option("h_lower", h_lower, "Lower sensor height, cm")->required();
  overlap->add_option("--divergence", divergence, "Full cone angle, degrees");

  std::string calib_path;
  auto* fit = app.add_subcommand("fit-calib", "Fit measured = gain * actual + offset");
  fit->add_option("file", calib_path, "Calibration pairs")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const std::string text = run_to_string(scenario_path, run_flags);
      if (out_path) {
        if (!write_file(*out_path, text)) {
          std::cerr << "error: cannot write " << *out_path << '\n';
          return 1;
        }
      } else {
        std::cout << text;
      }
    } else if (*batch) {
      fs::create_directories(out_dir);
      std::vector<std::future<std::string>> jobs;
      for (const auto& p : batch_paths) {
        jobs.push_back(std::async(std::launch::async,
                                  [p, &batch_flags] { return run_to_string(p, batch_flags); }));
      }
      int status = 0;
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        const fs::path dest = fs::path(out_dir) / (fs::path(batch_paths[i]).stem().string() + ".csv");
        try {
          if (!write_file(dest, jobs[i].get())) throw std::runtime_error("cannot write " + dest.string());
        } catch (const std::exception& e) {
          std::cerr << "error: " << batch_paths[i] << ": " << e.what() << '\n';
          status = 1;
        }
      }
      return status;
    } else if (*verify) {
      const auto report = tables::verify_tables();
      std::cout << tables::format_report(report);
      return report.pass() ? 0 : 1;
    } else if (*overlap) {
      std::printf("%.1f\n", geometry::overlap_distance(h_upper, h_lower, divergence));
    } else if (*fit) {
      const auto c = sensing::load_calibration(calib_path);
      std::printf("gain %.6f\noffset %.6f\n", c.gain, c.offset);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
