#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sonarcane/classify.hpp"
#include "sonarcane/error.hpp"
#include "sonarcane/geometry.hpp"
#include "sonarcane/pipeline.hpp"
#include "sonarcane/scenario.hpp"
#include "sonarcane/sensing.hpp"
#include "sonarcane/tables.hpp"
#include "sonarcane/trace.hpp"

namespace py = pybind11;
using namespace sonarcane;

namespace {

py::dict frame_to_dict(const pipeline::FrameOutput& f) {
  py::dict d;
  d["tick"] = f.tick;
  d["t_ms"] = f.t_ms;
  d["user_x"] = f.user_x;
  d["chest"] = f.readings[0];
  d["knee"] = f.readings[1];
  d["toe"] = f.readings[2];
  d["down"] = f.readings[3];
  d["brz_chest"] = f.frame.chest;
  d["brz_knee"] = f.frame.knee;
  d["brz_toe"] = f.frame.toe;
  d["brz_pothole"] = f.frame.pothole;
  d["upstairs"] = f.flags.upstairs;
  d["downstep"] = f.flags.downstep;
  d["inferred"] = f.flags.inferred ? py::cast(classify::to_string(*f.flags.inferred)) : py::none();
  d["advisory"] = classify::to_string(f.advisory);
  return d;
}

scenario::ScenarioFile scenario_from(const py::object& source) {
  if (py::isinstance<py::str>(source)) return scenario::parse_scenario(source.cast<std::string>());
  return scenario::load_scenario(source.cast<std::filesystem::path>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ultrasonic cane simulator: cone raycasting, band classification and the tick pipeline.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidRay>(m, "InvalidRay", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DegenerateFit>(m, "DegenerateFit", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::enum_<geometry::Aim>(m, "Aim")
      .value("Forward", geometry::Aim::Forward)
      .value("Down", geometry::Aim::Down);

  py::enum_<sensing::SensorName>(m, "SensorName")
      .value("Chest", sensing::SensorName::Chest)
      .value("Knee", sensing::SensorName::Knee)
      .value("Toe", sensing::SensorName::Toe)
      .value("Arch", sensing::SensorName::Arch);

  py::class_<geometry::SagittalScene>(m, "Scene")
      .def(py::init([](const std::vector<std::tuple<double, double, double, double>>& obstacles,
                       const std::vector<std::tuple<double, double, double>>& ground) {
             geometry::SagittalScene s;
             for (const auto& [x0, x1, z0, z1] : obstacles) s.obstacles.push_back({x0, x1, z0, z1});
             for (const auto& [x0, x1, dz] : ground) s.ground.push_back({x0, x1, dz});
             geometry::validate(s);
             return s;
           }),
           py::arg("obstacles") = std::vector<std::tuple<double, double, double, double>>{},
           py::arg("ground") = std::vector<std::tuple<double, double, double>>{})
      .def_property_readonly("obstacles",
                             [](const geometry::SagittalScene& s) {
                               std::vector<std::tuple<double, double, double, double>> out;
                               for (const auto& r : s.obstacles) out.emplace_back(r.x0, r.x1, r.z0, r.z1);
                               return out;
                             })
      .def_property_readonly("ground", [](const geometry::SagittalScene& s) {
        std::vector<std::tuple<double, double, double>> out;
        for (const auto& g : s.ground) out.emplace_back(g.x0, g.x1, g.dz);
        return out;
      });

  py::class_<sensing::SensorSpec>(m, "SensorSpec")
      .def(py::init(&sensing::default_spec), py::arg("name"))
      .def_readonly("name", &sensing::SensorSpec::name)
      .def_readwrite("mount_height", &sensing::SensorSpec::mount_height)
      .def_readwrite("aim", &sensing::SensorSpec::aim)
      .def_readwrite("half_angle", &sensing::SensorSpec::half_angle)
      .def_readwrite("min_range", &sensing::SensorSpec::min_range)
      .def_readwrite("max_range", &sensing::SensorSpec::max_range)
      .def_readwrite("sarl", &sensing::SensorSpec::sarl);

  py::class_<sensing::Calibration>(m, "Calibration")
      .def(py::init([](double gain, double offset) { return sensing::Calibration{gain, offset}; }),
           py::arg("gain") = 1.0, py::arg("offset") = 0.0)
      .def_readwrite("gain", &sensing::Calibration::gain)
      .def_readwrite("offset", &sensing::Calibration::offset);

  m.def("overlap_distance", &geometry::overlap_distance, py::arg("h_upper"), py::arg("h_lower"),
        py::arg("divergence_deg") = 30.0);
  m.def(
      "raycast",
      [](const geometry::SagittalScene& s, double x, double z, double angle_deg, geometry::Aim aim) {
        return geometry::raycast(s, {{x, z}, geometry::deg_to_rad(angle_deg)}, aim);
      },
      py::arg("scene"), py::arg("x"), py::arg("z"), py::arg("angle_deg"), py::arg("aim"));
  m.def(
      "cone_min_distance",
      [](const geometry::SagittalScene& s, double x, double z, geometry::Aim aim, double half_angle,
         int n_rays) { return geometry::cone_min_distance(s, {x, z}, aim, half_angle, n_rays); },
      py::arg("scene"), py::arg("x"), py::arg("z"), py::arg("aim"), py::arg("half_angle_deg") = 15.0,
      py::arg("n_rays") = 31);

  m.def("speed_of_sound", &sensing::speed_of_sound, py::arg("temp_c"));
  m.def("temperature_bias", &sensing::temperature_bias, py::arg("temp_actual"), py::arg("temp_cal"));
  m.def("measure", &sensing::measure, py::arg("scene"), py::arg("spec"), py::arg("user_x") = 0.0,
        py::arg("temp_actual") = 20.0, py::arg("temp_cal") = 20.0,
        py::arg("calib") = sensing::Calibration{}, py::arg("n_rays") = 31);
  m.def(
      "fit_calibration",
      [](const std::vector<std::pair<double, double>>& pairs) {
        std::vector<sensing::CalibrationPair> p;
        for (const auto& [actual, measured] : pairs) p.push_back({actual, measured});
        return sensing::fit_calibration(p);
      },
      py::arg("pairs"), "Least-squares fit from (actual, measured) pairs.");
  m.def("correct", &sensing::correct, py::arg("calib"), py::arg("measured"));

  m.def("classify_chest", &classify::classify_chest, py::arg("reading"));
  m.def("classify_knee", &classify::classify_knee, py::arg("reading"));
  m.def("classify_toe", &classify::classify_toe, py::arg("reading"));
  m.def(
      "classify_depth",
      [](double depth) {
        const auto r = classify::classify_depth(depth);
        return std::make_pair(r.level, classify::to_string(r.advisory));
      },
      py::arg("depth"));
  m.def("is_downstep", &classify::is_downstep, py::arg("depth"));
  m.def(
      "detect_upstairs",
      [](sensing::Reading knee, sensing::Reading toe) { return classify::detect_upstairs(knee, toe).upstairs; },
      py::arg("knee"), py::arg("toe"));
  m.def(
      "infer_upper_level",
      [](double d) { return classify::to_string(classify::infer_upper_level(d)); }, py::arg("distance"));

  m.def(
      "verify_tables",
      []() {
        const auto report = tables::verify_tables();
        return std::make_pair(report.pass(), tables::format_report(report));
      },
      "Returns (all_match, report_text).");

  m.def(
      "run_scenario",
      [](const py::object& source) {
        const auto s = scenario_from(source);
        py::list rows;
        for (const auto& f : pipeline::run_scenario(s.scene, s.trajectory, s.config)) {
          rows.append(frame_to_dict(f));
        }
        return rows;
      },
      py::arg("source"), "Runs scenario text (str) or a scenario file (path); one dict per tick.");
  m.def(
      "trace",
      [](const py::object& source) {
        const auto s = scenario_from(source);
        return trace::format(pipeline::run_scenario(s.scene, s.trajectory, s.config));
      },
      py::arg("source"), "Trace CSV for scenario text (str) or a scenario file (path).");

}
