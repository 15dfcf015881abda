#include "sonarcane/trace.hpp"

#include <cstdio>
#include <sstream>

#include "text_util.hpp"

namespace sonarcane::trace {
namespace {

std::string fixed1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  std::string s(buf);
  if (s == "-0.0") s = "0.0";
  return s;
}

std::string distance(const sensing::Reading& r) { return r ? fixed1(*r) : "-"; }

}  // namespace

std::string format_row(const pipeline::FrameOutput& f) {
  std::string row;
  row.reserve(128);
  auto field = [&row](const std::string& s) {
    if (!row.empty()) row += ',';
    row += s;
  };
  field(std::to_string(f.tick));
  field(detail::shortest(f.t_ms));
  field(fixed1(f.user_x));
  for (const auto& r : f.readings) field(distance(r));
  field(std::to_string(f.frame.chest));
  field(std::to_string(f.frame.knee));
  field(std::to_string(f.frame.toe));
  field(std::to_string(f.frame.pothole));
  field(f.flags.upstairs ? "1" : "0");
  field(f.flags.downstep ? "1" : "0");
  field(f.flags.inferred ? classify::to_string(*f.flags.inferred) : "None");
  field(classify::to_string(f.advisory));
  return row;
}

void write(std::ostream& out, std::span<const pipeline::FrameOutput> frames) {
  out << kHeader << '\n';
  for (const auto& f : frames) out << format_row(f) << '\n';
}

std::string format(std::span<const pipeline::FrameOutput> frames) {
  std::ostringstream out;
  write(out, frames);
  return out.str();
}

}  // namespace sonarcane::trace
