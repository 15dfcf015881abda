#include "sonarcane/classify.hpp"

#include <algorithm>

namespace sonarcane::classify {

std::string to_string(UpperLevel level) {
  switch (level) {
    case UpperLevel::Head: return "Head";
    case UpperLevel::Chest: return "Chest";
    case UpperLevel::Waist: return "Waist";
    case UpperLevel::Unknown: return "Unknown";
  }
  return "?";
}

std::string to_string(const Advisory& advisory) {
  switch (advisory.kind) {
    case AdvisoryKind::MoveForward: return "MoveForward";
    case AdvisoryKind::MoveForwardCaution: return "MoveForwardCaution";
    case AdvisoryKind::UpStairsAhead: return "UpStairsAhead";
    case AdvisoryKind::KneeObstacleAhead: return "KneeObstacleAhead";
    case AdvisoryKind::ToeObstacleAhead: return "ToeObstacleAhead";
    case AdvisoryKind::AlternatePath: return "AlternatePath";
    case AdvisoryKind::StopImmediately: return "StopImmediately";
    case AdvisoryKind::UpperObstacle: return "UpperObstacle:" + to_string(advisory.upper);
  }
  return "?";
}

int classify_chest(Reading r) {
  if (!r || *r > 150.0) return 0;
  const double d = *r;
  if (d > 87.0) return 1;
  if (d > 60.0) return 2;
  if (d > 40.0) return 3;
  return 4;
}

int classify_knee(Reading r) {
  if (!r || *r > 60.0) return 0;
  const double d = *r;
  if (d > 30.0) return 1;
  if (d > 10.0) return 2;
  return 3;
}

int classify_toe(Reading r) {
  if (!r || *r > 40.0) return 0;
  const double d = *r;
  if (d > 20.0) return 1;
  if (d > 10.0) return 2;
  return 3;
}

StairResult detect_upstairs(Reading knee, Reading toe, const StairGates& gates) {
  StairResult out;
  out.knee_bit = knee && *knee <= gates.knee;
  out.toe_bit = toe && *toe <= gates.toe;
  if (out.knee_bit && out.toe_bit) {
    const double tread = *knee - *toe;
    out.upstairs = tread > gates.window_lo && tread < gates.window_hi;
  }
  return out;
}

DepthResult classify_depth(double depth) {
  depth = std::max(depth, 0.0);
  if (depth <= 10.0) return {0, {AdvisoryKind::MoveForward}};
  if (depth <= 20.0) return {1, {AdvisoryKind::MoveForwardCaution}};
  if (depth <= 40.0) return {2, {AdvisoryKind::AlternatePath}};
  return {3, {AdvisoryKind::StopImmediately}};
}

bool is_downstep(double depth) { return depth >= 15.0 && depth <= 30.0; }

UpperLevel infer_upper_level(double d) {
  if (d > 87.0 && d <= 150.0) return UpperLevel::Waist;
  if (d > 60.0 && d <= 87.0) return UpperLevel::Head;
  if (d > 40.0 && d <= 60.0) return UpperLevel::Chest;
  return UpperLevel::Unknown;
}

}  // namespace sonarcane::classify
