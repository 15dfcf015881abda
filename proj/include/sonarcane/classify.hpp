// Distance-band buzzer levels, up-stair detection, pothole grading and the
// upper-obstacle height inference.
//
// Every band is closed on its near side: a distance sitting exactly on a
// boundary takes the closer (louder) band.
#pragma once

#include <string>

#include "sonarcane/sensing.hpp"

namespace sonarcane::classify {

using sensing::Reading;

/// Buzzer levels for one tick. 0 is off; larger is louder.
struct BuzzerFrame {
  int chest = 0;    // BrzC, 0..4
  int knee = 0;     // BrzK, 0..3
  int toe = 0;      // BrzT, 0..3
  int pothole = 0;  // BrzP, 0..3

  bool operator==(const BuzzerFrame&) const = default;
};

enum class UpperLevel { Head, Chest, Waist, Unknown };

enum class AdvisoryKind {
  MoveForward,
  MoveForwardCaution,
  UpStairsAhead,
  KneeObstacleAhead,
  ToeObstacleAhead,
  AlternatePath,
  StopImmediately,
  UpperObstacle,
};

struct Advisory {
  AdvisoryKind kind = AdvisoryKind::MoveForward;
  UpperLevel upper = UpperLevel::Unknown;  // meaningful for UpperObstacle only

  bool operator==(const Advisory& o) const {
    return kind == o.kind && (kind != AdvisoryKind::UpperObstacle || upper == o.upper);
  }
};

std::string to_string(UpperLevel level);
std::string to_string(const Advisory& advisory);

/// 150 / 87 / 60 / 40 cm bands -> 1..4.
int classify_chest(Reading r);
/// 60 / 30 / 10 cm bands -> 1..3.
int classify_knee(Reading r);
/// 40 / 20 / 10 cm bands -> 1..3.
int classify_toe(Reading r);

/// Reflection gates for the stair test; distinct from the proximity bands.
struct StairGates {
  double knee = 40.0;
  double toe = 20.0;
  double window_lo = 24.0;  // exclusive
  double window_hi = 26.0;  // exclusive
};

struct StairResult {
  bool upstairs = false;
  bool knee_bit = false;
  bool toe_bit = false;

  bool operator==(const StairResult&) const = default;
};

/// Knee and toe both reflect inside their gates and the knee reads a tread
/// length further than the toe: a rising step. Otherwise the bits just say
/// which of the two saw something.
StairResult detect_upstairs(Reading knee, Reading toe, const StairGates& gates = {});

struct DepthResult {
  int level = 0;
  Advisory advisory;
};

/// Pothole level from depth below nominal ground (negative clamps to 0).
DepthResult classify_depth(double depth);

/// Depth in [15, 30] cm reads as a descending stair step.
bool is_downstep(double depth);

/// Height of an obstacle that dropped out of the chest cone, from the last
/// distance at which the chest buzzer was still sounding.
UpperLevel infer_upper_level(double last_active_distance);

}  // namespace sonarcane::classify
