// CSV trace of a scenario run.
//
//   tick,t_ms,user_x,d_chest,d_knee,d_toe,d_down,brzC,brzK,brzT,brzP,
//   upstairs,downstep,inferred,advisory
//
// Distances carry one decimal, NoEcho prints as `-`, t_ms is the shortest
// exact decimal. Output depends only on the frames, never on locale.
#pragma once

#include <ostream>
#include <span>
#include <string>

#include "sonarcane/pipeline.hpp"

namespace sonarcane::trace {

inline constexpr const char* kHeader =
    "tick,t_ms,user_x,d_chest,d_knee,d_toe,d_down,brzC,brzK,brzT,brzP,upstairs,downstep,"
    "inferred,advisory";

std::string format_row(const pipeline::FrameOutput& frame);

void write(std::ostream& out, std::span<const pipeline::FrameOutput> frames);

std::string format(std::span<const pipeline::FrameOutput> frames);

}  // namespace sonarcane::trace
