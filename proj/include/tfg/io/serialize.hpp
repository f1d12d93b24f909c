#pragma once

#include <json.hpp>

#include "tfg/detect.hpp"
#include "tfg/phantom.hpp"
#include "tfg/types.hpp"

namespace tfg::io {

using json = nlohmann::json;

/// Row-major run-length encoding: {"width", "height", "runs": [[start, len], ...]}.
json mask_to_rle_json(const BinaryMask& mask);
BinaryMask mask_from_rle_json(const json& j);

json ground_truth_to_json(const GroundTruth& gt);

json pause_report_to_json(const PauseReport& report);
const char* pause_class_name(PauseClass c);

/// Landmark roles carry the overlay color scheme: quadrant minima are
/// red/blue/green/yellow (left/right/top/bottom), maxima cyan/magenta.
json landmarks_to_json(const LandmarkSet& set);
const char* quadrant_name(Quadrant q);
const char* quadrant_color(Quadrant q);

/// Phantom specs as accepted by the CLI `phantom` subcommand. The JSON
/// object must carry "type": "pendulum" or "ring"; absent fields take
/// the spec defaults. For the pendulum, "period" (frames) may be given
/// instead of "angular_frequency".
PendulumSpec pendulum_spec_from_json(const json& j);
RingPhantomSpec ring_spec_from_json(const json& j);
json pendulum_spec_to_json(const PendulumSpec& spec);
json ring_spec_to_json(const RingPhantomSpec& spec);

}  // namespace tfg::io
