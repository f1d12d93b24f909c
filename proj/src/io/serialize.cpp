#include "tfg/io/serialize.hpp"

#include <cmath>

namespace tfg::io {

json mask_to_rle_json(const BinaryMask& mask) {
  json runs = json::array();
  const int w = mask.width();
  const int h = mask.height();
  int start = -1;
  const int total = w * h;
  for (int i = 0; i <= total; ++i) {
    const bool set = i < total && mask.at(i % w, i / w);
    if (set && start < 0) start = i;
    if (!set && start >= 0) {
      runs.push_back(json::array({start, i - start}));
      start = -1;
    }
  }
  return json{{"width", w}, {"height", h}, {"runs", runs}};
}

BinaryMask mask_from_rle_json(const json& j) {
  const int w = j.at("width").get<int>();
  const int h = j.at("height").get<int>();
  if (w <= 0 || h <= 0) throw IoError("RLE mask: bad dimensions");
  BinaryMask mask = BinaryMask::zeros(h, w);
  for (const auto& run : j.at("runs")) {
    const int start = run.at(0).get<int>();
    const int len = run.at(1).get<int>();
    if (start < 0 || len < 0 || start + len > w * h)
      throw IoError("RLE mask: run outside grid");
    for (int i = start; i < start + len; ++i) mask.bits(i / w, i % w) = true;
  }
  return mask;
}

namespace {

json vec2_json(const Vec2& v) { return json::array({v.x, v.y}); }

}  // namespace

json ground_truth_to_json(const GroundTruth& gt) {
  json j{{"fps", gt.fps}, {"frames", gt.frames}};
  json tracks = json::array();
  for (const auto& t : gt.tracks) {
    json positions = json::array();
    for (const auto& p : t.positions) positions.push_back(vec2_json(p));
    tracks.push_back(json{{"label", t.label}, {"positions", positions}});
  }
  j["tracks"] = tracks;
  if (gt.pendulum) {
    const auto& p = *gt.pendulum;
    json offsets = json::array();
    for (Eigen::Index i = 0; i < p.x_offset.size(); ++i)
      offsets.push_back(p.x_offset[i]);
    j["pendulum"] = json{{"equilibrium", vec2_json(p.equilibrium)},
                         {"x_offset", offsets},
                         {"amplitude", p.amplitude},
                         {"period_frames", p.period_frames},
                         {"bob_sigma", p.bob_sigma}};
  }
  if (gt.ring) {
    const auto& r = *gt.ring;
    json radius = json::array();
    for (Eigen::Index i = 0; i < r.radius.size(); ++i) radius.push_back(r.radius[i]);
    json ring{{"center", vec2_json(r.center)},
              {"radius", radius},
              {"mean_radius", r.mean_radius},
              {"wall_thickness", r.wall_thickness},
              {"pulse_amplitude", r.pulse_amplitude},
              {"period_frames", r.period_frames}};
    if (r.pause)
      ring["pause"] = json{{"start", r.pause->first}, {"length", r.pause->second}};
    else
      ring["pause"] = nullptr;
    if (r.frozen_sector)
      ring["frozen_sector"] = json{{"start_deg", r.frozen_sector->first},
                                   {"end_deg", r.frozen_sector->second}};
    else
      ring["frozen_sector"] = nullptr;
    j["ring"] = ring;
  }
  return j;
}

const char* pause_class_name(PauseClass c) {
  return c == PauseClass::ventricular_arrest ? "ventricular_arrest"
                                             : "missing_beats";
}

json pause_report_to_json(const PauseReport& report) {
  json intervals = json::array();
  for (const auto& iv : report.intervals)
    intervals.push_back(json{{"start_sample", iv.start_sample},
                             {"length_samples", iv.length_samples},
                             {"length_seconds", iv.length_seconds},
                             {"classification", pause_class_name(iv.classification)}});
  return json{{"threshold", report.threshold},
              {"window", report.window},
              {"shift", report.shift},
              {"min_length", report.min_length},
              {"fps", report.fps},
              {"variance_length", report.variance_length},
              {"intervals", intervals}};
}

const char* quadrant_name(Quadrant q) {
  switch (q) {
    case Quadrant::left: return "left";
    case Quadrant::right: return "right";
    case Quadrant::top: return "top";
    case Quadrant::bottom: return "bottom";
  }
  return "?";
}

const char* quadrant_color(Quadrant q) {
  switch (q) {
    case Quadrant::left: return "red";
    case Quadrant::right: return "blue";
    case Quadrant::top: return "green";
    case Quadrant::bottom: return "yellow";
  }
  return "?";
}

json landmarks_to_json(const LandmarkSet& set) {
  json cavities;
  for (int q = 0; q < 4; ++q) {
    const auto quad = static_cast<Quadrant>(q);
    const Landmark& lm = set.cavities[q];
    cavities[quadrant_name(quad)] = json{{"x", lm.x},
                                         {"y", lm.y},
                                         {"variance", lm.variance},
                                         {"color", quadrant_color(quad)}};
  }
  json valves = json::array();
  const char* valve_colors[2] = {"cyan", "magenta"};
  for (int i = 0; i < 2; ++i)
    valves.push_back(json{{"x", set.valves[i].x},
                          {"y", set.valves[i].y},
                          {"variance", set.valves[i].variance},
                          {"color", valve_colors[i]}});
  return json{{"cavities", cavities}, {"valves", valves}};
}

namespace {

void reject_unknown_type(const json& j) {
  if (!j.is_object() || !j.contains("type"))
    throw IoError("phantom spec needs a \"type\" field");
}

std::optional<std::pair<int, int>> pause_from(const json& j) {
  if (!j.contains("pause") || j.at("pause").is_null()) return std::nullopt;
  const auto& p = j.at("pause");
  return std::make_pair(p.at("start").get<int>(), p.at("length").get<int>());
}

std::optional<std::pair<double, double>> sector_from(const json& j) {
  if (!j.contains("frozen_sector") || j.at("frozen_sector").is_null())
    return std::nullopt;
  const auto& s = j.at("frozen_sector");
  return std::make_pair(s.at("start_deg").get<double>(),
                        s.at("end_deg").get<double>());
}

}  // namespace

PendulumSpec pendulum_spec_from_json(const json& j) {
  reject_unknown_type(j);
  if (j.at("type") != "pendulum") throw IoError("spec type is not \"pendulum\"");
  PendulumSpec spec;
  spec.width = j.value("width", spec.width);
  spec.height = j.value("height", spec.height);
  spec.amplitude = j.value("amplitude", spec.amplitude);
  if (j.contains("period"))
    spec.angular_frequency = 2.0 * M_PI / j.at("period").get<double>();
  else
    spec.angular_frequency = j.value("angular_frequency", spec.angular_frequency);
  spec.phase = j.value("phase", spec.phase);
  spec.pendulum_length = j.value("pendulum_length", spec.pendulum_length);
  spec.frames = j.value("frames", spec.frames);
  spec.bob_radius = j.value("bob_radius", spec.bob_radius);
  spec.fps = j.value("fps", spec.fps);
  spec.validate();
  return spec;
}

RingPhantomSpec ring_spec_from_json(const json& j) {
  reject_unknown_type(j);
  if (j.at("type") != "ring") throw IoError("spec type is not \"ring\"");
  RingPhantomSpec spec;
  spec.width = j.value("width", spec.width);
  spec.height = j.value("height", spec.height);
  if (j.contains("center")) {
    spec.center_x = j.at("center").at(0).get<double>();
    spec.center_y = j.at("center").at(1).get<double>();
  }
  spec.mean_radius = j.value("mean_radius", spec.mean_radius);
  spec.wall_thickness = j.value("wall_thickness", spec.wall_thickness);
  spec.pulse_amplitude = j.value("pulse_amplitude", spec.pulse_amplitude);
  spec.period = j.value("period", spec.period);
  spec.frames = j.value("frames", spec.frames);
  spec.fps = j.value("fps", spec.fps);
  spec.speckle_contrast = j.value("speckle_contrast", spec.speckle_contrast);
  spec.pause = pause_from(j);
  spec.frozen_sector = sector_from(j);
  spec.rng_seed = j.value("seed", spec.rng_seed);
  spec.validate();
  return spec;
}

json pendulum_spec_to_json(const PendulumSpec& spec) {
  return json{{"type", "pendulum"},
              {"width", spec.width},
              {"height", spec.height},
              {"amplitude", spec.amplitude},
              {"angular_frequency", spec.angular_frequency},
              {"phase", spec.phase},
              {"pendulum_length", spec.pendulum_length},
              {"frames", spec.frames},
              {"bob_radius", spec.bob_radius},
              {"fps", spec.fps}};
}

json ring_spec_to_json(const RingPhantomSpec& spec) {
  json j{{"type", "ring"},
         {"width", spec.width},
         {"height", spec.height},
         {"center", json::array({spec.center().x, spec.center().y})},
         {"mean_radius", spec.mean_radius},
         {"wall_thickness", spec.wall_thickness},
         {"pulse_amplitude", spec.pulse_amplitude},
         {"period", spec.period},
         {"frames", spec.frames},
         {"fps", spec.fps},
         {"speckle_contrast", spec.speckle_contrast},
         {"seed", spec.rng_seed}};
  if (spec.pause)
    j["pause"] = json{{"start", spec.pause->first}, {"length", spec.pause->second}};
  else
    j["pause"] = nullptr;
  if (spec.frozen_sector)
    j["frozen_sector"] = json{{"start_deg", spec.frozen_sector->first},
                              {"end_deg", spec.frozen_sector->second}};
  else
    j["frozen_sector"] = nullptr;
  return j;
}

}  // namespace tfg::io
