// tfg: temporal-flow-graph analysis of periodic motion in grayscale
// image sequences. Subcommands cover phantom generation, dense flow,
// per-point displacement signals, and the three detectors (pauses,
// non-coherent regions, landmarks).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tfg/detect.hpp"
#include "tfg/image_sequence.hpp"
#include "tfg/io/colormap.hpp"
#include "tfg/io/csv.hpp"
#include "tfg/io/png.hpp"
#include "tfg/io/serialize.hpp"
#include "tfg/motion_signal.hpp"
#include "tfg/optical_flow.hpp"
#include "tfg/phantom.hpp"
#include "tfg/segment.hpp"

namespace fs = std::filesystem;
using tfg::io::json;

namespace {

constexpr int kExitAnalysis = 1;
constexpr int kExitUsage = 2;

struct PipelineOpts {
  std::string input;
  std::string out_dir;
  double fps = 29.0;

  tfg::FlowParams flow;
  tfg::SegmentParams segment;
  double seg_threshold = -1.0;  // < 0: Otsu

  int window = 8;
  int shift = 1;
  double pause_threshold = 0.2;
  int min_length = 8;
  double rel_threshold = 0.2;
  double suppression_radius = 10.0;

  std::string mode = "fixed";
  std::string point;  // "x,y" override; empty = auto-detect
  int threads = 0;
};

void add_io_options(CLI::App* cmd, PipelineOpts& o) {
  cmd->add_option("--input,-i", o.input, "sequence directory or .tfgs file")
      ->required();
  cmd->add_option("--out,-o", o.out_dir, "output directory")->required();
  cmd->add_option("--fps", o.fps, "frames per second for frame directories")
      ->capture_default_str();
  cmd->add_option("--threads", o.threads, "worker threads (0 = auto)")
      ->capture_default_str();
}

void add_flow_options(CLI::App* cmd, PipelineOpts& o) {
  cmd->add_option("--smoothness", o.flow.smoothness_weight,
                  "smoothness term weight")
      ->capture_default_str();
  cmd->add_option("--gradient-weight", o.flow.gradient_weight,
                  "gradient-constancy term weight")
      ->capture_default_str();
  cmd->add_option("--levels", o.flow.pyramid_levels, "pyramid levels")
      ->capture_default_str();
  cmd->add_option("--scale", o.flow.scale_factor, "pyramid scale factor")
      ->capture_default_str();
  cmd->add_option("--iters", o.flow.iterations_per_level,
                  "relaxation sweeps per level")
      ->capture_default_str();
  cmd->add_option("--epsilon", o.flow.convergence_epsilon,
                  "relaxation convergence threshold")
      ->capture_default_str();
}

void add_segment_options(CLI::App* cmd, PipelineOpts& o) {
  cmd->add_option("--sigma", o.segment.sigma, "segmentation smoothing sigma")
      ->capture_default_str();
  cmd->add_option("--seg-threshold", o.seg_threshold,
                  "fixed binarization threshold (default: Otsu)");
  cmd->add_option("--closing-radius", o.segment.closing_radius,
                  "closing disc radius")
      ->capture_default_str();
}

void add_mode_option(CLI::App* cmd, PipelineOpts& o) {
  cmd->add_option("--mode", o.mode, "TFG mode: fixed or tracked")
      ->check(CLI::IsMember({"fixed", "tracked"}))
      ->capture_default_str();
}

tfg::SegmentParams effective_segment(const PipelineOpts& o) {
  tfg::SegmentParams p = o.segment;
  if (o.seg_threshold >= 0.0) p.threshold = o.seg_threshold;
  return p;
}

tfg::TrackMode track_mode(const PipelineOpts& o) {
  return o.mode == "tracked" ? tfg::TrackMode::tracked : tfg::TrackMode::fixed;
}

json flow_config(const tfg::FlowParams& p) {
  return json{{"smoothness_weight", p.smoothness_weight},
              {"gradient_weight", p.gradient_weight},
              {"pyramid_levels", p.pyramid_levels},
              {"scale_factor", p.scale_factor},
              {"iterations_per_level", p.iterations_per_level},
              {"convergence_epsilon", p.convergence_epsilon}};
}

json segment_config(const tfg::SegmentParams& p) {
  json j{{"sigma", p.sigma}, {"closing_radius", p.closing_radius}};
  if (p.threshold)
    j["threshold"] = *p.threshold;
  else
    j["threshold"] = "otsu";
  return j;
}

json base_config(const PipelineOpts& o, const tfg::ImageSequence& seq) {
  return json{{"input", o.input},
              {"fps", seq.fps},
              {"mode", o.mode},
              {"flow", flow_config(o.flow)},
              {"segmentation", segment_config(effective_segment(o))}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw tfg::IoError("cannot write " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw tfg::IoError("failed writing " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw tfg::IoError("cannot read " + path.string());
  return json::parse(in);  // parse_error maps to a usage failure
}

tfg::Vec2 parse_point(const std::string& text) {
  double x = 0, y = 0;
  if (std::sscanf(text.c_str(), "%lf,%lf", &x, &y) != 2)
    throw std::invalid_argument("--point expects \"x,y\"");
  return {x, y};
}

void draw_disc(tfg::io::RgbImage& img, int cx, int cy, int radius,
               std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  for (int dy = -radius; dy <= radius; ++dy)
    for (int dx = -radius; dx <= radius; ++dx) {
      if (dx * dx + dy * dy > radius * radius) continue;
      const int x = cx + dx, y = cy + dy;
      if (x < 0 || x >= img.width || y < 0 || y >= img.height) continue;
      img.set(x, y, r, g, b);
    }
}

struct NamedColor {
  const char* name;
  std::uint8_t r, g, b;
};

NamedColor color_by_name(const std::string& name) {
  static constexpr NamedColor kColors[] = {
      {"red", 255, 0, 0},      {"blue", 0, 0, 255},   {"green", 0, 255, 0},
      {"yellow", 255, 255, 0}, {"cyan", 0, 255, 255}, {"magenta", 255, 0, 255}};
  for (const auto& c : kColors)
    if (name == c.name) return c;
  return {"white", 255, 255, 255};
}

// Shared front half of the point pipelines: segmentation-driven point
// selection unless --point was given.
tfg::Vec2 select_point(const PipelineOpts& o, const tfg::ImageSequence& seq) {
  if (!o.point.empty()) return parse_point(o.point);
  const auto mask = tfg::segment_myocardium(seq.frames[0], effective_segment(o));
  const auto [px, py] = tfg::pick_myocardial_point(mask);
  return {static_cast<double>(px), static_cast<double>(py)};
}

// ---------------------------------------------------------------- phantom

int cmd_phantom(const std::string& spec_path, const std::string& out_dir,
                const std::string& format, std::optional<std::uint64_t> seed) {
  const json spec_json = read_json(spec_path);
  if (!spec_json.is_object() || !spec_json.contains("type"))
    throw tfg::IoError("phantom spec needs a \"type\" field");

  tfg::ImageSequence seq;
  tfg::GroundTruth gt;
  json effective_spec;
  const std::string type = spec_json.at("type").get<std::string>();
  if (type == "pendulum") {
    const auto spec = tfg::io::pendulum_spec_from_json(spec_json);
    std::tie(seq, gt) = tfg::gen_pendulum(spec);
    effective_spec = tfg::io::pendulum_spec_to_json(spec);
  } else if (type == "ring") {
    auto spec = tfg::io::ring_spec_from_json(spec_json);
    if (seed) spec.rng_seed = *seed;
    std::tie(seq, gt) = tfg::gen_ring(spec);
    effective_spec = tfg::io::ring_spec_to_json(spec);
  } else {
    throw tfg::IoError("unknown phantom type: " + type);
  }

  fs::create_directories(out_dir);
  if (format == "tfgs") {
    tfg::save_sequence(seq, fs::path(out_dir) / "sequence.tfgs");
  } else {
    tfg::save_frames(seq, fs::path(out_dir) / "frames",
                     format == "png" ? tfg::FrameFormat::png
                                     : tfg::FrameFormat::pgm);
  }
  json gt_json = tfg::io::ground_truth_to_json(gt);
  gt_json["spec"] = effective_spec;
  write_json(fs::path(out_dir) / "groundtruth.json", gt_json);
  return 0;
}

// ------------------------------------------------------------------- flow

int cmd_flow(const PipelineOpts& o, int pair, bool all) {
  const auto seq = tfg::load_sequence(o.input, o.fps);
  fs::create_directories(o.out_dir);
  char name[32];
  if (all) {
    const auto fields = tfg::flow_series(seq, o.flow, o.threads);
    for (size_t i = 0; i < fields.size(); ++i) {
      std::snprintf(name, sizeof(name), "flow_%04zu.csv", i + 1);
      tfg::io::write_flow_csv(fs::path(o.out_dir) / name, fields[i]);
    }
    return 0;
  }
  if (pair < 1 || pair >= seq.frame_count())
    throw std::invalid_argument("--pair must be in [1, frames-1]");
  const auto field =
      tfg::compute_flow(seq.frames[pair - 1], seq.frames[pair], o.flow);
  std::snprintf(name, sizeof(name), "flow_%04d.csv", pair);
  tfg::io::write_flow_csv(fs::path(o.out_dir) / name, field);
  return 0;
}

// -------------------------------------------------------------------- tfg

int cmd_tfg(const PipelineOpts& o) {
  const auto seq = tfg::load_sequence(o.input, o.fps);
  fs::create_directories(o.out_dir);

  const tfg::Vec2 point = select_point(o, seq);
  const auto flows = tfg::flow_series(seq, o.flow, o.threads);
  const auto track = tfg::make_track(point, track_mode(o), flows);
  const auto idg_signal = tfg::idg(track, flows, seq.fps);
  const auto tfg_signal = tfg::to_tfg(idg_signal);

  tfg::io::write_signal_csv(fs::path(o.out_dir) / "idg.csv", idg_signal);
  tfg::io::write_signal_csv(fs::path(o.out_dir) / "tfg.csv", tfg_signal);

  json info{{"config", base_config(o, seq)},
            {"point", json::array({point.x, point.y})},
            {"clamped", track.clamped}};
  const auto period = tfg::estimate_period(tfg_signal);
  info["estimated_period_frames"] = period ? json(*period) : json(nullptr);
  write_json(fs::path(o.out_dir) / "tfg_info.json", info);
  return 0;
}

// ------------------------------------------------------------------ pause

int cmd_pause(const PipelineOpts& o) {
  const auto seq = tfg::load_sequence(o.input, o.fps);
  fs::create_directories(o.out_dir);

  const tfg::Vec2 point = select_point(o, seq);
  const auto flows = tfg::flow_series(seq, o.flow, o.threads);
  const auto track = tfg::make_track(point, track_mode(o), flows);
  const auto idg_signal = tfg::idg(track, flows, seq.fps);
  const auto tfg_signal = tfg::to_tfg(idg_signal);
  const auto variance = tfg::short_time_variance(tfg_signal, o.window, o.shift);
  const auto report = tfg::detect_pause(tfg_signal, o.pause_threshold, o.window,
                                        o.shift, o.min_length);

  tfg::io::write_signal_csv(fs::path(o.out_dir) / "idg.csv", idg_signal);
  tfg::io::write_signal_csv(fs::path(o.out_dir) / "tfg.csv", tfg_signal);
  tfg::io::write_variance_series_csv(fs::path(o.out_dir) / "stv.csv", variance);
  tfg::io::write_pause_plot_csv(fs::path(o.out_dir) / "pause_plot.csv",
                                tfg_signal, variance);

  json j = tfg::io::pause_report_to_json(report);
  j["config"] = base_config(o, seq);
  j["config"]["window"] = o.window;
  j["config"]["shift"] = o.shift;
  j["config"]["pause_threshold"] = o.pause_threshold;
  j["config"]["min_length"] = o.min_length;
  j["point"] = json::array({point.x, point.y});
  write_json(fs::path(o.out_dir) / "pause_report.json", j);
  return 0;
}

// ----------------------------------------------------------------- region

int cmd_region(const PipelineOpts& o) {
  const auto seq = tfg::load_sequence(o.input, o.fps);
  fs::create_directories(o.out_dir);

  const auto mask = tfg::segment_myocardium(seq.frames[0], effective_segment(o));
  const auto flows = tfg::flow_series(seq, o.flow, o.threads);
  const auto field = tfg::tfg_field(seq, flows, &mask, track_mode(o), o.threads);
  const auto vmap = tfg::variance_map(field, mask);
  const auto abnormal = tfg::detect_abnormal_region(vmap, o.rel_threshold);

  tfg::Grid mask_img(mask.height(), mask.width());
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x)
      mask_img(y, x) = mask.at(x, y) ? 1.0 : 0.0;
  tfg::io::write_png_gray(fs::path(o.out_dir) / "myocardium_mask.png", mask_img);
  write_json(fs::path(o.out_dir) / "myocardium_mask.json",
             tfg::io::mask_to_rle_json(mask));
  tfg::io::write_variance_csv(fs::path(o.out_dir) / "variance_map.csv", vmap);
  tfg::io::write_png_rgb(fs::path(o.out_dir) / "variance_map.png",
                         tfg::io::pseudo_color(vmap.values, vmap.mask));

  // abnormal pixels in red on frame 1
  auto overlay = tfg::io::to_rgb(seq.frames[0]);
  for (int y = 0; y < abnormal.height(); ++y)
    for (int x = 0; x < abnormal.width(); ++x)
      if (abnormal.at(x, y)) overlay.set(x, y, 255, 0, 0);
  tfg::io::write_png_rgb(fs::path(o.out_dir) / "abnormal_overlay.png", overlay);

  long long count = 0;
  double cx = 0.0, cy = 0.0;
  for (int y = 0; y < abnormal.height(); ++y)
    for (int x = 0; x < abnormal.width(); ++x)
      if (abnormal.at(x, y)) {
        cx += x;
        cy += y;
        ++count;
      }
  json j{{"config", base_config(o, seq)},
         {"abnormal_pixel_count", count},
         {"masked_pixel_count", static_cast<long long>(mask.count())}};
  j["config"]["rel_threshold"] = o.rel_threshold;
  j["abnormal_centroid"] =
      count > 0 ? json::array({cx / count, cy / count}) : json(nullptr);
  write_json(fs::path(o.out_dir) / "region_report.json", j);
  write_json(fs::path(o.out_dir) / "abnormal_mask.json",
             tfg::io::mask_to_rle_json(abnormal));
  return 0;
}

// -------------------------------------------------------------- landmarks

int cmd_landmarks(const PipelineOpts& o) {
  const auto seq = tfg::load_sequence(o.input, o.fps);
  fs::create_directories(o.out_dir);

  const auto mask = tfg::segment_myocardium(seq.frames[0], effective_segment(o));
  const auto flows = tfg::flow_series(seq, o.flow, o.threads);
  const auto field = tfg::tfg_field(seq, flows, &mask, track_mode(o), o.threads);
  const auto vmap = tfg::variance_map(field, mask);
  const auto set = tfg::detect_landmarks(vmap, o.suppression_radius);

  json j = tfg::io::landmarks_to_json(set);
  j["config"] = base_config(o, seq);
  j["config"]["suppression_radius"] = o.suppression_radius;
  write_json(fs::path(o.out_dir) / "landmarks.json", j);

  auto overlay = tfg::io::to_rgb(seq.frames[0]);
  for (int q = 0; q < 4; ++q) {
    const auto color =
        color_by_name(tfg::io::quadrant_color(static_cast<tfg::Quadrant>(q)));
    draw_disc(overlay, set.cavities[q].x, set.cavities[q].y, 2, color.r,
              color.g, color.b);
  }
  const NamedColor valve_colors[2] = {color_by_name("cyan"),
                                      color_by_name("magenta")};
  for (int i = 0; i < 2; ++i)
    draw_disc(overlay, set.valves[i].x, set.valves[i].y, 2, valve_colors[i].r,
              valve_colors[i].g, valve_colors[i].b);
  tfg::io::write_png_rgb(fs::path(o.out_dir) / "landmarks_overlay.png", overlay);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temporal flow graph analysis of periodic image sequences"};
  app.require_subcommand(1);

  std::string phantom_spec, phantom_out, phantom_format = "pgm";
  std::uint64_t phantom_seed = 0;
  auto* phantom = app.add_subcommand("phantom", "generate a synthetic sequence");
  phantom->add_option("--spec", phantom_spec, "phantom spec JSON file")->required();
  phantom->add_option("--out,-o", phantom_out, "output directory")->required();
  phantom->add_option("--format", phantom_format, "frame format: pgm, png or tfgs")
      ->check(CLI::IsMember({"pgm", "png", "tfgs"}))
      ->capture_default_str();
  auto* seed_opt =
      phantom->add_option("--seed", phantom_seed, "override the spec rng seed");

  PipelineOpts flow_opts;
  int flow_pair = 1;
  bool flow_all = false;
  auto* flow = app.add_subcommand("flow", "export dense flow as CSV");
  add_io_options(flow, flow_opts);
  add_flow_options(flow, flow_opts);
  flow->add_option("--pair", flow_pair, "1-based frame pair index")
      ->capture_default_str();
  flow->add_flag("--all", flow_all, "export every frame pair");

  PipelineOpts tfg_opts;
  auto* tfgc = app.add_subcommand("tfg", "IDG/TFG signals at a point");
  add_io_options(tfgc, tfg_opts);
  add_flow_options(tfgc, tfg_opts);
  add_segment_options(tfgc, tfg_opts);
  add_mode_option(tfgc, tfg_opts);
  tfgc->add_option("--point", tfg_opts.point, "point \"x,y\" (default: auto)");

  PipelineOpts pause_opts;
  auto* pause = app.add_subcommand("pause", "beat-pause detection on one TFG");
  add_io_options(pause, pause_opts);
  add_flow_options(pause, pause_opts);
  add_segment_options(pause, pause_opts);
  add_mode_option(pause, pause_opts);
  pause->add_option("--point", pause_opts.point, "point \"x,y\" (default: auto)");
  pause->add_option("--window", pause_opts.window, "variance window (samples)")
      ->capture_default_str();
  pause->add_option("--shift", pause_opts.shift, "variance window shift")
      ->capture_default_str();
  pause->add_option("--pause-threshold", pause_opts.pause_threshold,
                    "variance threshold T")
      ->capture_default_str();
  pause->add_option("--min-length", pause_opts.min_length,
                    "minimum pause run (samples)")
      ->capture_default_str();

  PipelineOpts region_opts;
  auto* region = app.add_subcommand("region", "abnormal-region detection");
  add_io_options(region, region_opts);
  add_flow_options(region, region_opts);
  add_segment_options(region, region_opts);
  add_mode_option(region, region_opts);
  region->add_option("--rel-threshold", region_opts.rel_threshold,
                     "abnormal threshold as a fraction of the median variance")
      ->capture_default_str();

  PipelineOpts lm_opts;
  auto* landmarks = app.add_subcommand("landmarks", "six-landmark detection");
  add_io_options(landmarks, lm_opts);
  add_flow_options(landmarks, lm_opts);
  add_segment_options(landmarks, lm_opts);
  add_mode_option(landmarks, lm_opts);
  landmarks
      ->add_option("--suppression-radius", lm_opts.suppression_radius,
                   "minimum valve separation (pixels)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (phantom->parsed())
      return cmd_phantom(phantom_spec, phantom_out, phantom_format,
                         seed_opt->count() > 0
                             ? std::optional<std::uint64_t>(phantom_seed)
                             : std::nullopt);
    if (flow->parsed()) return cmd_flow(flow_opts, flow_pair, flow_all);
    if (tfgc->parsed()) return cmd_tfg(tfg_opts);
    if (pause->parsed()) return cmd_pause(pause_opts);
    if (region->parsed()) return cmd_region(region_opts);
    if (landmarks->parsed()) return cmd_landmarks(lm_opts);
  } catch (const tfg::AnalysisError& e) {
    std::cerr << "analysis error: " << e.what() << "\n";
    return kExitAnalysis;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
