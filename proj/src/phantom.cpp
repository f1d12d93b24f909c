#include "tfg/phantom.hpp"

#include <algorithm>
#include <cmath>

#include "tfg/parallel.hpp"

namespace tfg {

namespace {

constexpr double kWallPeak = 0.9;
constexpr double kSectorBlendDeg = 6.0;  // ramp just outside a frozen sector
// FWHM = 2*sqrt(2*ln 2) * sigma
const double kFwhmToSigma = 1.0 / (2.0 * std::sqrt(2.0 * std::log(2.0)));

// splitmix64: small portable generator, stable across platforms
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
};

double wrap_deg(double deg) {
  deg = std::fmod(deg, 360.0);
  if (deg < 0.0) deg += 360.0;
  return deg;
}

bool sector_contains(double theta, double start, double end) {
  if (start <= end) return theta >= start && theta < end;
  return theta >= start || theta < end;
}

// shortest angular distance from theta to the sector, 0 inside
double sector_distance(double theta, double start, double end) {
  if (sector_contains(theta, start, end)) return 0.0;
  const double d1 = std::min(wrap_deg(theta - start), wrap_deg(start - theta));
  const double d2 = std::min(wrap_deg(theta - end), wrap_deg(end - theta));
  return std::min(d1, d2);
}

}  // namespace

void PendulumSpec::validate() const {
  if (width < 8 || height < 8) throw std::invalid_argument("image too small");
  if (amplitude < 0.0) throw std::invalid_argument("amplitude must be >= 0");
  if (!(angular_frequency > 0.0))
    throw std::invalid_argument("angular_frequency must be > 0");
  if (frames < 2) throw std::invalid_argument("need at least 2 frames");
  if (!(bob_radius > 0.0)) throw std::invalid_argument("bob_radius must be > 0");
  if (!(fps > 0.0)) throw std::invalid_argument("fps must be > 0");
  const double dy_extent =
      amplitude * std::tan(kPendulumTiltDeg * M_PI / 180.0);
  const double margin_x = amplitude + 2.0 * bob_radius;
  const double margin_y = dy_extent + 2.0 * bob_radius;
  const double eqx = 0.5 * (width - 1);
  const double eqy = 0.5 * (height - 1);
  if (eqx - margin_x < 0.0 || eqx + margin_x > width - 1 ||
      eqy - margin_y < 0.0 || eqy + margin_y > height - 1)
    throw std::invalid_argument("bob leaves the frame at motion extremes");
}

void RingPhantomSpec::validate() const {
  if (width < 8 || height < 8) throw std::invalid_argument("image too small");
  if (!(mean_radius > 0.0)) throw std::invalid_argument("mean_radius must be > 0");
  if (!(wall_thickness > 0.0))
    throw std::invalid_argument("wall_thickness must be > 0");
  if (pulse_amplitude < 0.0)
    throw std::invalid_argument("pulse_amplitude must be >= 0");
  if (!(pulse_amplitude < mean_radius - wall_thickness / 2.0))
    throw std::invalid_argument(
        "pulse_amplitude must be < mean_radius - wall_thickness/2");
  if (!(period > 1.0)) throw std::invalid_argument("period must be > 1 frame");
  if (frames < 2) throw std::invalid_argument("need at least 2 frames");
  if (!(fps > 0.0)) throw std::invalid_argument("fps must be > 0");
  if (speckle_contrast < 0.0)
    throw std::invalid_argument("speckle_contrast must be >= 0");
  if (pause) {
    const auto [start, length] = *pause;
    if (start < 0 || length < 1 || start + length > frames)
      throw std::invalid_argument("pause interval outside the sequence");
  }
  if (frozen_sector) {
    const auto [s, e] = *frozen_sector;
    if (s < 0.0 || s >= 360.0 || e < 0.0 || e >= 360.0)
      throw std::invalid_argument("sector angles must be in [0, 360)");
  }
}

Vec2 RingPhantomSpec::center() const {
  return {center_x >= 0.0 ? center_x : 0.5 * (width - 1),
          center_y >= 0.0 ? center_y : 0.5 * (height - 1)};
}

double RingTruth::angle_deg(double x, double y) const {
  const double deg = std::atan2(y - center.y, x - center.x) * (180.0 / M_PI);
  return wrap_deg(deg);
}

bool RingTruth::in_frozen_sector(double x, double y) const {
  if (!frozen_sector) return false;
  return sector_contains(angle_deg(x, y), frozen_sector->first,
                         frozen_sector->second);
}

BinaryMask RingTruth::band_mask(int width, int height) const {
  BinaryMask out = BinaryMask::zeros(height, width);
  const double r0 = radius[0];
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      const double d = std::hypot(x - center.x, y - center.y);
      out.bits(y, x) = std::abs(d - r0) <= wall_thickness / 2.0;
    }
  return out;
}

BinaryMask RingTruth::sector_mask(int width, int height) const {
  BinaryMask out = band_mask(width, height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      if (out.at(x, y) && !in_frozen_sector(x, y)) out.bits(y, x) = false;
  return out;
}

const LabeledTrack& GroundTruth::track(const std::string& label) const {
  for (const auto& t : tracks)
    if (t.label == label) return t;
  throw std::invalid_argument("no ground-truth track labeled " + label);
}

std::pair<ImageSequence, GroundTruth> gen_pendulum(const PendulumSpec& spec) {
  spec.validate();
  const double sigma = spec.bob_radius / 2.0;
  const Vec2 eq{0.5 * (spec.width - 1), 0.5 * (spec.height - 1)};

  PendulumTruth truth;
  truth.equilibrium = eq;
  truth.amplitude = spec.amplitude;
  truth.period_frames = 2.0 * M_PI / spec.angular_frequency;
  truth.bob_sigma = sigma;
  truth.x_offset.resize(spec.frames);

  LabeledTrack bob;
  bob.label = "bob";
  bob.positions.resize(spec.frames);

  ImageSequence seq;
  seq.fps = spec.fps;
  seq.frames.resize(spec.frames);
  const double tilt = std::tan(kPendulumTiltDeg * M_PI / 180.0);
  for (int t = 0; t < spec.frames; ++t) {
    const double off =
        spec.amplitude * std::cos(spec.angular_frequency * t + spec.phase);
    truth.x_offset[t] = off;
    const Vec2 c{eq.x + off, eq.y + off * tilt};
    bob.positions[t] = c;
    Grid img(spec.height, spec.width);
    for (int y = 0; y < spec.height; ++y)
      for (int x = 0; x < spec.width; ++x) {
        const double d2 = (x - c.x) * (x - c.x) + (y - c.y) * (y - c.y);
        img(y, x) = std::exp(-0.5 * d2 / (sigma * sigma));
      }
    seq.frames[t] = std::move(img);
  }
  validate_sequence(seq);

  GroundTruth gt;
  gt.fps = spec.fps;
  gt.frames = spec.frames;
  gt.tracks.push_back(std::move(bob));
  gt.pendulum = std::move(truth);
  return {std::move(seq), std::move(gt)};
}

std::pair<ImageSequence, GroundTruth> gen_ring(const RingPhantomSpec& spec) {
  spec.validate();
  const Vec2 c = spec.center();
  const double sigma = spec.wall_thickness * kFwhmToSigma;

  RingTruth truth;
  truth.center = c;
  truth.mean_radius = spec.mean_radius;
  truth.wall_thickness = spec.wall_thickness;
  truth.pulse_amplitude = spec.pulse_amplitude;
  truth.period_frames = spec.period;
  truth.pause = spec.pause;
  truth.frozen_sector = spec.frozen_sector;
  truth.radius.resize(spec.frames);

  // effective phase clock: stands still during the pause
  for (int t = 0; t < spec.frames; ++t) {
    double t_eff = t;
    if (spec.pause) {
      const auto [start, length] = *spec.pause;
      if (t >= start && t < start + length)
        t_eff = start;
      else if (t >= start + length)
        t_eff = t - length;
    }
    truth.radius[t] =
        spec.mean_radius +
        spec.pulse_amplitude * std::cos(2.0 * M_PI * t_eff / spec.period);
  }
  const double frozen_radius = truth.radius[0];

  ImageSequence seq;
  seq.fps = spec.fps;
  std::vector<Grid> frames(spec.frames);
  parallel_for(spec.frames, [&](int t) {
    Grid img(spec.height, spec.width);
    const double rt = truth.radius[t];
    for (int y = 0; y < spec.height; ++y)
      for (int x = 0; x < spec.width; ++x) {
        const double d = std::hypot(x - c.x, y - c.y);
        double r = rt;
        if (spec.frozen_sector) {
          const double theta =
              wrap_deg(std::atan2(y - c.y, x - c.x) * (180.0 / M_PI));
          const double dist = sector_distance(theta, spec.frozen_sector->first,
                                              spec.frozen_sector->second);
          if (dist <= 0.0) {
            r = frozen_radius;
          } else if (dist < kSectorBlendDeg) {
            const double s = 0.5 * (1.0 + std::cos(M_PI * dist / kSectorBlendDeg));
            r = s * frozen_radius + (1.0 - s) * rt;
          }
        }
        const double dr = d - r;
        img(y, x) = kWallPeak * std::exp(-0.5 * dr * dr / (sigma * sigma));
      }
    if (spec.speckle_contrast > 0.0) {
      SplitMix64 rng(spec.rng_seed ^ (0x5851f42d4c957f2dull * (t + 1)));
      for (int y = 0; y < spec.height; ++y)
        for (int x = 0; x < spec.width; ++x) {
          const double u = rng.uniform();
          const double factor = 1.0 + spec.speckle_contrast * 2.0 * (u - 0.5);
          img(y, x) = std::min(1.0, std::max(0.0, img(y, x) * factor));
        }
    }
    frames[t] = std::move(img);
  });
  seq.frames = std::move(frames);
  validate_sequence(seq);

  // labeled wall points at compass angles; frozen ones never move
  GroundTruth gt;
  gt.fps = spec.fps;
  gt.frames = spec.frames;
  const struct {
    const char* label;
    double ux, uy;
  } compass[] = {{"wall_right", 1, 0},
                 {"wall_bottom", 0, 1},
                 {"wall_left", -1, 0},
                 {"wall_top", 0, -1}};
  for (const auto& cp : compass) {
    LabeledTrack tr;
    tr.label = cp.label;
    tr.positions.resize(spec.frames);
    const double theta = wrap_deg(std::atan2(cp.uy, cp.ux) * (180.0 / M_PI));
    const bool frozen =
        spec.frozen_sector && sector_contains(theta, spec.frozen_sector->first,
                                              spec.frozen_sector->second);
    for (int t = 0; t < spec.frames; ++t) {
      const double r = frozen ? frozen_radius : truth.radius[t];
      tr.positions[t] = {c.x + cp.ux * r, c.y + cp.uy * r};
    }
    gt.tracks.push_back(std::move(tr));
  }
  LabeledTrack center_track;
  center_track.label = "center";
  center_track.positions.assign(spec.frames, c);
  gt.tracks.push_back(std::move(center_track));
  gt.ring = std::move(truth);
  return {std::move(seq), std::move(gt)};
}

}  // namespace tfg
