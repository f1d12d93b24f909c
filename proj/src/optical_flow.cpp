#include "tfg/optical_flow.hpp"

#include <cmath>

#include "tfg/image_ops.hpp"
#include "tfg/parallel.hpp"

namespace tfg {

void FlowParams::validate() const {
  if (!(smoothness_weight > 0.0))
    throw std::invalid_argument("smoothness_weight must be > 0");
  if (!(gradient_weight >= 0.0))
    throw std::invalid_argument("gradient_weight must be >= 0");
  if (pyramid_levels < 1)
    throw std::invalid_argument("pyramid_levels must be >= 1");
  if (!(scale_factor > 0.0 && scale_factor < 1.0))
    throw std::invalid_argument("scale_factor must be in (0, 1)");
  if (iterations_per_level < 1)
    throw std::invalid_argument("iterations_per_level must be >= 1");
  if (!(convergence_epsilon > 0.0))
    throw std::invalid_argument("convergence_epsilon must be > 0");
}

namespace {

constexpr int kMinPyramidSide = 8;

// The data terms are evaluated on a 0..255 intensity scale so the
// default term weights behave like classic variational-flow settings
// for 8-bit imagery; recovered displacements are unaffected.
constexpr double kIntensityScale = 255.0;

// Input presmoothing before differentiation. Exact translations are
// preserved (blur commutes with shifts).
constexpr double kPresmoothSigma = 0.9;

std::vector<Grid> build_pyramid(const Grid& img, int levels, double sf) {
  std::vector<Grid> pyr;
  pyr.push_back(img);
  // presmoothing matched to the downsampling factor
  const double sigma = 0.8 * std::sqrt(1.0 / (sf * sf) - 1.0);
  for (int l = 1; l < levels; ++l) {
    const Grid& prev = pyr.back();
    const int nh = std::max(kMinPyramidSide,
                            static_cast<int>(std::lround(prev.rows() * sf)));
    const int nw = std::max(kMinPyramidSide,
                            static_cast<int>(std::lround(prev.cols() * sf)));
    if (nh == prev.rows() && nw == prev.cols()) break;
    pyr.push_back(resize_bilinear(gaussian_blur(prev, sigma), nh, nw));
  }
  return pyr;
}

// Discretized energy at the current linearization: data residuals plus
// quadratic smoothness over right/down edges.
double level_energy(const Grid& ix, const Grid& iy, const Grid& ct,
                    const Grid& ixx, const Grid& ixy, const Grid& iyy,
                    const Grid& cxt, const Grid& cyt, double gamma,
                    double alpha, const Grid& u, const Grid& v) {
  const Grid r = ix * u + iy * v + ct;
  const Grid rx = ixx * u + ixy * v + cxt;
  const Grid ry = ixy * u + iyy * v + cyt;
  double e = (r.square() + gamma * (rx.square() + ry.square())).sum();
  const int h = static_cast<int>(u.rows());
  const int w = static_cast<int>(u.cols());
  double smooth = 0.0;
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) {
      if (x + 1 < w) {
        const double du = u(y, x + 1) - u(y, x);
        const double dv = v(y, x + 1) - v(y, x);
        smooth += du * du + dv * dv;
      }
      if (y + 1 < h) {
        const double du = u(y + 1, x) - u(y, x);
        const double dv = v(y + 1, x) - v(y, x);
        smooth += du * du + dv * dv;
      }
    }
  return e + alpha * smooth;
}

}  // namespace

FlowField compute_flow(const Frame& a, const Frame& b, const FlowParams& params,
                       FlowStats* stats) {
  params.validate();
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("compute_flow: frame dimensions differ");
  if (!all_finite(a) || !all_finite(b))
    throw std::invalid_argument("compute_flow: non-finite intensities");

  const auto pyr_a =
      build_pyramid(gaussian_blur(a * kIntensityScale, kPresmoothSigma),
                    params.pyramid_levels, params.scale_factor);
  const auto pyr_b =
      build_pyramid(gaussian_blur(b * kIntensityScale, kPresmoothSigma),
                    params.pyramid_levels, params.scale_factor);
  const int levels = static_cast<int>(pyr_a.size());
  if (stats) stats->levels.clear();

  Grid u, v;
  for (int l = levels - 1; l >= 0; --l) {
    const Grid& la = pyr_a[l];
    const Grid& lb = pyr_b[l];
    const int h = static_cast<int>(la.rows());
    const int w = static_cast<int>(la.cols());
    if (l == levels - 1) {
      u = Grid::Zero(h, w);
      v = Grid::Zero(h, w);
    } else {
      const double sx = static_cast<double>(w) / u.cols();
      const double sy = static_cast<double>(h) / u.rows();
      u = resize_bilinear(u, h, w) * sx;
      v = resize_bilinear(v, h, w) * sy;
    }

    const Grid u0 = u, v0 = v;
    const Grid bw = warp_bilinear(lb, u0, v0);

    // linearization
    const Grid ax = gradient_x(la), ay = gradient_y(la);
    const Grid bx = gradient_x(bw), by = gradient_y(bw);
    const Grid ix = 0.5 * (ax + bx);
    const Grid iy = 0.5 * (ay + by);
    const Grid it = bw - la;
    const Grid ixx = gradient_x(ix);
    const Grid ixy = gradient_y(ix);
    const Grid iyy = gradient_y(iy);
    const Grid ixt = bx - ax;
    const Grid iyt = by - ay;
    const Grid ct = it - ix * u0 - iy * v0;
    const Grid cxt = ixt - ixx * u0 - ixy * v0;
    const Grid cyt = iyt - ixy * u0 - iyy * v0;

    const double g = params.gradient_weight;
    const double alpha = params.smoothness_weight;
    const Grid j11 = ix.square() + g * (ixx.square() + ixy.square());
    const Grid j12 = ix * iy + g * (ixy * (ixx + iyy));
    const Grid j22 = iy.square() + g * (ixy.square() + iyy.square());
    const Grid b1 = -(ix * ct + g * (ixx * cxt + ixy * cyt));
    const Grid b2 = -(iy * ct + g * (ixy * cxt + iyy * cyt));

    FlowStats::Level level_stats;
    level_stats.width = w;
    level_stats.height = h;

    // Gauss-Seidel sweeps over the total flow; exact per-pixel 2x2
    // solves keep the quadratic energy non-increasing.
    int iter = 0;
    for (; iter < params.iterations_per_level; ++iter) {
      double max_update = 0.0;
      for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) {
          double su = 0.0, sv = 0.0;
          int nb = 0;
          if (x > 0) { su += u(y, x - 1); sv += v(y, x - 1); ++nb; }
          if (x + 1 < w) { su += u(y, x + 1); sv += v(y, x + 1); ++nb; }
          if (y > 0) { su += u(y - 1, x); sv += v(y - 1, x); ++nb; }
          if (y + 1 < h) { su += u(y + 1, x); sv += v(y + 1, x); ++nb; }

          const double a11 = j11(y, x) + alpha * nb;
          const double a12 = j12(y, x);
          const double a22 = j22(y, x) + alpha * nb;
          const double r1 = b1(y, x) + alpha * su;
          const double r2 = b2(y, x) + alpha * sv;
          const double det = a11 * a22 - a12 * a12;
          const double nu = (a22 * r1 - a12 * r2) / det;
          const double nv = (a11 * r2 - a12 * r1) / det;
          max_update = std::max({max_update, std::abs(nu - u(y, x)),
                                 std::abs(nv - v(y, x))});
          u(y, x) = nu;
          v(y, x) = nv;
        }
      }
      if (stats)
        level_stats.energies.push_back(level_energy(
            ix, iy, ct, ixx, ixy, iyy, cxt, cyt, g, alpha, u, v));
      if (max_update < params.convergence_epsilon) {
        ++iter;
        break;
      }
    }
    level_stats.iterations = iter;
    if (stats) stats->levels.push_back(std::move(level_stats));
  }

  return FlowField{std::move(u), std::move(v)};
}

PolarFlow to_polar(const FlowField& field) {
  if (field.vx.rows() != field.vy.rows() || field.vx.cols() != field.vy.cols())
    throw std::invalid_argument("to_polar: vx/vy dimensions differ");
  if (!all_finite(field.vx) || !all_finite(field.vy))
    throw std::invalid_argument("to_polar: non-finite flow");
  const int h = field.height();
  const int w = field.width();
  PolarFlow p;
  p.magnitude = (field.vx.square() + field.vy.square()).sqrt();
  p.angle_deg = Grid::Zero(h, w);
  constexpr double kRadToDeg = 180.0 / M_PI;
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < h; ++y) {
      const double vx = field.vx(y, x);
      const double vy = field.vy(y, x);
      if (vx == 0.0 && vy == 0.0) {
        p.angle_deg(y, x) = 0.0;  // zero-vector convention
        continue;
      }
      double deg = std::atan2(vy, vx) * kRadToDeg;
      if (deg >= 180.0) deg = -180.0;  // atan2 returns (-180, 180]
      p.angle_deg(y, x) = deg;
    }
  return p;
}

std::vector<FlowField> flow_series(const ImageSequence& seq,
                                   const FlowParams& params, int threads) {
  validate_sequence(seq);
  params.validate();
  const int n = seq.frame_count() - 1;
  std::vector<FlowField> fields(n);
  parallel_for(
      n,
      [&](int i) {
        fields[i] = compute_flow(seq.frames[i], seq.frames[i + 1], params);
      },
      threads);
  return fields;
}

}  // namespace tfg
