#include "dpmvs/synthscene.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "dpmvs/random.hpp"

namespace mvs {

namespace fs = std::filesystem;

void SceneSpec::validate() const {
  if (n_views < 2) throw UserError("scene spec: need at least 2 views");
  if (texture_strength < 0.0 || texture_strength > 1.0)
    throw UserError("scene spec: texture_strength must be in [0, 1]");
  if (width < 32 || height < 32)
    throw UserError("scene spec: image size must be at least 32x32");
  if (!(ring_radius_mm >= 0.0) || !(target_distance_mm > 0.0))
    throw UserError("scene spec: invalid rig geometry");
}

SceneShape parse_scene_shape(const std::string& name) {
  if (name == "textured_plane") return SceneShape::textured_plane;
  if (name == "sphere_on_plane") return SceneShape::sphere_on_plane;
  throw UserError("unknown scene shape: " + name);
}

namespace {

// Value noise: hashed unit values on an integer lattice, trilinear blend.
double lattice_value(std::uint64_t seed, std::int64_t ix, std::int64_t iy,
                     std::int64_t iz) {
  const std::uint64_t h = counter_hash(
      seed, static_cast<std::uint64_t>(ix) * 0x8DA6B343ull ^
                static_cast<std::uint64_t>(iy) * 0xD8163841ull ^
                static_cast<std::uint64_t>(iz) * 0xCB1AB31Full,
      0x74657874ull);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double value_noise(std::uint64_t seed, const Eigen::Vector3d& p) {
  const std::int64_t ix = static_cast<std::int64_t>(std::floor(p.x()));
  const std::int64_t iy = static_cast<std::int64_t>(std::floor(p.y()));
  const std::int64_t iz = static_cast<std::int64_t>(std::floor(p.z()));
  const double fx = p.x() - ix, fy = p.y() - iy, fz = p.z() - iz;
  double c[2][2];
  for (int dy = 0; dy < 2; ++dy)
    for (int dz = 0; dz < 2; ++dz)
      c[dy][dz] = (1.0 - fx) * lattice_value(seed, ix, iy + dy, iz + dz) +
                  fx * lattice_value(seed, ix + 1, iy + dy, iz + dz);
  const double b0 = (1.0 - fy) * c[0][0] + fy * c[1][0];
  const double b1 = (1.0 - fy) * c[0][1] + fy * c[1][1];
  return (1.0 - fz) * b0 + fz * b1;
}

struct SceneGeometry {
  SceneShape shape;
  double sphere_radius = 0.0;
  double plane_z = 0.0;

  // Nearest positive hit along origin + t * dir (dir has unit camera-z, so
  // t is the camera-frame depth). Returns t <= 0 on miss.
  double intersect(const Eigen::Vector3d& origin, const Eigen::Vector3d& dir,
                   Eigen::Vector3d& normal) const {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Vector3d best_normal = Eigen::Vector3d::Zero();

    if (dir.z() > 0.0) {
      const double t = (plane_z - origin.z()) / dir.z();
      if (t > 0.0 && t < best) {
        best = t;
        best_normal = Eigen::Vector3d(0.0, 0.0, -1.0);
      }
    }
    if (shape == SceneShape::sphere_on_plane) {
      const double a = dir.squaredNorm();
      const double b = 2.0 * origin.dot(dir);
      const double c = origin.squaredNorm() - sphere_radius * sphere_radius;
      const double disc = b * b - 4.0 * a * c;
      if (disc >= 0.0) {
        const double t = (-b - std::sqrt(disc)) / (2.0 * a);
        if (t > 0.0 && t < best) {
          best = t;
          best_normal = (origin + t * dir).normalized();
          if (best_normal.dot(dir) > 0.0) best_normal = -best_normal;
        }
      }
    }
    if (!std::isfinite(best)) return 0.0;
    normal = best_normal;
    return best;
  }
};

// Noise octave cell sizes in mm, sized so texture stays smooth at the
// default image resolution (bilinear warps must reproduce it cleanly).
constexpr double kCoarseCellMM = 90.0;
constexpr double kFineCellMM = 36.0;
constexpr double kTintCellMM = 220.0;

double surface_albedo(std::uint64_t seed, double strength,
                      const Eigen::Vector3d& p) {
  const double n = 0.6 * value_noise(seed, p / kCoarseCellMM) +
                   0.4 * value_noise(mix64(seed + 1), p / kFineCellMM);
  return 0.5 + strength * (n - 0.5);
}

Camera make_ring_camera(const SceneSpec& spec, int index) {
  const double theta = 2.0 * M_PI * index / spec.n_views;
  const Eigen::Vector3d position(spec.ring_radius_mm * std::cos(theta),
                                 spec.ring_radius_mm * std::sin(theta),
                                 -spec.target_distance_mm);

  const Eigen::Vector3d forward = (-position).normalized();  // toward origin
  Eigen::Vector3d right = Eigen::Vector3d(0.0, 1.0, 0.0).cross(forward);
  if (right.norm() < 1e-12) right = Eigen::Vector3d(1.0, 0.0, 0.0);
  right.normalize();
  const Eigen::Vector3d down = forward.cross(right);

  Camera camera;
  camera.pose.rotation.row(0) = right;
  camera.pose.rotation.row(1) = down;
  camera.pose.rotation.row(2) = forward;
  camera.pose.translation = -camera.pose.rotation * position;
  camera.intrinsics.width = spec.width;
  camera.intrinsics.height = spec.height;
  camera.intrinsics.fx = camera.intrinsics.fy = 1.2 * spec.width;
  camera.intrinsics.cx = (spec.width - 1) / 2.0;
  camera.intrinsics.cy = (spec.height - 1) / 2.0;
  return camera;
}

}  // namespace

Scene generate_scene(const SceneSpec& spec, const std::string& out_dir) {
  spec.validate();

  SceneGeometry geometry;
  geometry.shape = spec.shape;
  if (spec.shape == SceneShape::sphere_on_plane) {
    geometry.sphere_radius = kSphereRadiusFraction * spec.target_distance_mm;
    geometry.plane_z = geometry.sphere_radius;
  }

  const Eigen::Vector3d light = Eigen::Vector3d(0.35, -0.25, -0.9).normalized();
  constexpr double kAmbient = 0.35;

  Scene scene;
  scene.views.resize(spec.n_views);
  for (int v = 0; v < spec.n_views; ++v) {
    View& view = scene.views[v];
    view.camera = make_ring_camera(spec, v);
    const Eigen::Vector3d center = view.camera.pose.center();
    if (spec.shape == SceneShape::sphere_on_plane &&
        center.norm() <= geometry.sphere_radius)
      throw UserError("scene spec: camera inside the sphere");

    const Eigen::Matrix3d cam_to_world = view.camera.pose.rotation.transpose();
    const CameraIntrinsics& k = view.camera.intrinsics;
    view.image = ImageRGB8(spec.width, spec.height);
    view.gt_depth = DepthMapBuffer(spec.width, spec.height);

    double depth_lo = std::numeric_limits<double>::infinity();
    double depth_hi = 0.0;
#pragma omp parallel for schedule(static) reduction(min : depth_lo) \
    reduction(max : depth_hi)
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        const Eigen::Vector3d ray((x - k.cx) / k.fx, (y - k.cy) / k.fy, 1.0);
        const Eigen::Vector3d dir = cam_to_world * ray;
        Eigen::Vector3d normal;
        const double t = geometry.intersect(center, dir, normal);
        if (t <= 0.0) continue;
        view.gt_depth.at(x, y) = static_cast<float>(t);
        depth_lo = std::min(depth_lo, t);
        depth_hi = std::max(depth_hi, t);

        const Eigen::Vector3d hit = center + t * dir;
        const double albedo =
            surface_albedo(spec.seed, spec.texture_strength, hit);
        const double lambert = std::max(0.0, normal.dot(light));
        const double intensity = albedo * (kAmbient + (1.0 - kAmbient) * lambert);
        const double tint =
            value_noise(mix64(spec.seed + 2), hit / kTintCellMM);
        const double rgb[3] = {intensity * (0.85 + 0.3 * tint), intensity,
                               intensity * (1.15 - 0.3 * tint)};
        std::uint8_t* px = view.image.at(x, y);
        for (int c = 0; c < 3; ++c)
          px[c] = static_cast<std::uint8_t>(
              std::lround(std::clamp(rgb[c], 0.0, 1.0) * 255.0));
      }
    }

    if (!(depth_hi > 0.0))
      throw UserError("scene spec: no geometry visible from view " +
                      std::to_string(v));
    // Sampling range brackets the true depths with margin; the interval is
    // sized so the default stage-1 sweep covers the whole bracket.
    const double pad =
        std::max(0.2 * (depth_hi - depth_lo), 0.01 * (depth_lo + depth_hi));
    view.camera.depth_min = depth_lo - pad;
    view.camera.depth_interval =
        (depth_hi + pad - view.camera.depth_min) /
        ((kGlobalHypothesisCount - 1) * kStage1IntervalScale);
    view.camera.validate();
  }

  // Source ranking: smaller angle between viewing directions first.
  scene.pairs.resize(spec.n_views);
  for (int v = 0; v < spec.n_views; ++v) {
    const Eigen::Vector3d dir_v = scene.views[v].camera.pose.rotation.row(2);
    for (int w = 0; w < spec.n_views; ++w) {
      if (w == v) continue;
      const Eigen::Vector3d dir_w = scene.views[w].camera.pose.rotation.row(2);
      scene.pairs[v].push_back({w, dir_v.dot(dir_w)});
    }
    std::stable_sort(scene.pairs[v].begin(), scene.pairs[v].end(),
                     [](const PairEntry& a, const PairEntry& b) {
                       return a.score > b.score;
                     });
  }

  if (!out_dir.empty()) {
    const fs::path root(out_dir);
    fs::create_directories(root / "images");
    fs::create_directories(root / "cams");
    fs::create_directories(root / "depths_gt");
    for (int v = 0; v < spec.n_views; ++v) {
      const std::string stem = view_stem(v);
      write_png(scene.views[v].image, (root / "images" / (stem + ".png")).string());
      write_cam(scene.views[v].camera,
                (root / "cams" / (stem + "_cam.txt")).string());
      write_pfm(scene.views[v].gt_depth,
                (root / "depths_gt" / (stem + ".pfm")).string());
    }
    write_pair(scene.pairs, (root / "pair.txt").string());
  }
  return scene;
}

}  // namespace mvs
