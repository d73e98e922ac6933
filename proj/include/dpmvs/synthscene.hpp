#pragma once

#include <cstdint>
#include <string>

#include "dpmvs/dataio.hpp"

namespace mvs {

enum class SceneShape { textured_plane, sphere_on_plane };

// Synthetic rig: cameras on a ring at z = -target_distance looking at the
// origin, a plane through the origin (optionally with a sphere resting
// against it), procedural value-noise albedo, Lambertian shading.
// Ground-truth depth is the analytic ray intersection.
struct SceneSpec {
  SceneShape shape = SceneShape::textured_plane;
  double texture_strength = 1.0;  // [0, 1] albedo contrast
  int n_views = 5;
  int width = 160;
  int height = 128;
  double ring_radius_mm = 150.0;
  double target_distance_mm = 1000.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Sphere radius as a fraction of target_distance for sphere_on_plane.
inline constexpr double kSphereRadiusFraction = 0.25;

// Global hypothesis count the generated depth_min/depth_interval are sized
// for (stage-1 default: 48 hypotheses at 4x the camera interval).
inline constexpr int kGlobalHypothesisCount = 48;
inline constexpr double kStage1IntervalScale = 4.0;

// Renders all views. Writes the scene directory layout when out_dir is
// non-empty; always returns the scene in memory (with ground truth).
Scene generate_scene(const SceneSpec& spec, const std::string& out_dir);

SceneShape parse_scene_shape(const std::string& name);

}  // namespace mvs
