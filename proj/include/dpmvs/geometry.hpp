#pragma once

#include <Eigen/Dense>

#include "dpmvs/errors.hpp"

namespace mvs {

// Pixel convention used everywhere: pixel centers sit at integer
// coordinates, origin at the center of the top-left pixel. Depth is the
// camera-frame z of a point (not ray length), in millimetres.

struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  void validate() const;
};

// World-to-camera rigid transform: X_cam = rotation * X_world + translation.
struct CameraPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();  // mm

  void validate() const;
  Eigen::Vector3d center() const { return -rotation.transpose() * translation; }
};

struct Camera {
  CameraIntrinsics intrinsics;
  CameraPose pose;
  double depth_min = 0.0;       // mm
  double depth_interval = 0.0;  // mm, hypothesis spacing metadata

  void validate() const;
  // Camera for the same view box-downscaled by an integer factor.
  Camera scaled(int factor) const;
};

struct Projection {
  Eigen::Vector2d pixel;
  double depth = 0.0;
};

struct Reprojection {
  Eigen::Vector2d pixel;
  double depth = 0.0;
  bool in_bounds = false;
};

struct ReprojectionJacobian {
  Eigen::Vector2d dpixel_ddepth;
  double ddepth_ddepth = 0.0;
};

Projection project(const Camera& camera, const Eigen::Vector3d& point);
Eigen::Vector3d backproject(const Camera& camera, const Eigen::Vector2d& pixel,
                            double depth);
// src-view pixel and depth of the point seen at (pixel, depth) in ref.
// Throws on depth <= 0 or a point behind the source camera; an
// out-of-bounds landing is reported through the in_bounds flag.
Reprojection reproject(const Camera& ref, const Camera& src,
                       const Eigen::Vector2d& pixel, double depth);
Reprojection reproject(const Camera& ref, const Camera& src,
                       const Eigen::Vector2d& pixel, double depth,
                       ReprojectionJacobian& jacobian);

// Precomputed ref->src map for inner loops:
//   X_src = warp * (u, v, 1)^T * depth + offset.
// Non-throwing; callers test the status flags.
struct CameraPairTransform {
  Eigen::Matrix3d warp;
  Eigen::Vector3d offset;
  CameraIntrinsics src;

  struct Result {
    double x = 0.0, y = 0.0;  // src pixel
    double depth = 0.0;       // src camera z
    bool in_front = false;
    bool in_bounds = false;
  };

  Result map(double u, double v, double depth) const {
    const Eigen::Vector3d p =
        warp * Eigen::Vector3d(u, v, 1.0) * depth + offset;
    Result r;
    r.depth = p.z();
    if (p.z() <= 0.0) return r;
    r.in_front = true;
    const double inv_z = 1.0 / p.z();
    r.x = src.fx * p.x() * inv_z + src.cx;
    r.y = src.fy * p.y() * inv_z + src.cy;
    r.in_bounds = r.x >= 0.0 && r.x <= src.width - 1.0 && r.y >= 0.0 &&
                  r.y <= src.height - 1.0;
    return r;
  }

  Result map(double u, double v, double depth,
             ReprojectionJacobian& jacobian) const {
    const Eigen::Vector3d a = warp * Eigen::Vector3d(u, v, 1.0);
    const Eigen::Vector3d p = a * depth + offset;
    Result r;
    r.depth = p.z();
    jacobian.ddepth_ddepth = a.z();
    if (p.z() <= 0.0) return r;
    r.in_front = true;
    const double inv_z = 1.0 / p.z();
    const double inv_z2 = inv_z * inv_z;
    r.x = src.fx * p.x() * inv_z + src.cx;
    r.y = src.fy * p.y() * inv_z + src.cy;
    jacobian.dpixel_ddepth.x() = src.fx * (a.x() * p.z() - p.x() * a.z()) * inv_z2;
    jacobian.dpixel_ddepth.y() = src.fy * (a.y() * p.z() - p.y() * a.z()) * inv_z2;
    r.in_bounds = r.x >= 0.0 && r.x <= src.width - 1.0 && r.y >= 0.0 &&
                  r.y <= src.height - 1.0;
    return r;
  }
};

CameraPairTransform make_pair_transform(const Camera& ref, const Camera& src);

}  // namespace mvs
