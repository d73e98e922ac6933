#include "dpmvs/geometry.hpp"

#include <cmath>

namespace mvs {

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0))
    throw UserError("intrinsics: focal lengths must be positive");
  if (width <= 0 || height <= 0)
    throw UserError("intrinsics: image size must be positive");
  if (!(cx >= 0.0 && cx < width) || !(cy >= 0.0 && cy < height))
    throw UserError("intrinsics: principal point outside image");
}

void CameraPose::validate() const {
  const Eigen::Matrix3d rtr = rotation.transpose() * rotation;
  if ((rtr - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-9)
    throw UserError("pose: rotation is not orthonormal");
  if (rotation.determinant() < 0.0)
    throw UserError("pose: rotation has negative determinant");
}

void Camera::validate() const {
  intrinsics.validate();
  pose.validate();
  if (!(depth_min > 0.0)) throw UserError("camera: depth_min must be positive");
  if (!(depth_interval > 0.0))
    throw UserError("camera: depth_interval must be positive");
}

Camera Camera::scaled(int factor) const {
  if (factor < 1) throw UserError("camera: scale factor must be >= 1");
  Camera out = *this;
  // A factor x factor block of source pixels becomes one output pixel whose
  // center lies at factor*i + (factor-1)/2 in source coordinates.
  const double f = static_cast<double>(factor);
  const double shift = (f - 1.0) / 2.0;
  out.intrinsics.fx = intrinsics.fx / f;
  out.intrinsics.fy = intrinsics.fy / f;
  out.intrinsics.cx = (intrinsics.cx - shift) / f;
  out.intrinsics.cy = (intrinsics.cy - shift) / f;
  out.intrinsics.width = intrinsics.width / factor;
  out.intrinsics.height = intrinsics.height / factor;
  return out;
}

Projection project(const Camera& camera, const Eigen::Vector3d& point) {
  const Eigen::Vector3d p =
      camera.pose.rotation * point + camera.pose.translation;
  if (p.z() <= 0.0) throw Error("project: point behind camera");
  Projection result;
  const double inv_z = 1.0 / p.z();
  result.pixel.x() = camera.intrinsics.fx * p.x() * inv_z + camera.intrinsics.cx;
  result.pixel.y() = camera.intrinsics.fy * p.y() * inv_z + camera.intrinsics.cy;
  result.depth = p.z();
  return result;
}

Eigen::Vector3d backproject(const Camera& camera, const Eigen::Vector2d& pixel,
                            double depth) {
  if (!(depth > 0.0)) throw Error("backproject: invalid depth");
  const Eigen::Vector3d ray((pixel.x() - camera.intrinsics.cx) / camera.intrinsics.fx,
                            (pixel.y() - camera.intrinsics.cy) / camera.intrinsics.fy,
                            1.0);
  return camera.pose.rotation.transpose() * (ray * depth - camera.pose.translation);
}

CameraPairTransform make_pair_transform(const Camera& ref, const Camera& src) {
  CameraPairTransform t;
  const Eigen::Matrix3d rel =
      src.pose.rotation * ref.pose.rotation.transpose();
  Eigen::Matrix3d kinv = Eigen::Matrix3d::Identity();
  kinv(0, 0) = 1.0 / ref.intrinsics.fx;
  kinv(1, 1) = 1.0 / ref.intrinsics.fy;
  kinv(0, 2) = -ref.intrinsics.cx / ref.intrinsics.fx;
  kinv(1, 2) = -ref.intrinsics.cy / ref.intrinsics.fy;
  t.warp = rel * kinv;
  t.offset = src.pose.translation - rel * ref.pose.translation;
  t.src = src.intrinsics;
  return t;
}

Reprojection reproject(const Camera& ref, const Camera& src,
                       const Eigen::Vector2d& pixel, double depth) {
  if (!(depth > 0.0)) throw Error("reproject: invalid depth");
  const CameraPairTransform t = make_pair_transform(ref, src);
  const auto r = t.map(pixel.x(), pixel.y(), depth);
  if (!r.in_front) throw Error("reproject: point behind source camera");
  return Reprojection{{r.x, r.y}, r.depth, r.in_bounds};
}

Reprojection reproject(const Camera& ref, const Camera& src,
                       const Eigen::Vector2d& pixel, double depth,
                       ReprojectionJacobian& jacobian) {
  if (!(depth > 0.0)) throw Error("reproject: invalid depth");
  const CameraPairTransform t = make_pair_transform(ref, src);
  const auto r = t.map(pixel.x(), pixel.y(), depth, jacobian);
  if (!r.in_front) throw Error("reproject: point behind source camera");
  return Reprojection{{r.x, r.y}, r.depth, r.in_bounds};
}

}  // namespace mvs
