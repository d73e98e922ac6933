#pragma once

#include <string>
#include <vector>

#include "dpmvs/depth_map.hpp"
#include "dpmvs/geometry.hpp"
#include "dpmvs/image.hpp"
#include "dpmvs/point_cloud.hpp"

namespace mvs {

// One posed input view. Attached depth maps either match the image size or
// are an integer divisor of it; the divisor is recorded in *_scale.
struct View {
  ImageRGB8 image;
  Camera camera;
  DepthMapBuffer gt_depth;     // empty when absent
  DepthMapBuffer prior_depth;  // empty when absent
  int gt_scale = 1;
  int prior_scale = 1;

  bool has_gt() const { return !gt_depth.empty(); }
  bool has_prior() const { return !prior_depth.empty(); }
};

struct PairEntry {
  int id = 0;
  double score = 0.0;
};

struct Scene {
  std::vector<View> views;
  std::vector<std::vector<PairEntry>> pairs;  // per-view ranked source views
};

// --- PFM, single channel ("Pf"), 32-bit float ---------------------------
// Rows are stored bottom-to-top; a negative scale means little-endian.
DepthMapBuffer read_pfm(const std::string& path);
void write_pfm(const DepthMapBuffer& buffer, const std::string& path);

// --- MVSNet-style camera text file ---------------------------------------
// "extrinsic" block (4x4 row-major world-to-camera), "intrinsic" block
// (3x3), final line "depth_min depth_interval".
Camera read_cam(const std::string& path);
void write_cam(const Camera& camera, const std::string& path);

// --- pair.txt -------------------------------------------------------------
// First line: view count. Per view: a line with the view id, then a line
// "N id score id score ...".
std::vector<std::vector<PairEntry>> read_pair(const std::string& path);
void write_pair(const std::vector<std::vector<PairEntry>>& pairs,
                const std::string& path);

// --- binary little-endian PLY ---------------------------------------------
// Vertex properties: float x, y, z (mm) and uchar red, green, blue.
void write_ply(const PointCloud& cloud, const std::string& path);
PointCloud read_ply(const std::string& path);

// --- PNG --------------------------------------------------------------------
ImageRGB8 read_png(const std::string& path);
void write_png(const ImageRGB8& image, const std::string& path);

// --- scene directory --------------------------------------------------------
// Layout: images/NNNNNNNN.png, cams/NNNNNNNN_cam.txt,
// optional depths_gt/NNNNNNNN.pfm, optional depths_prior/NNNNNNNN.pfm,
// pair.txt. View order follows the zero-padded numeric filenames.
Scene load_scene(const std::string& dir);

std::string view_stem(int id);  // "00000000" style

}  // namespace mvs
