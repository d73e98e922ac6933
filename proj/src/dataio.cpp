#include "dpmvs/dataio.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace mvs {

namespace fs = std::filesystem;

namespace {

static_assert(std::endian::native == std::endian::little,
              "file I/O assumes a little-endian host");

[[noreturn]] void fail_parse(const std::string& what, std::istream& in) {
  const auto pos = in.tellg();
  throw ParseError(what, pos < 0 ? 0 : static_cast<std::size_t>(pos));
}

std::ifstream open_input(const std::string& path, std::ios::openmode mode) {
  std::ifstream in(path, mode);
  if (!in) throw UserError("cannot open for reading: " + path);
  return in;
}

std::ofstream open_output(const std::string& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw UserError("cannot open for writing: " + path);
  return out;
}

// One whitespace-delimited PFM header token; '#' comments are not part of
// the PFM spec and are not accepted.
std::string pfm_token(std::istream& in) {
  std::string token;
  if (!(in >> token)) fail_parse("pfm: truncated header", in);
  return token;
}

}  // namespace

// ---------------------------------------------------------------- PFM ----

DepthMapBuffer read_pfm(const std::string& path) {
  std::ifstream in = open_input(path, std::ios::binary);

  const std::string magic = pfm_token(in);
  if (magic == "PF")
    fail_parse("pfm: unsupported channel count (expected single-channel 'Pf')", in);
  if (magic != "Pf") fail_parse("pfm: bad magic '" + magic + "'", in);

  int width = 0, height = 0;
  double scale = 0.0;
  try {
    width = std::stoi(pfm_token(in));
    height = std::stoi(pfm_token(in));
    scale = std::stod(pfm_token(in));
  } catch (const std::logic_error&) {
    fail_parse("pfm: malformed header number", in);
  }
  if (width <= 0 || height <= 0) fail_parse("pfm: non-positive dimensions", in);
  if (scale == 0.0) fail_parse("pfm: zero scale", in);
  const bool little_endian = scale < 0.0;

  // Exactly one byte of whitespace separates the header from the payload.
  in.get();

  DepthMapBuffer buffer(width, height);
  std::vector<float> row(static_cast<std::size_t>(width));
  const std::size_t payload_start = static_cast<std::size_t>(in.tellg());
  for (int y = height - 1; y >= 0; --y) {  // bottom-to-top storage
    const std::size_t row_offset =
        payload_start +
        static_cast<std::size_t>(height - 1 - y) * width * sizeof(float);
    in.read(reinterpret_cast<char*>(row.data()), width * sizeof(float));
    if (!in) fail_parse("pfm: truncated payload", in);
    if (!little_endian) {
      for (float& v : row) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        bits = __builtin_bswap32(bits);
        std::memcpy(&v, &bits, 4);
      }
    }
    for (int x = 0; x < width; ++x)
      if (!std::isfinite(row[x]))
        throw ParseError("pfm: non-finite payload value",
                         row_offset + x * sizeof(float));
    std::copy(row.begin(), row.end(),
              buffer.values.begin() + static_cast<std::size_t>(y) * width);
  }
  return buffer;
}

void write_pfm(const DepthMapBuffer& buffer, const std::string& path) {
  std::ofstream out = open_output(path, std::ios::binary);
  out << "Pf\n" << buffer.width << " " << buffer.height << "\n-1.0\n";
  for (int y = buffer.height - 1; y >= 0; --y)
    out.write(reinterpret_cast<const char*>(&buffer.at(0, y)),
              buffer.width * sizeof(float));
  if (!out) throw UserError("pfm: write failed: " + path);
}

// ---------------------------------------------------------------- cam ----

Camera read_cam(const std::string& path) {
  std::ifstream in = open_input(path, std::ios::in);
  std::string token;
  if (!(in >> token) || token != "extrinsic")
    fail_parse("cam: missing 'extrinsic' block", in);

  Eigen::Matrix4d extrinsic;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (!(in >> extrinsic(r, c))) fail_parse("cam: truncated extrinsic", in);

  if (!(in >> token) || token != "intrinsic")
    fail_parse("cam: missing 'intrinsic' block", in);
  Eigen::Matrix3d intrinsic;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (!(in >> intrinsic(r, c))) fail_parse("cam: truncated intrinsic", in);

  Camera camera;
  if (!(in >> camera.depth_min >> camera.depth_interval))
    fail_parse("cam: missing depth_min / depth_interval line", in);

  const Eigen::Matrix3d rotation = extrinsic.topLeftCorner<3, 3>();
  const Eigen::Matrix3d rtr = rotation.transpose() * rotation;
  if ((rtr - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-3)
    fail_parse("cam: rotation block is not orthonormal", in);
  if (rotation.determinant() < 0.0)
    fail_parse("cam: rotation block has negative determinant", in);

  // Project onto the nearest rotation so downstream orthonormality
  // invariants hold even for coarsely printed files.
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      rotation, Eigen::ComputeFullU | Eigen::ComputeFullV);
  camera.pose.rotation = svd.matrixU() * svd.matrixV().transpose();
  camera.pose.translation = extrinsic.topRightCorner<3, 1>();

  camera.intrinsics.fx = intrinsic(0, 0);
  camera.intrinsics.fy = intrinsic(1, 1);
  camera.intrinsics.cx = intrinsic(0, 2);
  camera.intrinsics.cy = intrinsic(1, 2);
  // The format does not carry the image size; callers set width/height
  // from the image they pair this camera with.
  return camera;
}

void write_cam(const Camera& camera, const std::string& path) {
  std::ofstream out = open_output(path, std::ios::out);
  char buf[64];
  auto emit = [&](double v, char sep) {
    std::snprintf(buf, sizeof(buf), "%.12g%c", v, sep);
    out << buf;
  };

  out << "extrinsic\n";
  Eigen::Matrix4d extrinsic = Eigen::Matrix4d::Identity();
  extrinsic.topLeftCorner<3, 3>() = camera.pose.rotation;
  extrinsic.topRightCorner<3, 1>() = camera.pose.translation;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) emit(extrinsic(r, c), c == 3 ? '\n' : ' ');

  out << "\nintrinsic\n";
  Eigen::Matrix3d intrinsic = Eigen::Matrix3d::Identity();
  intrinsic(0, 0) = camera.intrinsics.fx;
  intrinsic(1, 1) = camera.intrinsics.fy;
  intrinsic(0, 2) = camera.intrinsics.cx;
  intrinsic(1, 2) = camera.intrinsics.cy;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) emit(intrinsic(r, c), c == 2 ? '\n' : ' ');

  out << "\n";
  emit(camera.depth_min, ' ');
  emit(camera.depth_interval, '\n');
  if (!out) throw UserError("cam: write failed: " + path);
}

// --------------------------------------------------------------- pair ----

std::vector<std::vector<PairEntry>> read_pair(const std::string& path) {
  std::ifstream in = open_input(path, std::ios::in);
  int count = 0;
  if (!(in >> count) || count < 0) fail_parse("pair: bad view count", in);

  std::vector<std::vector<PairEntry>> pairs(count);
  for (int i = 0; i < count; ++i) {
    int id = 0, n = 0;
    if (!(in >> id)) fail_parse("pair: missing view id", in);
    if (id < 0 || id >= count) fail_parse("pair: view id out of range", in);
    if (!(in >> n) || n < 0) fail_parse("pair: bad source count", in);
    for (int k = 0; k < n; ++k) {
      PairEntry e;
      if (!(in >> e.id >> e.score)) fail_parse("pair: truncated source list", in);
      if (e.id < 0 || e.id >= count)
        fail_parse("pair: source id out of range", in);
      if (e.id == id) fail_parse("pair: view lists itself as a source", in);
      pairs[id].push_back(e);
    }
  }
  return pairs;
}

void write_pair(const std::vector<std::vector<PairEntry>>& pairs,
                const std::string& path) {
  std::ofstream out = open_output(path, std::ios::out);
  out << pairs.size() << "\n";
  char buf[64];
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out << i << "\n" << pairs[i].size();
    for (const PairEntry& e : pairs[i]) {
      std::snprintf(buf, sizeof(buf), " %d %.6g", e.id, e.score);
      out << buf;
    }
    out << "\n";
  }
  if (!out) throw UserError("pair: write failed: " + path);
}

// ---------------------------------------------------------------- PLY ----

void write_ply(const PointCloud& cloud, const std::string& path) {
  if (cloud.has_colors() && cloud.colors.size() != cloud.points.size())
    throw UserError("ply: color count does not match point count");
  std::ofstream out = open_output(path, std::ios::binary);
  out << "ply\nformat binary_little_endian 1.0\n"
      << "element vertex " << cloud.points.size() << "\n"
      << "property float x\nproperty float y\nproperty float z\n"
      << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      << "end_header\n";
  const std::array<std::uint8_t, 3> white{255, 255, 255};
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    out.write(reinterpret_cast<const char*>(cloud.points[i].data()),
              3 * sizeof(float));
    const auto& c = cloud.has_colors() ? cloud.colors[i] : white;
    out.write(reinterpret_cast<const char*>(c.data()), 3);
  }
  if (!out) throw UserError("ply: write failed: " + path);
}

PointCloud read_ply(const std::string& path) {
  std::ifstream in = open_input(path, std::ios::binary);
  std::string line;
  if (!std::getline(in, line) || line != "ply")
    fail_parse("ply: bad magic", in);
  if (!std::getline(in, line) || line != "format binary_little_endian 1.0")
    fail_parse("ply: unsupported format (expect binary_little_endian 1.0)", in);

  std::size_t vertex_count = 0;
  std::vector<std::string> properties;
  while (std::getline(in, line)) {
    if (line == "end_header") break;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "comment") continue;
    if (key == "element") {
      std::string name;
      ls >> name >> vertex_count;
      if (name != "vertex") fail_parse("ply: unsupported element " + name, in);
    } else if (key == "property") {
      std::string type, name;
      ls >> type >> name;
      properties.push_back(type + " " + name);
    }
  }
  const std::vector<std::string> xyz = {"float x", "float y", "float z"};
  const std::vector<std::string> xyzrgb = {"float x",   "float y",
                                           "float z",   "uchar red",
                                           "uchar green", "uchar blue"};
  bool with_color;
  if (properties == xyzrgb)
    with_color = true;
  else if (properties == xyz)
    with_color = false;
  else
    fail_parse("ply: unsupported vertex layout", in);

  PointCloud cloud;
  cloud.points.resize(vertex_count);
  if (with_color) cloud.colors.resize(vertex_count);
  for (std::size_t i = 0; i < vertex_count; ++i) {
    in.read(reinterpret_cast<char*>(cloud.points[i].data()), 3 * sizeof(float));
    if (with_color)
      in.read(reinterpret_cast<char*>(cloud.colors[i].data()), 3);
    if (!in) fail_parse("ply: truncated payload", in);
  }
  return cloud;
}

// -------------------------------------------------------------- scene ----

std::string view_stem(int id) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08d", id);
  return buf;
}

namespace {

// Depth maps may come at an integer-divisor resolution of the image;
// anything else is an error rather than a silent resample.
int depth_scale_for(const DepthMapBuffer& depth, const ImageRGB8& image,
                    const std::string& what) {
  if (depth.width <= 0 || depth.height <= 0)
    throw UserError(what + ": empty depth map");
  if (image.width % depth.width != 0 || image.height % depth.height != 0)
    throw UserError(what + ": depth resolution is not an integer divisor of the image");
  const int sx = image.width / depth.width;
  const int sy = image.height / depth.height;
  if (sx != sy) throw UserError(what + ": anisotropic depth scale");
  return sx;
}

}  // namespace

Scene load_scene(const std::string& dir) {
  const fs::path root(dir);
  if (!fs::is_directory(root))
    throw UserError("scene: not a directory: " + dir);
  if (!fs::is_directory(root / "images"))
    throw UserError("scene: missing component images/ in " + dir);
  if (!fs::is_directory(root / "cams"))
    throw UserError("scene: missing component cams/ in " + dir);
  if (!fs::exists(root / "pair.txt"))
    throw UserError(
        "scene: missing pair.txt in " + dir +
        " (run synthscene or supply a view pairing)");

  std::vector<std::string> stems;
  for (const auto& entry : fs::directory_iterator(root / "images"))
    if (entry.path().extension() == ".png")
      stems.push_back(entry.path().stem().string());
  std::sort(stems.begin(), stems.end());
  if (stems.empty()) throw UserError("scene: no images in " + dir);

  Scene scene;
  scene.views.reserve(stems.size());
  for (const std::string& stem : stems) {
    View view;
    view.image = read_png((root / "images" / (stem + ".png")).string());
    const fs::path cam_path = root / "cams" / (stem + "_cam.txt");
    if (!fs::exists(cam_path))
      throw UserError("scene: missing camera file " + cam_path.string());
    view.camera = read_cam(cam_path.string());
    view.camera.intrinsics.width = view.image.width;
    view.camera.intrinsics.height = view.image.height;
    view.camera.validate();

    const fs::path gt_path = root / "depths_gt" / (stem + ".pfm");
    if (fs::exists(gt_path)) {
      view.gt_depth = read_pfm(gt_path.string());
      view.gt_scale = depth_scale_for(view.gt_depth, view.image, "gt depth");
    }
    const fs::path prior_path = root / "depths_prior" / (stem + ".pfm");
    if (fs::exists(prior_path)) {
      view.prior_depth = read_pfm(prior_path.string());
      view.prior_scale =
          depth_scale_for(view.prior_depth, view.image, "prior depth");
    }
    scene.views.push_back(std::move(view));
  }

  scene.pairs = read_pair((root / "pair.txt").string());
  if (scene.pairs.size() != scene.views.size())
    throw UserError("scene: pair.txt view count does not match image count");
  return scene;
}

}  // namespace mvs
