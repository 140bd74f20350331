#include "core/raster.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "core/error.hpp"
#include "core/projection.hpp"

namespace sparkproj {

size_t RasterImage::occupied_count() const {
  size_t n = 0;
  for (const double d : depth) {
    if (d != std::numeric_limits<double>::infinity()) ++n;
  }
  return n;
}

Rgb palette_color(int label) {
  // Golden-angle hue walk at full value; v=1 keeps every entry off black.
  const double hue = std::fmod(static_cast<double>(label) * 0.6180339887498949,
                               1.0) * 6.0;
  const int sector = static_cast<int>(hue) % 6;
  const double f = hue - std::floor(hue);
  const double s = 0.85, v = 1.0;
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  switch (sector) {
    case 0: return {v, t, p};
    case 1: return {q, v, p};
    case 2: return {p, v, t};
    case 3: return {p, q, v};
    case 4: return {t, p, v};
    default: return {v, p, q};
  }
}

RasterImage render_view(const PointCloud& cloud,
                        const std::vector<size_t>& subset,
                        const ViewPlane& plane, const RayParams& ray, int rows,
                        int cols, ColorMode mode) {
  if (rows < 1 || cols < 1) {
    fail(ErrorCode::kInvalidArgument, "render_view: image size must be >= 1");
  }
  RasterImage img;
  img.height = rows;
  img.width = cols;
  img.mode = mode;
  const size_t cells = static_cast<size_t>(rows) * static_cast<size_t>(cols);
  img.pixels.assign(cells, Rgb{});
  img.depth.assign(cells, std::numeric_limits<double>::infinity());
  img.winner.assign(cells, -1);

  for (const size_t idx : subset) {
    const Point& p = cloud.points[idx];
    if (mode == ColorMode::kSemantic && !p.label) {
      fail(ErrorCode::kMissingLabel,
           "render_view: semantic mode but point " + std::to_string(idx) +
               " has no label");
    }
    const PixelCoord pc = project_point(p, plane, ray, rows, cols);
    if (!pc.in_frame) continue;
    const size_t cell = static_cast<size_t>(pc.h) * cols + pc.w;
    const bool wins =
        pc.depth < img.depth[cell] ||
        (pc.depth == img.depth[cell] &&
         static_cast<int64_t>(idx) < img.winner[cell]);
    if (wins) {
      img.depth[cell] = pc.depth;
      img.winner[cell] = static_cast<int64_t>(idx);
      img.pixels[cell] =
          mode == ColorMode::kReal ? p.color : palette_color(*p.label);
    }
  }
  return img;
}

std::vector<uint8_t> encode_ppm(const RasterImage& img) {
  char header[64];
  const int n = std::snprintf(header, sizeof(header), "P6\n%d %d\n255\n",
                              img.width, img.height);
  std::vector<uint8_t> bytes(header, header + n);
  bytes.reserve(bytes.size() + img.pixels.size() * 3);
  for (const Rgb& px : img.pixels) {
    bytes.push_back(static_cast<uint8_t>(std::lround(px.r * 255.0)));
    bytes.push_back(static_cast<uint8_t>(std::lround(px.g * 255.0)));
    bytes.push_back(static_cast<uint8_t>(std::lround(px.b * 255.0)));
  }
  return bytes;
}

void write_ppm(const RasterImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    fail(ErrorCode::kIo, "cannot write " + path);
  }
  const std::vector<uint8_t> bytes = encode_ppm(img);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    fail(ErrorCode::kIo, "write failed: " + path);
  }
}

std::vector<bool> black_mask(const RasterImage& img) {
  std::vector<bool> mask(img.pixels.size());
  for (size_t i = 0; i < img.pixels.size(); ++i) {
    const Rgb& px = img.pixels[i];
    mask[i] = px.r == 0.0 && px.g == 0.0 && px.b == 0.0;
  }
  return mask;
}

}  // namespace sparkproj
