#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/types.hpp"

namespace sparkproj {

enum class ColorMode { kReal, kSemantic };

struct RasterImage {
  int height = 0;
  int width = 0;
  ColorMode mode = ColorMode::kReal;
  std::vector<Rgb> pixels;       // row-major, background (0,0,0)
  std::vector<double> depth;     // background = +infinity
  std::vector<int64_t> winner;   // point index that owns the pixel, -1 = none

  const Rgb& at(int h, int w) const {
    return pixels[static_cast<size_t>(h) * width + w];
  }
  double depth_at(int h, int w) const {
    return depth[static_cast<size_t>(h) * width + w];
  }
  // pixels that received at least one in-frame point
  size_t occupied_count() const;
};

// Fixed label palette; never returns pure black, so black stays a reliable
// background marker in semantic images.
Rgb palette_color(int label);

// Rasterizes the subset under the plane's curved rays. Every in-frame point
// writes its color iff its depth is strictly smaller than the stored depth;
// equal depths resolve to the lower point index, so the result does not
// depend on subset order. Out-of-frame points are dropped.
RasterImage render_view(const PointCloud& cloud,
                        const std::vector<size_t>& subset,
                        const ViewPlane& plane, const RayParams& ray, int rows,
                        int cols, ColorMode mode);

// Binary PPM ("P6", maxval 255), channel v encoded as round(v*255),
// row-major with the top row first. Byte-identical for identical images.
std::vector<uint8_t> encode_ppm(const RasterImage& img);
void write_ppm(const RasterImage& img, const std::string& path);

// true where the pixel is exactly (0,0,0)
std::vector<bool> black_mask(const RasterImage& img);

}  // namespace sparkproj
