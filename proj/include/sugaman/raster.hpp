#pragma once

#include "sugaman/types.hpp"

#include <vector>

namespace sugaman {

/// Bit-per-pixel occupancy raster; foreground (1) is ink.
struct BinaryImage {
  int width = 0;
  int height = 0;
  MaskArray data;  // height x width, values 0/1

  BinaryImage() = default;
  BinaryImage(int w, int h) : width(w), height(h), data(MaskArray::Zero(h, w)) {}

  // Out-of-bounds reads are background everywhere in the pipeline.
  bool at(int x, int y) const {
    if (x < 0 || y < 0 || x >= width || y >= height) return false;
    return data(y, x) != 0;
  }
  void set(int x, int y, bool v) {
    if (x < 0 || y < 0 || x >= width || y >= height) return;
    data(y, x) = v ? 1 : 0;
  }
  long foreground_count() const { return data.cast<long>().sum(); }
  bool empty() const { return width <= 0 || height <= 0; }

  bool operator==(const BinaryImage& o) const {
    return width == o.width && height == o.height && (data == o.data).all();
  }
};

struct LabelImage {
  int width = 0;
  int height = 0;
  LabelArray labels;  // 0 = background, 1..count = components
  int count = 0;

  int at(int x, int y) const {
    if (x < 0 || y < 0 || x >= width || y >= height) return 0;
    return labels(y, x);
  }
};

struct StructuringElement {
  enum class Shape { square, cross };
  int radius = 1;
  Shape shape = Shape::square;
};

enum class MorphOp { erode, dilate, open, close };

/// Axis-aligned pixel rectangle, inclusive bounds.
struct Box {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
  long area() const { return static_cast<long>(width()) * height(); }
  Vec2 center() const { return Vec2((x0 + x1) / 2.0, (y0 + y1) / 2.0); }
  Box dilated(int r) const { return Box{x0 - r, y0 - r, x1 + r, y1 + r}; }
  bool contains(int x, int y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }

  Box merged(const Box& o) const {
    return Box{std::min(x0, o.x0), std::min(y0, o.y0), std::max(x1, o.x1), std::max(y1, o.y1)};
  }
  // Chebyshev separation between rectangles; 0 when they touch or overlap.
  int gap_to(const Box& o) const {
    int gx = std::max({0, o.x0 - x1 - 1, x0 - o.x1 - 1});
    int gy = std::max({0, o.y0 - y1 - 1, y0 - o.y1 - 1});
    return std::max(gx, gy);
  }
  bool operator==(const Box& o) const {
    return x0 == o.x0 && y0 == o.y0 && x1 == o.x1 && y1 == o.y1;
  }
};

struct CornerPoint {
  Pixel p;
  Scalar response = 0;
};

/// Foreground iff gray value < threshold (ink is dark).
BinaryImage binarize(const GrayArray& gray, int threshold);

BinaryImage morph(const BinaryImage& img, const StructuringElement& se, MorphOp op);

BinaryImage complement(const BinaryImage& img);

/// Deterministic labeling: components numbered by raster-scan order of their
/// first pixel. connectivity is 4 or 8.
LabelImage connected_components(const BinaryImage& img, int connectivity);

/// One box per component with area >= min_area; boxes closer than merge_gap
/// are unioned (keeps multi-stroke glyphs whole). Sorted by (top, left).
std::vector<Box> detect_blobs(const BinaryImage& img, long min_area, int merge_gap);

/// Harris response on the 0/1 raster after a 3x3 box blur; NMS radius 3;
/// at most max_n points, strongest first, ties by (y, x).
std::vector<CornerPoint> harris_corners(const BinaryImage& img, int max_n);

/// Largest k such that a k x k foreground square exists within the component.
/// Returned per label (index 0 unused).
std::vector<int> max_square_per_component(const LabelImage& labels);

}  // namespace sugaman
