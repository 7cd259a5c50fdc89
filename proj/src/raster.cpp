#include "sugaman/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace sugaman {

BinaryImage binarize(const GrayArray& gray, int threshold) {
  if (gray.rows() == 0 || gray.cols() == 0)
    throw Error(ErrorCategory::invalid_input, "binarize: empty raster");
  BinaryImage out(static_cast<int>(gray.cols()), static_cast<int>(gray.rows()));
  out.data = (gray.cast<int>() < threshold).cast<std::uint8_t>();
  return out;
}

BinaryImage complement(const BinaryImage& img) {
  BinaryImage out(img.width, img.height);
  out.data = (img.data == 0).cast<std::uint8_t>();
  return out;
}

namespace {

std::vector<Pixel> se_offsets(const StructuringElement& se) {
  std::vector<Pixel> offs;
  const int r = se.radius;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) {
      if (se.shape == StructuringElement::Shape::cross && dx != 0 && dy != 0) continue;
      offs.emplace_back(dx, dy);
    }
  return offs;
}

BinaryImage dilate_impl(const BinaryImage& img, const std::vector<Pixel>& offs) {
  BinaryImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      if (!img.data(y, x)) continue;
      for (const auto& o : offs) out.set(x + o.x(), y + o.y(), true);
    }
  return out;
}

// Adjoint erosion of the clipped dilation: structuring-element taps outside
// the canvas are ignored, which keeps closing extensive and opening
// anti-extensive on finite rasters.
BinaryImage erode_impl(const BinaryImage& img, const std::vector<Pixel>& offs) {
  BinaryImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      bool all = true;
      for (const auto& o : offs) {
        const int nx = x + o.x(), ny = y + o.y();
        if (nx < 0 || ny < 0 || nx >= img.width || ny >= img.height) continue;
        if (!img.data(ny, nx)) {
          all = false;
          break;
        }
      }
      out.data(y, x) = all ? 1 : 0;
    }
  return out;
}

}  // namespace

BinaryImage morph(const BinaryImage& img, const StructuringElement& se, MorphOp op) {
  if (se.radius < 1) throw Error(ErrorCategory::invalid_input, "morph: radius must be >= 1");
  const auto offs = se_offsets(se);
  switch (op) {
    case MorphOp::erode: return erode_impl(img, offs);
    case MorphOp::dilate: return dilate_impl(img, offs);
    case MorphOp::open: return dilate_impl(erode_impl(img, offs), offs);
    case MorphOp::close: return erode_impl(dilate_impl(img, offs), offs);
  }
  return img;
}

LabelImage connected_components(const BinaryImage& img, int connectivity) {
  if (connectivity != 4 && connectivity != 8)
    throw Error(ErrorCategory::invalid_input, "connected_components: connectivity must be 4 or 8");
  LabelImage out;
  out.width = img.width;
  out.height = img.height;
  out.labels = LabelArray::Zero(img.height, img.width);
  out.count = 0;

  static const int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1};
  static const int dy8[] = {0, 0, 1, -1, 1, -1, 1, -1};
  const int ndirs = connectivity == 4 ? 4 : 8;

  std::vector<Pixel> stack;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      if (!img.data(y, x) || out.labels(y, x) != 0) continue;
      const int label = ++out.count;
      stack.clear();
      stack.emplace_back(x, y);
      out.labels(y, x) = label;
      while (!stack.empty()) {
        Pixel p = stack.back();
        stack.pop_back();
        for (int d = 0; d < ndirs; ++d) {
          const int nx = p.x() + dx8[d];
          const int ny = p.y() + dy8[d];
          if (nx < 0 || ny < 0 || nx >= img.width || ny >= img.height) continue;
          if (!img.data(ny, nx) || out.labels(ny, nx) != 0) continue;
          out.labels(ny, nx) = label;
          stack.emplace_back(nx, ny);
        }
      }
    }
  }
  return out;
}

std::vector<Box> detect_blobs(const BinaryImage& img, long min_area, int merge_gap) {
  LabelImage labels = connected_components(img, 8);
  std::vector<Box> boxes;
  std::vector<long> areas(labels.count + 1, 0);
  std::vector<Box> extent(labels.count + 1, Box{1 << 30, 1 << 30, -(1 << 30), -(1 << 30)});
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const int l = labels.labels(y, x);
      if (l == 0) continue;
      ++areas[l];
      Box& b = extent[l];
      b.x0 = std::min(b.x0, x);
      b.y0 = std::min(b.y0, y);
      b.x1 = std::max(b.x1, x);
      b.y1 = std::max(b.y1, y);
    }
  for (int l = 1; l <= labels.count; ++l)
    if (areas[l] >= min_area) boxes.push_back(extent[l]);

  // Union boxes within merge_gap until no pair qualifies; merged boxes can
  // come within range of further boxes, so iterate to a fixed point.
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t i = 0; i < boxes.size() && !merged; ++i)
      for (size_t j = i + 1; j < boxes.size() && !merged; ++j) {
        if (boxes[i].gap_to(boxes[j]) <= merge_gap) {
          boxes[i] = boxes[i].merged(boxes[j]);
          boxes.erase(boxes.begin() + static_cast<long>(j));
          merged = true;
        }
      }
  }
  std::sort(boxes.begin(), boxes.end(), [](const Box& a, const Box& b) {
    return std::tie(a.y0, a.x0, a.y1, a.x1) < std::tie(b.y0, b.x0, b.y1, b.x1);
  });
  return boxes;
}

namespace {

Eigen::ArrayXXd box3(const Eigen::ArrayXXd& f) {
  const long h = f.rows(), w = f.cols();
  Eigen::ArrayXXd out = Eigen::ArrayXXd::Zero(h, w);
  for (long y = 0; y < h; ++y)
    for (long x = 0; x < w; ++x) {
      double s = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const long yy = y + dy, xx = x + dx;
          if (yy < 0 || xx < 0 || yy >= h || xx >= w) continue;  // border = 0
          s += f(yy, xx);
        }
      out(y, x) = s / 9.0;
    }
  return out;
}

}  // namespace

std::vector<CornerPoint> harris_corners(const BinaryImage& img, int max_n) {
  if (max_n < 1) throw Error(ErrorCategory::invalid_input, "harris_corners: max_n must be >= 1");
  const int h = img.height, w = img.width;
  Eigen::ArrayXXd f = img.data.cast<double>();
  f = box3(f);

  Eigen::ArrayXXd ix = Eigen::ArrayXXd::Zero(h, w), iy = Eigen::ArrayXXd::Zero(h, w);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double xm = x > 0 ? f(y, x - 1) : 0.0;
      const double xp = x < w - 1 ? f(y, x + 1) : 0.0;
      const double ym = y > 0 ? f(y - 1, x) : 0.0;
      const double yp = y < h - 1 ? f(y + 1, x) : 0.0;
      ix(y, x) = 0.5 * (xp - xm);
      iy(y, x) = 0.5 * (yp - ym);
    }

  Eigen::ArrayXXd sxx = box3((ix * ix).eval());
  Eigen::ArrayXXd syy = box3((iy * iy).eval());
  Eigen::ArrayXXd sxy = box3((ix * iy).eval());

  constexpr double k = 0.04;
  Eigen::ArrayXXd r = sxx * syy - sxy * sxy - k * (sxx + syy).square();

  constexpr double kMinResponse = 1e-8;
  constexpr int kNmsRadius = 3;
  std::vector<CornerPoint> pts;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double v = r(y, x);
      if (v <= kMinResponse) continue;
      bool is_max = true;
      for (int dy = -kNmsRadius; dy <= kNmsRadius && is_max; ++dy)
        for (int dx = -kNmsRadius; dx <= kNmsRadius && is_max; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int yy = y + dy, xx = x + dx;
          if (yy < 0 || xx < 0 || yy >= h || xx >= w) continue;
          const double nv = r(yy, xx);
          // Equal responses keep the raster-scan-first pixel.
          if (nv > v || (nv == v && std::tie(yy, xx) < std::tie(y, x))) is_max = false;
        }
      if (is_max) pts.push_back({Pixel(x, y), v});
    }

  std::sort(pts.begin(), pts.end(), [](const CornerPoint& a, const CornerPoint& b) {
    if (a.response != b.response) return a.response > b.response;
    return std::tie(a.p.y(), a.p.x()) < std::tie(b.p.y(), b.p.x());
  });
  if (static_cast<int>(pts.size()) > max_n) pts.resize(max_n);
  return pts;
}

std::vector<int> max_square_per_component(const LabelImage& labels) {
  std::vector<int> best(labels.count + 1, 0);
  if (labels.count == 0) return best;
  // Classic maximal-square DP; squares must stay within one component.
  LabelArray dp = LabelArray::Zero(labels.height, labels.width);
  for (int y = 0; y < labels.height; ++y)
    for (int x = 0; x < labels.width; ++x) {
      const int l = labels.labels(y, x);
      if (l == 0) continue;
      int v = 1;
      if (x > 0 && y > 0 && labels.labels(y - 1, x) == l && labels.labels(y, x - 1) == l &&
          labels.labels(y - 1, x - 1) == l) {
        v = 1 + std::min({dp(y - 1, x), dp(y, x - 1), dp(y - 1, x - 1)});
      }
      dp(y, x) = v;
      best[l] = std::max(best[l], v);
    }
  return best;
}

}  // namespace sugaman
