#include "sugaman/glyphs.hpp"

#include <cmath>

namespace sugaman {

namespace {

void fill_rect(BinaryImage& img, int x, int y, int w, int h) {
  for (int yy = y; yy < y + h; ++yy)
    for (int xx = x; xx < x + w; ++xx) img.set(xx, yy, true);
}

// Rectangle outline with a 2 px stroke.
void outline_rect(BinaryImage& img, int x, int y, int w, int h) {
  fill_rect(img, x, y, w, 2);
  fill_rect(img, x, y + h - 2, w, 2);
  fill_rect(img, x, y, 2, h);
  fill_rect(img, x + w - 2, y, 2, h);
}

}  // namespace

BinaryImage decor_glyph(DecorClass cls) {
  switch (cls) {
    case DecorClass::bed: {
      BinaryImage g(38, 44);
      outline_rect(g, 0, 0, 38, 44);
      outline_rect(g, 5, 5, 28, 12);  // pillow board
      return g;
    }
    case DecorClass::sofa: {
      BinaryImage g(40, 26);
      outline_rect(g, 0, 0, 40, 26);
      outline_rect(g, 5, 5, 28, 13);  // seat
      return g;
    }
    case DecorClass::large_sofa: {
      BinaryImage g(44, 26);
      outline_rect(g, 0, 0, 44, 26);
      outline_rect(g, 5, 5, 12, 9);  // cushions
      outline_rect(g, 20, 5, 12, 9);
      return g;
    }
    case DecorClass::table: {
      BinaryImage g(30, 30);
      outline_rect(g, 0, 0, 30, 30);
      return g;
    }
    case DecorClass::chair: {
      BinaryImage g(36, 36);
      outline_rect(g, 0, 0, 36, 36);
      outline_rect(g, 5, 5, 26, 26);  // backrest
      return g;
    }
    case DecorClass::sink: {
      BinaryImage g(24, 22);
      outline_rect(g, 0, 0, 24, 22);
      fill_rect(g, 5, 5, 11, 3);  // tap
      return g;
    }
    case DecorClass::twin_sink: {
      BinaryImage g(43, 24);
      outline_rect(g, 0, 0, 20, 18);
      outline_rect(g, 23, 0, 20, 18);
      fill_rect(g, 6, 21, 11, 3);  // shared tap
      return g;
    }
    case DecorClass::large_sink: {
      BinaryImage g(40, 24);
      outline_rect(g, 0, 0, 40, 24);
      fill_rect(g, 5, 5, 12, 3);  // taps
      fill_rect(g, 20, 5, 12, 3);
      return g;
    }
    case DecorClass::tub: {
      BinaryImage g(32, 40);
      outline_rect(g, 0, 0, 32, 40);
      outline_rect(g, 5, 5, 20, 18);  // basin
      fill_rect(g, 5, 26, 11, 3);     // soap tray
      return g;
    }
    case DecorClass::stove: {
      BinaryImage g(42, 12);
      outline_rect(g, 0, 0, 12, 12);  // burners
      outline_rect(g, 15, 0, 12, 12);
      outline_rect(g, 30, 0, 12, 12);
      return g;
    }
    case DecorClass::wardrobe: {
      BinaryImage g(39, 48);
      outline_rect(g, 0, 0, 18, 48);  // door panels
      outline_rect(g, 21, 0, 18, 48);
      return g;
    }
    case DecorClass::commode: {
      BinaryImage g(30, 30);
      outline_rect(g, 0, 0, 30, 30);
      outline_rect(g, 5, 5, 14, 9);  // cistern
      return g;
    }
  }
  throw Error(ErrorCategory::invalid_input, "unknown decor class");
}

BinaryImage door_glyph() {
  const int n = 18;
  BinaryImage g(n, n);
  // Hinge leaf standing perpendicular to the wall.
  fill_rect(g, 0, 0, 2, n);
  // Quarter-circle swing arc around the hinge at (0, n-1).
  const double cx = 0.0, cy = n - 1.0;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const double r = std::hypot(x - cx, y - cy);
      if (r >= n - 2.5 && r <= n - 0.5) g.set(x, y, true);
    }
  return g;
}

BinaryImage rotate90(const BinaryImage& img, int quarter_turns) {
  int q = ((quarter_turns % 4) + 4) % 4;
  BinaryImage out = img;
  while (q-- > 0) {
    BinaryImage rot(out.height, out.width);
    for (int y = 0; y < out.height; ++y)
      for (int x = 0; x < out.width; ++x)
        if (out.at(x, y)) rot.set(out.height - 1 - y, x, true);
    out = rot;
  }
  return out;
}

BinaryImage mirror_horizontal(const BinaryImage& img) {
  BinaryImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      if (img.at(x, y)) out.set(img.width - 1 - x, y, true);
  return out;
}

BinaryImage upscale(const BinaryImage& img, int factor) {
  BinaryImage out(img.width * factor, img.height * factor);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      if (img.at(x / factor, y / factor)) out.set(x, y, true);
  return out;
}

void stamp(BinaryImage& dst, const BinaryImage& src, int x, int y) {
  for (int yy = 0; yy < src.height; ++yy)
    for (int xx = 0; xx < src.width; ++xx)
      if (src.at(xx, yy)) dst.set(x + xx, y + yy, true);
}

}  // namespace sugaman
