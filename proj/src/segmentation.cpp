#include "sugaman/segmentation.hpp"

#include "sugaman/glyphs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>

namespace sugaman {

namespace {

// Largest inscribed foreground square per pixel (classic DP), then the max
// over each component's pixels: the component's ink thickness.
std::vector<int> ink_thickness_per_component(const BinaryImage& img, const LabelImage& labels) {
  std::vector<int> best(labels.count + 1, 0);
  LabelArray dp = LabelArray::Zero(img.height, img.width);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      if (!img.data(y, x)) continue;
      int v = 1;
      if (x > 0 && y > 0 && img.data(y - 1, x) && img.data(y, x - 1) && img.data(y - 1, x - 1))
        v = 1 + std::min({dp(y - 1, x), dp(y, x - 1), dp(y - 1, x - 1)});
      dp(y, x) = v;
      const int l = labels.labels(y, x);
      best[l] = std::max(best[l], v);
    }
  return best;
}

}  // namespace

WallImage extract_walls(const BinaryImage& plan, const SegmentationParams& params) {
  // Thin strokes are dropped by ink thickness before closing, so the closing
  // cannot weld symbols onto walls first.
  const LabelImage labels = connected_components(plan, 8);
  const std::vector<int> thickness = ink_thickness_per_component(plan, labels);

  BinaryImage thick(plan.width, plan.height);
  for (int y = 0; y < plan.height; ++y)
    for (int x = 0; x < plan.width; ++x) {
      const int l = labels.labels(y, x);
      if (l > 0 && thickness[l] >= params.wall_min_thickness) thick.set(x, y, true);
    }
  if (thick.foreground_count() == 0) return WallImage{thick};
  StructuringElement se{params.se_radius, StructuringElement::Shape::square};
  return WallImage{morph(thick, se, MorphOp::close)};
}

// ---------------------------------------------------------------------------
// Door spotting by normalized cross-correlation
// ---------------------------------------------------------------------------

namespace {

struct PackedImage {
  int width = 0, height = 0, words = 0;
  std::vector<std::uint64_t> bits;  // words per row

  explicit PackedImage(const BinaryImage& img)
      : width(img.width), height(img.height), words((img.width + 63) / 64 + 1) {
    bits.assign(static_cast<size_t>(height) * words, 0);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x)
        if (img.data(y, x)) bits[static_cast<size_t>(y) * words + x / 64] |= 1ULL << (x % 64);
  }

  // Up to 64 pixels of a row starting at column x.
  std::uint64_t window(int y, int x) const {
    const size_t base = static_cast<size_t>(y) * words;
    const int k = x / 64, r = x % 64;
    std::uint64_t v = bits[base + k] >> r;
    if (r) v |= bits[base + k + 1] << (64 - r);
    return v;
  }
};

BinaryImage resample(const BinaryImage& img, Scalar factor) {
  const int w = std::max(1, static_cast<int>(std::lround(img.width * factor)));
  const int h = std::max(1, static_cast<int>(std::lround(img.height * factor)));
  BinaryImage out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int sx = std::min(img.width - 1, static_cast<int>((x + 0.5) / factor));
      const int sy = std::min(img.height - 1, static_cast<int>((y + 0.5) / factor));
      out.set(x, y, img.at(sx, sy));
    }
  return out;
}

struct Candidate {
  int x = 0, y = 0, w = 0, h = 0;
  Scalar score = 0;
};

}  // namespace

std::vector<DoorDetection> detect_doors(const BinaryImage& plan, const DoorTemplate& tmpl,
                                        Scalar score_min) {
  if (tmpl.glyph.foreground_count() == 0)
    throw Error(ErrorCategory::invalid_input, "door template glyph is empty");

  // Window ink counts via a summed-area table.
  Eigen::Matrix<long, Eigen::Dynamic, Eigen::Dynamic> sat(plan.height + 1, plan.width + 1);
  sat.setZero();
  for (int y = 0; y < plan.height; ++y)
    for (int x = 0; x < plan.width; ++x)
      sat(y + 1, x + 1) =
          sat(y, x + 1) + sat(y + 1, x) - sat(y, x) + (plan.data(y, x) ? 1 : 0);
  auto window_ink = [&](int x, int y, int w, int h) {
    return sat(y + h, x + w) - sat(y, x + w) - sat(y + h, x) + sat(y, x);
  };

  const PackedImage packed(plan);

  // Orientation/scale variants, deduplicated.
  std::vector<BinaryImage> variants;
  for (const Scalar s : tmpl.scales) {
    const BinaryImage scaled = resample(tmpl.glyph, s);
    for (int q = 0; q < 4; ++q) {
      for (const bool mirrored : {false, true}) {
        BinaryImage v = rotate90(scaled, q);
        if (mirrored) v = mirror_horizontal(v);
        bool dup = false;
        for (const auto& u : variants) dup = dup || u == v;
        if (!dup) variants.push_back(std::move(v));
      }
    }
  }

  std::vector<Candidate> cands;
  for (const auto& v : variants) {
    const int tw = v.width, th = v.height;
    if (tw > plan.width || th > plan.height || tw > 64) continue;
    const long t_ink = v.foreground_count();
    const long n = static_cast<long>(tw) * th;
    if (t_ink == 0 || t_ink == n) continue;
    const Scalar t_var = static_cast<Scalar>(t_ink) * (n - t_ink);

    std::vector<std::uint64_t> trows(th);
    const std::uint64_t mask = tw == 64 ? ~0ULL : ((1ULL << tw) - 1);
    for (int y = 0; y < th; ++y) {
      std::uint64_t row = 0;
      for (int x = 0; x < tw; ++x)
        if (v.data(y, x)) row |= 1ULL << x;
      trows[y] = row;
    }

    for (int y = 0; y + th <= plan.height; ++y) {
      for (int x = 0; x + tw <= plan.width; ++x) {
        const long ink = window_ink(x, y, tw, th);
        if (ink == 0 || ink == n) continue;
        // Necessary bound on NCC from ink counts alone (overlap <= min).
        const Scalar bound2 = ink <= t_ink
                                  ? static_cast<Scalar>(ink) * (n - t_ink) /
                                        (static_cast<Scalar>(n - ink) * t_ink)
                                  : static_cast<Scalar>(t_ink) * (n - ink) /
                                        (static_cast<Scalar>(n - t_ink) * ink);
        if (bound2 < score_min * score_min) continue;

        long overlap = 0;
        for (int r = 0; r < th; ++r)
          overlap += std::popcount(packed.window(y + r, x) & mask & trows[r]);
        const Scalar numer = static_cast<Scalar>(n) * overlap -
                             static_cast<Scalar>(ink) * t_ink;
        if (numer <= 0) continue;
        const Scalar denom2 = (static_cast<Scalar>(ink) * (n - ink)) * t_var;
        const Scalar score = numer / std::sqrt(denom2);
        if (score >= score_min) cands.push_back({x, y, tw, th, score});
      }
    }
  }

  // Non-maximum suppression: stronger candidates shadow anything within half
  // their template width (Chebyshev distance between centers).
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return std::tie(a.y, a.x, a.h, a.w) < std::tie(b.y, b.x, b.h, b.w);
  });
  std::vector<Candidate> kept;
  for (const auto& c : cands) {
    const Scalar cx = c.x + (c.w - 1) / 2.0, cy = c.y + (c.h - 1) / 2.0;
    bool shadowed = false;
    for (const auto& k : kept) {
      const Scalar kx = k.x + (k.w - 1) / 2.0, ky = k.y + (k.h - 1) / 2.0;
      const Scalar radius = std::max(k.w, c.w) / 2.0;
      if (std::abs(cx - kx) <= radius && std::abs(cy - ky) <= radius) {
        shadowed = true;
        break;
      }
    }
    if (!shadowed) kept.push_back(c);
  }

  std::sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.y, a.x) < std::tie(b.y, b.x);
  });
  std::vector<DoorDetection> out;
  for (const auto& c : kept) {
    DoorDetection d;
    d.id = static_cast<int>(out.size());
    d.bbox = Box{c.x, c.y, c.x + c.w - 1, c.y + c.h - 1};
    d.centroid = d.bbox.center();
    d.score = c.score;
    out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rooms
// ---------------------------------------------------------------------------

std::vector<Vec2> trace_component_boundary(const LabelImage& labels, int label) {
  // Uppermost-leftmost pixel starts the walk.
  int sx = -1, sy = -1;
  for (int y = 0; y < labels.height && sx < 0; ++y)
    for (int x = 0; x < labels.width; ++x)
      if (labels.labels(y, x) == label) {
        sx = x;
        sy = y;
        break;
      }
  if (sx < 0) throw Error(ErrorCategory::invalid_input, "label not present");

  // Moore neighborhood, clockwise from west.
  static const int dx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
  static const int dy[8] = {0, -1, -1, -1, 0, 1, 1, 1};
  auto inside = [&](int x, int y) { return labels.at(x, y) == label; };

  std::vector<Vec2> ring;
  int cx = sx, cy = sy;
  int backtrack = 0;  // direction index pointing at the previous (outside) cell
  ring.emplace_back(cx, cy);
  int first_move = -1;
  const long guard_max = 4L * labels.width * labels.height + 16;
  for (long guard = 0; guard < guard_max; ++guard) {
    int found = -1;
    for (int i = 0; i < 8; ++i) {
      const int d = (backtrack + 1 + i) % 8;
      if (inside(cx + dx[d], cy + dy[d])) {
        found = d;
        break;
      }
    }
    if (found < 0) break;  // isolated pixel
    // Stop when back at the start and about to repeat the opening move.
    if (cx == sx && cy == sy && first_move >= 0 && found == first_move) break;
    if (first_move < 0) first_move = found;
    cx += dx[found];
    cy += dy[found];
    backtrack = (found + 4) % 8;
    if (!(cx == sx && cy == sy)) ring.emplace_back(cx, cy);
  }
  return ring;
}

std::vector<RoomShape> extract_rooms(const WallImage& walls,
                                     const std::vector<DoorDetection>& doors,
                                     const SegmentationParams& params) {
  const int w = walls.mask.width, h = walls.mask.height;
  BinaryImage blocked = walls.mask;
  for (const auto& d : doors) {
    const Box b = d.bbox.dilated(params.door_seal_margin);
    for (int y = std::max(0, b.y0); y <= std::min(h - 1, b.y1); ++y)
      for (int x = std::max(0, b.x0); x <= std::min(w - 1, b.x1); ++x) blocked.set(x, y, true);
  }

  // Exterior: background reachable from the image border (4-connected).
  LabelArray region = LabelArray::Zero(h, w);  // 0 unvisited, -1 exterior
  std::queue<Pixel> q;
  auto push_exterior = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= w || y >= h) return;
    if (blocked.data(y, x) || region(y, x) != 0) return;
    region(y, x) = -1;
    q.emplace(x, y);
  };
  for (int x = 0; x < w; ++x) {
    push_exterior(x, 0);
    push_exterior(x, h - 1);
  }
  for (int y = 0; y < h; ++y) {
    push_exterior(0, y);
    push_exterior(w - 1, y);
  }
  while (!q.empty()) {
    const Pixel p = q.front();
    q.pop();
    push_exterior(p.x() + 1, p.y());
    push_exterior(p.x() - 1, p.y());
    push_exterior(p.x(), p.y() + 1);
    push_exterior(p.x(), p.y() - 1);
  }

  // Remaining cavities become rooms, raster-scan order.
  LabelImage cavity;
  cavity.width = w;
  cavity.height = h;
  cavity.labels = LabelArray::Zero(h, w);
  cavity.count = 0;
  std::vector<long> areas;
  std::vector<Box> boxes;
  for (int y0 = 0; y0 < h; ++y0)
    for (int x0 = 0; x0 < w; ++x0) {
      if (blocked.data(y0, x0) || region(y0, x0) != 0 || cavity.labels(y0, x0) != 0) continue;
      const int label = ++cavity.count;
      long area = 0;
      Box box{x0, y0, x0, y0};
      std::vector<Pixel> stack{{x0, y0}};
      cavity.labels(y0, x0) = label;
      while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        ++area;
        box.x0 = std::min(box.x0, p.x());
        box.y0 = std::min(box.y0, p.y());
        box.x1 = std::max(box.x1, p.x());
        box.y1 = std::max(box.y1, p.y());
        const Pixel nbrs[4] = {{p.x() + 1, p.y()}, {p.x() - 1, p.y()},
                               {p.x(), p.y() + 1}, {p.x(), p.y() - 1}};
        for (const Pixel& nb : nbrs) {
          if (nb.x() < 0 || nb.y() < 0 || nb.x() >= w || nb.y() >= h) continue;
          if (blocked.data(nb.y(), nb.x()) || region(nb.y(), nb.x()) != 0 ||
              cavity.labels(nb.y(), nb.x()) != 0)
            continue;
          cavity.labels(nb.y(), nb.x()) = label;
          stack.push_back(nb);
        }
      }
      areas.push_back(area);
      boxes.push_back(box);
    }

  std::vector<RoomShape> rooms;
  for (int label = 1; label <= cavity.count; ++label) {
    if (areas[label - 1] < params.min_room_area) continue;
    RoomShape room;
    room.id = static_cast<int>(rooms.size()) + 1;
    room.pixel_area = areas[label - 1];
    room.bbox = boxes[label - 1];
    const std::vector<Vec2> ring = trace_component_boundary(cavity, label);
    std::vector<Vec2> simplified = simplify_ring(ring, params.simplify_epsilon);
    if (simplified.size() < 3) simplified = ring;
    room.polygon.vertices = std::move(simplified);
    // Normalize to positive signed area.
    Scalar twice = 0;
    const auto& vs = room.polygon.vertices;
    for (size_t i = 0; i < vs.size(); ++i) {
      const Vec2& a = vs[i];
      const Vec2& b = vs[(i + 1) % vs.size()];
      twice += a.x() * b.y() - b.x() * a.y();
    }
    if (twice < 0)
      std::reverse(room.polygon.vertices.begin() + 1, room.polygon.vertices.end());
    rooms.push_back(std::move(room));
  }
  if (rooms.empty())
    throw Error(ErrorCategory::segmentation_failed, "no rooms found");
  return rooms;
}

Scalar room_area_sqft(long pixel_area, Scalar divisor) {
  if (pixel_area < 0) throw Error(ErrorCategory::invalid_input, "negative pixel area");
  return static_cast<Scalar>(pixel_area) / divisor;
}

Adjacency build_adjacency(const std::vector<RoomShape>& rooms,
                          const std::vector<DoorDetection>& doors, int probe_margin) {
  const int nr = static_cast<int>(rooms.size());
  Adjacency adj;
  adj.am_d = Eigen::MatrixXi::Zero(nr, nr);
  adj.neighbors.assign(nr, {});
  adj.door_rooms.assign(doors.size(), {});

  for (size_t di = 0; di < doors.size(); ++di) {
    const Box probe = doors[di].bbox.dilated(probe_margin);
    for (int ri = 0; ri < nr; ++ri) {
      bool hit = false;
      for (int y = probe.y0; y <= probe.y1 && !hit; ++y)
        for (int x = probe.x0; x <= probe.x1 && !hit; ++x)
          if (rooms[ri].bbox.dilated(1).contains(x, y) &&
              rooms[ri].polygon.contains(Vec2(x, y)))
            hit = true;
      if (hit) adj.door_rooms[di].push_back(rooms[ri].id);
    }
    if (adj.door_rooms[di].size() > 2)
      throw Error(ErrorCategory::ambiguous_door,
                  "door " + std::to_string(doors[di].id) + " touches " +
                      std::to_string(adj.door_rooms[di].size()) + " rooms");
  }

  for (size_t di = 0; di < doors.size(); ++di) {
    if (adj.door_rooms[di].size() != 2) continue;
    const int a = adj.door_rooms[di][0] - 1;
    const int b = adj.door_rooms[di][1] - 1;
    adj.am_d(a, b) = adj.am_d(b, a) = 1;
  }
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nr; ++j)
      if (adj.am_d(i, j)) adj.neighbors[i].push_back(rooms[j].id);
  return adj;
}

std::vector<RoomCrop> partition_rooms(const BinaryImage& plan,
                                      const std::vector<RoomShape>& rooms) {
  std::vector<RoomCrop> crops;
  for (const auto& room : rooms) {
    RoomCrop crop;
    crop.room_id = room.id;
    crop.bbox = room.bbox;
    crop.image = BinaryImage(room.bbox.width(), room.bbox.height());
    for (int y = 0; y < crop.image.height; ++y)
      for (int x = 0; x < crop.image.width; ++x) {
        const int px = room.bbox.x0 + x, py = room.bbox.y0 + y;
        if (plan.at(px, py) && room.polygon.contains(Vec2(px, py)))
          crop.image.set(x, y, true);
      }
    crops.push_back(std::move(crop));
  }
  return crops;
}

}  // namespace sugaman
