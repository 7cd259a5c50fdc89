#include "sugaman/synth.hpp"

#include "sugaman/glyphs.hpp"
#include "sugaman/lofd.hpp"
#include "sugaman/png_io.hpp"
#include "sugaman/segmentation.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

namespace sugaman {

namespace {

using nlohmann::json;

struct Splitter {
  const PlanSpec& spec;
  std::mt19937_64& rng;

  bool try_split(const Box& cavity, bool vertical, Box& a, Box& wall, Box& b) {
    const int t = spec.wall_thickness;
    const int lo = vertical ? cavity.x0 : cavity.y0;
    const int hi = vertical ? cavity.x1 : cavity.y1;
    const long other = vertical ? cavity.height() : cavity.width();
    // Both children need min_room_side along the split and min_room_area.
    const int need = std::max<long>(spec.min_room_side,
                                    (spec.min_room_area + other - 1) / other);
    const int c_lo = lo + need;
    const int c_hi = hi - t + 1 - need;
    if (c_lo > c_hi) return false;
    std::uniform_int_distribution<int> pick(c_lo, c_hi);
    const int c = pick(rng);
    if (vertical) {
      a = Box{cavity.x0, cavity.y0, c - 1, cavity.y1};
      wall = Box{c, cavity.y0, c + t - 1, cavity.y1};
      b = Box{c + t, cavity.y0, cavity.x1, cavity.y1};
    } else {
      a = Box{cavity.x0, cavity.y0, cavity.x1, c - 1};
      wall = Box{cavity.x0, c, cavity.x1, c + t - 1};
      b = Box{cavity.x0, c + t, cavity.x1, cavity.y1};
    }
    return true;
  }
};

// Doors keep this distance from wall junctions so two door seals meeting at
// a corner can never close off a pocket of cavity.
constexpr int kDoorJunctionMargin = 30;

void paint_box(BinaryImage& img, const Box& b, bool value) {
  for (int y = b.y0; y <= b.y1; ++y)
    for (int x = b.x0; x <= b.x1; ++x) img.set(x, y, value);
}

struct DoorPlacement {
  Box bbox;          // glyph bbox, spans the wall band
  Box gap;           // erased wall region
  BinaryImage glyph;
};

// wall_band: the 4 px band segment carrying this door. along_lo/along_hi:
// usable span along the wall. room_side: +1 = arc toward larger coordinate.
DoorPlacement place_door(const Box& wall_band, bool vertical_wall, int along_lo, int along_hi,
                         int room_side, std::mt19937_64& rng) {
  const BinaryImage base = door_glyph();
  const int g = base.width;
  const int gap_span = g + 4;  // 2 px clearance each side
  const int margin = kDoorJunctionMargin;
  const int lo = along_lo + margin;
  const int hi = along_hi - margin - gap_span + 1;
  if (lo > hi) throw Error(ErrorCategory::generation_failed, "wall segment too short for a door");
  std::uniform_int_distribution<int> pick(lo, hi);
  const int gap_start = pick(rng);

  BinaryImage glyph = rng() % 2 ? mirror_horizontal(base) : base;
  DoorPlacement out;
  if (vertical_wall) {
    out.gap = Box{wall_band.x0, gap_start, wall_band.x1, gap_start + gap_span - 1};
    if (room_side > 0) {  // arc to the right: glyph wall side = left edge
      glyph = rotate90(glyph, 1);
      out.bbox = Box{wall_band.x0, gap_start + 2, wall_band.x0 + g - 1, gap_start + 2 + g - 1};
    } else {  // arc to the left: wall side = right edge
      glyph = rotate90(glyph, 3);
      out.bbox = Box{wall_band.x1 - g + 1, gap_start + 2, wall_band.x1, gap_start + 2 + g - 1};
    }
  } else {
    out.gap = Box{gap_start, wall_band.y0, gap_start + gap_span - 1, wall_band.y1};
    if (room_side > 0) {  // arc downward: wall side = top edge
      glyph = rotate90(glyph, 2);
      out.bbox = Box{gap_start + 2, wall_band.y0, gap_start + 2 + g - 1, wall_band.y0 + g - 1};
    } else {  // arc upward: wall side = bottom edge
      out.bbox = Box{gap_start + 2, wall_band.y1 - g + 1, gap_start + 2 + g - 1, wall_band.y1};
    }
  }
  out.glyph = std::move(glyph);
  return out;
}

struct LeafEdge {
  int a = 0, b = 0;          // leaf indices
  int neg = 0, pos = 0;      // leaves on the lower/higher coordinate side
  Box wall_band;             // shared 4 px wall segment
  bool vertical = false;
  int along_lo = 0, along_hi = 0;
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

const std::vector<DecorPolicyEntry>& decor_policy(RoomLabel label) {
  static const std::vector<DecorPolicyEntry> bedroom{
      {DecorClass::bed, 1, 1}, {DecorClass::wardrobe, 0, 1}, {DecorClass::chair, 0, 1},
      {DecorClass::table, 0, 1}};
  static const std::vector<DecorPolicyEntry> bathroom{
      {DecorClass::tub, 1, 1}, {DecorClass::sink, 0, 1}, {DecorClass::twin_sink, 0, 1},
      {DecorClass::commode, 0, 1}};
  static const std::vector<DecorPolicyEntry> entry{
      {DecorClass::chair, 0, 1}, {DecorClass::wardrobe, 0, 1}};
  static const std::vector<DecorPolicyEntry> kitchen{
      {DecorClass::stove, 1, 1}, {DecorClass::large_sink, 1, 1}, {DecorClass::table, 0, 1},
      {DecorClass::chair, 0, 1}};
  static const std::vector<DecorPolicyEntry> hall{
      {DecorClass::sofa, 1, 1}, {DecorClass::table, 1, 1}, {DecorClass::large_sofa, 0, 1},
      {DecorClass::chair, 0, 2}};
  switch (label) {
    case RoomLabel::bedroom: return bedroom;
    case RoomLabel::bathroom: return bathroom;
    case RoomLabel::entry: return entry;
    case RoomLabel::kitchen: return kitchen;
    case RoomLabel::hall: return hall;
  }
  return hall;
}

std::pair<BinaryImage, GroundTruth> generate(const PlanSpec& spec) {
  if (spec.room_count < 3 || spec.room_count > 5)
    throw Error(ErrorCategory::generation_failed, "room_count must be 3..5");
  std::mt19937_64 rng(spec.seed);

  const int C = spec.canvas, m = spec.margin, t = spec.wall_thickness;
  const Box outer{m, m, C - 1 - m, C - 1 - m};
  const Box root_cavity{m + t, m + t, C - 1 - m - t, C - 1 - m - t};

  // Guillotine partition into room_count cavities.
  std::vector<Box> leaves{root_cavity};
  std::vector<Box> inner_walls;
  Splitter splitter{spec, rng};
  while (static_cast<int>(leaves.size()) < spec.room_count) {
    int best = -1;
    for (size_t i = 0; i < leaves.size(); ++i)
      if (best < 0 || leaves[i].area() > leaves[best].area()) best = static_cast<int>(i);
    Box a, wall, b;
    const Box cavity = leaves[best];
    const bool prefer_vertical = cavity.width() >= cavity.height();
    bool ok = splitter.try_split(cavity, prefer_vertical, a, wall, b) ||
              splitter.try_split(cavity, !prefer_vertical, a, wall, b);
    if (!ok) {
      // The largest leaf cannot split; try any other.
      bool any = false;
      for (size_t i = 0; i < leaves.size() && !any; ++i) {
        if (static_cast<int>(i) == best) continue;
        const Box c2 = leaves[i];
        const bool pv = c2.width() >= c2.height();
        if (splitter.try_split(c2, pv, a, wall, b) || splitter.try_split(c2, !pv, a, wall, b)) {
          best = static_cast<int>(i);
          any = true;
        }
      }
      if (!any)
        throw Error(ErrorCategory::generation_failed, "cannot partition into that many rooms");
    }
    leaves.erase(leaves.begin() + best);
    leaves.push_back(a);
    leaves.push_back(b);
    inner_walls.push_back(wall);
  }

  // Room ids follow raster-scan order of the cavity corner, matching the
  // segmentation stage's labeling order.
  std::sort(leaves.begin(), leaves.end(),
            [](const Box& a, const Box& b) { return std::tie(a.y0, a.x0) < std::tie(b.y0, b.x0); });

  // Draw walls.
  BinaryImage plan(C, C);
  paint_box(plan, Box{outer.x0, outer.y0, outer.x1, outer.y0 + t - 1}, true);
  paint_box(plan, Box{outer.x0, outer.y1 - t + 1, outer.x1, outer.y1}, true);
  paint_box(plan, Box{outer.x0, outer.y0, outer.x0 + t - 1, outer.y1}, true);
  paint_box(plan, Box{outer.x1 - t + 1, outer.y0, outer.x1, outer.y1}, true);
  for (const Box& w : inner_walls) paint_box(plan, w, true);

  // Leaf adjacency over shared wall segments long enough for a doorway.
  const int min_shared = door_glyph().width + 4 + 2 * kDoorJunctionMargin;
  std::vector<LeafEdge> edges;
  const int n = static_cast<int>(leaves.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Box& A = leaves[i];
      const Box& B = leaves[j];
      if (A.x1 + t + 1 == B.x0 || B.x1 + t + 1 == A.x0) {  // vertical wall between
        const int lo = std::max(A.y0, B.y0), hi = std::min(A.y1, B.y1);
        if (hi - lo + 1 < min_shared) continue;
        const bool a_left = A.x1 < B.x0;
        const int wx = a_left ? A.x1 + 1 : B.x1 + 1;
        edges.push_back({i, j, a_left ? i : j, a_left ? j : i, Box{wx, lo, wx + t - 1, hi},
                         true, lo, hi});
      } else if (A.y1 + t + 1 == B.y0 || B.y1 + t + 1 == A.y0) {
        const int lo = std::max(A.x0, B.x0), hi = std::min(A.x1, B.x1);
        if (hi - lo + 1 < min_shared) continue;
        const bool a_above = A.y1 < B.y0;
        const int wy = a_above ? A.y1 + 1 : B.y1 + 1;
        edges.push_back({i, j, a_above ? i : j, a_above ? j : i, Box{lo, wy, hi, wy + t - 1},
                         false, lo, hi});
      }
    }
  std::shuffle(edges.begin(), edges.end(), rng);

  GroundTruth gt;
  gt.width = C;
  gt.height = C;

  struct PlacedDoor {
    DoorPlacement placement;
    std::vector<int> room_ids;
    bool entry = false;
  };
  std::vector<PlacedDoor> doors;

  UnionFind uf(n);
  std::vector<int> arc_load(n, 0);  // arcs eat room area; keep them balanced
  for (const LeafEdge& e : edges) {
    if (!uf.unite(e.a, e.b)) continue;
    // The arc swings into the less loaded of the two rooms.
    int side;
    if (arc_load[e.pos] < arc_load[e.neg]) side = 1;
    else if (arc_load[e.neg] < arc_load[e.pos]) side = -1;
    else side = rng() % 2 ? 1 : -1;
    ++arc_load[side > 0 ? e.pos : e.neg];
    PlacedDoor d;
    d.placement = place_door(e.wall_band, e.vertical, e.along_lo, e.along_hi, side, rng);
    d.room_ids = {e.a + 1, e.b + 1};
    std::sort(d.room_ids.begin(), d.room_ids.end());
    doors.push_back(std::move(d));
  }
  for (int i = 1; i < n; ++i)
    if (uf.find(i) != uf.find(0))
      throw Error(ErrorCategory::generation_failed, "room graph is not connected");

  // Entry: one outer door into a leaf whose side lies on the outer wall.
  std::vector<std::pair<int, int>> outer_sides;  // (leaf, side 0=N 1=S 2=W 3=E)
  for (int i = 0; i < n; ++i) {
    const Box& L = leaves[i];
    if (L.y0 == root_cavity.y0 && L.width() >= min_shared) outer_sides.push_back({i, 0});
    if (L.y1 == root_cavity.y1 && L.width() >= min_shared) outer_sides.push_back({i, 1});
    if (L.x0 == root_cavity.x0 && L.height() >= min_shared) outer_sides.push_back({i, 2});
    if (L.x1 == root_cavity.x1 && L.height() >= min_shared) outer_sides.push_back({i, 3});
  }
  if (outer_sides.empty())
    throw Error(ErrorCategory::generation_failed, "no leaf touches the outer wall");
  const auto [entry_leaf, entry_side] = outer_sides[rng() % outer_sides.size()];
  {
    const Box& L = leaves[entry_leaf];
    PlacedDoor d;
    if (entry_side == 0)
      d.placement = place_door(Box{L.x0, outer.y0, L.x1, outer.y0 + t - 1}, false, L.x0, L.x1,
                               1, rng);
    else if (entry_side == 1)
      d.placement = place_door(Box{L.x0, outer.y1 - t + 1, L.x1, outer.y1}, false, L.x0, L.x1,
                               -1, rng);
    else if (entry_side == 2)
      d.placement = place_door(Box{outer.x0, L.y0, outer.x0 + t - 1, L.y1}, true, L.y0, L.y1,
                               1, rng);
    else
      d.placement = place_door(Box{outer.x1 - t + 1, L.y0, outer.x1, L.y1}, true, L.y0, L.y1,
                               -1, rng);
    d.room_ids = {entry_leaf + 1};
    d.entry = true;
    doors.push_back(std::move(d));
  }

  // Cut gaps, record the wall mask, then stamp the door glyphs.
  for (const auto& d : doors) paint_box(plan, d.placement.gap, false);
  gt.wall_mask = plan;
  for (const auto& d : doors) stamp(plan, d.placement.glyph, d.placement.bbox.x0,
                                    d.placement.bbox.y0);

  // Door ids follow the segmentation stage's (cy, cx) order.
  std::vector<int> order(doors.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Vec2 ca = doors[a].placement.bbox.center();
    const Vec2 cb = doors[b].placement.bbox.center();
    return std::tie(ca.y(), ca.x()) < std::tie(cb.y(), cb.x());
  });
  for (size_t i = 0; i < order.size(); ++i) {
    const PlacedDoor& d = doors[order[i]];
    GtDoor gd;
    gd.id = static_cast<int>(i);
    gd.bbox = d.placement.bbox;
    gd.rooms = d.room_ids;
    gd.entry = d.entry;
    gt.doors.push_back(std::move(gd));
  }

  // Labels: entry room fixed, the rest drawn without replacement.
  std::vector<RoomLabel> pool{RoomLabel::bedroom, RoomLabel::bathroom, RoomLabel::kitchen,
                              RoomLabel::hall};
  std::shuffle(pool.begin(), pool.end(), rng);
  std::vector<RoomLabel> labels(n, RoomLabel::entry);
  int next = 0;
  for (int i = 0; i < n; ++i)
    if (i != entry_leaf) labels[i] = pool[next++ % pool.size()];

  // Decors.
  std::vector<Box> occupied;
  for (const auto& d : gt.doors) occupied.push_back(d.bbox.dilated(kDoorProbeMargin));
  for (int i = 0; i < n; ++i) {
    const Box& L = leaves[i];
    for (const DecorPolicyEntry& entry_rule : decor_policy(labels[i])) {
      std::uniform_int_distribution<int> count_pick(entry_rule.min_count, entry_rule.max_count);
      int want = count_pick(rng);
      // Bathrooms always get a sink of one kind.
      if (labels[i] == RoomLabel::bathroom && entry_rule.cls == DecorClass::twin_sink) {
        bool has_sink = false;
        for (const auto& d : gt.decors)
          if (d.room_id == i + 1 &&
              (d.cls == DecorClass::sink || d.cls == DecorClass::twin_sink))
            has_sink = true;
        if (!has_sink && want == 0) want = 1;
      }
      for (int k = 0; k < want; ++k) {
        const BinaryImage base = decor_glyph(entry_rule.cls);
        bool placed = false;
        for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
          BinaryImage g = rotate90(base, static_cast<int>(rng() % 4));
          if (rng() % 2) g = mirror_horizontal(g);
          const int inset = 10;
          const int x_lo = L.x0 + inset, x_hi = L.x1 - inset - g.width + 1;
          const int y_lo = L.y0 + inset, y_hi = L.y1 - inset - g.height + 1;
          if (x_lo > x_hi || y_lo > y_hi) break;
          std::uniform_int_distribution<int> px(x_lo, x_hi), py(y_lo, y_hi);
          const int x = px(rng), y = py(rng);
          const Box bbox{x, y, x + g.width - 1, y + g.height - 1};
          bool clear = true;
          for (const Box& o : occupied)
            if (bbox.gap_to(o) < 8) {
              clear = false;
              break;
            }
          if (!clear) continue;
          stamp(plan, g, x, y);
          occupied.push_back(bbox);
          gt.decors.push_back({entry_rule.cls, bbox, i + 1});
          placed = true;
        }
        if (!placed && entry_rule.min_count > k)
          throw Error(ErrorCategory::generation_failed,
                      std::string("room too crowded for mandatory ") +
                          decor_class_token(entry_rule.cls));
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    GtRoom room;
    room.id = i + 1;
    room.label = labels[i];
    room.cavity = leaves[i];
    room.pixel_area = leaves[i].area();
    room.polygon.vertices = {Vec2(leaves[i].x0, leaves[i].y0), Vec2(leaves[i].x1, leaves[i].y0),
                             Vec2(leaves[i].x1, leaves[i].y1), Vec2(leaves[i].x0, leaves[i].y1)};
    gt.rooms.push_back(std::move(room));
  }
  return {plan, gt};
}

SemanticModel ground_truth_model(const GroundTruth& gt) {
  SemanticModel m;
  std::vector<Vec2> corners;
  for (const auto& r : gt.rooms)
    for (const auto& v : r.polygon.vertices) corners.push_back(v);
  const Polygon boundary = trace_boundary(corners, 0.8);
  const Vec2 plan_center = polygon_centroid(boundary).center;

  auto direction_or_north = [](const Vec2& origin, const Vec2& target) {
    if ((target - origin).norm() < 1e-9) return Direction8::N;
    return bin_direction(origin, target, BinScheme::nonuniform());
  };

  for (const auto& r : gt.rooms) {
    Room room;
    room.id = r.id;
    room.label = r.label;
    room.polygon = r.polygon;
    room.area_sqft = room_area_sqft(r.pixel_area);
    const Vec2 center = polygon_centroid(r.polygon).center;
    room.global_dir = direction_or_north(plan_center, center);
    for (const auto& d : gt.decors) {
      if (d.room_id != r.id) continue;
      DecorInstance inst;
      inst.cls = d.cls;
      inst.bbox = d.bbox;
      inst.center = d.bbox.center();
      inst.dir = direction_or_north(center, inst.center);
      room.decors.push_back(inst);
    }
    for (const auto& d : gt.doors) {
      if (d.rooms.size() != 2) continue;
      if (d.rooms[0] == r.id) room.neighbors.push_back(d.rooms[1]);
      if (d.rooms[1] == r.id) room.neighbors.push_back(d.rooms[0]);
    }
    std::sort(room.neighbors.begin(), room.neighbors.end());
    room.neighbors.erase(std::unique(room.neighbors.begin(), room.neighbors.end()),
                         room.neighbors.end());
    m.rooms.push_back(std::move(room));
  }
  for (const auto& d : gt.doors) {
    Door door;
    door.id = d.id;
    door.centroid = d.bbox.center();
    door.rooms = d.rooms;
    m.doors.push_back(std::move(door));
    if (d.entry) m.entry_door = d.id;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Ground-truth JSON
// ---------------------------------------------------------------------------

namespace {

json box_to_json(const Box& b) { return json::array({b.x0, b.y0, b.x1, b.y1}); }

Box box_from_json(const json& j) { return Box{j.at(0), j.at(1), j.at(2), j.at(3)}; }

}  // namespace

void save_ground_truth(const std::string& path, const GroundTruth& gt) {
  json j;
  j["width"] = gt.width;
  j["height"] = gt.height;

  // Row-major run lengths, background first.
  std::vector<long> runs;
  bool current = false;
  long run = 0;
  for (int y = 0; y < gt.height; ++y)
    for (int x = 0; x < gt.width; ++x) {
      const bool v = gt.wall_mask.at(x, y);
      if (v == current) {
        ++run;
      } else {
        runs.push_back(run);
        current = v;
        run = 1;
      }
    }
  runs.push_back(run);
  j["wall_rle"] = runs;

  j["rooms"] = json::array();
  for (const auto& r : gt.rooms) {
    json jr;
    jr["id"] = r.id;
    jr["label"] = static_cast<int>(r.label);
    jr["cavity"] = box_to_json(r.cavity);
    jr["pixel_area"] = r.pixel_area;
    json poly = json::array();
    for (const auto& v : r.polygon.vertices) poly.push_back(json::array({v.x(), v.y()}));
    jr["polygon"] = poly;
    j["rooms"].push_back(jr);
  }
  j["doors"] = json::array();
  for (const auto& d : gt.doors) {
    json jd;
    jd["id"] = d.id;
    jd["bbox"] = box_to_json(d.bbox);
    jd["rooms"] = d.rooms;
    jd["entry"] = d.entry;
    j["doors"].push_back(jd);
  }
  j["decors"] = json::array();
  for (const auto& d : gt.decors) {
    json jd;
    jd["class"] = static_cast<int>(d.cls);
    jd["bbox"] = box_to_json(d.bbox);
    jd["room"] = d.room_id;
    j["decors"].push_back(jd);
  }

  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::io_error, "cannot write " + path);
  out << j.dump(1) << '\n';
}

GroundTruth load_ground_truth(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::io_error, "cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCategory::parse_error, std::string("ground truth json: ") + e.what());
  }

  GroundTruth gt;
  gt.width = j.at("width");
  gt.height = j.at("height");
  gt.wall_mask = BinaryImage(gt.width, gt.height);
  long pos = 0;
  bool current = false;
  for (const auto& run : j.at("wall_rle")) {
    const long len = run;
    if (current)
      for (long k = 0; k < len; ++k) {
        const long p = pos + k;
        gt.wall_mask.set(static_cast<int>(p % gt.width), static_cast<int>(p / gt.width), true);
      }
    pos += len;
    current = !current;
  }
  for (const auto& jr : j.at("rooms")) {
    GtRoom r;
    r.id = jr.at("id");
    r.label = room_label_from_code(jr.at("label"));
    r.cavity = box_from_json(jr.at("cavity"));
    r.pixel_area = jr.at("pixel_area");
    for (const auto& v : jr.at("polygon")) r.polygon.vertices.emplace_back(v.at(0), v.at(1));
    gt.rooms.push_back(std::move(r));
  }
  for (const auto& jd : j.at("doors")) {
    GtDoor d;
    d.id = jd.at("id");
    d.bbox = box_from_json(jd.at("bbox"));
    d.rooms = jd.at("rooms").get<std::vector<int>>();
    d.entry = jd.at("entry");
    gt.doors.push_back(std::move(d));
  }
  for (const auto& jd : j.at("decors")) {
    GtDecor d;
    d.cls = decor_class_from_code(jd.at("class"));
    d.bbox = box_from_json(jd.at("bbox"));
    d.room_id = jd.at("room");
    gt.decors.push_back(std::move(d));
  }
  return gt;
}

// ---------------------------------------------------------------------------
// Corpus
// ---------------------------------------------------------------------------

CorpusPaths corpus_paths(const std::string& dir) {
  CorpusPaths p;
  p.dir = dir;
  p.plans_dir = dir + "/plans";
  p.features_csv = dir + "/features.csv";
  p.split_txt = dir + "/split.txt";
  return p;
}

CorpusPaths generate_corpus(int n, std::uint64_t seed, const std::string& out_dir) {
  if (n < 1) throw Error(ErrorCategory::invalid_input, "corpus size must be >= 1");
  const CorpusPaths paths = corpus_paths(out_dir);
  std::filesystem::create_directories(paths.plans_dir);

  Matrix features(0, kLofdDim);
  std::vector<int> labels;
  std::vector<Eigen::Matrix<Scalar, kLofdDim, 1>> rows;

  for (int i = 0; i < n; ++i) {
    PlanSpec spec;
    spec.seed = seed + 1000003ULL * static_cast<std::uint64_t>(i);
    spec.room_count = 3 + i % 3;
    // A rare unlucky layout draw cannot fit every mandatory decor or door;
    // deterministically reroll the seed for this plan index.
    BinaryImage plan;
    GroundTruth gt;
    for (int attempt = 0;; ++attempt) {
      try {
        std::tie(plan, gt) = generate(spec);
        break;
      } catch (const Error& e) {
        if (e.category() != ErrorCategory::generation_failed || attempt >= 20) throw;
        spec.seed += 0x9e3779b9ULL;
      }
    }

    char name[32];
    std::snprintf(name, sizeof(name), "%04d", i);
    save_png_binary(paths.plans_dir + "/" + name + ".png", plan);
    save_ground_truth(paths.plans_dir + "/" + name + ".json", gt);

    for (const auto& room : gt.rooms) {
      std::vector<DecorInstance> decors;
      for (const auto& d : gt.decors) {
        if (d.room_id != room.id) continue;
        DecorInstance inst;
        inst.cls = d.cls;
        inst.bbox = d.bbox;
        inst.center = d.bbox.center();
        decors.push_back(inst);
      }
      const Vec2 center = polygon_centroid(room.polygon).center;
      rows.push_back(compute_lofd(center, decors).values);
      labels.push_back(static_cast<int>(room.label));
    }
  }

  features.resize(static_cast<Eigen::Index>(rows.size()), kLofdDim);
  for (size_t r = 0; r < rows.size(); ++r) features.row(static_cast<Eigen::Index>(r)) = rows[r];
  save_feature_csv(paths.features_csv, features, labels);

  const int total = static_cast<int>(rows.size());
  const int train_n = static_cast<int>(std::lround(0.7 * total));
  const std::vector<int> order = shuffled_indices(total, seed);
  std::vector<bool> is_train(total, false);
  for (int i = 0; i < train_n; ++i) is_train[order[i]] = true;
  std::ofstream split(paths.split_txt);
  if (!split) throw Error(ErrorCategory::io_error, "cannot write " + paths.split_txt);
  for (int i = 0; i < total; ++i) split << i << ' ' << (is_train[i] ? "train" : "test") << '\n';
  return paths;
}

}  // namespace sugaman
