#include "sugaman/navigation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>

namespace sugaman {

DoorStructure build_door_structure(const std::vector<RoomShape>& rooms,
                                   const std::vector<DoorDetection>& doors, int probe_margin) {
  const Adjacency adj = build_adjacency(rooms, doors, probe_margin);
  DoorStructure ds;
  for (const auto& room : rooms) ds.doors_of_room[room.id];  // every room listed
  for (size_t di = 0; di < doors.size(); ++di) {
    if (adj.door_rooms[di].empty())
      throw Error(ErrorCategory::orphan_door,
                  "door " + std::to_string(doors[di].id) + " belongs to no room");
    for (int rid : adj.door_rooms[di]) ds.doors_of_room[rid].push_back(doors[di].id);
  }
  for (auto& [rid, ids] : ds.doors_of_room) std::sort(ids.begin(), ids.end());
  return ds;
}

EntryPoint find_entry(const std::vector<RoomShape>& rooms,
                      const std::vector<DoorDetection>& doors, const Polygon& boundary,
                      int probe_margin) {
  const Adjacency adj = build_adjacency(rooms, doors, probe_margin);
  for (size_t di = 0; di < doors.size(); ++di) {  // doors are id-ascending
    if (adj.door_rooms[di].size() != 1) continue;
    if (boundary.size() >= 3 && !boundary.contains(doors[di].centroid)) {
      // An outer door sits on the hull of the room corners; tolerate a
      // centroid a few pixels outside it.
      Scalar best = std::numeric_limits<Scalar>::max();
      for (const auto& v : boundary.vertices)
        best = std::min(best, (v - doors[di].centroid).norm());
      if (best > 64.0) continue;
    }
    return EntryPoint{adj.door_rooms[di][0], doors[di].id};
  }
  throw Error(ErrorCategory::no_entry, "no door opens to the exterior");
}

DfsResult dfs_order(const Eigen::MatrixXi& am_d, const std::vector<int>& room_ids,
                    int entry_room) {
  const int n = static_cast<int>(room_ids.size());
  std::map<int, int> index_of;
  for (int i = 0; i < n; ++i) index_of[room_ids[i]] = i;
  if (!index_of.count(entry_room))
    throw Error(ErrorCategory::invalid_input, "entry room not in model");

  DfsResult res;
  std::vector<char> seen(n, 0);
  std::vector<int> stack{entry_room};
  res.parent[entry_room] = entry_room;
  seen[index_of[entry_room]] = 1;
  while (!stack.empty()) {
    const int room = stack.back();
    stack.pop_back();
    res.order.push_back(room);
    // Ascending-id expansion with a LIFO stack: push descending.
    std::vector<int> next;
    for (int j = 0; j < n; ++j)
      if (am_d(index_of[room], j) && !seen[j]) next.push_back(room_ids[j]);
    std::sort(next.begin(), next.end(), std::greater<>());
    for (int nb : next) {
      seen[index_of[nb]] = 1;
      res.parent[nb] = room;
      stack.push_back(nb);
    }
  }
  if (static_cast<int>(res.order.size()) != n) {
    std::string missing;
    for (int j = 0; j < n; ++j)
      if (!seen[j]) missing += (missing.empty() ? "" : ", ") + std::to_string(room_ids[j]);
    throw Error(ErrorCategory::disconnected_plan, "unreachable rooms: " + missing);
  }
  return res;
}

bool segment_clear(const BinaryImage& img, const Vec2& a, const Vec2& b) {
  const Scalar len = (b - a).norm();
  const int steps = std::max(1, static_cast<int>(std::ceil(len)));
  for (int i = 0; i <= steps; ++i) {
    const Vec2 p = a + (b - a) * (static_cast<Scalar>(i) / steps);
    const int x = static_cast<int>(std::lround(p.x()));
    const int y = static_cast<int>(std::lround(p.y()));
    if (img.at(x, y)) return false;
  }
  return true;
}

namespace {

void push_vertex(std::vector<Vec2>& vertices, const BinaryImage& img, const Vec2& v) {
  const int x = static_cast<int>(std::lround(v.x()));
  const int y = static_cast<int>(std::lround(v.y()));
  if (img.at(x, y)) return;  // on ink, unusable as a waypoint
  for (const auto& u : vertices)
    if ((u - v).norm() < 0.5) return;
  vertices.push_back(v);
}

}  // namespace

VisibilityGraph build_visibility_graph(const BinaryImage& obstacle_image,
                                       const std::vector<DecorInstance>& local_decors,
                                       const std::vector<Vec2>& door_points) {
  VisibilityGraph g;
  // Door vertices come first and are kept verbatim: routing endpoints.
  for (const auto& d : door_points) g.vertices.push_back(d);

  constexpr Scalar kPush = 3.0;
  for (const auto& decor : local_decors) {
    const Box& b = decor.bbox;
    push_vertex(g.vertices, obstacle_image, Vec2(b.x0 - kPush, b.y0 - kPush));
    push_vertex(g.vertices, obstacle_image, Vec2(b.x1 + kPush, b.y0 - kPush));
    push_vertex(g.vertices, obstacle_image, Vec2(b.x1 + kPush, b.y1 + kPush));
    push_vertex(g.vertices, obstacle_image, Vec2(b.x0 - kPush, b.y1 + kPush));
  }

  for (const auto& corner : harris_corners(obstacle_image, 1000)) {
    // Push away from the local ink mass.
    Scalar cx = 0, cy = 0;
    int count = 0;
    for (int dy = -2; dy <= 2; ++dy)
      for (int dx = -2; dx <= 2; ++dx)
        if (obstacle_image.at(corner.p.x() + dx, corner.p.y() + dy)) {
          cx += corner.p.x() + dx;
          cy += corner.p.y() + dy;
          ++count;
        }
    Vec2 v(corner.p.x(), corner.p.y());
    if (count > 0) {
      const Scalar sx = v.x() - cx / count, sy = v.y() - cy / count;
      v.x() += kPush * (sx > 0.05 ? 1 : (sx < -0.05 ? -1 : 0));
      v.y() += kPush * (sy > 0.05 ? 1 : (sy < -0.05 ? -1 : 0));
    }
    push_vertex(g.vertices, obstacle_image, v);
  }

  const int n = static_cast<int>(g.vertices.size());
  g.am_n = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!segment_clear(obstacle_image, g.vertices[i], g.vertices[j])) continue;
      const Scalar w = (g.vertices[i] - g.vertices[j]).norm();
      g.am_n(i, j) = g.am_n(j, i) = w;
    }
  return g;
}

std::vector<int> route_vertices(const VisibilityGraph& g, int from, int to) {
  const int n = static_cast<int>(g.vertices.size());
  if (from < 0 || from >= n || to < 0 || to >= n)
    throw Error(ErrorCategory::invalid_input, "route endpoints not in vertex list");
  if (from == to) return {from};

  constexpr Scalar kInf = std::numeric_limits<Scalar>::max();
  std::vector<Scalar> dist(n, kInf);
  std::vector<std::vector<int>> seq(n);
  std::vector<char> done(n, 0);
  dist[from] = 0;
  seq[from] = {from};

  for (int iter = 0; iter < n; ++iter) {
    int u = -1;
    for (int i = 0; i < n; ++i) {
      if (done[i] || dist[i] == kInf) continue;
      if (u < 0 || dist[i] < dist[u] - 1e-12 ||
          (std::abs(dist[i] - dist[u]) <= 1e-12 && seq[i] < seq[u]))
        u = i;
    }
    if (u < 0) break;
    done[u] = 1;
    if (u == to) break;
    for (int v = 0; v < n; ++v) {
      const Scalar w = g.am_n(u, v);
      if (w <= 0 || done[v]) continue;  // zero means no edge
      const Scalar nd = dist[u] + w;
      std::vector<int> ns = seq[u];
      ns.push_back(v);
      if (nd < dist[v] - 1e-9 || (std::abs(nd - dist[v]) <= 1e-9 && ns < seq[v])) {
        dist[v] = nd;
        seq[v] = std::move(ns);
      }
    }
  }
  if (dist[to] == kInf)
    throw Error(ErrorCategory::unroutable_room, "no visible path between the doors");
  return seq[to];
}

// ---------------------------------------------------------------------------
// Whole-plan traversal
// ---------------------------------------------------------------------------

namespace {

struct RoomContext {
  const RoomShape* shape = nullptr;
  const RoomCrop* crop = nullptr;
  std::vector<DecorInstance> local_decors;
  std::vector<int> door_ids;        // doors of this room, ascending
  std::vector<Vec2> door_locals;    // centroids in crop coordinates
  VisibilityGraph graph;            // doors + obstacle corners
  bool built = false;
};

class Navigator {
 public:
  explicit Navigator(const NavigationInput& in) : in_(in) {
    const DoorStructure ds = build_door_structure(in.rooms, in.doors, kDoorProbeMargin);
    for (size_t i = 0; i < in.rooms.size(); ++i) {
      RoomContext ctx;
      ctx.shape = &in.rooms[i];
      ctx.crop = &in.crops[i];
      ctx.door_ids = ds.of(in.rooms[i].id);
      const Vec2 origin(ctx.crop->bbox.x0, ctx.crop->bbox.y0);
      for (int did : ctx.door_ids) ctx.door_locals.push_back(door_by_id(did).centroid - origin);
      for (const auto& d : in.decors[i]) {
        DecorInstance local = d;
        local.bbox = Box{d.bbox.x0 - ctx.crop->bbox.x0, d.bbox.y0 - ctx.crop->bbox.y0,
                         d.bbox.x1 - ctx.crop->bbox.x0, d.bbox.y1 - ctx.crop->bbox.y0};
        local.center = d.center - origin;
        ctx.local_decors.push_back(local);
      }
      rooms_[in.rooms[i].id] = std::move(ctx);
    }
  }

  TraversalPlan run() {
    const EntryPoint entry = find_entry(in_.rooms, in_.doors, in_.boundary, kDoorProbeMargin);
    std::vector<int> ids;
    for (const auto& r : in_.rooms) ids.push_back(r.id);
    const DfsResult dfs = dfs_order(in_.adjacency.am_d, ids, entry.room_id);

    TraversalPlan plan;
    plan.entry_room = entry.room_id;
    plan.entry_door = entry.door_id;

    std::map<int, int> entered_by;  // room -> door used to enter it
    std::set<int> emitted;
    entered_by[entry.room_id] = entry.door_id;

    for (size_t i = 0; i + 1 < dfs.order.size(); ++i) {
      const int c = dfs.order[i];
      const int n = dfs.order[i + 1];
      const int shared_cn = shared_door(c, n);
      if (shared_cn >= 0) {
        emit(plan, c, entered_by[c], shared_cn, false, emitted.count(c) > 0, emitted);
        entered_by[n] = shared_cn;
        continue;
      }
      // Leaf turn-around, then climb the DFS parents toward n.
      if (rooms_[c].door_ids.size() == 1) {
        emit_dead_end(plan, c, entered_by[c], emitted);
      } else {
        emit(plan, c, entered_by[c], entered_by[c], false, emitted.count(c) > 0, emitted);
      }
      int x = c;
      while (true) {
        const int p = dfs.parent.at(x);
        const int arrive = entered_by.at(x);  // door between x and p
        const int toward_n = shared_door(p, n);
        if (toward_n >= 0) {
          emit(plan, p, arrive, toward_n, false, true, emitted);
          entered_by[n] = toward_n;
          break;
        }
        emit(plan, p, arrive, entered_by.at(p), false, true, emitted);
        x = p;
      }
    }

    // Terminal room.
    const int last = dfs.order.back();
    if (rooms_[last].door_ids.size() == 1 || dfs.order.size() == 1) {
      emit_dead_end(plan, last, entered_by[last], emitted);
    } else {
      emit(plan, last, entered_by[last], entered_by[last], false, emitted.count(last) > 0,
           emitted);
    }
    return plan;
  }

 private:
  const DoorDetection& door_by_id(int id) const {
    for (const auto& d : in_.doors)
      if (d.id == id) return d;
    throw Error(ErrorCategory::invalid_input, "unknown door id");
  }

  int shared_door(int room_a, int room_b) {
    const auto& a = rooms_[room_a].door_ids;
    const auto& b = rooms_[room_b].door_ids;
    for (int da : a)  // ascending: lowest shared id wins
      if (std::find(b.begin(), b.end(), da) != b.end()) return da;
    return -1;
  }

  void ensure_graph(RoomContext& ctx) {
    if (ctx.built) return;
    ctx.graph = build_visibility_graph(ctx.crop->image, ctx.local_decors, ctx.door_locals);
    ctx.built = true;
  }

  int door_vertex(const RoomContext& ctx, int door_id) const {
    for (size_t i = 0; i < ctx.door_ids.size(); ++i)
      if (ctx.door_ids[i] == door_id) return static_cast<int>(i);
    throw Error(ErrorCategory::invalid_input,
                "door " + std::to_string(door_id) + " not in room " +
                    std::to_string(ctx.shape->id));
  }

  void emit(TraversalPlan& plan, int room_id, int door_in, int door_out, bool dead_end,
            bool revisit, std::set<int>& emitted) {
    RoomContext& ctx = rooms_[room_id];
    ensure_graph(ctx);
    const std::vector<int> path =
        route_vertices(ctx.graph, door_vertex(ctx, door_in), door_vertex(ctx, door_out));
    Route route;
    route.room_id = room_id;
    route.door_in = door_in;
    route.door_out = door_out;
    route.dead_end = dead_end;
    route.revisit = revisit;
    const Vec2 origin(ctx.crop->bbox.x0, ctx.crop->bbox.y0);
    for (int v : path) route.waypoints.push_back(ctx.graph.vertices[v] + origin);
    for (size_t i = 0; i + 1 < route.waypoints.size(); ++i)
      route.length += (route.waypoints[i + 1] - route.waypoints[i]).norm();
    plan.entries.push_back(std::move(route));
    emitted.insert(room_id);
  }

  // Out-and-back to the room interior so the narration has step counts.
  void emit_dead_end(TraversalPlan& plan, int room_id, int door_in, std::set<int>& emitted) {
    RoomContext& ctx = rooms_[room_id];
    ensure_graph(ctx);

    const Vec2 origin(ctx.crop->bbox.x0, ctx.crop->bbox.y0);
    const Vec2 centroid = polygon_centroid(ctx.shape->polygon).center - origin;

    VisibilityGraph g = ctx.graph;
    int target = -1;
    const int cx = static_cast<int>(std::lround(centroid.x()));
    const int cy = static_cast<int>(std::lround(centroid.y()));
    if (!ctx.crop->image.at(cx, cy)) {
      target = static_cast<int>(g.vertices.size());
      g.vertices.push_back(centroid);
      g.am_n.conservativeResize(target + 1, target + 1);
      g.am_n.row(target).setZero();
      g.am_n.col(target).setZero();
      for (int i = 0; i < target; ++i)
        if (segment_clear(ctx.crop->image, g.vertices[i], centroid)) {
          const Scalar w = (g.vertices[i] - centroid).norm();
          g.am_n(i, target) = g.am_n(target, i) = w;
        }
    }

    const int start = door_vertex(ctx, door_in);
    std::vector<int> path;
    if (target >= 0) {
      try {
        path = route_vertices(g, start, target);
      } catch (const Error&) {
        path.clear();
      }
    }
    if (path.empty()) {
      // Centroid blocked: fall back to the farthest reachable vertex.
      int best = -1;
      Scalar best_dist = -1;
      for (size_t i = 0; i < ctx.graph.vertices.size(); ++i) {
        if (static_cast<int>(i) == start) continue;
        try {
          const auto p = route_vertices(ctx.graph, start, static_cast<int>(i));
          const Scalar d = (ctx.graph.vertices[i] - ctx.graph.vertices[start]).norm();
          if (d > best_dist) {
            best_dist = d;
            best = static_cast<int>(i);
            path = p;
          }
        } catch (const Error&) {
        }
      }
      if (best < 0) path = {start};
    }

    Route route;
    route.room_id = room_id;
    route.door_in = door_in;
    route.door_out = -1;
    route.dead_end = true;
    route.revisit = false;
    const std::vector<Vec2>& verts = target >= 0 ? g.vertices : ctx.graph.vertices;
    for (int v : path) route.waypoints.push_back(verts[v] + origin);
    for (size_t i = path.size(); i-- > 1;) route.waypoints.push_back(verts[path[i - 1]] + origin);
    for (size_t i = 0; i + 1 < route.waypoints.size(); ++i)
      route.length += (route.waypoints[i + 1] - route.waypoints[i]).norm();
    plan.entries.push_back(std::move(route));
    emitted.insert(room_id);
  }

  const NavigationInput& in_;
  std::map<int, RoomContext> rooms_;
};

}  // namespace

TraversalPlan navigate(const NavigationInput& input) {
  if (input.rooms.size() != input.crops.size() || input.rooms.size() != input.decors.size())
    throw Error(ErrorCategory::invalid_input, "rooms, crops and decors must align");
  Navigator nav(input);
  return nav.run();
}

// ---------------------------------------------------------------------------
// Overlay rendering
// ---------------------------------------------------------------------------

namespace {

const std::array<std::array<std::uint8_t, 3>, 1> kUnused{};  // keep clang quiet

// 3x5 digit bitmaps.
const char* digit_rows(int d) {
  static const char* digits[10] = {
      "###"  "# #"  "# #"  "# #"  "###",
      " # "  "## "  " # "  " # "  "###",
      "###"  "  #"  "###"  "#  "  "###",
      "###"  "  #"  "###"  "  #"  "###",
      "# #"  "# #"  "###"  "  #"  "  #",
      "###"  "#  "  "###"  "  #"  "###",
      "###"  "#  "  "###"  "# #"  "###",
      "###"  "  #"  "  #"  "  #"  "  #",
      "###"  "# #"  "###"  "# #"  "###",
      "###"  "# #"  "###"  "  #"  "###"};
  return digits[d];
}

void draw_digit(RgbImage& img, int digit, int x, int y, std::array<std::uint8_t, 3> color) {
  const char* rows = digit_rows(digit);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 3; ++c)
      if (rows[r * 3 + c] == '#') img.set(x + c, y + r, color);
}

void draw_number(RgbImage& img, int value, int x, int y, std::array<std::uint8_t, 3> color) {
  const std::string s = std::to_string(value);
  for (size_t i = 0; i < s.size(); ++i)
    draw_digit(img, s[i] - '0', x + static_cast<int>(i) * 4, y, color);
}

void draw_line(RgbImage& img, const Vec2& a, const Vec2& b, std::array<std::uint8_t, 3> color) {
  const Scalar len = (b - a).norm();
  const int steps = std::max(1, static_cast<int>(std::ceil(len)));
  for (int i = 0; i <= steps; ++i) {
    const Vec2 p = a + (b - a) * (static_cast<Scalar>(i) / steps);
    img.set(static_cast<int>(std::lround(p.x())), static_cast<int>(std::lround(p.y())), color);
  }
}

}  // namespace

RgbImage render_overlay(const BinaryImage& plan, const TraversalPlan& plan_result,
                        const std::vector<DoorDetection>& doors) {
  (void)kUnused;
  RgbImage img(plan.width, plan.height);
  for (int y = 0; y < plan.height; ++y)
    for (int x = 0; x < plan.width; ++x)
      if (plan.at(x, y)) img.set(x, y, {90, 90, 90});

  const std::array<std::uint8_t, 3> red{220, 30, 30};
  const std::array<std::uint8_t, 3> blue{30, 60, 220};
  const std::array<std::uint8_t, 3> green{20, 140, 40};

  for (const auto& route : plan_result.entries) {
    for (size_t i = 0; i + 1 < route.waypoints.size(); ++i)
      draw_line(img, route.waypoints[i], route.waypoints[i + 1], red);
    // Turn points marked with a T.
    for (size_t i = 1; i + 1 < route.waypoints.size(); ++i) {
      const int x = static_cast<int>(std::lround(route.waypoints[i].x()));
      const int y = static_cast<int>(std::lround(route.waypoints[i].y()));
      for (int dx = -2; dx <= 2; ++dx) img.set(x + dx, y - 3, green);
      for (int dy = -3; dy <= 1; ++dy) img.set(x, y + dy, green);
    }
  }

  // Doors numbered in traversal order.
  std::vector<int> seen;
  int counter = 0;
  auto mark_door = [&](int door_id) {
    if (door_id < 0) return;
    if (std::find(seen.begin(), seen.end(), door_id) != seen.end()) return;
    seen.push_back(door_id);
    ++counter;
    for (const auto& d : doors)
      if (d.id == door_id)
        draw_number(img, counter, static_cast<int>(d.centroid.x()) - 3,
                    static_cast<int>(d.centroid.y()) - 2, blue);
  };
  mark_door(plan_result.entry_door);
  for (const auto& route : plan_result.entries) {
    mark_door(route.door_in);
    mark_door(route.door_out);
  }
  return img;
}

}  // namespace sugaman
