#include "sugaman/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

namespace sugaman {

namespace {

constexpr Scalar kEps = 1e-9;

Scalar cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  if (std::abs(cross(a, b, p)) > kEps * (1.0 + (b - a).norm())) return false;
  return p.x() >= std::min(a.x(), b.x()) - kEps && p.x() <= std::max(a.x(), b.x()) + kEps &&
         p.y() >= std::min(a.y(), b.y()) - kEps && p.y() <= std::max(a.y(), b.y()) + kEps;
}

}  // namespace

bool Polygon::contains(const Vec2& p) const {
  const size_t n = vertices.size();
  if (n < 3) return false;
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = vertices[j];
    const Vec2& b = vertices[i];
    if (on_segment(a, b, p)) return true;
    const bool crosses = (b.y() > p.y()) != (a.y() > p.y());
    if (crosses) {
      const Scalar xint = b.x() + (p.y() - b.y()) * (a.x() - b.x()) / (a.y() - b.y());
      if (p.x() < xint) inside = !inside;
    }
  }
  return inside;
}

const char* direction_name(Direction8 d) {
  switch (d) {
    case Direction8::N: return "North";
    case Direction8::NE: return "North East";
    case Direction8::E: return "East";
    case Direction8::SE: return "South East";
    case Direction8::S: return "South";
    case Direction8::SW: return "South West";
    case Direction8::W: return "West";
    case Direction8::NW: return "North West";
  }
  return "?";
}

const char* direction_code(Direction8 d) {
  switch (d) {
    case Direction8::N: return "N";
    case Direction8::NE: return "NE";
    case Direction8::E: return "E";
    case Direction8::SE: return "SE";
    case Direction8::S: return "S";
    case Direction8::SW: return "SW";
    case Direction8::W: return "W";
    case Direction8::NW: return "NW";
  }
  return "?";
}

Direction8 direction_from_code(const std::string& code) {
  static const std::map<std::string, Direction8> table = {
      {"N", Direction8::N},   {"NE", Direction8::NE}, {"E", Direction8::E},
      {"SE", Direction8::SE}, {"S", Direction8::S},   {"SW", Direction8::SW},
      {"W", Direction8::W},   {"NW", Direction8::NW}};
  auto it = table.find(code);
  if (it == table.end())
    throw Error(ErrorCategory::parse_error, "unknown direction code '" + code + "'");
  return it->second;
}

Scalar direction_angle_deg(const Vec2& origin, const Vec2& target) {
  const Scalar dx = target.x() - origin.x();
  const Scalar dy = target.y() - origin.y();
  if (std::abs(dx) < kEps && std::abs(dy) < kEps)
    throw Error(ErrorCategory::undefined_direction, "coincident points");
  // Image y grows downward; negate so 90 degrees points up (North).
  Scalar a = std::atan2(-dy, dx) * 180.0 / std::numbers::pi;
  if (a < 0) a += 360.0;
  if (a >= 360.0) a -= 360.0;
  return a;
}

Direction8 bin_angle(Scalar angle_deg, const BinScheme& scheme) {
  Scalar a = std::fmod(angle_deg, 360.0);
  if (a < 0) a += 360.0;

  struct Sector {
    Scalar lo, hi;  // [lo, hi)
    Direction8 dir;
  };
  // East sector straddles 0 and is handled by remapping into [-lo, ...).
  static const Sector uniform[] = {
      {22.5, 67.5, Direction8::NE},  {67.5, 112.5, Direction8::N},
      {112.5, 157.5, Direction8::NW}, {157.5, 202.5, Direction8::W},
      {202.5, 247.5, Direction8::SW}, {247.5, 292.5, Direction8::S},
      {292.5, 337.5, Direction8::SE}};
  // Cardinal sectors span 60 degrees, diagonals 30.
  static const Sector nonuniform[] = {
      {30, 60, Direction8::NE},  {60, 120, Direction8::N},  {120, 150, Direction8::NW},
      {150, 210, Direction8::W}, {210, 240, Direction8::SW}, {240, 300, Direction8::S},
      {300, 330, Direction8::SE}};

  const Sector* table = scheme.kind == BinScheme::Kind::uniform ? uniform : nonuniform;
  const size_t count = 7;
  for (size_t i = 0; i < count; ++i)
    if (a >= table[i].lo && a < table[i].hi) return table[i].dir;
  return Direction8::E;
}

Direction8 bin_direction(const Vec2& origin, const Vec2& target, const BinScheme& scheme) {
  return bin_angle(direction_angle_deg(origin, target), scheme);
}

CentroidResult polygon_centroid(const Polygon& p) {
  const size_t n = p.vertices.size();
  if (n < 3) throw Error(ErrorCategory::degenerate_polygon, "fewer than 3 vertices");
  Scalar twice_area = 0, cx = 0, cy = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = p.vertices[i];
    const Vec2& b = p.vertices[(i + 1) % n];
    const Scalar ai = a.x() * b.y() - b.x() * a.y();
    twice_area += ai;
    cx += ai * (a.x() + b.x());
    cy += ai * (a.y() + b.y());
  }
  const Scalar area = 0.5 * twice_area;
  if (std::abs(area) < 1e-9) throw Error(ErrorCategory::degenerate_polygon, "zero area");
  return {Vec2(cx / (6.0 * area), cy / (6.0 * area)), area};
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return std::tie(a.x(), a.y()) < std::tie(b.x(), b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return (a - b).norm() < kEps; }),
            pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= kEps) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= kEps) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;  // positive signed area ordering
}

// ---------------------------------------------------------------------------
// Bowyer-Watson Delaunay triangulation and the characteristic hull.
// ---------------------------------------------------------------------------

namespace {

struct Triangle {
  int a, b, c;
  bool alive = true;
};

bool incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
  const Scalar ax = a.x() - p.x(), ay = a.y() - p.y();
  const Scalar bx = b.x() - p.x(), by = b.y() - p.y();
  const Scalar cx = c.x() - p.x(), cy = c.y() - p.y();
  const Scalar det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                     (bx * bx + by * by) * (ax * cy - cx * ay) +
                     (cx * cx + cy * cy) * (ax * by - bx * ay);
  const Scalar orient = cross(a, b, c);
  // det sign assumes counter-clockwise abc.
  return orient > 0 ? det > kEps : det < -kEps;
}

bool point_in_triangle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
  const Scalar d1 = cross(a, b, p), d2 = cross(b, c, p), d3 = cross(c, a, p);
  const bool has_neg = d1 < -kEps || d2 < -kEps || d3 < -kEps;
  const bool has_pos = d1 > kEps || d2 > kEps || d3 > kEps;
  return !(has_neg && has_pos);
}

using Edge = std::pair<int, int>;
Edge make_edge(int u, int v) { return {std::min(u, v), std::max(u, v)}; }

std::vector<Triangle> delaunay(const std::vector<Vec2>& pts) {
  // Super-triangle generously enclosing the input.
  Scalar minx = pts[0].x(), maxx = minx, miny = pts[0].y(), maxy = miny;
  for (const auto& p : pts) {
    minx = std::min(minx, p.x());
    maxx = std::max(maxx, p.x());
    miny = std::min(miny, p.y());
    maxy = std::max(maxy, p.y());
  }
  const Scalar span = std::max({maxx - minx, maxy - miny, Scalar(1)});
  const Scalar midx = 0.5 * (minx + maxx), midy = 0.5 * (miny + maxy);

  std::vector<Vec2> v = pts;
  const int s0 = static_cast<int>(v.size());
  v.emplace_back(midx - 20 * span, midy - 10 * span);
  v.emplace_back(midx + 20 * span, midy - 10 * span);
  v.emplace_back(midx, midy + 20 * span);

  std::vector<Triangle> tris;
  tris.push_back({s0, s0 + 1, s0 + 2});

  for (int i = 0; i < s0; ++i) {
    const Vec2& p = v[i];
    std::vector<int> bad;
    for (size_t t = 0; t < tris.size(); ++t) {
      if (!tris[t].alive) continue;
      const Triangle& tr = tris[t];
      if (incircle(v[tr.a], v[tr.b], v[tr.c], p) ||
          point_in_triangle(v[tr.a], v[tr.b], v[tr.c], p)) {
        bad.push_back(static_cast<int>(t));
      }
    }
    std::map<Edge, int> edge_count;
    for (int t : bad) {
      const Triangle& tr = tris[t];
      ++edge_count[make_edge(tr.a, tr.b)];
      ++edge_count[make_edge(tr.b, tr.c)];
      ++edge_count[make_edge(tr.c, tr.a)];
      tris[t].alive = false;
    }
    for (const auto& [e, cnt] : edge_count) {
      if (cnt != 1) continue;  // interior cavity edge
      Triangle nt{e.first, e.second, i};
      if (std::abs(cross(v[nt.a], v[nt.b], v[nt.c])) < kEps) continue;
      tris.push_back(nt);
    }
  }

  std::vector<Triangle> out;
  for (const auto& t : tris) {
    if (!t.alive) continue;
    if (t.a >= s0 || t.b >= s0 || t.c >= s0) continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace

Polygon trace_boundary(const std::vector<Vec2>& points, Scalar t) {
  if (t < 0 || t > 1)
    throw Error(ErrorCategory::invalid_input, "shrink factor must be in [0, 1]");
  std::vector<Vec2> pts = points;
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return std::tie(a.x(), a.y()) < std::tie(b.x(), b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return (a - b).norm() < kEps; }),
            pts.end());
  if (pts.size() < 3) throw Error(ErrorCategory::degenerate_input, "need >= 3 distinct points");
  bool collinear = true;
  for (size_t i = 2; i < pts.size() && collinear; ++i)
    if (std::abs(cross(pts[0], pts[1], pts[i])) > kEps) collinear = false;
  if (collinear) throw Error(ErrorCategory::degenerate_input, "points are collinear");

  std::vector<Triangle> tris = delaunay(pts);
  if (tris.empty()) throw Error(ErrorCategory::degenerate_input, "triangulation failed");

  // Edge -> adjacent alive triangles; lambda(t) from all Delaunay edge lengths.
  std::map<Edge, std::vector<int>> edge_tris;
  Scalar lmax = 0, lmin = std::numeric_limits<Scalar>::max();
  for (size_t ti = 0; ti < tris.size(); ++ti) {
    const Triangle& tr = tris[ti];
    for (const Edge& e :
         {make_edge(tr.a, tr.b), make_edge(tr.b, tr.c), make_edge(tr.c, tr.a)}) {
      edge_tris[e].push_back(static_cast<int>(ti));
    }
  }
  for (const auto& [e, _] : edge_tris) {
    const Scalar len = (pts[e.first] - pts[e.second]).norm();
    lmax = std::max(lmax, len);
    lmin = std::min(lmin, len);
  }
  const Scalar lambda = lmax - t * (lmax - lmin);

  auto alive_count = [&](const Edge& e) {
    int n = 0;
    for (int ti : edge_tris[e])
      if (tris[ti].alive) ++n;
    return n;
  };

  std::set<Edge> boundary;
  std::vector<char> on_boundary(pts.size(), 0);
  for (const auto& [e, adj] : edge_tris) {
    if (alive_count(e) == 1) {
      boundary.insert(e);
      on_boundary[e.first] = on_boundary[e.second] = 1;
    }
  }

  auto edge_key = [&](const Edge& e) {
    const Vec2& u = pts[e.first];
    const Vec2& v = pts[e.second];
    return std::make_tuple(u.x(), u.y(), v.x(), v.y());
  };

  while (true) {
    // Longest removable boundary edge above the length cutoff.
    bool found = false;
    Edge best{};
    Scalar best_len = -1;
    for (const Edge& e : boundary) {
      const Scalar len = (pts[e.first] - pts[e.second]).norm();
      if (len <= lambda + kEps) continue;
      int tri_id = -1;
      for (int ti : edge_tris[e])
        if (tris[ti].alive) tri_id = ti;
      if (tri_id < 0) continue;
      const Triangle& tr = tris[tri_id];
      const int opp = tr.a + tr.b + tr.c - e.first - e.second;
      if (on_boundary[opp]) continue;  // removal would pinch the polygon
      if (!found || len > best_len + kEps ||
          (std::abs(len - best_len) <= kEps && edge_key(e) < edge_key(best))) {
        best = e;
        best_len = len;
        found = true;
      }
    }
    if (!found) break;

    int tri_id = -1;
    for (int ti : edge_tris[best])
      if (tris[ti].alive) tri_id = ti;
    Triangle& tr = tris[tri_id];
    const int opp = tr.a + tr.b + tr.c - best.first - best.second;
    tr.alive = false;
    boundary.erase(best);
    for (const Edge& e : {make_edge(best.first, opp), make_edge(best.second, opp)}) {
      if (alive_count(e) == 1)
        boundary.insert(e);
      else
        boundary.erase(e);
    }
    on_boundary[opp] = 1;
  }

  // Walk the boundary cycle starting from the lexicographically smallest vertex.
  std::map<int, std::vector<int>> adjacency;
  for (const Edge& e : boundary) {
    adjacency[e.first].push_back(e.second);
    adjacency[e.second].push_back(e.first);
  }
  if (adjacency.empty()) throw Error(ErrorCategory::degenerate_input, "empty boundary");

  int start = adjacency.begin()->first;
  for (const auto& [vtx, _] : adjacency) {
    if (std::tie(pts[vtx].x(), pts[vtx].y()) < std::tie(pts[start].x(), pts[start].y()))
      start = vtx;
  }
  std::vector<int> cycle{start};
  int prev = -1, cur = start;
  while (true) {
    const auto& nbrs = adjacency[cur];
    int next = -1;
    for (int nb : nbrs) {
      if (nb == prev) continue;
      if (next < 0 || std::tie(pts[nb].x(), pts[nb].y()) < std::tie(pts[next].x(), pts[next].y()))
        next = nb;
    }
    if (next < 0) next = prev;  // two-vertex degenerate cycle
    if (next == start) break;
    cycle.push_back(next);
    prev = cur;
    cur = next;
    if (cycle.size() > boundary.size() + 1)
      throw Error(ErrorCategory::degenerate_input, "boundary walk did not close");
  }

  Polygon poly;
  poly.vertices.reserve(cycle.size());
  for (int idx : cycle) poly.vertices.push_back(pts[idx]);
  // Normalize to positive signed area.
  Scalar twice_area = 0;
  for (size_t i = 0; i < poly.vertices.size(); ++i) {
    const Vec2& a = poly.vertices[i];
    const Vec2& b = poly.vertices[(i + 1) % poly.vertices.size()];
    twice_area += a.x() * b.y() - b.x() * a.y();
  }
  if (twice_area < 0) {
    std::reverse(poly.vertices.begin() + 1, poly.vertices.end());
  }
  return poly;
}

namespace {

Scalar point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const Scalar len2 = ab.squaredNorm();
  if (len2 < kEps) return (p - a).norm();
  const Scalar u = std::clamp((p - a).dot(ab) / len2, Scalar(0), Scalar(1));
  return (p - (a + u * ab)).norm();
}

void dp_simplify(const std::vector<Vec2>& pts, size_t lo, size_t hi, Scalar eps,
                 std::vector<char>& keep) {
  if (hi <= lo + 1) return;
  Scalar dmax = -1;
  size_t imax = lo;
  for (size_t i = lo + 1; i < hi; ++i) {
    const Scalar d = point_segment_distance(pts[i], pts[lo], pts[hi]);
    if (d > dmax) {
      dmax = d;
      imax = i;
    }
  }
  if (dmax > eps) {
    keep[imax] = 1;
    dp_simplify(pts, lo, imax, eps, keep);
    dp_simplify(pts, imax, hi, eps, keep);
  }
}

}  // namespace

std::vector<Vec2> simplify_ring(const std::vector<Vec2>& ring, Scalar epsilon) {
  const size_t n = ring.size();
  if (n <= 4) return ring;
  // Anchor the closed ring at two mutually far vertices, simplify both chains.
  size_t a = 0, b = n / 2;
  Scalar best = -1;
  for (size_t i = 0; i < n; ++i) {
    const Scalar d = (ring[i] - ring[0]).norm();
    if (d > best) {
      best = d;
      b = i;
    }
  }
  if (b == 0) return ring;
  std::vector<char> keep(n, 0);
  keep[a] = keep[b] = 1;
  dp_simplify(ring, a, b, epsilon, keep);
  // Second chain wraps; unroll it into a temporary buffer.
  std::vector<Vec2> tail;
  std::vector<size_t> tail_idx;
  for (size_t i = b; i != a; i = (i + 1) % n) {
    tail.push_back(ring[i]);
    tail_idx.push_back(i);
  }
  tail.push_back(ring[a]);
  tail_idx.push_back(a);
  if (tail.size() < 2) return ring;
  std::vector<char> keep_tail(tail.size(), 0);
  keep_tail.front() = keep_tail.back() = 1;
  dp_simplify(tail, 0, tail.size() - 1, epsilon, keep_tail);
  for (size_t i = 0; i < tail.size(); ++i)
    if (keep_tail[i]) keep[tail_idx[i]] = 1;

  std::vector<Vec2> out;
  for (size_t i = 0; i < n; ++i)
    if (keep[i]) out.push_back(ring[i]);
  return out;
}

}  // namespace sugaman
