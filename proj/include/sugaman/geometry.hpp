#pragma once

#include "sugaman/types.hpp"

#include <string>
#include <vector>

namespace sugaman {

/// Simple polygon, vertices counter-clockwise in image coordinates.
struct Polygon {
  std::vector<Vec2> vertices;

  size_t size() const { return vertices.size(); }
  bool contains(const Vec2& p) const;  // boundary counts as inside
};

enum class Direction8 { N, NE, E, SE, S, SW, W, NW };

const char* direction_name(Direction8 d);   // "North East" style
const char* direction_code(Direction8 d);   // "NE" style
Direction8 direction_from_code(const std::string& code);

struct BinScheme {
  enum class Kind { uniform, nonuniform };
  Kind kind = Kind::nonuniform;

  static BinScheme uniform() { return BinScheme{Kind::uniform}; }
  static BinScheme nonuniform() { return BinScheme{Kind::nonuniform}; }
};

/// Angle in degrees in [0, 360): 0 = East, 90 = North (image y axis points
/// down, so the screen-up direction is North).
Scalar direction_angle_deg(const Vec2& origin, const Vec2& target);

Direction8 bin_angle(Scalar angle_deg, const BinScheme& scheme);
Direction8 bin_direction(const Vec2& origin, const Vec2& target, const BinScheme& scheme);

struct CentroidResult {
  Vec2 center;
  Scalar signed_area = 0;  // positive for counter-clockwise vertex order
};

CentroidResult polygon_centroid(const Polygon& p);

/// Characteristic hull of a point set. t = 0 gives the convex hull; larger t
/// removes long Delaunay boundary edges down to length
/// lambda(t) = L_max - t * (L_max - L_min), keeping the polygon simple and all
/// points enclosed.
Polygon trace_boundary(const std::vector<Vec2>& points, Scalar t);

std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// Ramer-Douglas-Peucker on a closed vertex ring.
std::vector<Vec2> simplify_ring(const std::vector<Vec2>& ring, Scalar epsilon);

}  // namespace sugaman
