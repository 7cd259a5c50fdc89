#pragma once

#include "sugaman/model.hpp"
#include "sugaman/png_io.hpp"
#include "sugaman/segmentation.hpp"

#include <map>
#include <vector>

namespace sugaman {

/// Door ids per room id; a shared door appears in both rooms' lists.
struct DoorStructure {
  std::map<int, std::vector<int>> doors_of_room;

  const std::vector<int>& of(int room_id) const {
    static const std::vector<int> empty;
    auto it = doors_of_room.find(room_id);
    return it == doors_of_room.end() ? empty : it->second;
  }
};

DoorStructure build_door_structure(const std::vector<RoomShape>& rooms,
                                   const std::vector<DoorDetection>& doors,
                                   int probe_margin = kDoorProbeMargin);

struct EntryPoint {
  int room_id = 0;
  int door_id = 0;
};

/// Lowest-id door incident to exactly one room; its room is the entry room.
/// The plan boundary is a sanity envelope for the chosen door.
EntryPoint find_entry(const std::vector<RoomShape>& rooms,
                      const std::vector<DoorDetection>& doors, const Polygon& boundary,
                      int probe_margin = kDoorProbeMargin);

struct DfsResult {
  std::vector<int> order;       // room ids, preorder
  std::map<int, int> parent;    // room id -> parent room id (entry -> itself)
};

/// Preorder over the door adjacency, neighbors expanded in ascending room id.
DfsResult dfs_order(const Eigen::MatrixXi& am_d, const std::vector<int>& room_ids,
                    int entry_room);

struct VisibilityGraph {
  std::vector<Vec2> vertices;  // V_L, local coordinates of the obstacle image
  Matrix am_n;                 // symmetric; Euclidean weight, 0 = not visible
};

/// V_L = door centroids, decor bbox corners pushed 3 px outward, Harris
/// corners (max 1000) pushed off their ink. All coordinates are local to the
/// obstacle image; the first door_points.size() vertices are the doors.
VisibilityGraph build_visibility_graph(const BinaryImage& obstacle_image,
                                       const std::vector<DecorInstance>& local_decors,
                                       const std::vector<Vec2>& door_points);

/// True when the 1-px-sampled segment crosses no foreground pixel.
bool segment_clear(const BinaryImage& img, const Vec2& a, const Vec2& b);

/// Dijkstra over am_n (0 entries are non-edges); equal-length ties resolve to
/// the lexicographically smallest vertex-index sequence.
std::vector<int> route_vertices(const VisibilityGraph& g, int from, int to);

struct Route {
  int room_id = 0;
  int door_in = -1;
  int door_out = -1;   // -1 on dead-end or terminal visits
  bool dead_end = false;
  bool revisit = false;
  std::vector<Vec2> waypoints;  // absolute plan coordinates
  Scalar length = 0;
};

struct TraversalPlan {
  std::vector<Route> entries;
  int entry_room = 0;
  int entry_door = 0;
};

struct NavigationInput {
  std::vector<RoomShape> rooms;
  std::vector<DoorDetection> doors;
  Adjacency adjacency;
  std::vector<RoomCrop> crops;                     // aligned with rooms
  std::vector<std::vector<DecorInstance>> decors;  // absolute coords, aligned with rooms
  Polygon boundary;                                // plan outline (entry sanity check)
};

/// Walk the DFS order; route door-to-door through shared doors, backtrack
/// along DFS parents when rooms do not share one, and turn around inside
/// single-door rooms.
TraversalPlan navigate(const NavigationInput& input);

/// Debug overlay: routes, turn marks and doors numbered in traversal order.
RgbImage render_overlay(const BinaryImage& plan, const TraversalPlan& plan_result,
                        const std::vector<DoorDetection>& doors);

}  // namespace sugaman
