#pragma once

#include "sugaman/geometry.hpp"
#include "sugaman/raster.hpp"
#include "sugaman/types.hpp"

#include <vector>

namespace sugaman {

struct WallImage {
  BinaryImage mask;
};

struct DoorTemplate {
  BinaryImage glyph;
  std::vector<Scalar> scales{0.75, 1.0, 1.25, 1.5};
};

struct DoorDetection {
  int id = 0;
  Box bbox;
  Vec2 centroid = Vec2::Zero();
  Scalar score = 0;
};

struct RoomShape {
  int id = 0;  // 1-based, raster-scan order of first cavity pixel
  Polygon polygon;
  long pixel_area = 0;
  Box bbox;
};

struct RoomCrop {
  int room_id = 0;
  Box bbox;
  BinaryImage image;
};

// Door boxes are grown by this margin before being painted as wall, so the
// seal survives template clearance and match jitter. Incidence probes must
// reach past the painted seal, hence the +2 on top of it.
constexpr int kDoorSealMargin = 4;
constexpr int kDoorProbeMargin = kDoorSealMargin + 2;

struct SegmentationParams {
  int se_radius = 3;
  int wall_min_thickness = 4;
  Scalar door_score_min = 0.8;
  long min_room_area = 100;
  int door_seal_margin = kDoorSealMargin;
  Scalar simplify_epsilon = 2.0;
  Scalar sqft_divisor = 100.0;  // pixels^2 per square foot
};

/// Components whose ink is thinner than wall_min_thickness (largest inscribed
/// square) are dropped, then the remaining wall ink is closed with a square
/// SE of se_radius.
WallImage extract_walls(const BinaryImage& plan, const SegmentationParams& params = {});

/// Normalized cross-correlation of the binarized template at the configured
/// scales, 4 rotations and mirror; peaks >= score_min after NMS (radius =
/// half template width). Detections sorted by (cy, cx), ids 0,1,2,...
std::vector<DoorDetection> detect_doors(const BinaryImage& plan, const DoorTemplate& tmpl,
                                        Scalar score_min);

/// Paint door boxes as wall, flood the exterior from the border, and trace
/// each remaining cavity. Throws segmentation-failed when no rooms remain.
std::vector<RoomShape> extract_rooms(const WallImage& walls,
                                     const std::vector<DoorDetection>& doors,
                                     const SegmentationParams& params = {});

Scalar room_area_sqft(long pixel_area, Scalar divisor = 100.0);

struct Adjacency {
  Eigen::MatrixXi am_d;                        // room x room, index = position in rooms
  std::vector<std::vector<int>> neighbors;     // room ids, ascending, per room index
  std::vector<std::vector<int>> door_rooms;    // room ids per door id
};

/// A door belongs to a room iff its bbox dilated by probe_margin intersects
/// the room polygon. Doors touching more than two rooms raise ambiguous-door.
Adjacency build_adjacency(const std::vector<RoomShape>& rooms,
                          const std::vector<DoorDetection>& doors,
                          int probe_margin = kDoorProbeMargin);

/// Per-room crops of the plan, pixels outside the room polygon blanked.
std::vector<RoomCrop> partition_rooms(const BinaryImage& plan,
                                      const std::vector<RoomShape>& rooms);

/// Moore boundary trace of one labeled component, pixel centers, closed ring.
std::vector<Vec2> trace_component_boundary(const LabelImage& labels, int label);

}  // namespace sugaman
