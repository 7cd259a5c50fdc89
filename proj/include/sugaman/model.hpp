#pragma once

#include "sugaman/geometry.hpp"
#include "sugaman/raster.hpp"
#include "sugaman/types.hpp"

#include <string>
#include <vector>

namespace sugaman {

enum class RoomLabel : int {
  bedroom = 1,
  bathroom = 2,
  entry = 3,
  kitchen = 4,
  hall = 5,
};

constexpr int kRoomLabelCount = 5;
const char* room_label_name(RoomLabel label);  // "bedroom" ...
RoomLabel room_label_from_code(int code);

enum class DecorClass : int {
  bed = 1,
  sofa = 2,
  large_sofa = 3,
  table = 4,
  chair = 5,
  sink = 6,
  twin_sink = 7,
  large_sink = 8,
  tub = 9,
  stove = 10,
  wardrobe = 11,
  commode = 12,
};

constexpr int kDecorClassCount = 12;
const char* decor_class_token(DecorClass c);  // "large_sofa" (library/XML spelling)
std::string decor_class_display(DecorClass c);  // "large sofa" (sentence spelling)
DecorClass decor_class_from_code(int code);
DecorClass decor_class_from_token(const std::string& token);

struct DecorInstance {
  DecorClass cls = DecorClass::bed;
  Box bbox;
  Vec2 center = Vec2::Zero();           // bbox center
  Direction8 dir = Direction8::N;       // relative to the room center

  bool operator==(const DecorInstance& o) const;
};

struct Door {
  int id = 0;
  Vec2 centroid = Vec2::Zero();
  std::vector<int> rooms;  // 1 or 2 room ids, ascending

  bool operator==(const Door& o) const;
};

struct Room {
  int id = 0;
  RoomLabel label = RoomLabel::hall;
  Polygon polygon;
  Scalar area_sqft = 0;
  std::vector<int> neighbors;  // ascending room ids
  std::vector<DecorInstance> decors;
  Direction8 global_dir = Direction8::N;

  bool operator==(const Room& o) const;
};

struct SemanticModel {
  std::vector<Room> rooms;   // ascending id
  std::vector<Door> doors;   // ascending id
  int entry_door = -1;       // -1 when the model has no doors

  const Room* find_room(int id) const;
  const Door* find_door(int id) const;

  /// Room-by-room boolean adjacency derived from shared doors, indexed by
  /// position in `rooms`. Symmetric with zero diagonal.
  Eigen::MatrixXi door_adjacency() const;

  bool operator==(const SemanticModel& o) const;
};

/// Canonical UTF-8 document; byte-deterministic for equal models.
/// Throws serialization-refused when model invariants do not hold.
std::string to_xml(const SemanticModel& model);

/// Strict parse of the canonical schema; unknown elements are rejected and
/// errors carry the offending element path.
SemanticModel from_xml(const std::string& bytes);

}  // namespace sugaman
