#include "sugaman/pipeline.hpp"

#include "sugaman/glyphs.hpp"

#include <cmath>

namespace sugaman {

namespace {

Direction8 safe_direction(const Vec2& origin, const Vec2& target) {
  if ((target - origin).norm() < 1e-9) return Direction8::N;  // coincident: pick a fixed bin
  return bin_direction(origin, target, BinScheme::nonuniform());
}

}  // namespace

PipelineResult run_front_end(const BinaryImage& plan, const SignatureLibrary& library,
                             const PipelineConfig& config) {
  PipelineResult r;
  r.walls = extract_walls(plan, config.seg);
  r.doors = detect_doors(plan, DoorTemplate{door_glyph()}, config.seg.door_score_min);
  r.rooms = extract_rooms(r.walls, r.doors, config.seg);
  r.adjacency = build_adjacency(r.rooms, r.doors);
  r.crops = partition_rooms(plan, r.rooms);

  // Plan outline and center from the room corner points.
  std::vector<Vec2> corner_cloud;
  for (const auto& room : r.rooms)
    for (const auto& v : room.polygon.vertices) corner_cloud.push_back(v);
  r.boundary = trace_boundary(corner_cloud, config.boundary_shrink);
  r.plan_center = polygon_centroid(r.boundary).center;

  r.features = Matrix::Zero(static_cast<Eigen::Index>(r.rooms.size()), kLofdDim);
  for (size_t i = 0; i < r.rooms.size(); ++i) {
    const RoomShape& room = r.rooms[i];
    const Vec2 center = polygon_centroid(room.polygon).center;

    BinaryImage wall_crop(r.crops[i].bbox.width(), r.crops[i].bbox.height());
    for (int y = 0; y < wall_crop.height; ++y)
      for (int x = 0; x < wall_crop.width; ++x)
        wall_crop.set(x, y, r.walls.mask.at(r.crops[i].bbox.x0 + x, r.crops[i].bbox.y0 + y));

    std::vector<DecorInstance> decors =
        classify_decors(r.crops[i].image, wall_crop, library, config.decor);
    for (auto& d : decors) {
      d.bbox = Box{d.bbox.x0 + r.crops[i].bbox.x0, d.bbox.y0 + r.crops[i].bbox.y0,
                   d.bbox.x1 + r.crops[i].bbox.x0, d.bbox.y1 + r.crops[i].bbox.y0};
      d.center = d.bbox.center();
      d.dir = safe_direction(center, d.center);
    }
    r.features.row(static_cast<Eigen::Index>(i)) =
        compute_lofd(center, decors, config.mean_distance).values;
    r.decors.push_back(std::move(decors));
  }
  return r;
}

PipelineResult run_pipeline(const BinaryImage& plan, const RoomClassifier& classifier,
                            const SignatureLibrary& library, const PipelineConfig& config) {
  PipelineResult r = run_front_end(plan, library, config);
  const std::vector<int> labels = predict(classifier, r.features);

  for (size_t i = 0; i < r.rooms.size(); ++i) {
    const RoomShape& shape = r.rooms[i];
    Room room;
    room.id = shape.id;
    room.label = room_label_from_code(labels[i]);
    room.polygon = shape.polygon;
    room.area_sqft = room_area_sqft(shape.pixel_area, config.seg.sqft_divisor);
    room.neighbors = r.adjacency.neighbors[i];
    room.decors = r.decors[i];
    room.global_dir = safe_direction(r.plan_center, polygon_centroid(shape.polygon).center);
    r.model.rooms.push_back(std::move(room));
  }
  for (size_t di = 0; di < r.doors.size(); ++di) {
    Door door;
    door.id = r.doors[di].id;
    door.centroid = r.doors[di].centroid;
    door.rooms = r.adjacency.door_rooms[di];
    r.model.doors.push_back(std::move(door));
  }
  const EntryPoint entry = find_entry(r.rooms, r.doors, r.boundary);
  r.model.entry_door = entry.door_id;

  NavigationInput nav;
  nav.rooms = r.rooms;
  nav.doors = r.doors;
  nav.adjacency = r.adjacency;
  nav.crops = r.crops;
  nav.decors = r.decors;
  nav.boundary = r.boundary;
  r.traversal = navigate(nav);
  return r;
}

}  // namespace sugaman
