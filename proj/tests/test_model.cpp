#include "doctest.h"

#include "sugaman/model.hpp"

#include <random>

using namespace sugaman;

namespace {

Polygon rect_poly(double x0, double y0, double x1, double y1) {
  Polygon p;
  p.vertices = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
  return p;
}

SemanticModel three_room_model() {
  SemanticModel m;
  for (int i = 1; i <= 3; ++i) {
    Room r;
    r.id = i;
    r.label = static_cast<RoomLabel>(i);
    r.polygon = rect_poly(10.0 * i, 10, 10.0 * i + 40, 60);
    r.area_sqft = 20.0 * i + 0.25;
    r.global_dir = i == 1 ? Direction8::W : (i == 2 ? Direction8::N : Direction8::E);
    m.rooms.push_back(r);
  }
  m.rooms[0].neighbors = {2};
  m.rooms[1].neighbors = {1, 3};
  m.rooms[2].neighbors = {2};

  DecorInstance d;
  d.cls = DecorClass::bed;
  d.bbox = Box{12, 12, 20, 20};
  d.center = Vec2(16, 16);
  d.dir = Direction8::NW;
  m.rooms[0].decors.push_back(d);

  m.doors.push_back(Door{0, Vec2(15, 10), {1}});
  m.doors.push_back(Door{1, Vec2(30, 35), {1, 2}});
  m.doors.push_back(Door{2, Vec2(45, 35), {2, 3}});
  m.entry_door = 0;
  return m;
}

SemanticModel random_model(std::mt19937& rng) {
  SemanticModel m;
  const int n = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < n; ++i) {
    Room r;
    r.id = i + 1;
    r.label = static_cast<RoomLabel>(1 + rng() % 5);
    const double x0 = static_cast<double>(rng() % 200);
    const double y0 = static_cast<double>(rng() % 200);
    r.polygon = rect_poly(x0, y0, x0 + 20 + rng() % 100, y0 + 20 + rng() % 100);
    r.area_sqft = (1 + rng() % 40000) / 100.0;  // two-decimal representable
    r.global_dir = static_cast<Direction8>(rng() % 8);
    const int decors = static_cast<int>(rng() % 4);
    for (int k = 0; k < decors; ++k) {
      DecorInstance d;
      d.cls = static_cast<DecorClass>(1 + rng() % 12);
      const int bx = static_cast<int>(x0) + 2 + static_cast<int>(rng() % 10);
      const int by = static_cast<int>(y0) + 2 + static_cast<int>(rng() % 10);
      d.bbox = Box{bx, by, bx + 8, by + 6};
      d.center = d.bbox.center();
      d.dir = static_cast<Direction8>(rng() % 8);
      r.decors.push_back(d);
    }
    m.rooms.push_back(r);
  }
  // Chain neighbors so the symmetry invariant holds.
  int next_door = 0;
  for (int i = 0; i + 1 < n; ++i) {
    m.rooms[i].neighbors.push_back(i + 2);
    m.rooms[i + 1].neighbors.push_back(i + 1);
    Door d;
    d.id = next_door++;
    d.centroid = Vec2(static_cast<double>(rng() % 300), static_cast<double>(rng() % 300));
    d.rooms = {i + 1, i + 2};
    m.doors.push_back(d);
  }
  for (auto& r : m.rooms) std::sort(r.neighbors.begin(), r.neighbors.end());
  Door outer;
  outer.id = next_door;
  outer.centroid = Vec2(1.5, 2.5);
  outer.rooms = {1};
  m.doors.push_back(outer);
  m.entry_door = outer.id;
  return m;
}

}  // namespace

TEST_CASE("empty model serializes to a self-closing root") {
  SemanticModel empty;
  const std::string xml = to_xml(empty);
  CHECK(xml.find("<RoomDetails/>") != std::string::npos);
  CHECK(from_xml(xml) == empty);
}

TEST_CASE("single room with no decors") {
  SemanticModel m;
  Room r;
  r.id = 1;
  r.label = RoomLabel::hall;
  r.polygon = rect_poly(0, 0, 50, 50);
  r.area_sqft = 25.0;
  m.rooms.push_back(r);
  const std::string xml = to_xml(m);
  CHECK(xml.find("<RoomDecors/>") != std::string::npos);
  CHECK(xml.find("<RoomArea>25.00</RoomArea>") != std::string::npos);
  // Exactly one Room element.
  size_t count = 0, pos = 0;
  while ((pos = xml.find("<Room dir", pos)) != std::string::npos) {
    ++count;
    ++pos;
  }
  CHECK(count == 1);
  CHECK(from_xml(xml) == m);
}

TEST_CASE("three-room round trip preserves every field") {
  const SemanticModel m = three_room_model();
  const std::string xml = to_xml(m);
  const SemanticModel back = from_xml(xml);
  CHECK(back == m);
  CHECK(back.door_adjacency() == m.door_adjacency());
  // Byte-deterministic serialization.
  CHECK(to_xml(back) == xml);
}

TEST_CASE("round trip on random models") {
  std::mt19937 rng(2024);
  for (int rep = 0; rep < 100; ++rep) {
    const SemanticModel m = random_model(rng);
    const SemanticModel back = from_xml(to_xml(m));
    CHECK(back == m);
  }
}

TEST_CASE("schema violations are named") {
  const SemanticModel m = three_room_model();
  std::string xml = to_xml(m);

  // Missing RoomID.
  std::string broken = xml;
  const size_t a = broken.find("<RoomID>");
  const size_t b = broken.find("</RoomID>") + 9;
  broken.erase(a, b - a);
  try {
    from_xml(broken);
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::parse_error);
    CHECK(std::string(e.what()).find("Room/RoomID") != std::string::npos);
  }

  // Unknown element.
  std::string unknown = xml;
  unknown.insert(unknown.find("</RoomDetails>"), "<Extra/>");
  CHECK_THROWS_AS(from_xml(unknown), Error);

  // Duplicate room id.
  std::string dup = xml;
  const size_t room_start = dup.find("  <Room dir");
  const size_t room_end = dup.find("</Room>") + 8;
  dup.insert(room_end, dup.substr(room_start, room_end - room_start));
  CHECK_THROWS_AS(from_xml(dup), Error);

  CHECK_THROWS_AS(from_xml("not xml at all"), Error);
}

TEST_CASE("serialization refuses invariant violations") {
  SemanticModel bad = three_room_model();
  bad.rooms[0].area_sqft = -1;
  CHECK_THROWS_AS(to_xml(bad), Error);

  SemanticModel asym = three_room_model();
  asym.rooms[0].neighbors = {3};  // room 3 does not list room 1
  CHECK_THROWS_AS(to_xml(asym), Error);

  SemanticModel bad_entry = three_room_model();
  bad_entry.entry_door = 99;
  CHECK_THROWS_AS(to_xml(bad_entry), Error);
}
