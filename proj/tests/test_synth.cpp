#include "doctest.h"

#include "sugaman/decor.hpp"
#include "sugaman/glyphs.hpp"
#include "sugaman/navigation.hpp"
#include "sugaman/segmentation.hpp"
#include "sugaman/synth.hpp"

#include <filesystem>
#include <fstream>
#include <set>

using namespace sugaman;

namespace {

struct UF {
  std::vector<int> p;
  explicit UF(int n) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("generation is deterministic") {
  PlanSpec spec;
  spec.seed = 1;
  const auto [plan_a, gt_a] = generate(spec);
  const auto [plan_b, gt_b] = generate(spec);
  CHECK(plan_a == plan_b);
  CHECK(gt_a.wall_mask == gt_b.wall_mask);
  REQUIRE(gt_a.rooms.size() == gt_b.rooms.size());
  for (size_t i = 0; i < gt_a.rooms.size(); ++i) {
    CHECK(gt_a.rooms[i].label == gt_b.rooms[i].label);
    CHECK(gt_a.rooms[i].cavity == gt_b.rooms[i].cavity);
  }
  REQUIRE(gt_a.decors.size() == gt_b.decors.size());
  for (size_t i = 0; i < gt_a.decors.size(); ++i) CHECK(gt_a.decors[i].bbox == gt_b.decors[i].bbox);
}

TEST_CASE("room_count is honored") {
  for (int rc : {3, 4, 5}) {
    PlanSpec spec;
    spec.seed = 7 + rc;
    spec.room_count = rc;
    const auto [plan, gt] = generate(spec);
    CHECK(static_cast<int>(gt.rooms.size()) == rc);
  }
  PlanSpec bad;
  bad.room_count = 9;
  CHECK_THROWS_AS(generate(bad), Error);
}

TEST_CASE("every generated plan has one entry door and a connected room graph") {
  for (int s = 0; s < 100; ++s) {
    PlanSpec spec;
    spec.seed = 1000 + s;
    spec.room_count = 3 + s % 3;
    GroundTruth gt;
    try {
      gt = generate(spec).second;
    } catch (const Error& e) {
      // Rare layout draws legitimately fail; they must fail loudly, not warp.
      CHECK(e.category() == ErrorCategory::generation_failed);
      continue;
    }
    int entries = 0;
    UF uf(static_cast<int>(gt.rooms.size()) + 1);
    for (const auto& d : gt.doors) {
      if (d.entry) {
        ++entries;
        CHECK(d.rooms.size() == 1);
      }
      if (d.rooms.size() == 2) uf.unite(d.rooms[0], d.rooms[1]);
    }
    CHECK(entries == 1);
    for (const auto& r : gt.rooms) CHECK(uf.find(r.id) == uf.find(gt.rooms[0].id));

    // Labels: entry is present; all labels drawn from the 5-class set; the
    // 5-room plans carry every label.
    std::set<RoomLabel> seen;
    for (const auto& r : gt.rooms) seen.insert(r.label);
    CHECK(seen.count(RoomLabel::entry) == 1);
    if (gt.rooms.size() == 5) CHECK(seen.size() == 5);

    // Decor policy: mandatory classes present per room.
    for (const auto& r : gt.rooms) {
      std::multiset<DecorClass> classes;
      for (const auto& d : gt.decors)
        if (d.room_id == r.id) classes.insert(d.cls);
      for (const auto& rule : decor_policy(r.label))
        CHECK(static_cast<int>(classes.count(rule.cls)) >= rule.min_count);
      if (r.label == RoomLabel::bathroom)
        CHECK(classes.count(DecorClass::sink) + classes.count(DecorClass::twin_sink) >= 1);
    }
  }
}

TEST_CASE("ground truth json round trip") {
  PlanSpec spec;
  spec.seed = 3;
  const auto [plan, gt] = generate(spec);
  const auto tmp = std::filesystem::temp_directory_path() / "sugaman_gt_test.json";
  save_ground_truth(tmp.string(), gt);
  const GroundTruth back = load_ground_truth(tmp.string());
  CHECK(back.wall_mask == gt.wall_mask);
  REQUIRE(back.rooms.size() == gt.rooms.size());
  for (size_t i = 0; i < gt.rooms.size(); ++i) {
    CHECK(back.rooms[i].label == gt.rooms[i].label);
    CHECK(back.rooms[i].pixel_area == gt.rooms[i].pixel_area);
  }
  REQUIRE(back.doors.size() == gt.doors.size());
  for (size_t i = 0; i < gt.doors.size(); ++i) {
    CHECK(back.doors[i].bbox == gt.doors[i].bbox);
    CHECK(back.doors[i].rooms == gt.doors[i].rooms);
    CHECK(back.doors[i].entry == gt.doors[i].entry);
  }
  CHECK(back.decors.size() == gt.decors.size());
  std::filesystem::remove(tmp);
}

TEST_CASE("segmentation pipeline recovers the ground truth") {
  int rooms_total = 0, rooms_ok = 0;
  for (int s = 0; s < 10; ++s) {
    PlanSpec spec;
    spec.seed = 40 + 31 * s;
    spec.room_count = 3 + s % 3;
    const auto [plan, gt] = generate(spec);

    // Walls match the ground-truth mask (2 px dilation tolerance).
    WallImage walls = extract_walls(plan);
    StructuringElement se2{2, StructuringElement::Shape::square};
    const BinaryImage gt_grown = morph(gt.wall_mask, se2, MorphOp::dilate);
    const BinaryImage got_grown = morph(walls.mask, se2, MorphOp::dilate);
    bool walls_ok = true;
    for (int y = 0; y < plan.height && walls_ok; ++y)
      for (int x = 0; x < plan.width && walls_ok; ++x) {
        if (walls.mask.at(x, y) && !gt_grown.at(x, y)) walls_ok = false;
        if (gt.wall_mask.at(x, y) && !got_grown.at(x, y)) walls_ok = false;
      }
    CHECK(walls_ok);

    // Doors: every ground-truth door matched within 3 px.
    auto doors = detect_doors(plan, DoorTemplate{door_glyph()}, 0.8);
    int matched = 0;
    for (const auto& gd : gt.doors) {
      const Vec2 want = gd.bbox.center();
      for (const auto& d : doors)
        if ((d.centroid - want).lpNorm<Eigen::Infinity>() <= 3.0) {
          ++matched;
          break;
        }
    }
    CHECK(matched == static_cast<int>(gt.doors.size()));
    CHECK(doors.size() == gt.doors.size());

    // Rooms: count exact, area within 5%.
    auto rooms = extract_rooms(walls, doors);
    REQUIRE(rooms.size() == gt.rooms.size());
    for (size_t i = 0; i < rooms.size(); ++i) {
      const double rel = std::abs(static_cast<double>(rooms[i].pixel_area) -
                                  static_cast<double>(gt.rooms[i].pixel_area)) /
                         static_cast<double>(gt.rooms[i].pixel_area);
      CHECK(rel <= 0.05);
    }

    // Entry detection matches the ground truth.
    {
      std::vector<Vec2> cloud;
      for (const auto& r : rooms)
        for (const auto& v : r.polygon.vertices) cloud.push_back(v);
      const Polygon boundary = trace_boundary(cloud, 0.8);
      const EntryPoint entry = find_entry(rooms, doors, boundary);
      const GtDoor* gt_entry = nullptr;
      for (const auto& d : gt.doors)
        if (d.entry) gt_entry = &d;
      REQUIRE(gt_entry != nullptr);
      CHECK((doors[entry.door_id].centroid - gt_entry->bbox.center()).norm() <= 3.0);
      CHECK(entry.room_id == gt_entry->rooms[0]);
    }

    // Adjacency equals the ground-truth door incidence.
    Adjacency adj = build_adjacency(rooms, doors);
    Eigen::MatrixXi want = Eigen::MatrixXi::Zero(rooms.size(), rooms.size());
    for (const auto& gd : gt.doors)
      if (gd.rooms.size() == 2) {
        want(gd.rooms[0] - 1, gd.rooms[1] - 1) = 1;
        want(gd.rooms[1] - 1, gd.rooms[0] - 1) = 1;
      }
    CHECK(adj.am_d == want);

    // Decors: per-room class counts match the ground truth.
    const SignatureLibrary lib = builtin_library();
    auto crops = partition_rooms(plan, rooms);
    for (size_t i = 0; i < crops.size(); ++i) {
      BinaryImage wall_crop(crops[i].bbox.width(), crops[i].bbox.height());
      for (int y = 0; y < wall_crop.height; ++y)
        for (int x = 0; x < wall_crop.width; ++x)
          wall_crop.set(x, y, walls.mask.at(crops[i].bbox.x0 + x, crops[i].bbox.y0 + y));
      auto found = classify_decors(crops[i].image, wall_crop, lib);
      std::multiset<DecorClass> got, want_classes;
      for (const auto& d : found) got.insert(d.cls);
      for (const auto& d : gt.decors)
        if (d.room_id == static_cast<int>(i) + 1) want_classes.insert(d.cls);
      ++rooms_total;
      if (got == want_classes) ++rooms_ok;
    }
  }
  // Clean synthetic data: demand full agreement at unit-test scale.
  CHECK(rooms_ok == rooms_total);
}

TEST_CASE("corpus layout and split") {
  const auto dir = std::filesystem::temp_directory_path() / "sugaman_corpus_test";
  std::filesystem::remove_all(dir);
  const CorpusPaths paths = generate_corpus(6, 11, dir.string());

  int room_sum = 0;
  for (int i = 0; i < 6; ++i) {
    char name[16];
    std::snprintf(name, sizeof(name), "%04d", i);
    const std::string png = paths.plans_dir + "/" + name + ".png";
    const std::string jsn = paths.plans_dir + "/" + name + ".json";
    CHECK(std::filesystem::exists(png));
    CHECK(std::filesystem::exists(jsn));
    room_sum += static_cast<int>(load_ground_truth(jsn).rooms.size());
  }

  std::ifstream csv(paths.features_csv);
  int csv_rows = 0;
  std::string line;
  while (std::getline(csv, line))
    if (!line.empty()) ++csv_rows;
  CHECK(csv_rows == room_sum);

  std::ifstream split(paths.split_txt);
  int train = 0, test = 0;
  int idx;
  std::string tag;
  while (split >> idx >> tag) (tag == "train" ? train : test)++;
  CHECK(train + test == room_sum);
  CHECK(train == static_cast<int>(std::lround(0.7 * room_sum)));

  // Determinism across runs.
  const auto dir2 = std::filesystem::temp_directory_path() / "sugaman_corpus_test2";
  std::filesystem::remove_all(dir2);
  generate_corpus(6, 11, dir2.string());
  CHECK(slurp(paths.plans_dir + "/0003.png") == slurp(dir2.string() + "/plans/0003.png"));
  CHECK(slurp(paths.features_csv) == slurp(dir2.string() + "/features.csv"));

  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(dir2);
}
