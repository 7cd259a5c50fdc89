#pragma once

#include "sugaman/model.hpp"
#include "sugaman/raster.hpp"
#include "sugaman/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sugaman {

struct PlanSpec {
  std::uint64_t seed = 1;
  int room_count = 5;  // 3..5
  int canvas = 600;
  int wall_thickness = 4;
  int margin = 30;        // canvas border to outer wall
  int min_room_side = 150;
  long min_room_area = 42000;
};

struct GtRoom {
  int id = 0;
  RoomLabel label = RoomLabel::hall;
  Box cavity;  // inclusive interior rectangle
  Polygon polygon;
  long pixel_area = 0;
};

struct GtDoor {
  int id = 0;
  Box bbox;
  std::vector<int> rooms;  // ascending ids; one entry for the outer door
  bool entry = false;
};

struct GtDecor {
  DecorClass cls = DecorClass::bed;
  Box bbox;
  int room_id = 0;
};

struct GroundTruth {
  int width = 0, height = 0;
  BinaryImage wall_mask;  // walls with door gaps cut, no symbols
  std::vector<GtRoom> rooms;
  std::vector<GtDoor> doors;
  std::vector<GtDecor> decors;
};

/// Deterministic generation: equal spec gives byte-equal raster and truth.
std::pair<BinaryImage, GroundTruth> generate(const PlanSpec& spec);

/// Admissible decor classes for a room label in generated plans (mandatory
/// classes first). Shared so tests can assert the labeling policy.
struct DecorPolicyEntry {
  DecorClass cls;
  int min_count;
  int max_count;
};
const std::vector<DecorPolicyEntry>& decor_policy(RoomLabel label);

struct CorpusPaths {
  std::string dir;
  std::string plans_dir;    // dir + "/plans"
  std::string features_csv; // dir + "/features.csv"
  std::string split_txt;    // dir + "/split.txt"
};

CorpusPaths corpus_paths(const std::string& dir);

/// n plan pairs (PNG + JSON), a feature/label CSV over all rooms (LOFD on the
/// ground-truth decors) and a 70/30 split manifest.
CorpusPaths generate_corpus(int n, std::uint64_t seed, const std::string& out_dir);

void save_ground_truth(const std::string& path, const GroundTruth& gt);
GroundTruth load_ground_truth(const std::string& path);

/// Semantic model straight from the ground truth (labels, neighbors and
/// directions included), bypassing raster analysis.
SemanticModel ground_truth_model(const GroundTruth& gt);

}  // namespace sugaman
