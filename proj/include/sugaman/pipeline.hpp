#pragma once

#include "sugaman/decor.hpp"
#include "sugaman/lofd.hpp"
#include "sugaman/model.hpp"
#include "sugaman/navigation.hpp"
#include "sugaman/segmentation.hpp"

namespace sugaman {

struct PipelineConfig {
  SegmentationParams seg;
  DecorClassifyParams decor;
  Scalar boundary_shrink = 0.8;  // characteristic-hull shrink factor
  bool mean_distance = false;    // LOFD multi-instance reading
};

struct PipelineResult {
  WallImage walls;
  std::vector<DoorDetection> doors;
  std::vector<RoomShape> rooms;
  Adjacency adjacency;
  std::vector<RoomCrop> crops;
  std::vector<std::vector<DecorInstance>> decors;  // absolute coords, dirs set
  Matrix features;                                 // one LOFD row per room
  Polygon boundary;
  Vec2 plan_center = Vec2::Zero();
  SemanticModel model;
  TraversalPlan traversal;
};

/// Raster to semantic model to traversal plan, using the trained classifier
/// for room labels.
PipelineResult run_pipeline(const BinaryImage& plan, const RoomClassifier& classifier,
                            const SignatureLibrary& library, const PipelineConfig& config = {});

/// Everything up to (and excluding) room labeling; used when training data is
/// produced from rasters rather than ground truth.
PipelineResult run_front_end(const BinaryImage& plan, const SignatureLibrary& library,
                             const PipelineConfig& config = {});

}  // namespace sugaman
