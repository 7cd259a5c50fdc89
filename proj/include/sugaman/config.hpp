#pragma once

#include "sugaman/pipeline.hpp"

#include <string>

namespace sugaman {

/// Flat key=value configuration; every tunable default lives here so a run
/// is auditable from one file. Unknown keys are rejected.
struct Config {
  int binarize_threshold = 128;
  PipelineConfig pipeline;
  Scalar px_per_step = 10.0;
  std::uint64_t seed = 1;
  std::string classifier_kind = "svm_ovo";  // or "mlp"
  int epochs = 0;                            // 0 = per-kind default
  Scalar learning_rate = 0;
  std::string signature_library;             // empty = built-in canonical stamps
};

Config load_config(const std::string& path);

/// Apply one `key=value` pair; throws invalid-config on unknown keys or bad
/// values.
void apply_config_entry(Config& config, const std::string& key, const std::string& value);

std::string dump_config(const Config& config);

}  // namespace sugaman
