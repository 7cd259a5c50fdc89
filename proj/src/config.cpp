#include "sugaman/config.hpp"

#include <fstream>
#include <sstream>

namespace sugaman {

namespace {

int to_int(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCategory::invalid_config, key + ": expected integer, got '" + value + "'");
  }
}

Scalar to_scalar(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const Scalar v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCategory::invalid_config, key + ": expected number, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw Error(ErrorCategory::invalid_config, key + ": expected 0/1, got '" + value + "'");
}

}  // namespace

void apply_config_entry(Config& c, const std::string& key, const std::string& value) {
  if (key == "binarize_threshold") c.binarize_threshold = to_int(key, value);
  else if (key == "se_radius") c.pipeline.seg.se_radius = to_int(key, value);
  else if (key == "wall_min_thickness") c.pipeline.seg.wall_min_thickness = to_int(key, value);
  else if (key == "door_score_min") c.pipeline.seg.door_score_min = to_scalar(key, value);
  else if (key == "min_room_area") c.pipeline.seg.min_room_area = to_int(key, value);
  else if (key == "door_seal_margin") c.pipeline.seg.door_seal_margin = to_int(key, value);
  else if (key == "simplify_epsilon") c.pipeline.seg.simplify_epsilon = to_scalar(key, value);
  else if (key == "sqft_divisor") c.pipeline.seg.sqft_divisor = to_scalar(key, value);
  else if (key == "min_blob_area") c.pipeline.decor.min_blob_area = to_int(key, value);
  else if (key == "merge_gap") c.pipeline.decor.merge_gap = to_int(key, value);
  else if (key == "boundary_shrink") c.pipeline.boundary_shrink = to_scalar(key, value);
  else if (key == "mean_distance") c.pipeline.mean_distance = to_bool(key, value);
  else if (key == "px_per_step") c.px_per_step = to_scalar(key, value);
  else if (key == "seed") c.seed = static_cast<std::uint64_t>(std::stoull(value));
  else if (key == "classifier_kind") {
    if (value != "svm_ovo" && value != "mlp")
      throw Error(ErrorCategory::invalid_config, "classifier_kind must be svm_ovo or mlp");
    c.classifier_kind = value;
  } else if (key == "epochs") c.epochs = to_int(key, value);
  else if (key == "learning_rate") c.learning_rate = to_scalar(key, value);
  else if (key == "signature_library") c.signature_library = value;
  else throw Error(ErrorCategory::invalid_config, "unknown config key '" + key + "'");
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::io_error, "cannot read config " + path);
  Config c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t\r");
    line = line.substr(a, b - a + 1);
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCategory::invalid_config,
                  path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      const size_t x = s.find_first_not_of(" \t");
      const size_t y = s.find_last_not_of(" \t");
      s = x == std::string::npos ? "" : s.substr(x, y - x + 1);
    };
    trim(key);
    trim(value);
    apply_config_entry(c, key, value);
  }
  return c;
}

std::string dump_config(const Config& c) {
  std::ostringstream out;
  out << "binarize_threshold=" << c.binarize_threshold << '\n'
      << "se_radius=" << c.pipeline.seg.se_radius << '\n'
      << "wall_min_thickness=" << c.pipeline.seg.wall_min_thickness << '\n'
      << "door_score_min=" << c.pipeline.seg.door_score_min << '\n'
      << "min_room_area=" << c.pipeline.seg.min_room_area << '\n'
      << "door_seal_margin=" << c.pipeline.seg.door_seal_margin << '\n'
      << "simplify_epsilon=" << c.pipeline.seg.simplify_epsilon << '\n'
      << "sqft_divisor=" << c.pipeline.seg.sqft_divisor << '\n'
      << "min_blob_area=" << c.pipeline.decor.min_blob_area << '\n'
      << "merge_gap=" << c.pipeline.decor.merge_gap << '\n'
      << "boundary_shrink=" << c.pipeline.boundary_shrink << '\n'
      << "mean_distance=" << (c.pipeline.mean_distance ? 1 : 0) << '\n'
      << "px_per_step=" << c.px_per_step << '\n'
      << "seed=" << c.seed << '\n'
      << "classifier_kind=" << c.classifier_kind << '\n'
      << "epochs=" << c.epochs << '\n'
      << "learning_rate=" << c.learning_rate << '\n'
      << "signature_library=" << c.signature_library << '\n';
  return out.str();
}

}  // namespace sugaman
