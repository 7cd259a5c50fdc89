#include "sugaman/types.hpp"

namespace sugaman {

const char* to_string(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::invalid_input: return "invalid-input";
    case ErrorCategory::invalid_config: return "invalid-config";
    case ErrorCategory::segmentation_failed: return "segmentation-failed";
    case ErrorCategory::ambiguous_door: return "ambiguous-door";
    case ErrorCategory::orphan_door: return "orphan-door";
    case ErrorCategory::no_entry: return "no-entry";
    case ErrorCategory::disconnected_plan: return "disconnected-plan";
    case ErrorCategory::unroutable_room: return "unroutable-room";
    case ErrorCategory::serialization_refused: return "serialization-refused";
    case ErrorCategory::parse_error: return "parse-error";
    case ErrorCategory::incomplete_library: return "incomplete-library";
    case ErrorCategory::training_error: return "training-error";
    case ErrorCategory::degenerate_input: return "degenerate-input";
    case ErrorCategory::degenerate_polygon: return "degenerate-polygon";
    case ErrorCategory::undefined_direction: return "undefined-direction";
    case ErrorCategory::render_error: return "render-error";
    case ErrorCategory::generation_failed: return "generation-failed";
    case ErrorCategory::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace sugaman
