#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sugaman {

using Scalar = double;
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
using Pixel = Eigen::Vector2i;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Row-major pixel planes so coefficient order matches raster scan order.
using MaskArray = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using GrayArray = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using LabelArray = Eigen::Array<int, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class ErrorCategory {
  invalid_input,
  invalid_config,
  segmentation_failed,
  ambiguous_door,
  orphan_door,
  no_entry,
  disconnected_plan,
  unroutable_room,
  serialization_refused,
  parse_error,
  incomplete_library,
  training_error,
  degenerate_input,
  degenerate_polygon,
  undefined_direction,
  render_error,
  generation_failed,
  io_error,
};

const char* to_string(ErrorCategory c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(std::string(to_string(category)) + ": " + message),
        category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace sugaman
