#pragma once

#include "sugaman/model.hpp"
#include "sugaman/raster.hpp"

namespace sugaman {

/// Canonical upright stamp for a decor class. Stamps are stroke drawings
/// (ink at most 3 px thick) whose connected parts sit 3 px apart, so blob
/// merging at merge_gap >= 3 keeps a symbol whole while wall extraction can
/// reject it by ink thickness.
BinaryImage decor_glyph(DecorClass cls);

/// Door symbol: hinge leaf plus a quarter-circle swing arc.
BinaryImage door_glyph();

BinaryImage rotate90(const BinaryImage& img, int quarter_turns);
BinaryImage mirror_horizontal(const BinaryImage& img);

/// Nearest-neighbor integer upscale.
BinaryImage upscale(const BinaryImage& img, int factor);

/// Stamp src into dst with its top-left at (x, y); foreground only.
void stamp(BinaryImage& dst, const BinaryImage& src, int x, int y);

}  // namespace sugaman
