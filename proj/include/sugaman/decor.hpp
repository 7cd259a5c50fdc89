#pragma once

#include "sugaman/model.hpp"
#include "sugaman/raster.hpp"

#include <array>
#include <string>
#include <vector>

namespace sugaman {

/// Normalized areas of the three largest connected parts of a symbol,
/// descending; missing parts pad with zero.
struct Signature {
  Scalar r1 = 0, r2 = 0, r3 = 0;

  Scalar distance(const Signature& o) const;
};

struct SignatureLibrary {
  std::array<Signature, kDecorClassCount> entries;  // indexed by class code - 1

  const Signature& of(DecorClass c) const { return entries[static_cast<int>(c) - 1]; }
};

/// Close with a square SE of radius 1 to heal broken lines, then rank the
/// component areas. Throws invalid-input on an empty symbol.
Signature compute_signature(const BinaryImage& symbol);

/// Per-class arithmetic mean of the sample signatures; every class must be
/// covered.
SignatureLibrary build_library(const std::vector<std::pair<DecorClass, BinaryImage>>& samples);

/// Library built from the canonical glyph stamps at 10 orientation/scale
/// variants per class.
SignatureLibrary builtin_library();

struct DecorClassifyParams {
  long min_blob_area = 30;
  int merge_gap = 3;
};

/// Subtract walls, find blobs, classify each by nearest library signature
/// (ties break toward the lowest class code). Boxes are in crop coordinates;
/// directions are left at their default for the caller to fill in.
std::vector<DecorInstance> classify_decors(const BinaryImage& room_crop,
                                           const BinaryImage& wall_mask,
                                           const SignatureLibrary& library,
                                           const DecorClassifyParams& params = {});

/// Plain-text table `class_code r1 r2 r3`, 12 lines, 6-decimal fixed format.
void save_library(const std::string& path, const SignatureLibrary& library);
SignatureLibrary load_library(const std::string& path);

}  // namespace sugaman
