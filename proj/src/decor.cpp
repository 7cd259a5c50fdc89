#include "sugaman/decor.hpp"

#include "sugaman/glyphs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sugaman {

Scalar Signature::distance(const Signature& o) const {
  const Scalar d1 = r1 - o.r1, d2 = r2 - o.r2, d3 = r3 - o.r3;
  return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
}

Signature compute_signature(const BinaryImage& symbol) {
  if (symbol.empty() || symbol.foreground_count() == 0)
    throw Error(ErrorCategory::invalid_input, "compute_signature: empty symbol");
  // Pad past the SE radius so closing cannot interact with the crop border.
  BinaryImage padded(symbol.width + 4, symbol.height + 4);
  for (int y = 0; y < symbol.height; ++y)
    for (int x = 0; x < symbol.width; ++x)
      if (symbol.at(x, y)) padded.set(x + 2, y + 2, true);
  const BinaryImage healed =
      morph(padded, StructuringElement{1, StructuringElement::Shape::square}, MorphOp::close);
  const LabelImage labels = connected_components(healed, 8);
  std::vector<long> areas(labels.count, 0);
  for (int y = 0; y < labels.height; ++y)
    for (int x = 0; x < labels.width; ++x)
      if (labels.labels(y, x) > 0) ++areas[labels.labels(y, x) - 1];
  std::sort(areas.begin(), areas.end(), std::greater<>());
  areas.resize(3, 0);
  Signature s;
  s.r1 = 1.0;
  s.r2 = static_cast<Scalar>(areas[1]) / areas[0];
  s.r3 = static_cast<Scalar>(areas[2]) / areas[0];
  return s;
}

SignatureLibrary build_library(const std::vector<std::pair<DecorClass, BinaryImage>>& samples) {
  std::array<Signature, kDecorClassCount> sum{};
  std::array<int, kDecorClassCount> count{};
  for (const auto& [cls, img] : samples) {
    const Signature s = compute_signature(img);
    const int i = static_cast<int>(cls) - 1;
    sum[i].r1 += s.r1;
    sum[i].r2 += s.r2;
    sum[i].r3 += s.r3;
    ++count[i];
  }
  std::string missing;
  for (int i = 0; i < kDecorClassCount; ++i) {
    if (count[i] == 0) {
      if (!missing.empty()) missing += ", ";
      missing += decor_class_token(static_cast<DecorClass>(i + 1));
    }
  }
  if (!missing.empty())
    throw Error(ErrorCategory::incomplete_library, "no samples for: " + missing);

  SignatureLibrary lib;
  for (int i = 0; i < kDecorClassCount; ++i) {
    lib.entries[i].r1 = sum[i].r1 / count[i];
    lib.entries[i].r2 = sum[i].r2 / count[i];
    lib.entries[i].r3 = sum[i].r3 / count[i];
  }
  return lib;
}

SignatureLibrary builtin_library() {
  std::vector<std::pair<DecorClass, BinaryImage>> samples;
  for (int c = 1; c <= kDecorClassCount; ++c) {
    const auto cls = static_cast<DecorClass>(c);
    const BinaryImage base = decor_glyph(cls);
    for (int q = 0; q < 4; ++q) {
      samples.emplace_back(cls, rotate90(base, q));
      samples.emplace_back(cls, mirror_horizontal(rotate90(base, q)));
    }
    samples.emplace_back(cls, upscale(base, 2));
    samples.emplace_back(cls, upscale(rotate90(base, 1), 2));
  }
  return build_library(samples);
}

std::vector<DecorInstance> classify_decors(const BinaryImage& room_crop,
                                           const BinaryImage& wall_mask,
                                           const SignatureLibrary& library,
                                           const DecorClassifyParams& params) {
  BinaryImage ink(room_crop.width, room_crop.height);
  for (int y = 0; y < room_crop.height; ++y)
    for (int x = 0; x < room_crop.width; ++x)
      ink.set(x, y, room_crop.at(x, y) && !wall_mask.at(x, y));

  std::vector<DecorInstance> out;
  for (const Box& box : detect_blobs(ink, params.min_blob_area, params.merge_gap)) {
    BinaryImage symbol(box.width(), box.height());
    for (int y = 0; y < symbol.height; ++y)
      for (int x = 0; x < symbol.width; ++x) symbol.set(x, y, ink.at(box.x0 + x, box.y0 + y));
    const Signature sig = compute_signature(symbol);

    DecorClass best = DecorClass::bed;
    Scalar best_dist = std::numeric_limits<Scalar>::max();
    for (int c = 1; c <= kDecorClassCount; ++c) {
      const Scalar d = sig.distance(library.entries[c - 1]);
      if (d < best_dist - 1e-12) {  // ties keep the lowest class code
        best_dist = d;
        best = static_cast<DecorClass>(c);
      }
    }
    DecorInstance inst;
    inst.cls = best;
    inst.bbox = box;
    inst.center = box.center();
    out.push_back(inst);
  }
  return out;
}

void save_library(const std::string& path, const SignatureLibrary& library) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::io_error, "cannot write " + path);
  char buf[128];
  for (int i = 0; i < kDecorClassCount; ++i) {
    const Signature& s = library.entries[i];
    std::snprintf(buf, sizeof(buf), "%d %.6f %.6f %.6f\n", i + 1, s.r1, s.r2, s.r3);
    out << buf;
  }
}

SignatureLibrary load_library(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::io_error, "cannot read " + path);
  SignatureLibrary lib;
  std::array<bool, kDecorClassCount> seen{};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int code;
    Signature s;
    if (!(ls >> code >> s.r1 >> s.r2 >> s.r3))
      throw Error(ErrorCategory::parse_error, "bad signature line: " + line);
    if (code < 1 || code > kDecorClassCount)
      throw Error(ErrorCategory::parse_error, "signature class code out of range");
    lib.entries[code - 1] = s;
    seen[code - 1] = true;
  }
  for (int i = 0; i < kDecorClassCount; ++i)
    if (!seen[i])
      throw Error(ErrorCategory::incomplete_library,
                  std::string("missing signature for ") +
                      decor_class_token(static_cast<DecorClass>(i + 1)));
  return lib;
}

}  // namespace sugaman
