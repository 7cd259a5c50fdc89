// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include "sugaman/config.hpp"
#include "sugaman/decor.hpp"
#include "sugaman/glyphs.hpp"
#include "sugaman/grammar.hpp"
#include "sugaman/lofd.hpp"
#include "sugaman/metrics.hpp"
#include "sugaman/pipeline.hpp"
#include "sugaman/synth.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace sugaman;

namespace {

constexpr double kTol = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

bool near(double a, double b, double tol = kTol) { return std::abs(a - b) <= tol; }

// Deterministic seed reroll for the occasional infeasible layout draw.
bool generate_with_reroll(PlanSpec spec, BinaryImage& plan, GroundTruth& gt) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    try {
      std::tie(plan, gt) = generate(spec);
      return true;
    } catch (const Error& e) {
      if (e.category() != ErrorCategory::generation_failed) return false;
      spec.seed += 0x9e3779b9ULL;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// 1. Metrics oracle suite
// ---------------------------------------------------------------------------

Outcome metrics_oracle() {
  Outcome o;
  const TokenSequence cat_sat{"the", "cat", "sat"};
  const TokenSequence cat_ate{"the", "cat", "ate"};

  o.require(near(rouge_n(cat_sat, {cat_ate}, 1).recall, 2.0 / 3), "ROUGE-1 recall != 2/3");
  o.require(near(rouge_n(cat_sat, {cat_ate}, 2).recall, 0.5), "ROUGE-2 recall != 1/2");

  o.require(near(bleu({"a", "a", "a"}, {{"a", "a"}}, 1, {1.0}), 2.0 / 3), "BLEU clip != 2/3");
  o.require(near(bleu({"a"}, {{"a", "b"}}, 1, {1.0}), std::exp(-1.0)), "BLEU BP != e^-1");

  o.require(near(meteor({"a", "b", "c"}, {"a", "b", "c"}).score, 5.0 / 6), "METEOR != 5/6");
  o.require(near(meteor({"a", "x", "b"}, {"a", "b"}).score, 10.0 / 21), "METEOR != 10/21");

  const TokenSequence self = tokenize("This floor plan has 5 rooms.");
  const RougeScore rs = rouge_n(self, {self}, 1);
  o.require(rs.recall == 1.0 && rs.precision == 1.0 && rs.f1 == 1.0,
            "identical ROUGE not exactly 1");
  o.require(bleu(self, {self}, 4, {0.25, 0.25, 0.25, 0.25}) == 1.0,
            "identical BLEU not exactly 1");
  return o;
}

// ---------------------------------------------------------------------------
// 2. Geometry oracle
// ---------------------------------------------------------------------------

Vec2 raster_centroid(const Polygon& p) {
  double minx = 1e18, maxx = -1e18, miny = 1e18, maxy = -1e18;
  for (const auto& v : p.vertices) {
    minx = std::min(minx, v.x());
    maxx = std::max(maxx, v.x());
    miny = std::min(miny, v.y());
    maxy = std::max(maxy, v.y());
  }
  double sx = 0, sy = 0;
  long n = 0;
  for (double y = miny; y <= maxy; y += 0.25)
    for (double x = minx; x <= maxx; x += 0.25)
      if (p.contains(Vec2(x, y))) {
        sx += x;
        sy += y;
        ++n;
      }
  return n ? Vec2(sx / n, sy / n) : Vec2(0, 0);
}

Outcome geometry_oracle() {
  Outcome o;
  Polygon square;
  square.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const auto sq = polygon_centroid(square);
  o.require(near(sq.signed_area, 1.0, 1e-12) && near(sq.center.x(), 0.5, 1e-12) &&
                near(sq.center.y(), 0.5, 1e-12),
            "unit square centroid not exact");

  Polygon tri;
  tri.vertices = {{0, 0}, {2, 0}, {0, 2}};
  const auto tr = polygon_centroid(tri);
  o.require(near(tr.signed_area, 2.0, 1e-12) && near(tr.center.x(), 2.0 / 3, 1e-12) &&
                near(tr.center.y(), 2.0 / 3, 1e-12),
            "triangle centroid not exact");

  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> radius(10.0, 40.0);
  int failures = 0;
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 6);  // <= 8 vertices
    Polygon p;
    for (int i = 0; i < n; ++i) {
      const double a = 2 * M_PI * i / n;
      const double r = radius(rng);
      p.vertices.emplace_back(50 + r * std::cos(a), 50 + r * std::sin(a));
    }
    const Vec2 got = polygon_centroid(p).center;
    if ((got - raster_centroid(p)).norm() >= 0.5) ++failures;
  }
  o.require(failures == 0, std::to_string(failures) + "/50 polygons off by >= 0.5 px");
  return o;
}

// ---------------------------------------------------------------------------
// 3. LOFD oracle
// ---------------------------------------------------------------------------

Outcome lofd_oracle() {
  Outcome o;
  std::mt19937_64 rng(7);
  // Pixel-grid coordinates (bbox centers land on integers or halves), exactly
  // as the pipeline produces them; sums are then exact in doubles and the
  // invariances hold bit-for-bit.
  auto coord = [&rng] { return static_cast<Scalar>(rng() % 800) / 2.0; };
  auto decor_at = [](DecorClass cls, double x, double y) {
    DecorInstance d;
    d.cls = cls;
    d.bbox = Box{static_cast<int>(x) - 2, static_cast<int>(y) - 2, static_cast<int>(x) + 2,
                 static_cast<int>(y) + 2};
    d.center = Vec2(x, y);
    return d;
  };

  int mismatches = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const Vec2 center(coord(), coord());
    std::vector<DecorInstance> decors;
    const int n = static_cast<int>(rng() % 9);
    for (int i = 0; i < n; ++i)
      decors.push_back(decor_at(static_cast<DecorClass>(1 + rng() % 12), coord(), coord()));

    // Direct double loop, written independently of compute_lofd.
    Eigen::Matrix<Scalar, 24, 1> want = Eigen::Matrix<Scalar, 24, 1>::Zero();
    Scalar max_d = 0;
    for (const auto& d : decors)
      max_d = std::max(max_d, std::abs(center.x() - d.center.x()) +
                                  std::abs(center.y() - d.center.y()));
    for (int c = 1; c <= 12; ++c) {
      Scalar sum = 0;
      int count = 0;
      for (const auto& d : decors) {
        if (static_cast<int>(d.cls) != c) continue;
        ++count;
        sum += std::abs(center.x() - d.center.x()) + std::abs(center.y() - d.center.y());
      }
      want(c - 1) = count;
      if (count && max_d > 0) want(11 + c) = sum / max_d;
    }
    const auto got = compute_lofd(center, decors);
    if ((got.values - want).cwiseAbs().maxCoeff() != 0.0) ++mismatches;

    // Permutation invariance (exact).
    std::vector<DecorInstance> shuffled = decors;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    if ((compute_lofd(center, shuffled).values - got.values).cwiseAbs().maxCoeff() != 0.0)
      ++mismatches;

    // Distance-scaling invariance of the normalized half.
    std::vector<DecorInstance> scaled = decors;
    for (auto& d : scaled) d.center = center + 2.5 * (d.center - center);
    const auto s = compute_lofd(center, scaled);
    if ((s.values.tail(12) - got.values.tail(12)).cwiseAbs().maxCoeff() > 1e-12) ++mismatches;
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " oracle mismatches");
  return o;
}

// ---------------------------------------------------------------------------
// 4. Classifier accuracy + MLP gradient
// ---------------------------------------------------------------------------

double test_accuracy(const Matrix& features, const std::vector<int>& labels,
                     const std::vector<int>& train_rows, const std::vector<int>& test_rows,
                     ClassifierKind kind) {
  Matrix train_x(static_cast<Eigen::Index>(train_rows.size()), features.cols());
  std::vector<int> train_y;
  for (size_t i = 0; i < train_rows.size(); ++i) {
    train_x.row(static_cast<Eigen::Index>(i)) = features.row(train_rows[i]);
    train_y.push_back(labels[train_rows[i]]);
  }
  TrainConfig cfg;
  cfg.kind = kind;
  cfg.seed = 9;
  const RoomClassifier model = train(train_x, train_y, cfg);

  Matrix test_x(static_cast<Eigen::Index>(test_rows.size()), features.cols());
  std::vector<int> test_y;
  for (size_t i = 0; i < test_rows.size(); ++i) {
    test_x.row(static_cast<Eigen::Index>(i)) = features.row(test_rows[i]);
    test_y.push_back(labels[test_rows[i]]);
  }
  const auto pred = predict(model, test_x);
  int ok = 0;
  for (size_t i = 0; i < test_y.size(); ++i) ok += pred[i] == test_y[i];
  return static_cast<double>(ok) / static_cast<double>(test_y.size());
}

Outcome classifier_accuracy(const fs::path& scratch) {
  Outcome o;
  const CorpusPaths paths = generate_corpus(210, 42, (scratch / "clf_corpus").string());
  auto [features, labels] = load_feature_csv(paths.features_csv);
  const int rows = static_cast<int>(labels.size());
  o.require(rows >= 800, "corpus has only " + std::to_string(rows) + " rooms");

  std::vector<int> train_rows, test_rows;
  {
    std::ifstream in(paths.split_txt);
    int idx;
    std::string tag;
    while (in >> idx >> tag) (tag == "train" ? train_rows : test_rows).push_back(idx);
  }

  const double svm = test_accuracy(features, labels, train_rows, test_rows,
                                   ClassifierKind::linear_svm_ovo);
  const double mlp = test_accuracy(features, labels, train_rows, test_rows, ClassifierKind::mlp);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "svm %.4f, mlp %.4f on %d test rows", svm, mlp,
                static_cast<int>(test_rows.size()));
  o.detail = buf;
  o.require(svm >= 0.90, "svm test accuracy below 0.90");
  o.require(mlp >= 0.90, "mlp test accuracy below 0.90");

  // Gradient against central finite differences on 5 samples.
  std::mt19937_64 rng(5);
  Matrix sample(5, kLofdDim);
  std::vector<int> sample_y;
  for (int i = 0; i < 5; ++i) {
    const int row = static_cast<int>(rng() % rows);
    sample.row(i) = features.row(row);
    sample_y.push_back(labels[row]);
  }
  const Matrix scaled = scale_features(sample);
  std::uniform_real_distribution<Scalar> dist(-0.5, 0.5);
  MlpParams p;
  p.w1 = Matrix::Zero(10, kLofdDim);
  p.b1 = Vector::Zero(10);
  p.w2 = Matrix::Zero(5, 10);
  p.b2 = Vector::Zero(5);
  for (Eigen::Index i = 0; i < p.w1.size(); ++i) p.w1.data()[i] = dist(rng);
  for (Eigen::Index i = 0; i < p.w2.size(); ++i) p.w2.data()[i] = dist(rng);
  const MlpParams g = mlp_gradient(p, scaled, sample_y);
  const Scalar eps = 1e-4;
  Scalar max_diff = 0;
  auto probe = [&](auto& param, const auto& grad) {
    for (Eigen::Index i = 0; i < param.size(); ++i) {
      const Scalar save = param.data()[i];
      param.data()[i] = save + eps;
      const Scalar up = mlp_loss(p, scaled, sample_y);
      param.data()[i] = save - eps;
      const Scalar down = mlp_loss(p, scaled, sample_y);
      param.data()[i] = save;
      max_diff = std::max(max_diff, std::abs((up - down) / (2 * eps) - grad.data()[i]));
    }
  };
  probe(p.w1, g.w1);
  probe(p.b1, g.b1);
  probe(p.w2, g.w2);
  probe(p.b2, g.b2);
  o.require(max_diff <= 1e-5, "MLP gradient max diff " + std::to_string(max_diff));
  return o;
}

// ---------------------------------------------------------------------------
// 5. Navigation
// ---------------------------------------------------------------------------

struct PathOracle {
  const VisibilityGraph& g;
  int target;
  std::vector<int> best;
  Scalar best_len = std::numeric_limits<Scalar>::max();

  void dfs(std::vector<int>& path, std::vector<char>& used, Scalar len) {
    const int u = path.back();
    if (u == target) {
      if (len < best_len - 1e-9 ||
          (std::abs(len - best_len) <= 1e-9 && (best.empty() || path < best))) {
        best = path;
        best_len = len;
      }
      return;
    }
    for (int v = 0; v < static_cast<int>(g.vertices.size()); ++v) {
      if (used[v] || g.am_n(u, v) <= 0) continue;
      used[v] = 1;
      path.push_back(v);
      dfs(path, used, len + g.am_n(u, v));
      path.pop_back();
      used[v] = 0;
    }
  }
};

Outcome navigation_checks() {
  Outcome o;
  const SignatureLibrary lib = builtin_library();
  long segments = 0, seg_fail = 0;
  int oracle_rooms = 0, oracle_fail = 0, plans_ok = 0, plans = 0;

  for (int s = 0; s < 50; ++s) {
    PlanSpec spec;
    spec.seed = 7000 + 13 * s;
    spec.room_count = 3 + s % 3;
    BinaryImage plan;
    GroundTruth gt;
    if (!generate_with_reroll(spec, plan, gt)) continue;
    ++plans;
    const PipelineResult fr = run_front_end(plan, lib);

    NavigationInput in;
    in.rooms = fr.rooms;
    in.doors = fr.doors;
    in.adjacency = fr.adjacency;
    in.crops = fr.crops;
    in.decors = fr.decors;
    in.boundary = fr.boundary;
    const TraversalPlan tp = navigate(in);

    // Collision test on every leg of every route.
    std::set<int> visited;
    for (const auto& e : tp.entries) {
      visited.insert(e.room_id);
      const RoomCrop* crop = nullptr;
      for (const auto& c : fr.crops)
        if (c.room_id == e.room_id) crop = &c;
      const Vec2 origin(crop->bbox.x0, crop->bbox.y0);
      for (size_t i = 0; i + 1 < e.waypoints.size(); ++i) {
        ++segments;
        if (!segment_clear(crop->image, e.waypoints[i] - origin, e.waypoints[i + 1] - origin))
          ++seg_fail;
      }
    }
    if (visited.size() == fr.rooms.size()) ++plans_ok;

    // Exhaustive simple-path oracle on rooms with small vertex lists.
    const DoorStructure ds = build_door_structure(fr.rooms, fr.doors);
    for (size_t i = 0; i < fr.rooms.size(); ++i) {
      const auto& door_ids = ds.of(fr.rooms[i].id);
      std::vector<Vec2> locals;
      const Vec2 origin(fr.crops[i].bbox.x0, fr.crops[i].bbox.y0);
      for (int did : door_ids)
        for (const auto& d : fr.doors)
          if (d.id == did) locals.push_back(d.centroid - origin);
      std::vector<DecorInstance> local_decors;
      for (const auto& d : fr.decors[i]) {
        DecorInstance l = d;
        l.bbox = Box{d.bbox.x0 - fr.crops[i].bbox.x0, d.bbox.y0 - fr.crops[i].bbox.y0,
                     d.bbox.x1 - fr.crops[i].bbox.x0, d.bbox.y1 - fr.crops[i].bbox.y0};
        l.center = d.center - origin;
        local_decors.push_back(l);
      }
      const VisibilityGraph g = build_visibility_graph(fr.crops[i].image, local_decors, locals);
      if (g.vertices.size() > 8) continue;
      ++oracle_rooms;
      for (size_t a = 0; a < door_ids.size(); ++a)
        for (size_t b = a + 1; b < door_ids.size(); ++b) {
          std::vector<int> mine;
          try {
            mine = route_vertices(g, static_cast<int>(a), static_cast<int>(b));
          } catch (const Error&) {
            mine.clear();
          }
          PathOracle oracle{g, static_cast<int>(b), {}, std::numeric_limits<Scalar>::max()};
          std::vector<int> path{static_cast<int>(a)};
          std::vector<char> used(g.vertices.size(), 0);
          used[a] = 1;
          oracle.dfs(path, used, 0);
          if (mine != oracle.best) ++oracle_fail;
        }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%ld segments, %d/%d plans visit all rooms, %d oracle rooms",
                segments, plans_ok, plans, oracle_rooms);
  o.detail = buf;
  o.require(seg_fail == 0, std::to_string(seg_fail) + " colliding segments");
  o.require(plans_ok == plans, "some plans missed rooms");
  o.require(oracle_fail == 0, std::to_string(oracle_fail) + " oracle mismatches");
  o.require(oracle_rooms > 0, "no rooms small enough for the path oracle");
  return o;
}

// ---------------------------------------------------------------------------
// 6. Segmentation
// ---------------------------------------------------------------------------

Outcome segmentation_checks() {
  Outcome o;
  const SignatureLibrary lib = builtin_library();
  int plans = 0, plans_ok = 0;
  int doors_total = 0, doors_matched = 0;
  int rooms_total = 0, rooms_decor_ok = 0;
  double worst_centroid = 0;

  for (int s = 0; s < 100; ++s) {
    PlanSpec spec;
    spec.seed = 90000 + 101 * s;
    spec.room_count = 3 + s % 3;
    BinaryImage plan;
    GroundTruth gt;
    if (!generate_with_reroll(spec, plan, gt)) continue;
    ++plans;

    const WallImage walls = extract_walls(plan);
    const auto doors = detect_doors(plan, DoorTemplate{door_glyph()}, 0.8);

    for (const auto& gd : gt.doors) {
      ++doors_total;
      const Vec2 want = gd.bbox.center();
      double best = 1e18;
      for (const auto& d : doors) best = std::min(best, (d.centroid - want).norm());
      if (best <= 3.0) {
        ++doors_matched;
        worst_centroid = std::max(worst_centroid, best);
      }
    }

    bool ok = true;
    try {
      const auto rooms = extract_rooms(walls, doors);
      if (rooms.size() != gt.rooms.size()) ok = false;
      for (size_t i = 0; ok && i < rooms.size(); ++i) {
        const double rel = std::abs(static_cast<double>(rooms[i].pixel_area) -
                                    static_cast<double>(gt.rooms[i].pixel_area)) /
                           static_cast<double>(gt.rooms[i].pixel_area);
        if (rel > 0.05) ok = false;
      }
      if (ok) {
        // Per-room decor class counts against the ground truth.
        const auto crops = partition_rooms(plan, rooms);
        for (size_t i = 0; i < crops.size(); ++i) {
          BinaryImage wall_crop(crops[i].bbox.width(), crops[i].bbox.height());
          for (int y = 0; y < wall_crop.height; ++y)
            for (int x = 0; x < wall_crop.width; ++x)
              wall_crop.set(x, y, walls.mask.at(crops[i].bbox.x0 + x, crops[i].bbox.y0 + y));
          std::multiset<int> got, want;
          for (const auto& d : classify_decors(crops[i].image, wall_crop, lib))
            got.insert(static_cast<int>(d.cls));
          for (const auto& d : gt.decors)
            if (d.room_id == static_cast<int>(i) + 1) want.insert(static_cast<int>(d.cls));
          ++rooms_total;
          if (got == want) ++rooms_decor_ok;
        }
      }
    } catch (const Error&) {
      ok = false;
    }
    if (ok) ++plans_ok;
  }
  const double recall =
      doors_total ? static_cast<double>(doors_matched) / doors_total : 0.0;
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "%d/%d plans ok, door recall %.4f, worst centroid %.2f px, decors %d/%d rooms",
                plans_ok, plans, recall, worst_centroid, rooms_decor_ok, rooms_total);
  o.detail = buf;
  o.require(plans >= 100, "fewer than 100 plans generated");
  o.require(plans_ok >= 95, "plan success below 95/100");
  o.require(recall >= 0.95, "door recall below 0.95");
  o.require(rooms_decor_ok >= static_cast<int>(0.95 * rooms_total),
            "decor recovery below 95% of rooms");
  return o;
}

// ---------------------------------------------------------------------------
// 7. Grammar conformance
// ---------------------------------------------------------------------------

Outcome grammar_conformance() {
  Outcome o;
  const SignatureLibrary lib = builtin_library();
  int bad_sentences = 0, count_law_fail = 0, determinism_fail = 0, plans = 0;

  for (int s = 0; s < 50; ++s) {
    PlanSpec spec;
    spec.seed = 300000 + 41 * s;
    spec.room_count = 3 + s % 3;
    BinaryImage plan;
    GroundTruth gt;
    if (!generate_with_reroll(spec, plan, gt)) continue;
    ++plans;
    const SemanticModel model = ground_truth_model(gt);

    const PipelineResult fr = run_front_end(plan, lib);
    NavigationInput in;
    in.rooms = fr.rooms;
    in.doors = fr.doors;
    in.adjacency = fr.adjacency;
    in.crops = fr.crops;
    in.decors = fr.decors;
    in.boundary = fr.boundary;
    const TraversalPlan tp = navigate(in);

    Description d;
    d.gd = synthesize_gd(model);
    d.nv = synthesize_nv(tp);
    for (const auto& sentence : d.gd)
      if (match_rule(sentence) == 0) ++bad_sentences;
    for (const auto& sentence : d.nv)
      if (match_rule(sentence) == 0) ++bad_sentences;

    int decorless = 0;
    for (const auto& room : model.rooms)
      if (room.decors.empty()) ++decorless;
    if (static_cast<int>(d.gd.size()) !=
        1 + 5 * static_cast<int>(model.rooms.size()) - decorless)
      ++count_law_fail;

    // Rebuild everything from scratch; the rendered bytes must match.
    const PipelineResult fr2 = run_front_end(plan, lib);
    NavigationInput in2;
    in2.rooms = fr2.rooms;
    in2.doors = fr2.doors;
    in2.adjacency = fr2.adjacency;
    in2.crops = fr2.crops;
    in2.decors = fr2.decors;
    in2.boundary = fr2.boundary;
    Description d2;
    d2.gd = synthesize_gd(ground_truth_model(gt));
    d2.nv = synthesize_nv(navigate(in2));
    if (render(d) != render(d2)) ++determinism_fail;
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%d plans checked", plans);
  o.detail = buf;
  o.require(bad_sentences == 0, std::to_string(bad_sentences) + " nonconforming sentences");
  o.require(count_law_fail == 0, "GD sentence count law violated");
  o.require(determinism_fail == 0, "render not byte-deterministic");
  return o;
}

// ---------------------------------------------------------------------------
// 8. XML round trip
// ---------------------------------------------------------------------------

SemanticModel random_model(std::mt19937& rng) {
  SemanticModel m;
  const int n = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < n; ++i) {
    Room r;
    r.id = i + 1;
    r.label = static_cast<RoomLabel>(1 + rng() % 5);
    const double x0 = static_cast<double>(rng() % 300);
    const double y0 = static_cast<double>(rng() % 300);
    const double x1 = x0 + 20 + rng() % 100;
    const double y1 = y0 + 20 + rng() % 100;
    r.polygon.vertices = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    r.area_sqft = (1 + rng() % 50000) / 100.0;
    r.global_dir = static_cast<Direction8>(rng() % 8);
    const int decors = static_cast<int>(rng() % 4);
    for (int k = 0; k < decors; ++k) {
      DecorInstance d;
      d.cls = static_cast<DecorClass>(1 + rng() % 12);
      const int bx = static_cast<int>(x0) + 1 + static_cast<int>(rng() % 12);
      const int by = static_cast<int>(y0) + 1 + static_cast<int>(rng() % 12);
      d.bbox = Box{bx, by, bx + 5 + static_cast<int>(rng() % 9), by + 5};
      d.center = d.bbox.center();
      d.dir = static_cast<Direction8>(rng() % 8);
      r.decors.push_back(d);
    }
    m.rooms.push_back(r);
  }
  int door_id = 0;
  for (int i = 0; i + 1 < n; ++i) {
    m.rooms[i].neighbors.push_back(i + 2);
    m.rooms[i + 1].neighbors.push_back(i + 1);
    Door d;
    d.id = door_id++;
    d.centroid = Vec2(static_cast<double>(rng() % 400), static_cast<double>(rng() % 400));
    d.rooms = {i + 1, i + 2};
    m.doors.push_back(d);
  }
  Door outer;
  outer.id = door_id;
  outer.centroid = Vec2(3.25, 7.5);
  outer.rooms = {1};
  m.doors.push_back(outer);
  m.entry_door = outer.id;
  return m;
}

Outcome xml_round_trip(const fs::path& golden_dir) {
  Outcome o;
  std::mt19937 rng(505);
  int mismatches = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const SemanticModel m = random_model(rng);
    if (!(from_xml(to_xml(m)) == m)) ++mismatches;
  }
  o.require(mismatches == 0, std::to_string(mismatches) + "/100 round trips differ");

  int golden_fail = 0;
  for (std::uint64_t seed : {1, 2, 3}) {
    PlanSpec spec;
    spec.seed = seed;
    const auto [plan, gt] = generate(spec);
    const std::string xml = to_xml(ground_truth_model(gt));
    const fs::path path = golden_dir / ("plan_seed" + std::to_string(seed) + ".xml");
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      ++golden_fail;
      continue;
    }
    const std::string want((std::istreambuf_iterator<char>(in)), {});
    if (xml != want) ++golden_fail;
  }
  o.require(golden_fail == 0, std::to_string(golden_fail) + "/3 golden files differ");
  return o;
}

// ---------------------------------------------------------------------------
// 9. End to end through the CLI
// ---------------------------------------------------------------------------

Outcome end_to_end(const fs::path& scratch) {
  Outcome o;
#ifndef SUGAMAN_CLI_PATH
  o.require(false, "CLI path not configured");
  return o;
#else
  const std::string cli = SUGAMAN_CLI_PATH;
  const fs::path dir = scratch / "e2e";
  fs::create_directories(dir);
  auto shell = [&](const std::string& cmd) {
    return std::system((cmd + " > /dev/null 2>&1").c_str());
  };
  o.require(shell(cli + " synth --n 50 --seed 1 --out " + (dir / "corpus").string()) == 0,
            "synth failed");
  o.require(shell(cli + " train --corpus " + (dir / "corpus").string() + " --seed 1 --out " +
                  (dir / "model.txt").string()) == 0,
            "train failed");
  if (!o.pass) return o;

  int described = 0, correct = 0;
  for (int i = 0; i < 50; ++i) {
    char name[16];
    std::snprintf(name, sizeof(name), "%04d", i);
    const std::string png = (dir / "corpus/plans" / (std::string(name) + ".png")).string();
    const std::string jsn = (dir / "corpus/plans" / (std::string(name) + ".json")).string();
    if (shell(cli + " describe --image " + png + " --model " + (dir / "model.txt").string() +
              " --out " + (dir / "out").string()) != 0)
      continue;
    ++described;
    std::ifstream txt(dir / "out" / (std::string(name) + ".txt"));
    std::string header, first;
    std::getline(txt, header);
    std::getline(txt, first);
    const GroundTruth gt = load_ground_truth(jsn);
    const std::string want =
        "This floor plan has " + std::to_string(gt.rooms.size()) + " rooms.";
    if (first == want) ++correct;
  }
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%d/50 described, %d correct room counts", described, correct);
  o.detail = buf;
  o.require(described == 50, "describe failed on some plans");
  o.require(correct == 50, "S1 room count mismatches ground truth");
  return o;
#endif
}

}  // namespace

int main() {
  const fs::path scratch = fs::temp_directory_path() / "sugaman_acceptance";
  fs::remove_all(scratch);
  fs::create_directories(scratch);

#ifdef SUGAMAN_GOLDEN_DIR
  const fs::path golden_dir = SUGAMAN_GOLDEN_DIR;
#else
  const fs::path golden_dir = "tests/golden";
#endif

  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"metrics oracle suite", metrics_oracle},
      {"geometry centroid oracle", geometry_oracle},
      {"lofd oracle", lofd_oracle},
      {"classifier accuracy", [&] { return classifier_accuracy(scratch); }},
      {"navigation routes", navigation_checks},
      {"segmentation recovery", segmentation_checks},
      {"grammar conformance", grammar_conformance},
      {"xml round trip", [&] { return xml_round_trip(golden_dir); }},
      {"end to end", [&] { return end_to_end(scratch); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %-26s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", c.name, secs,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  fs::remove_all(scratch);
  return failures == 0 ? 0 : 1;
}
