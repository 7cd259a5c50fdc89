#include "sugaman/lofd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace sugaman {

LOFDVector compute_lofd(const Vec2& room_center, const std::vector<DecorInstance>& decors,
                        bool mean_distance) {
  LOFDVector v;
  Eigen::Matrix<Scalar, kDecorClassCount, 1> raw =
      Eigen::Matrix<Scalar, kDecorClassCount, 1>::Zero();
  Scalar max_dist = 0;
  for (const auto& d : decors) {
    const int c = static_cast<int>(d.cls) - 1;
    const Scalar dist =
        std::abs(room_center.x() - d.center.x()) + std::abs(room_center.y() - d.center.y());
    v.values(c) += 1;
    raw(c) += dist;
    max_dist = std::max(max_dist, dist);
  }
  if (max_dist > 0) {
    for (int c = 0; c < kDecorClassCount; ++c) {
      if (v.values(c) == 0) continue;
      const Scalar numer = mean_distance ? raw(c) / v.values(c) : raw(c);
      v.values(kDecorClassCount + c) = numer / max_dist;
    }
  }
  return v;
}

Matrix scale_features(const Matrix& features) {
  if (features.cols() != kLofdDim)
    throw Error(ErrorCategory::invalid_input, "feature matrix must have 24 columns");
  Matrix scaled = features;
  scaled.leftCols(kDecorClassCount) /= 10.0;
  return scaled;
}

namespace {

constexpr int kHiddenUnits = 10;
constexpr Scalar kSvmLambda = 1e-4;
constexpr int kSvmDefaultEpochs = 200;
constexpr int kMlpDefaultEpochs = 800;
constexpr Scalar kMlpDefaultRate = 0.5;

void check_labels(const std::vector<int>& labels) {
  bool present[kRoomLabelCount + 1] = {};
  for (int l : labels) {
    if (l < 1 || l > kRoomLabelCount)
      throw Error(ErrorCategory::training_error, "label out of range 1..5");
    present[l] = true;
  }
  for (int c = 1; c <= kRoomLabelCount; ++c)
    if (!present[c])
      throw Error(ErrorCategory::training_error,
                  std::string("no training samples for class ") + room_label_name(
                      static_cast<RoomLabel>(c)));
}

std::vector<OvoSeparator> train_ovo(const Matrix& scaled, const std::vector<int>& labels,
                                    std::uint64_t seed, int epochs) {
  std::mt19937_64 rng(seed);
  std::vector<OvoSeparator> seps;
  for (int a = 1; a <= kRoomLabelCount; ++a) {
    for (int b = a + 1; b <= kRoomLabelCount; ++b) {
      std::vector<int> subset;
      for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == a || labels[i] == b) subset.push_back(static_cast<int>(i));

      OvoSeparator sep;
      sep.class_a = a;
      sep.class_b = b;
      sep.w = Vector::Zero(kLofdDim + 1);

      // Pegasos-style stochastic subgradient on the hinge loss.
      long t = 0;
      for (int epoch = 0; epoch < epochs; ++epoch) {
        std::shuffle(subset.begin(), subset.end(), rng);
        for (int i : subset) {
          ++t;
          const Scalar eta = 1.0 / (kSvmLambda * static_cast<Scalar>(t));
          Vector x(kLofdDim + 1);
          x.head(kLofdDim) = scaled.row(i).transpose();
          x(kLofdDim) = 1.0;
          const Scalar y = labels[i] == a ? 1.0 : -1.0;
          const Scalar margin = y * sep.w.dot(x);
          sep.w *= (1.0 - eta * kSvmLambda);
          if (margin < 1.0) sep.w += eta * y * x;
        }
      }
      seps.push_back(std::move(sep));
    }
  }
  return seps;
}

Matrix logistic(const Matrix& z) { return (1.0 / (1.0 + (-z.array()).exp())).matrix(); }

// Forward pass: returns softmax probabilities, one column per sample, and the
// hidden activations via out-parameter.
Matrix mlp_forward(const MlpParams& p, const Matrix& scaled, Matrix* hidden_out) {
  const Matrix x = scaled.transpose();  // input x samples
  const Matrix h = logistic(((p.w1 * x).colwise() + p.b1).eval());
  Matrix z = (p.w2 * h).colwise() + p.b2;
  Matrix probs(z.rows(), z.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const Scalar m = z.col(j).maxCoeff();
    Vector e = (z.col(j).array() - m).exp();
    probs.col(j) = e / e.sum();
  }
  if (hidden_out) *hidden_out = h;
  return probs;
}

MlpParams init_mlp(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Scalar> dist(-0.5, 0.5);
  MlpParams p;
  p.w1 = Matrix::Zero(kHiddenUnits, kLofdDim);
  p.b1 = Vector::Zero(kHiddenUnits);
  p.w2 = Matrix::Zero(kRoomLabelCount, kHiddenUnits);
  p.b2 = Vector::Zero(kRoomLabelCount);
  for (Eigen::Index i = 0; i < p.w1.rows(); ++i)
    for (Eigen::Index j = 0; j < p.w1.cols(); ++j) p.w1(i, j) = dist(rng);
  for (Eigen::Index i = 0; i < p.w2.rows(); ++i)
    for (Eigen::Index j = 0; j < p.w2.cols(); ++j) p.w2(i, j) = dist(rng);
  return p;
}

}  // namespace

Scalar mlp_loss(const MlpParams& params, const Matrix& scaled, const std::vector<int>& labels) {
  const Matrix probs = mlp_forward(params, scaled, nullptr);
  Scalar loss = 0;
  for (size_t i = 0; i < labels.size(); ++i)
    loss -= std::log(std::max(probs(labels[i] - 1, static_cast<Eigen::Index>(i)), Scalar(1e-300)));
  return loss / static_cast<Scalar>(labels.size());
}

MlpParams mlp_gradient(const MlpParams& params, const Matrix& scaled,
                       const std::vector<int>& labels) {
  const Eigen::Index n = scaled.rows();
  Matrix hidden;
  Matrix probs = mlp_forward(params, scaled, &hidden);
  for (Eigen::Index j = 0; j < n; ++j) probs(labels[j] - 1, j) -= 1.0;  // dL/dz2
  probs /= static_cast<Scalar>(n);

  MlpParams g;
  g.w2 = probs * hidden.transpose();
  g.b2 = probs.rowwise().sum();
  const Matrix dh = (params.w2.transpose() * probs).array() * hidden.array() *
                    (1.0 - hidden.array());
  g.w1 = dh * scaled;
  g.b1 = dh.rowwise().sum();
  return g;
}

RoomClassifier train(const Matrix& features, const std::vector<int>& labels,
                     const TrainConfig& config) {
  if (features.rows() != static_cast<Eigen::Index>(labels.size()) || features.rows() == 0)
    throw Error(ErrorCategory::training_error, "features/labels size mismatch");
  if (!features.allFinite())
    throw Error(ErrorCategory::training_error, "features must be finite");
  check_labels(labels);
  const Matrix scaled = scale_features(features);

  RoomClassifier model;
  model.kind = config.kind;
  model.seed = config.seed;
  if (config.kind == ClassifierKind::linear_svm_ovo) {
    const int epochs = config.epochs > 0 ? config.epochs : kSvmDefaultEpochs;
    model.separators = train_ovo(scaled, labels, config.seed, epochs);
  } else {
    const int epochs = config.epochs > 0 ? config.epochs : kMlpDefaultEpochs;
    const Scalar lr = config.learning_rate > 0 ? config.learning_rate : kMlpDefaultRate;
    MlpParams p = init_mlp(config.seed);
    for (int epoch = 0; epoch < epochs; ++epoch) {
      const MlpParams g = mlp_gradient(p, scaled, labels);
      p.w1 -= lr * g.w1;
      p.b1 -= lr * g.b1;
      p.w2 -= lr * g.w2;
      p.b2 -= lr * g.b2;
    }
    model.mlp = std::move(p);
  }
  return model;
}

std::vector<int> predict(const RoomClassifier& model, const Matrix& features) {
  const Matrix scaled = scale_features(features);
  const Eigen::Index n = scaled.rows();
  std::vector<int> out(n, 1);

  if (model.kind == ClassifierKind::linear_svm_ovo) {
    for (Eigen::Index i = 0; i < n; ++i) {
      int votes[kRoomLabelCount + 1] = {};
      Vector x(kLofdDim + 1);
      x.head(kLofdDim) = scaled.row(i).transpose();
      x(kLofdDim) = 1.0;
      for (const auto& sep : model.separators)
        ++votes[sep.w.dot(x) >= 0 ? sep.class_a : sep.class_b];
      int best = 1;
      for (int c = 2; c <= kRoomLabelCount; ++c)
        if (votes[c] > votes[best]) best = c;  // ties keep the lowest code
      out[i] = best;
    }
  } else {
    const Matrix probs = mlp_forward(model.mlp, scaled, nullptr);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      probs.col(i).maxCoeff(&best);
      out[i] = static_cast<int>(best) + 1;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

namespace {

void write_row(std::ostream& out, const Vector& v) {
  char buf[32];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.9f", v(i));
    out << (i ? " " : "") << buf;
  }
  out << '\n';
}

Vector read_row(std::istream& in, Eigen::Index n, const std::string& what) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(in >> v(i))) throw Error(ErrorCategory::parse_error, "model file: bad " + what);
  return v;
}

}  // namespace

void save_model(const std::string& path, const RoomClassifier& model) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::io_error, "cannot write " + path);
  out << "sugaman-classifier "
      << (model.kind == ClassifierKind::linear_svm_ovo ? "svm_ovo" : "mlp") << '\n';
  out << "seed " << model.seed << '\n';
  out << "dims " << kLofdDim << ' ' << kRoomLabelCount << '\n';
  if (model.kind == ClassifierKind::linear_svm_ovo) {
    for (const auto& sep : model.separators) {
      out << "pair " << sep.class_a << ' ' << sep.class_b << '\n';
      write_row(out, sep.w);
    }
  } else {
    out << "hidden " << model.mlp.w1.rows() << '\n';
    for (Eigen::Index r = 0; r < model.mlp.w1.rows(); ++r)
      write_row(out, model.mlp.w1.row(r).transpose());
    write_row(out, model.mlp.b1);
    for (Eigen::Index r = 0; r < model.mlp.w2.rows(); ++r)
      write_row(out, model.mlp.w2.row(r).transpose());
    write_row(out, model.mlp.b2);
  }
}

RoomClassifier load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::io_error, "cannot read " + path);
  std::string magic, kind, key;
  if (!(in >> magic >> kind) || magic != "sugaman-classifier")
    throw Error(ErrorCategory::parse_error, path + " is not a classifier model file");
  RoomClassifier model;
  if (kind == "svm_ovo") model.kind = ClassifierKind::linear_svm_ovo;
  else if (kind == "mlp") model.kind = ClassifierKind::mlp;
  else throw Error(ErrorCategory::parse_error, "unknown classifier kind " + kind);
  std::uint64_t seed;
  int dim_in, dim_out;
  if (!(in >> key >> seed) || key != "seed")
    throw Error(ErrorCategory::parse_error, "model file: missing seed");
  if (!(in >> key >> dim_in >> dim_out) || key != "dims" || dim_in != kLofdDim ||
      dim_out != kRoomLabelCount)
    throw Error(ErrorCategory::parse_error, "model file: bad dims");
  model.seed = seed;

  if (model.kind == ClassifierKind::linear_svm_ovo) {
    for (int a = 1; a <= kRoomLabelCount; ++a)
      for (int b = a + 1; b <= kRoomLabelCount; ++b) {
        OvoSeparator sep;
        int pa, pb;
        if (!(in >> key >> pa >> pb) || key != "pair" || pa != a || pb != b)
          throw Error(ErrorCategory::parse_error, "model file: bad separator header");
        sep.class_a = a;
        sep.class_b = b;
        sep.w = read_row(in, kLofdDim + 1, "separator weights");
        model.separators.push_back(std::move(sep));
      }
  } else {
    int hidden;
    if (!(in >> key >> hidden) || key != "hidden" || hidden != kHiddenUnits)
      throw Error(ErrorCategory::parse_error, "model file: bad hidden layer size");
    model.mlp.w1 = Matrix(kHiddenUnits, kLofdDim);
    for (int r = 0; r < kHiddenUnits; ++r)
      model.mlp.w1.row(r) = read_row(in, kLofdDim, "w1").transpose();
    model.mlp.b1 = read_row(in, kHiddenUnits, "b1");
    model.mlp.w2 = Matrix(kRoomLabelCount, kHiddenUnits);
    for (int r = 0; r < kRoomLabelCount; ++r)
      model.mlp.w2.row(r) = read_row(in, kHiddenUnits, "w2").transpose();
    model.mlp.b2 = read_row(in, kRoomLabelCount, "b2");
  }
  return model;
}

void save_feature_csv(const std::string& path, const Matrix& features,
                      const std::vector<int>& labels) {
  if (features.rows() != static_cast<Eigen::Index>(labels.size()))
    throw Error(ErrorCategory::invalid_input, "features/labels size mismatch");
  std::ofstream out(path);
  if (!out) throw Error(ErrorCategory::io_error, "cannot write " + path);
  char buf[32];
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.6f", features(i, j));
      out << buf << ',';
    }
    out << labels[i] << '\n';
  }
}

std::pair<Matrix, std::vector<int>> load_feature_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::io_error, "cannot read " + path);
  std::vector<std::array<Scalar, kLofdDim>> rows;
  std::vector<int> labels;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::array<Scalar, kLofdDim> row{};
    std::string cell;
    for (int j = 0; j < kLofdDim; ++j) {
      if (!std::getline(ls, cell, ','))
        throw Error(ErrorCategory::parse_error,
                    "feature csv line " + std::to_string(lineno) + ": expected 25 columns");
      row[j] = std::stod(cell);
    }
    if (!std::getline(ls, cell))
      throw Error(ErrorCategory::parse_error,
                  "feature csv line " + std::to_string(lineno) + ": missing label");
    rows.push_back(row);
    labels.push_back(std::stoi(cell));
  }
  Matrix features(static_cast<Eigen::Index>(rows.size()), kLofdDim);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < kLofdDim; ++j) features(static_cast<Eigen::Index>(i), j) = rows[i][j];
  return {features, labels};
}

std::vector<int> shuffled_indices(int n, std::uint64_t seed) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  return idx;
}

}  // namespace sugaman
