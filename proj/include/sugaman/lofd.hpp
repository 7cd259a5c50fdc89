#pragma once

#include "sugaman/model.hpp"
#include "sugaman/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sugaman {

constexpr int kLofdDim = 24;  // 12 decor counts + 12 normalized distances

/// Decor frequency and normalized summed Manhattan distance per class.
/// dists[c] = sum of instance distances / max single-instance distance;
/// all zeros when there are no decors or every decor sits on the center.
struct LOFDVector {
  Eigen::Matrix<Scalar, kLofdDim, 1> values = Eigen::Matrix<Scalar, kLofdDim, 1>::Zero();

  Scalar count(DecorClass c) const { return values(static_cast<int>(c) - 1); }
  Scalar dist(DecorClass c) const { return values(kDecorClassCount + static_cast<int>(c) - 1); }
};

/// mean_distance switches the per-class numerator from the instance sum to
/// the instance mean (keeps dists <= 1 for multi-instance classes).
LOFDVector compute_lofd(const Vec2& room_center, const std::vector<DecorInstance>& decors,
                        bool mean_distance = false);

enum class ClassifierKind { linear_svm_ovo, mlp };

struct TrainConfig {
  ClassifierKind kind = ClassifierKind::linear_svm_ovo;
  std::uint64_t seed = 1;
  int epochs = 0;          // 0 = per-kind default
  Scalar learning_rate = 0;  // 0 = per-kind default
};

struct OvoSeparator {
  int class_a = 0;  // positive side
  int class_b = 0;  // negative side
  Vector w;         // kLofdDim weights + bias
};

struct MlpParams {
  Matrix w1;  // hidden x input
  Vector b1;
  Matrix w2;  // output x hidden
  Vector b2;
};

struct RoomClassifier {
  ClassifierKind kind = ClassifierKind::linear_svm_ovo;
  std::uint64_t seed = 1;
  std::vector<OvoSeparator> separators;  // C(5,2) = 10 for the OVO kind
  MlpParams mlp;                         // 24 -> 10 -> 5 for the MLP kind
};

/// Counts scaled to O(1) (divided by 10); identical at train and predict time.
Matrix scale_features(const Matrix& features);

/// features: N x 24 rows, labels: values 1..5. Reproducible given the seed.
RoomClassifier train(const Matrix& features, const std::vector<int>& labels,
                     const TrainConfig& config);

std::vector<int> predict(const RoomClassifier& model, const Matrix& features);

/// Mean cross-entropy of the MLP on scaled features (labels 1..5).
Scalar mlp_loss(const MlpParams& params, const Matrix& scaled, const std::vector<int>& labels);

/// Analytic full-batch gradient of mlp_loss, same shapes as the parameters.
MlpParams mlp_gradient(const MlpParams& params, const Matrix& scaled,
                       const std::vector<int>& labels);

void save_model(const std::string& path, const RoomClassifier& model);
RoomClassifier load_model(const std::string& path);

/// Plain numeric CSV: 24 feature columns + integer label column.
void save_feature_csv(const std::string& path, const Matrix& features,
                      const std::vector<int>& labels);
std::pair<Matrix, std::vector<int>> load_feature_csv(const std::string& path);

/// Deterministic permutation of 0..n-1.
std::vector<int> shuffled_indices(int n, std::uint64_t seed);

}  // namespace sugaman
