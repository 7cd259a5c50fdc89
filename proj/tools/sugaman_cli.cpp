// Command-line front end: synth / train / describe / eval.

#include "CLI11.hpp"

#include "sugaman/config.hpp"
#include "sugaman/decor.hpp"
#include "sugaman/glyphs.hpp"
#include "sugaman/grammar.hpp"
#include "sugaman/metrics.hpp"
#include "sugaman/pipeline.hpp"
#include "sugaman/png_io.hpp"
#include "sugaman/synth.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace sugaman;

namespace {

// 0 success, 1 pipeline failure, 2 usage or input error.
int exit_code_for(const Error& e) {
  switch (e.category()) {
    case ErrorCategory::invalid_input:
    case ErrorCategory::invalid_config:
    case ErrorCategory::parse_error:
    case ErrorCategory::io_error:
      return 2;
    default:
      return 1;
  }
}

Config resolve_config(const std::string& flag_path,
                      const std::vector<std::string>& overrides) {
  Config config;
  std::string path = flag_path;
  if (path.empty()) {
    if (const char* env = std::getenv("SUGAMAN_CONFIG")) path = env;
  }
  if (!path.empty()) config = load_config(path);
  for (const auto& kv : overrides) {
    const size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCategory::invalid_config, "--set expects key=value, got '" + kv + "'");
    apply_config_entry(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  return config;
}

SignatureLibrary resolve_library(const Config& config) {
  if (config.signature_library.empty()) return builtin_library();
  return load_library(config.signature_library);
}

struct SplitSets {
  std::vector<int> train, test;
};

SplitSets read_split(const std::string& path, int rows) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::io_error, "cannot read " + path);
  SplitSets s;
  int idx;
  std::string tag;
  while (in >> idx >> tag) {
    if (idx < 0 || idx >= rows)
      throw Error(ErrorCategory::parse_error, "split row index out of range");
    (tag == "train" ? s.train : s.test).push_back(idx);
  }
  return s;
}

Matrix take_rows(const Matrix& m, const std::vector<int>& rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
  return out;
}

std::vector<int> take(const std::vector<int>& v, const std::vector<int>& rows) {
  std::vector<int> out;
  for (int r : rows) out.push_back(v[r]);
  return out;
}

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (truth.empty()) return 0;
  int ok = 0;
  for (size_t i = 0; i < truth.size(); ++i) ok += pred[i] == truth[i];
  return static_cast<double>(ok) / static_cast<double>(truth.size());
}

void print_confusion(const std::vector<int>& pred, const std::vector<int>& truth) {
  int m[kRoomLabelCount][kRoomLabelCount] = {};
  for (size_t i = 0; i < truth.size(); ++i) ++m[truth[i] - 1][pred[i] - 1];
  std::cout << "confusion matrix (rows = truth, cols = predicted):\n     ";
  for (int c = 1; c <= kRoomLabelCount; ++c) std::cout << '\t' << c;
  std::cout << '\n';
  for (int r = 0; r < kRoomLabelCount; ++r) {
    std::cout << room_label_name(static_cast<RoomLabel>(r + 1));
    for (int c = 0; c < kRoomLabelCount; ++c) std::cout << '\t' << m[r][c];
    std::cout << '\n';
  }
}

int cmd_synth(int n, std::uint64_t seed, const std::string& out_dir) {
  const CorpusPaths paths = generate_corpus(n, seed, out_dir);
  std::cout << "wrote " << n << " plans under " << paths.plans_dir << '\n'
            << "features: " << paths.features_csv << '\n'
            << "split: " << paths.split_txt << '\n';
  return 0;
}

int cmd_train(const std::string& corpus_dir, const Config& config, const std::string& out_path) {
  const CorpusPaths paths = corpus_paths(corpus_dir);
  if (!fs::exists(paths.features_csv))
    throw Error(ErrorCategory::io_error, "missing " + paths.features_csv);
  auto [features, labels] = load_feature_csv(paths.features_csv);
  const int rows = static_cast<int>(labels.size());

  SplitSets split;
  if (fs::exists(paths.split_txt)) {
    split = read_split(paths.split_txt, rows);
  } else {
    const int train_n = static_cast<int>(std::lround(0.7 * rows));
    const std::vector<int> order = shuffled_indices(rows, config.seed);
    split.train.assign(order.begin(), order.begin() + train_n);
    split.test.assign(order.begin() + train_n, order.end());
  }

  TrainConfig tc;
  tc.kind = config.classifier_kind == "mlp" ? ClassifierKind::mlp
                                            : ClassifierKind::linear_svm_ovo;
  tc.seed = config.seed;
  tc.epochs = config.epochs;
  tc.learning_rate = config.learning_rate;

  const Matrix train_x = take_rows(features, split.train);
  const std::vector<int> train_y = take(labels, split.train);
  const RoomClassifier model = train(train_x, train_y, tc);
  save_model(out_path, model);

  const auto train_pred = predict(model, train_x);
  std::cout << "kind: " << config.classifier_kind;
  if (model.kind == ClassifierKind::linear_svm_ovo)
    std::cout << " (" << model.separators.size() << " separators trained)";
  std::cout << "\nseed: " << config.seed << '\n';
  std::cout << "train rows: " << split.train.size() << "  test rows: " << split.test.size()
            << '\n';
  std::cout << "train accuracy: " << accuracy(train_pred, train_y) << '\n';
  if (!split.test.empty()) {
    const Matrix test_x = take_rows(features, split.test);
    const std::vector<int> test_y = take(labels, split.test);
    const auto test_pred = predict(model, test_x);
    std::cout << "test accuracy: " << accuracy(test_pred, test_y) << '\n';
    print_confusion(test_pred, test_y);
  }
  std::cout << "model written to " << out_path << '\n';
  return 0;
}

int cmd_describe(const std::string& image_path, const std::string& model_path,
                 const Config& config, const std::string& out_dir, bool overlay) {
  if (!fs::exists(image_path))
    throw Error(ErrorCategory::io_error, "image file not found: " + image_path);
  if (!fs::exists(model_path))
    throw Error(ErrorCategory::io_error, "model file not found: " + model_path);

  const RoomClassifier classifier = load_model(model_path);
  const SignatureLibrary library = resolve_library(config);
  const BinaryImage plan = binarize(load_png_gray(image_path), config.binarize_threshold);
  const PipelineResult result = run_pipeline(plan, classifier, library, config.pipeline);

  Description description;
  description.gd = synthesize_gd(result.model);
  description.nv = synthesize_nv(result.traversal, config.px_per_step);

  fs::create_directories(out_dir);
  const std::string stem = fs::path(image_path).stem().string();
  {
    std::ofstream txt(out_dir + "/" + stem + ".txt", std::ios::binary);
    txt << render(description);
  }
  {
    std::ofstream xml(out_dir + "/" + stem + ".xml", std::ios::binary);
    xml << to_xml(result.model);
  }
  if (overlay)
    save_png_rgb(out_dir + "/" + stem + "_overlay.png",
                 render_overlay(plan, result.traversal, result.doors));
  std::cout << render(description);
  return 0;
}

std::vector<TokenSequence> read_reference_blocks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::io_error, "cannot read " + path);
  std::vector<TokenSequence> blocks;
  std::string line, block;
  auto flush = [&] {
    if (block.find_first_not_of(" \t\r\n") != std::string::npos)
      blocks.push_back(tokenize(block));
    block.clear();
  };
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      flush();
    else
      block += line + "\n";
  }
  flush();
  return blocks;
}

int cmd_eval(const std::string& cand_dir, const std::string& ref_dir) {
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(cand_dir))
    if (entry.path().extension() == ".txt") names.push_back(entry.path().filename().string());
  std::sort(names.begin(), names.end());
  if (names.empty())
    throw Error(ErrorCategory::invalid_input, "no .txt candidates in " + cand_dir);

  std::string missing;
  for (const auto& name : names)
    if (!fs::exists(fs::path(ref_dir) / name)) missing += " " + name;
  for (const auto& entry : fs::directory_iterator(ref_dir))
    if (entry.path().extension() == ".txt" &&
        std::find(names.begin(), names.end(), entry.path().filename().string()) == names.end())
      missing += " " + entry.path().filename().string();
  if (!missing.empty())
    throw Error(ErrorCategory::invalid_input, "unmatched files:" + missing);

  std::vector<TokenSequence> candidates;
  std::vector<std::vector<TokenSequence>> references;
  for (const auto& name : names) {
    std::ifstream in(fs::path(cand_dir) / name);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    candidates.push_back(tokenize(text));
    auto refs = read_reference_blocks((fs::path(ref_dir) / name).string());
    if (refs.empty())
      throw Error(ErrorCategory::invalid_input, "reference file " + name + " has no blocks");
    references.push_back(std::move(refs));
  }
  std::cout << format_report(evaluate_corpus(candidates, references));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"floor plan description synthesis"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "key=value config file (env SUGAMAN_CONFIG)");
  app.add_option("--set", overrides, "override a single config key (key=value)");

  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic corpus");
  int synth_n = 10;
  std::uint64_t synth_seed = 1;
  std::string synth_out = "corpus";
  synth_cmd->add_option("--n", synth_n, "number of plans")->required();
  synth_cmd->add_option("--seed", synth_seed, "generator seed");
  synth_cmd->add_option("--out", synth_out, "output directory")->required();

  auto* train_cmd = app.add_subcommand("train", "train the room classifier");
  std::string train_corpus, train_out = "classifier.txt", train_kind;
  std::uint64_t train_seed = 0;
  train_cmd->add_option("--corpus", train_corpus, "corpus directory")->required();
  train_cmd->add_option("--kind", train_kind, "svm_ovo or mlp");
  train_cmd->add_option("--seed", train_seed, "training seed");
  train_cmd->add_option("--out", train_out, "model file to write");

  auto* describe_cmd = app.add_subcommand("describe", "describe a floor plan image");
  std::string image_path, model_path, describe_out = ".";
  bool overlay = false;
  describe_cmd->add_option("--image", image_path, "plan PNG")->required();
  describe_cmd->add_option("--model", model_path, "trained classifier file")->required();
  describe_cmd->add_option("--out", describe_out, "output directory");
  describe_cmd->add_flag("--overlay", overlay, "write a route overlay PNG");

  auto* eval_cmd = app.add_subcommand("eval", "score candidates against references");
  std::string cand_dir, ref_dir;
  eval_cmd->add_option("--candidates", cand_dir, "candidate .txt directory")->required();
  eval_cmd->add_option("--references", ref_dir, "reference .txt directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Config config = resolve_config(config_path, overrides);
    if (synth_cmd->parsed()) {
      if (synth_n < 1) {
        std::cerr << "invalid-input: --n must be >= 1\n";
        return 2;
      }
      return cmd_synth(synth_n, synth_seed, synth_out);
    }
    if (train_cmd->parsed()) {
      if (!train_kind.empty()) apply_config_entry(config, "classifier_kind", train_kind);
      if (train_seed != 0) config.seed = train_seed;
      return cmd_train(train_corpus, config, train_out);
    }
    if (describe_cmd->parsed())
      return cmd_describe(image_path, model_path, config, describe_out, overlay);
    if (eval_cmd->parsed()) return cmd_eval(cand_dir, ref_dir);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
