#include "speechml/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "speechml/errors.hpp"

namespace speechml {

namespace {

using json = nlohmann::json;

constexpr const char* kFormatTag = "speechml-model";
constexpr int kFormatVersion = 1;

json tree_to_json(const CartTree& tree) {
  json nodes = json::array();
  for (const TreeNode& n : tree.nodes) {
    nodes.push_back({{"feature", n.feature},
                     {"threshold", n.threshold},
                     {"left", n.left},
                     {"right", n.right},
                     {"value", n.value},
                     {"n_samples", n.n_samples},
                     {"weight", n.weight},
                     {"impurity_decrease", n.impurity_decrease}});
  }
  return json{{"nodes", std::move(nodes)}};
}

CartTree tree_from_json(const json& j) {
  CartTree tree;
  for (const json& jn : j.at("nodes")) {
    TreeNode n;
    n.feature = jn.at("feature").get<int>();
    n.threshold = jn.at("threshold").get<double>();
    n.left = jn.at("left").get<int>();
    n.right = jn.at("right").get<int>();
    n.value = jn.at("value").get<double>();
    n.n_samples = jn.at("n_samples").get<std::size_t>();
    n.weight = jn.at("weight").get<double>();
    n.impurity_decrease = jn.at("impurity_decrease").get<double>();
    tree.nodes.push_back(n);
  }
  return tree;
}

json parse_checked(const std::string& text, const std::string& kind_field) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("model artifact is not valid JSON: ") +
                     e.what());
  }
  if (j.value("format", "") != kFormatTag) {
    throw ParseError("not a speechml model artifact");
  }
  if (j.value("version", -1) != kFormatVersion) {
    throw ParseError("unsupported model artifact version");
  }
  if (!j.contains(kind_field)) {
    throw ParseError("model artifact missing field: " + kind_field);
  }
  return j;
}

}  // namespace

std::string save_ensemble(const TreeEnsembleModel& model) {
  json j;
  j["format"] = kFormatTag;
  j["version"] = kFormatVersion;
  j["kind"] = to_string(model.kind);
  j["init_value"] = model.init_value;
  j["learning_rate"] = model.learning_rate;
  j["seed"] = model.seed;
  j["feature_schema"] = model.feature_schema;
  j["stage_weights"] = model.stage_weights;
  j["hyperparameters"] = {{"n_estimators", model.n_estimators},
                          {"max_depth", model.max_depth},
                          {"min_samples_split", model.min_samples_split},
                          {"min_samples_leaf", model.min_samples_leaf}};
  json trees = json::array();
  for (const CartTree& t : model.trees) {
    trees.push_back(tree_to_json(t));
  }
  j["trees"] = std::move(trees);
  return j.dump(2);
}

TreeEnsembleModel load_ensemble(const std::string& text) {
  const json j = parse_checked(text, "trees");
  TreeEnsembleModel model;
  model.kind = ensemble_kind_from_string(j.at("kind").get<std::string>());
  model.init_value = j.at("init_value").get<double>();
  model.learning_rate = j.at("learning_rate").get<double>();
  model.seed = j.at("seed").get<std::uint64_t>();
  model.feature_schema =
      j.at("feature_schema").get<std::vector<std::string>>();
  model.stage_weights = j.at("stage_weights").get<std::vector<double>>();
  const json& hp = j.at("hyperparameters");
  model.n_estimators = hp.at("n_estimators").get<int>();
  model.max_depth = hp.at("max_depth").get<int>();
  model.min_samples_split = hp.at("min_samples_split").get<int>();
  model.min_samples_leaf = hp.at("min_samples_leaf").get<int>();
  for (const json& jt : j.at("trees")) {
    model.trees.push_back(tree_from_json(jt));
  }
  if (model.stage_weights.size() != model.trees.size()) {
    throw ParseError("model artifact: stage weight count != tree count");
  }
  return model;
}

std::string save_gaussian_nb(const GaussianNbModel& model) {
  json j;
  j["format"] = kFormatTag;
  j["version"] = kFormatVersion;
  j["kind"] = "gaussian_nb";
  j["feature_schema"] = model.feature_schema;
  j["priors"] = {model.prior[0], model.prior[1]};
  j["means"] = {model.mean[0], model.mean[1]};
  j["variances"] = {model.variance[0], model.variance[1]};
  j["variance_floor"] = model.variance_floor;
  return j.dump(2);
}

GaussianNbModel load_gaussian_nb(const std::string& text) {
  const json j = parse_checked(text, "priors");
  if (j.at("kind").get<std::string>() != "gaussian_nb") {
    throw ParseError("artifact is not a gaussian_nb model");
  }
  GaussianNbModel model;
  model.feature_schema =
      j.at("feature_schema").get<std::vector<std::string>>();
  model.prior[0] = j.at("priors").at(0).get<double>();
  model.prior[1] = j.at("priors").at(1).get<double>();
  for (int c = 0; c < 2; ++c) {
    model.mean[c] = j.at("means").at(c).get<std::vector<double>>();
    model.variance[c] = j.at("variances").at(c).get<std::vector<double>>();
  }
  model.variance_floor = j.at("variance_floor").get<double>();
  return model;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open for writing: " + path.string());
  }
  out << text;
  if (!out) {
    throw IoError("short write: " + path.string());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FileNotFound("cannot open: " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace speechml
