#include "aif/model_io.hpp"

#include <fstream>
#include <sstream>

#include "aif/error.hpp"
#include "config_json.hpp"
#include "json_util.hpp"

namespace aif {

using detail::Json;

Model FitModel(const RunConfig& config, const Dataset& dataset, std::size_t threads) {
  if (dataset.data.empty()) Fail(ErrorCode::kEmptyInput, dataset.provenance + ": dataset has no rows");
  std::optional<Standardizer> standardizer;
  const DataMatrix* training = &dataset.data;
  DataMatrix scaled;
  if (config.standardize) {
    standardizer = Standardizer::Fit(dataset.data);
    scaled = standardizer->Apply(dataset.data);
    training = &scaled;
  }
  Forest forest = Fit(*training, config.forest, config.distribution, threads);
  return Model{config, std::move(forest), dataset.columns, std::move(standardizer)};
}

ScoreReport ScoreModel(const Model& model, const Dataset& dataset, std::size_t threads) {
  if (dataset.data.empty()) Fail(ErrorCode::kEmptyInput, dataset.provenance + ": dataset has no rows");
  if (dataset.data.cols() != model.forest.dim()) {
    Fail(ErrorCode::kDimensionMismatch, dataset.provenance + " has " + std::to_string(dataset.data.cols()) +
                                            " columns, model was trained on " +
                                            std::to_string(model.forest.dim()));
  }
  if (model.standardizer) return model.forest.ScoreAll(model.standardizer->Apply(dataset.data), threads);
  return model.forest.ScoreAll(dataset.data, threads);
}

void SaveModel(const Model& model, std::ostream& out) {
  Json j;
  j["format"] = "aif-model";
  j["schema_version"] = kModelSchemaVersion;
  j["config"] = detail::RunConfigToJson(model.config);
  j["dim"] = model.forest.dim();
  j["columns"] = model.columns;
  if (model.standardizer) {
    j["standardizer"] = Json{{"mean", model.standardizer->mean}, {"scale", model.standardizer->scale}};
  } else {
    j["standardizer"] = nullptr;
  }
  Json trees = Json::array();
  for (const Tree& tree : model.forest.trees()) {
    Json nodes = Json::array();
    for (const TreeNode& node : tree.nodes) {
      if (node.is_leaf()) {
        nodes.push_back(Json{{"size", node.size}});
      } else {
        nodes.push_back(Json{{"size", node.size},
                             {"left", node.left},
                             {"right", node.right},
                             {"normal", node.normal},
                             {"intercept", node.intercept}});
      }
    }
    trees.push_back(Json{{"height_limit", tree.height_limit}, {"nodes", std::move(nodes)}});
  }
  j["trees"] = std::move(trees);
  out << j.dump() << '\n';
}

void SaveModelFile(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  SaveModel(model, out);
  if (!out) Fail(ErrorCode::kIo, "failed writing " + path.string());
}

namespace {

[[noreturn]] void Bad(std::string_view source, const std::string& what) {
  Fail(ErrorCode::kSchemaMismatch, std::string(source) + ": " + what);
}

template <typename T>
T Get(const Json& obj, const char* key, std::string_view source, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) Bad(source, where + ": missing '" + key + "'");
  try {
    return it->get<T>();
  } catch (const Json::exception&) {
    Bad(source, where + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

Model LoadModel(std::istream& in, std::string_view source) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const Json j = detail::ParseJson(text, source);
  if (!j.is_object() || j.value("format", "") != "aif-model") Bad(source, "not an aif model file");
  const auto version = Get<int>(j, "schema_version", source, "model");
  if (version != kModelSchemaVersion) {
    Fail(ErrorCode::kUnsupportedVersion, std::string(source) + ": model schema_version " +
                                             std::to_string(version) + " is not supported (expected " +
                                             std::to_string(kModelSchemaVersion) + ")");
  }
  if (!j.contains("config")) Bad(source, "missing 'config'");
  RunConfig config = detail::RunConfigFromJson(j["config"], std::string(source) + " (embedded config)");
  const auto dim = Get<std::size_t>(j, "dim", source, "model");
  auto columns = Get<std::vector<std::string>>(j, "columns", source, "model");
  if (columns.size() != dim) Bad(source, "column list does not match 'dim'");

  std::optional<Standardizer> standardizer;
  if (j.contains("standardizer") && !j["standardizer"].is_null()) {
    Standardizer s;
    s.mean = Get<std::vector<double>>(j["standardizer"], "mean", source, "standardizer");
    s.scale = Get<std::vector<double>>(j["standardizer"], "scale", source, "standardizer");
    if (s.mean.size() != dim || s.scale.size() != dim) Bad(source, "standardizer width does not match 'dim'");
    standardizer = std::move(s);
  }

  if (!j.contains("trees") || !j["trees"].is_array()) Bad(source, "missing 'trees' array");
  std::vector<Tree> trees;
  trees.reserve(j["trees"].size());
  for (std::size_t t = 0; t < j["trees"].size(); ++t) {
    const Json& jt = j["trees"][t];
    const std::string where = "tree " + std::to_string(t);
    Tree tree;
    tree.height_limit = Get<std::size_t>(jt, "height_limit", source, where);
    if (!jt.contains("nodes") || !jt["nodes"].is_array()) Bad(source, where + ": missing 'nodes'");
    for (const Json& jn : jt["nodes"]) {
      TreeNode node;
      node.size = Get<std::size_t>(jn, "size", source, where);
      if (jn.contains("left")) {
        node.left = Get<std::int32_t>(jn, "left", source, where);
        node.right = Get<std::int32_t>(jn, "right", source, where);
        node.normal = Get<std::vector<double>>(jn, "normal", source, where);
        node.intercept = Get<std::vector<double>>(jn, "intercept", source, where);
        if (node.left < 0 || node.right < 0) Bad(source, where + ": negative child index");
      }
      tree.nodes.push_back(std::move(node));
    }
    trees.push_back(std::move(tree));
  }
  try {
    Forest forest(config.distribution, config.forest, dim, std::move(trees));
    return Model{std::move(config), std::move(forest), std::move(columns), std::move(standardizer)};
  } catch (const Error& e) {
    Fail(e.code(), std::string(source) + ": " + e.what());
  }
}

Model LoadModelFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  return LoadModel(in, path.string());
}

}  // namespace aif
