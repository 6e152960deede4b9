#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aif/config.hpp"
#include "aif/dataset.hpp"
#include "aif/forest.hpp"

namespace aif {

inline constexpr int kModelSchemaVersion = 1;

/// A fitted forest plus what is needed to score new files with it.
struct Model {
  RunConfig config;
  Forest forest;
  std::vector<std::string> columns;
  std::optional<Standardizer> standardizer;
};

Model FitModel(const RunConfig& config, const Dataset& dataset, std::size_t threads = 1);

/// Applies the model's standardizer (if any) and scores every row in order.
/// Throws kDimensionMismatch when the column count differs from training.
ScoreReport ScoreModel(const Model& model, const Dataset& dataset, std::size_t threads = 1);

/// JSON document:
///   {"format": "aif-model", "schema_version": 1, "config": {...},
///    "dim": d, "columns": [...], "standardizer": null | {"mean": [...], "scale": [...]},
///    "trees": [{"height_limit": l, "nodes": [
///        {"size": s}                                              (leaf)
///        {"size": s, "left": i, "right": j, "normal": [...], "intercept": [...]}
///    ]}, ...]}
/// Nodes are in preorder. Doubles are written in shortest round-trip form, so
/// a save/load cycle reproduces every score bit for bit.
void SaveModel(const Model& model, std::ostream& out);
void SaveModelFile(const Model& model, const std::filesystem::path& path);
Model LoadModel(std::istream& in, std::string_view source = "<model>");
Model LoadModelFile(const std::filesystem::path& path);

}  // namespace aif
