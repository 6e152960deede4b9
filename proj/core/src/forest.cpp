#include "aif/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "aif/error.hpp"
#include "aif/parallel.hpp"

namespace aif {

double CFactor(std::size_t n) {
  if (n < 2) return 0.0;
  const double m = static_cast<double>(n - 1);
  const double harmonic = std::log(m) + kEulerMascheroni;
  return 2.0 * harmonic - 2.0 * m / static_cast<double>(n);
}

std::size_t HeightLimit(std::size_t subsample) {
  std::size_t l = 0;
  while ((std::size_t{1} << l) < subsample) ++l;
  return l;
}

std::size_t Tree::MaxDepth() const {
  if (nodes.empty()) return 0;
  std::size_t best = 0;
  std::vector<std::pair<std::int32_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [idx, depth] = stack.back();
    stack.pop_back();
    best = std::max(best, depth);
    const TreeNode& node = nodes[static_cast<std::size_t>(idx)];
    if (!node.is_leaf()) {
      stack.emplace_back(node.left, depth + 1);
      stack.emplace_back(node.right, depth + 1);
    }
  }
  return best;
}

std::size_t Tree::LeafSizeTotal() const {
  std::size_t total = 0;
  for (const auto& node : nodes) {
    if (node.is_leaf()) total += node.size;
  }
  return total;
}

bool GoesLeft(std::span<const double> x, std::span<const double> normal,
              std::span<const double> intercept) {
  double acc = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) acc += (x[j] - intercept[j]) * normal[j];
  return acc <= 0.0;
}

namespace {

constexpr int kMaxNormalDraws = 16;

class TreeBuilder {
 public:
  TreeBuilder(const DataMatrix& data, std::size_t height_limit, const Distribution& dist,
              ExtensionLevel extension, RngStream& rng)
      : data_(data), limit_(height_limit), dist_(dist), extension_(extension), rng_(rng) {}

  Tree Build(std::vector<std::size_t> rows) {
    tree_.height_limit = limit_;
    Grow(std::move(rows), 0);
    return std::move(tree_);
  }

 private:
  std::int32_t AddLeaf(std::size_t size) {
    TreeNode leaf;
    leaf.size = size;
    tree_.nodes.push_back(std::move(leaf));
    return static_cast<std::int32_t>(tree_.nodes.size() - 1);
  }

  std::int32_t Grow(std::vector<std::size_t> rows, std::size_t depth) {
    if (depth >= limit_ || rows.size() <= 1) return AddLeaf(rows.size());

    const std::size_t d = data_.cols();
    Vector lo(data_.row(rows.front()).begin(), data_.row(rows.front()).end());
    Vector hi = lo;
    for (std::size_t r : rows) {
      const auto x = data_.row(r);
      for (std::size_t j = 0; j < d; ++j) {
        lo[j] = std::min(lo[j], x[j]);
        hi[j] = std::max(hi[j], x[j]);
      }
    }

    Vector normal;
    Vector intercept;
    bool found = false;
    for (int attempt = 0; attempt < kMaxNormalDraws && !found; ++attempt) {
      const Vector omega = SampleNormalVector(dist_, rng_);
      intercept = SampleIntercept(lo, hi, rng_);
      for (int mask_try = 0; mask_try < 2 && !found; ++mask_try) {
        try {
          normal = ApplyExtensionMask(omega, extension_, rng_);
          found = true;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kDegenerateNormal) throw;
        }
      }
    }
    if (!found) return AddLeaf(rows.size());

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    for (std::size_t r : rows) {
      (GoesLeft(data_.row(r), normal, intercept) ? left_rows : right_rows).push_back(r);
    }

    const auto self = static_cast<std::int32_t>(tree_.nodes.size());
    TreeNode node;
    node.size = rows.size();
    node.normal = std::move(normal);
    node.intercept = std::move(intercept);
    tree_.nodes.push_back(std::move(node));
    rows.clear();
    rows.shrink_to_fit();

    const std::int32_t left = Grow(std::move(left_rows), depth + 1);
    const std::int32_t right = Grow(std::move(right_rows), depth + 1);
    tree_.nodes[static_cast<std::size_t>(self)].left = left;
    tree_.nodes[static_cast<std::size_t>(self)].right = right;
    return self;
  }

  const DataMatrix& data_;
  std::size_t limit_;
  const Distribution& dist_;
  ExtensionLevel extension_;
  RngStream& rng_;
  Tree tree_;
};

void ValidateTree(const Tree& tree, std::size_t dim, std::size_t height_limit, std::size_t index) {
  const std::string where = "tree " + std::to_string(index);
  if (tree.nodes.empty()) Fail(ErrorCode::kSchemaMismatch, where + " has no nodes");
  const auto count = static_cast<std::int32_t>(tree.nodes.size());
  for (const auto& node : tree.nodes) {
    if (node.is_leaf()) {
      if (node.right >= 0) Fail(ErrorCode::kSchemaMismatch, where + ": leaf with a right child");
      continue;
    }
    if (node.left <= 0 || node.right <= 0 || node.left >= count || node.right >= count) {
      Fail(ErrorCode::kSchemaMismatch, where + ": child index out of range");
    }
    if (node.normal.size() != dim || node.intercept.size() != dim) {
      Fail(ErrorCode::kDimensionMismatch, where + ": split vector length differs from " +
                                              std::to_string(dim));
    }
    if (std::all_of(node.normal.begin(), node.normal.end(), [](double v) { return v == 0.0; })) {
      Fail(ErrorCode::kSchemaMismatch, where + ": split normal is all zeros");
    }
  }
  // Reachability check guards against cycles in hand-edited models.
  std::vector<bool> seen(tree.nodes.size(), false);
  std::vector<std::pair<std::int32_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [idx, depth] = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(idx)]) Fail(ErrorCode::kSchemaMismatch, where + ": node reused");
    seen[static_cast<std::size_t>(idx)] = true;
    if (depth > height_limit) Fail(ErrorCode::kSchemaMismatch, where + " exceeds its height limit");
    const auto& node = tree.nodes[static_cast<std::size_t>(idx)];
    if (!node.is_leaf()) {
      stack.emplace_back(node.left, depth + 1);
      stack.emplace_back(node.right, depth + 1);
    }
  }
}

}  // namespace

Tree BuildTree(const DataMatrix& data, std::span<const std::size_t> rows,
               std::size_t height_limit, const Distribution& dist, ExtensionLevel extension,
               RngStream& rng) {
  if (DimensionOf(dist) != data.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "distribution dimension " +
                                            std::to_string(DimensionOf(dist)) +
                                            " does not match data width " +
                                            std::to_string(data.cols()));
  }
  extension.Resolve(data.cols());
  TreeBuilder builder(data, height_limit, dist, extension, rng);
  return builder.Build(std::vector<std::size_t>(rows.begin(), rows.end()));
}

double PathLength(std::span<const double> x, const Tree& tree, bool leaf_adjustment) {
  std::size_t idx = 0;
  double depth = 0.0;
  for (;;) {
    const TreeNode& node = tree.nodes[idx];
    if (node.is_leaf()) {
      if (leaf_adjustment && node.size > 1) return depth + CFactor(node.size);
      return depth;
    }
    idx = static_cast<std::size_t>(GoesLeft(x, node.normal, node.intercept) ? node.left
                                                                              : node.right);
    depth += 1.0;
  }
}

double ScoreFromPathLength(double mean_path, std::size_t subsample) {
  return std::exp2(-mean_path / CFactor(subsample));
}

Forest::Forest(Distribution dist, ForestParams params, std::size_t dim, std::vector<Tree> trees)
    : dist_(std::move(dist)), params_(params), dim_(dim), trees_(std::move(trees)) {
  if (DimensionOf(dist_) != dim_) Fail(ErrorCode::kDimensionMismatch, "distribution/forest dimension mismatch");
  if (params_.subsample < 2) Fail(ErrorCode::kInvalidArgument, "subsample size must be at least 2");
  if (trees_.size() != params_.trees || trees_.empty()) {
    Fail(ErrorCode::kSchemaMismatch, "forest holds " + std::to_string(trees_.size()) +
                                         " trees, expected " + std::to_string(params_.trees));
  }
  params_.extension.Resolve(dim_);
  const std::size_t limit = HeightLimit(params_.subsample);
  for (std::size_t i = 0; i < trees_.size(); ++i) {
    if (trees_[i].height_limit != limit) {
      Fail(ErrorCode::kSchemaMismatch, "tree " + std::to_string(i) + " has height limit " +
                                           std::to_string(trees_[i].height_limit) +
                                           ", expected " + std::to_string(limit));
    }
    ValidateTree(trees_[i], dim_, limit, i);
  }
}

double Forest::MeanPathLength(std::span<const double> x) const {
  if (x.size() != dim_) {
    Fail(ErrorCode::kDimensionMismatch, "point has " + std::to_string(x.size()) +
                                            " features, forest expects " + std::to_string(dim_));
  }
  double total = 0.0;
  for (const Tree& tree : trees_) total += PathLength(x, tree, params_.leaf_adjustment);
  return total / static_cast<double>(trees_.size());
}

double Forest::Score(std::span<const double> x) const {
  return ScoreFromPathLength(MeanPathLength(x), params_.subsample);
}

ScoreReport Forest::ScoreAll(const DataMatrix& data, std::size_t threads) const {
  if (!data.empty() && data.cols() != dim_) {
    Fail(ErrorCode::kDimensionMismatch, "data has " + std::to_string(data.cols()) +
                                            " features, forest expects " + std::to_string(dim_));
  }
  ScoreReport report;
  report.mean_path_length.resize(data.rows());
  report.scores.resize(data.rows());
  ParallelFor(data.rows(), threads, [&](std::size_t i) {
    const double h = MeanPathLength(data.row(i));
    report.mean_path_length[i] = h;
    report.scores[i] = ScoreFromPathLength(h, params_.subsample);
  });
  return report;
}

Forest Fit(const DataMatrix& data, const ForestParams& params, const Distribution& dist,
           std::size_t threads) {
  if (params.trees < 1) Fail(ErrorCode::kInvalidArgument, "number of trees must be at least 1");
  if (params.subsample < 2) Fail(ErrorCode::kInvalidArgument, "subsample size must be at least 2");
  if (params.subsample > data.rows()) {
    Fail(ErrorCode::kSubsampleTooLarge, "subsample size " + std::to_string(params.subsample) +
                                            " exceeds the " + std::to_string(data.rows()) +
                                            " available rows");
  }
  if (DimensionOf(dist) != data.cols()) {
    Fail(ErrorCode::kDimensionMismatch, "distribution dimension " +
                                            std::to_string(DimensionOf(dist)) +
                                            " does not match data width " +
                                            std::to_string(data.cols()));
  }
  params.extension.Resolve(data.cols());

  const std::size_t limit = HeightLimit(params.subsample);
  std::vector<Tree> trees(params.trees);
  ParallelFor(params.trees, threads, [&](std::size_t t) {
    RngStream rng(params.seed, t);
    std::vector<std::size_t> pool(data.rows());
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < params.subsample; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.Below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(params.subsample);
    trees[t] = BuildTree(data, pool, limit, dist, params.extension, rng);
  });
  return Forest(dist, params, data.cols(), std::move(trees));
}

Forest FitExtended(const DataMatrix& data, const ForestParams& params, std::size_t threads) {
  return Fit(data, params, GaussianSpec::Isotropic(data.cols()), threads);
}

}  // namespace aif
