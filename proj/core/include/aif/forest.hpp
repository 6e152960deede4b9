#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aif/dataset.hpp"
#include "aif/linalg.hpp"
#include "aif/random.hpp"
#include "aif/sampling.hpp"

namespace aif {

inline constexpr double kEulerMascheroni = 0.5772156649;

/// Average unsuccessful-search path length of a binary search tree over n
/// points: 2 H(n - 1) - 2 (n - 1) / n with H(m) = ln m + 0.5772156649.
/// Zero for n < 2.
double CFactor(std::size_t n);

/// ceil(log2(c)) for c >= 1, computed in integers.
std::size_t HeightLimit(std::size_t subsample);

/// A split node holds a hyperplane (normal, intercept) and two children; a
/// leaf holds the number of training points that ended there.
struct TreeNode {
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::size_t size = 0;
  Vector normal;
  Vector intercept;

  bool is_leaf() const noexcept { return left < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Nodes in preorder; nodes[0] is the root.
struct Tree {
  std::vector<TreeNode> nodes;
  std::size_t height_limit = 0;

  std::size_t MaxDepth() const;
  std::size_t LeafSizeTotal() const;
  friend bool operator==(const Tree&, const Tree&) = default;
};

/// (x - p)' omega <= 0 sends x left. The non-strict inequality follows the
/// tree-building algorithm; equality is measure-zero for continuous data.
bool GoesLeft(std::span<const double> x, std::span<const double> normal,
              std::span<const double> intercept);

struct ForestParams {
  std::size_t trees = 100;
  std::size_t subsample = 256;
  ExtensionLevel extension = ExtensionLevel::Full();
  std::uint64_t seed = 0;
  bool leaf_adjustment = true;

  friend bool operator==(const ForestParams&, const ForestParams&) = default;
};

/// Grows one isolation tree over the given rows of `data`, drawing every
/// normal from `dist` and every intercept from the bounding box of the rows
/// reaching the node. A node becomes a leaf at depth >= height_limit or with
/// at most one row. When masking leaves an all-zero normal the mask is
/// redrawn once, then the normal; after 16 failed normals the node is a leaf.
Tree BuildTree(const DataMatrix& data, std::span<const std::size_t> rows,
               std::size_t height_limit, const Distribution& dist, ExtensionLevel extension,
               RngStream& rng);

/// Edges from the root to the leaf reached by x, plus CFactor(leaf size) at
/// leaves holding more than one point when `leaf_adjustment` is set.
double PathLength(std::span<const double> x, const Tree& tree, bool leaf_adjustment);

struct ScoreReport {
  std::vector<double> mean_path_length;
  std::vector<double> scores;
};

class Forest {
 public:
  /// Assembles a forest from parts (used by deserialization); validates shape.
  Forest(Distribution dist, ForestParams params, std::size_t dim, std::vector<Tree> trees);

  const Distribution& distribution() const noexcept { return dist_; }
  const ForestParams& params() const noexcept { return params_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t height_limit() const noexcept { return HeightLimit(params_.subsample); }
  const std::vector<Tree>& trees() const noexcept { return trees_; }

  double MeanPathLength(std::span<const double> x) const;
  /// 2^(-E[h(x)] / c(subsample)).
  double Score(std::span<const double> x) const;
  ScoreReport ScoreAll(const DataMatrix& data, std::size_t threads = 1) const;

  friend bool operator==(const Forest& a, const Forest& b) {
    return a.params_ == b.params_ && a.dim_ == b.dim_ && a.trees_ == b.trees_;
  }

 private:
  Distribution dist_;
  ForestParams params_;
  std::size_t dim_;
  std::vector<Tree> trees_;
};

/// Fits `params.trees` trees, tree i on a without-replacement subsample of
/// size params.subsample drawn from RngStream(params.seed, i). The result does
/// not depend on `threads`. Throws kSubsampleTooLarge when the subsample
/// exceeds the row count and kDimensionMismatch when dist and data disagree.
Forest Fit(const DataMatrix& data, const ForestParams& params, const Distribution& dist,
           std::size_t threads = 1);

/// Standard EIF: the same fit with N(0, I) normals.
Forest FitExtended(const DataMatrix& data, const ForestParams& params, std::size_t threads = 1);

/// 2^(-mean_path / CFactor(subsample)).
double ScoreFromPathLength(double mean_path, std::size_t subsample);

}  // namespace aif
