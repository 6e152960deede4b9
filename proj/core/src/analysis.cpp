#include "aif/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "aif/error.hpp"
#include "aif/parallel.hpp"

namespace aif {

namespace {

void Require2D(const Forest& forest) {
  if (forest.dim() != 2) {
    Fail(ErrorCode::kDimensionMismatch, "operation needs a 2-D forest, got d = " +
                                            std::to_string(forest.dim()));
  }
}

}  // namespace

double Grid2D::CenterX(std::size_t ix) const {
  return x.lo + (static_cast<double>(ix) + 0.5) * (x.hi - x.lo) / static_cast<double>(nx);
}

double Grid2D::CenterY(std::size_t iy) const {
  return y.lo + (static_cast<double>(iy) + 0.5) * (y.hi - y.lo) / static_cast<double>(ny);
}

double Grid2D::Interpolate(double px, double py) const {
  auto locate = [](double p, double lo, double hi, std::size_t n, std::size_t& i0, double& frac) {
    const double cell = (hi - lo) / static_cast<double>(n);
    const double u = (p - lo) / cell - 0.5;
    if (n == 1 || u <= 0.0) {
      i0 = 0;
      frac = 0.0;
      return;
    }
    if (u >= static_cast<double>(n - 1)) {
      i0 = n - 2;
      frac = 1.0;
      return;
    }
    i0 = static_cast<std::size_t>(u);
    frac = u - static_cast<double>(i0);
  };
  std::size_t ix, iy;
  double fx, fy;
  locate(px, x.lo, x.hi, nx, ix, fx);
  locate(py, y.lo, y.hi, ny, iy, fy);
  const std::size_t ix1 = nx == 1 ? ix : ix + 1;
  const std::size_t iy1 = ny == 1 ? iy : iy + 1;
  const double bottom = (1.0 - fx) * At(ix, iy) + fx * At(ix1, iy);
  const double top = (1.0 - fx) * At(ix, iy1) + fx * At(ix1, iy1);
  return (1.0 - fy) * bottom + fy * top;
}

Grid2D ScoreGrid(const Forest& forest, Range x, Range y, std::size_t nx, std::size_t ny,
                 std::size_t threads) {
  Require2D(forest);
  if (nx == 0 || ny == 0) Fail(ErrorCode::kInvalidArgument, "grid resolution must be positive");
  if (!(x.hi > x.lo) || !(y.hi > y.lo)) Fail(ErrorCode::kInvalidArgument, "grid ranges must have hi > lo");
  Grid2D grid{x, y, nx, ny, std::vector<double>(nx * ny)};
  ParallelFor(nx * ny, threads, [&](std::size_t k) {
    const double point[2] = {grid.CenterX(k % nx), grid.CenterY(k / nx)};
    grid.scores[k] = forest.Score(point);
  });
  return grid;
}

std::vector<double> EvenThetas(std::size_t count) {
  std::vector<double> thetas(count);
  for (std::size_t k = 0; k < count; ++k) {
    thetas[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
  }
  return thetas;
}

std::vector<double> RaySamples(double rho_min, double rho_max, std::size_t samples) {
  if (samples == 0) Fail(ErrorCode::kInvalidArgument, "rays need at least one sample");
  if (!(rho_min >= 0.0) || !(rho_max > rho_min)) Fail(ErrorCode::kInvalidArgument, "need 0 <= rho_min < rho_max");
  std::vector<double> rhos(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    rhos[i] = samples == 1 ? rho_min
                           : rho_min + (rho_max - rho_min) * static_cast<double>(i) /
                                           static_cast<double>(samples - 1);
  }
  return rhos;
}

namespace {

RayProfile Rays(std::span<const double> thetas, double rho_min, double rho_max,
                std::size_t samples, std::size_t threads,
                const std::function<double(double, double)>& score_at) {
  const auto rhos = RaySamples(rho_min, rho_max, samples);
  RayProfile profile;
  profile.thetas.assign(thetas.begin(), thetas.end());
  profile.mean_scores.resize(thetas.size());
  profile.rho_min = rho_min;
  profile.rho_max = rho_max;
  profile.samples_per_ray = samples;
  ParallelFor(thetas.size(), threads, [&](std::size_t k) {
    const double c = std::cos(thetas[k]);
    const double s = std::sin(thetas[k]);
    double total = 0.0;
    for (double rho : rhos) total += score_at(rho * c, rho * s);
    profile.mean_scores[k] = total / static_cast<double>(rhos.size());
  });
  return profile;
}

}  // namespace

RayProfile RayMeanScores(const Forest& forest, std::span<const double> thetas, double rho_min,
                         double rho_max, std::size_t samples_per_ray, std::size_t threads) {
  Require2D(forest);
  return Rays(thetas, rho_min, rho_max, samples_per_ray, threads, [&](double px, double py) {
    const double point[2] = {px, py};
    return forest.Score(point);
  });
}

RayProfile RayMeanScoresFromGrid(const Grid2D& grid, std::span<const double> thetas,
                                 double rho_min, double rho_max, std::size_t samples_per_ray) {
  return Rays(thetas, rho_min, rho_max, samples_per_ray, 1,
              [&](double px, double py) { return grid.Interpolate(px, py); });
}

AnomalyLabeling LabelTopFraction(std::span<const double> scores, double q) {
  if (scores.empty()) Fail(ErrorCode::kEmptyInput, "no scores to label");
  if (!(q > 0.0 && q < 1.0)) Fail(ErrorCode::kInvalidArgument, "fraction q must lie in (0, 1)");
  const std::size_t n = scores.size();
  // Guard against q * n landing a rounding error above an integer.
  auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, n);
  std::vector<double> sorted(scores.begin(), scores.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1), sorted.end(),
                   std::greater<>());
  AnomalyLabeling out;
  out.threshold = sorted[k - 1];
  out.fraction = q;
  out.flags.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.flags[i] = scores[i] >= out.threshold;
    if (out.flags[i]) ++out.flagged;
  }
  return out;
}

std::vector<TTestResult> CompareAnomalyFeatures(const DataMatrix& data,
                                                const std::vector<bool>& flags_a,
                                                const std::vector<bool>& flags_b, TTestKind kind) {
  if (flags_a.size() != data.rows() || flags_b.size() != data.rows()) {
    Fail(ErrorCode::kDimensionMismatch, "flag vectors must match the number of data rows");
  }
  const auto count = [](const std::vector<bool>& f) { return std::count(f.begin(), f.end(), true); };
  if (count(flags_a) < 2 || count(flags_b) < 2) {
    Fail(ErrorCode::kTooFewAnomalies, "each anomaly set needs at least two rows");
  }
  std::vector<TTestResult> results;
  results.reserve(data.cols());
  for (std::size_t j = 0; j < data.cols(); ++j) {
    std::vector<double> a;
    std::vector<double> b;
    for (std::size_t i = 0; i < data.rows(); ++i) {
      if (flags_a[i]) a.push_back(data(i, j));
      if (flags_b[i]) b.push_back(data(i, j));
    }
    results.push_back(kind == TTestKind::kWelch ? WelchTTest(a, b) : PooledTTest(a, b));
  }
  return results;
}

namespace {

struct Point2 {
  double x, y;
};
using Polygon = std::vector<Point2>;

double SideValue(const Point2& pt, const TreeNode& node) {
  return (pt.x - node.intercept[0]) * node.normal[0] + (pt.y - node.intercept[1]) * node.normal[1];
}

// Sutherland-Hodgman against one half-plane: keep_left keeps side value <= 0.
Polygon ClipPolygon(const Polygon& poly, const TreeNode& node, bool keep_left) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const double va = SideValue(a, node);
    const double vb = SideValue(b, node);
    const bool in_a = keep_left ? va <= 0.0 : va > 0.0;
    const bool in_b = keep_left ? vb <= 0.0 : vb > 0.0;
    if (in_a) out.push_back(a);
    if (in_a != in_b) {
      const double t = va / (va - vb);
      out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  return out;
}

// Intersection of the split line with a convex polygon.
bool ClipLine(const Polygon& poly, const TreeNode& node, Segment& seg) {
  std::vector<Point2> hits;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    const double va = SideValue(a, node);
    const double vb = SideValue(b, node);
    if (va == 0.0) hits.push_back(a);
    if ((va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0)) {
      const double t = va / (va - vb);
      hits.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
  }
  if (hits.size() < 2) return false;
  // Farthest pair; a convex polygon yields at most two distinct hits.
  std::size_t bi = 0, bj = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      const double dx = hits[i].x - hits[j].x;
      const double dy = hits[i].y - hits[j].y;
      if (dx * dx + dy * dy > best) {
        best = dx * dx + dy * dy;
        bi = i;
        bj = j;
      }
    }
  }
  if (best <= 0.0) return false;
  seg.x0 = hits[bi].x;
  seg.y0 = hits[bi].y;
  seg.x1 = hits[bj].x;
  seg.y1 = hits[bj].y;
  return true;
}

void Partition(const Tree& tree, std::size_t idx, const Polygon& cell, std::size_t depth,
               std::vector<Segment>& out) {
  const TreeNode& node = tree.nodes[idx];
  if (node.is_leaf() || cell.size() < 3) return;
  Segment seg{0, 0, 0, 0, depth};
  if (ClipLine(cell, node, seg)) out.push_back(seg);
  Partition(tree, static_cast<std::size_t>(node.left), ClipPolygon(cell, node, true), depth + 1, out);
  Partition(tree, static_cast<std::size_t>(node.right), ClipPolygon(cell, node, false), depth + 1, out);
}

}  // namespace

std::vector<Segment> ExportTreePartitions(const Tree& tree, const Box2D& bounds) {
  if (!(bounds.x.hi > bounds.x.lo) || !(bounds.y.hi > bounds.y.lo)) {
    Fail(ErrorCode::kInvalidArgument, "partition bounds must have hi > lo");
  }
  for (const auto& node : tree.nodes) {
    if (!node.is_leaf() && node.normal.size() != 2) {
      Fail(ErrorCode::kDimensionMismatch, "partition export needs a 2-D tree");
    }
  }
  std::vector<Segment> out;
  if (tree.nodes.empty()) return out;
  const Polygon box{{bounds.x.lo, bounds.y.lo},
                    {bounds.x.hi, bounds.y.lo},
                    {bounds.x.hi, bounds.y.hi},
                    {bounds.x.lo, bounds.y.hi}};
  Partition(tree, 0, box, 0, out);
  return out;
}

double SegmentAngleDegrees(const Segment& s) {
  double angle = std::atan2(s.y1 - s.y0, s.x1 - s.x0) * 180.0 / std::numbers::pi;
  while (angle > 90.0) angle -= 180.0;
  while (angle <= -90.0) angle += 180.0;
  return angle;
}

DataMatrix MakeBlob(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0 || d == 0) Fail(ErrorCode::kInvalidArgument, "blob needs n >= 1 and d >= 1");
  RngStream rng(seed, 0);
  DataMatrix out(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) out(i, j) = rng.StandardNormal();
  }
  return out;
}

}  // namespace aif
