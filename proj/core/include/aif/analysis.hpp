#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aif/dataset.hpp"
#include "aif/forest.hpp"
#include "aif/stats.hpp"

namespace aif {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

/// Forest scores at the centres of an nx x ny grid; scores[iy * nx + ix].
struct Grid2D {
  Range x;
  Range y;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::vector<double> scores;

  double CenterX(std::size_t ix) const;
  double CenterY(std::size_t iy) const;
  double At(std::size_t ix, std::size_t iy) const { return scores[iy * nx + ix]; }
  /// Bilinear interpolation between cell centres, clamped at the border.
  double Interpolate(double px, double py) const;
};

Grid2D ScoreGrid(const Forest& forest, Range x, Range y, std::size_t nx, std::size_t ny,
                 std::size_t threads = 1);

inline constexpr double kDefaultRhoMin = 1.0;
inline constexpr double kDefaultRhoMax = 4.0;
inline constexpr std::size_t kDefaultRaySamples = 200;

/// Mean score along the polar ray {(rho, theta) : rho_min <= rho <= rho_max}.
struct RayProfile {
  std::vector<double> thetas;
  std::vector<double> mean_scores;
  double rho_min = kDefaultRhoMin;
  double rho_max = kDefaultRhoMax;
  std::size_t samples_per_ray = kDefaultRaySamples;
};

/// `count` angles k * 2 pi / count, k = 0..count-1.
std::vector<double> EvenThetas(std::size_t count);

/// rho values evenly spaced over [rho_min, rho_max] (just rho_min for one sample).
std::vector<double> RaySamples(double rho_min, double rho_max, std::size_t samples);

RayProfile RayMeanScores(const Forest& forest, std::span<const double> thetas,
                         double rho_min = kDefaultRhoMin, double rho_max = kDefaultRhoMax,
                         std::size_t samples_per_ray = kDefaultRaySamples, std::size_t threads = 1);

/// Same profile read off a precomputed grid by bilinear interpolation.
RayProfile RayMeanScoresFromGrid(const Grid2D& grid, std::span<const double> thetas,
                                 double rho_min = kDefaultRhoMin, double rho_max = kDefaultRhoMax,
                                 std::size_t samples_per_ray = kDefaultRaySamples);

struct AnomalyLabeling {
  double threshold = 0.0;
  double fraction = 0.0;
  std::vector<bool> flags;
  std::size_t flagged = 0;
};

/// Flags scores >= the smallest value s such that at least ceil(q n) scores
/// are >= s. Every score tied with the threshold is flagged, so more than
/// ceil(q n) points can be flagged. Throws kEmptyInput / kInvalidArgument.
AnomalyLabeling LabelTopFraction(std::span<const double> scores, double q);

enum class TTestKind { kWelch, kPooled };

/// Per column, a t-test between the rows flagged in `flags_a` and in `flags_b`.
/// Throws kTooFewAnomalies if either set has fewer than two rows.
std::vector<TTestResult> CompareAnomalyFeatures(const DataMatrix& data,
                                                const std::vector<bool>& flags_a,
                                                const std::vector<bool>& flags_b,
                                                TTestKind kind = TTestKind::kWelch);

struct Box2D {
  Range x;
  Range y;
};

struct Segment {
  double x0, y0, x1, y1;
  std::size_t depth;
};

/// Each split line (x - p)' omega = 0 clipped to its node's cell within
/// `bounds`, in preorder. Lines that miss their cell produce no segment.
std::vector<Segment> ExportTreePartitions(const Tree& tree, const Box2D& bounds);

/// Angle of a segment to the x-axis in degrees, folded into (-90, 90].
double SegmentAngleDegrees(const Segment& s);

/// n draws from the standard d-variate Gaussian, RngStream(seed, 0).
DataMatrix MakeBlob(std::size_t n, std::size_t d, std::uint64_t seed);

}  // namespace aif
