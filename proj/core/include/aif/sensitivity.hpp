#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "aif/linalg.hpp"
#include "aif/random.hpp"
#include "aif/sampling.hpp"

namespace aif {

/// Unit vector in R^d.
class Direction {
 public:
  /// Accepts v only if | ||v|| - 1 | <= 1e-10.
  static Direction FromUnit(std::span<const double> v);
  /// Rescales v to unit length; v must be nonzero.
  static Direction Normalized(std::span<const double> v);
  static Direction Axis(std::size_t dim, std::size_t index);
  static Direction Polar(double theta);

  std::size_t dim() const noexcept { return v_.size(); }
  std::span<const double> values() const noexcept { return v_; }
  operator std::span<const double>() const noexcept { return v_; }
  double operator[](std::size_t i) const noexcept { return v_[i]; }

 private:
  explicit Direction(Vector v) : v_(std::move(v)) {}
  Vector v_;
};

/// Spherical cap {n : angle(n, axis) <= half_angle}, half_angle in (0, pi].
struct CapRegion {
  Direction axis;
  double half_angle;
};

/// Arbitrary region given by a membership test over unit vectors; sampled by
/// rejection from the uniform sphere.
struct PredicateRegion {
  std::size_t dim;
  std::function<bool(std::span<const double>)> contains;
};

using SphereRegion = std::variant<CapRegion, PredicateRegion>;

SphereRegion FullSphere(std::size_t dim);

/// Uniform draw from the region. Caps are sampled exactly; predicates by
/// rejection, failing with kEmptyRegion after 10^6 consecutive misses.
Vector SampleRegion(const SphereRegion& region, RngStream& rng);

/// sqrt(n' A n) for unit n. The quadratic form is divided by n' n, which is 1
/// up to rounding, so that A = I gives exactly 1.
double Alpha(std::span<const double> n, const SymMatrix& a);

/// sum_i pi_i sqrt(n' (scale A_i) n).
double AlphaMixture(std::span<const double> n, const MixtureSpec& mixture);

/// Alpha at (cos theta, sin theta); A must be 2 x 2.
double AlphaPolar(double theta, const SymMatrix& a);
double AlphaMixturePolar(double theta, const MixtureSpec& mixture);

/// Half-length of the projection of the ellipsoid x' A^-1 x = 1 onto the axis
/// directed by n, i.e. max x'n over the ellipsoid, which is sqrt(n' A n).
/// Requires A positive definite (kNotPositiveDefinite).
double EllipsoidProjectionHalfLength(const SymMatrix& a, std::span<const double> n);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

inline constexpr std::size_t kDefaultTauSamples = 100000;

/// Mean of alpha over `samples` uniform draws from the region, with the
/// standard error of the mean. samples >= 100.
MonteCarloEstimate Tau(const SphereRegion& region, const SymMatrix& a, std::size_t samples,
                       RngStream& rng);
MonteCarloEstimate TauMixture(const SphereRegion& region, const MixtureSpec& mixture,
                              std::size_t samples, RngStream& rng);

struct AlphaMaximum {
  Vector direction;
  double value = 0.0;
};

/// Maximizes AlphaMixture over the sphere: a coarse pass over `grid`
/// directions (an even theta grid when d = 2, seeded sphere samples
/// otherwise) followed by coordinate ascent with a step halved on each
/// failed pass, for 50 step sizes.
AlphaMaximum MaximizeAlphaMixture(const MixtureSpec& mixture, std::size_t grid = 10000);

/// Returns the mixture with its scale chosen so that max_n AlphaMixture = 1.
MixtureSpec NormalizeMixture(const MixtureSpec& mixture, std::size_t grid = 10000);

/// Sampled alpha values, keyed by theta (2-D) or by direction index.
struct SensitivityProfile {
  std::vector<double> keys;
  std::vector<double> values;
};

SensitivityProfile AlphaProfilePolar(const Distribution& dist, std::span<const double> thetas);
SensitivityProfile AlphaProfile(const Distribution& dist, const std::vector<Direction>& directions);

/// alpha or alpha-tilde depending on the distribution kind.
double AlphaOf(std::span<const double> n, const Distribution& dist);

}  // namespace aif
