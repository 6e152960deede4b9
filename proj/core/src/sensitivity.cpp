#include "aif/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "aif/error.hpp"

namespace aif {

Direction Direction::FromUnit(std::span<const double> v) {
  if (v.empty()) Fail(ErrorCode::kInvalidArgument, "direction must be non-empty");
  if (std::abs(Norm(v) - 1.0) > 1e-10) Fail(ErrorCode::kInvalidArgument, "direction is not unit length");
  return Direction(Vector(v.begin(), v.end()));
}

Direction Direction::Normalized(std::span<const double> v) {
  const double norm = v.empty() ? 0.0 : Norm(v);
  if (!(norm > 0.0) || !std::isfinite(norm)) Fail(ErrorCode::kInvalidArgument, "cannot normalize a zero vector");
  Vector out(v.begin(), v.end());
  for (double& x : out) x /= norm;
  return Direction(std::move(out));
}

Direction Direction::Axis(std::size_t dim, std::size_t index) {
  if (index >= dim) Fail(ErrorCode::kInvalidArgument, "axis index out of range");
  Vector v(dim, 0.0);
  v[index] = 1.0;
  return Direction(std::move(v));
}

Direction Direction::Polar(double theta) { return Direction(Vector{std::cos(theta), std::sin(theta)}); }

SphereRegion FullSphere(std::size_t dim) {
  return CapRegion{Direction::Axis(dim, 0), std::numbers::pi};
}

namespace {

constexpr std::size_t kMaxRejections = 1000000;

Vector SampleCap(const CapRegion& cap, RngStream& rng) {
  const std::size_t d = cap.axis.dim();
  if (!(cap.half_angle > 0.0 && cap.half_angle <= std::numbers::pi)) {
    Fail(ErrorCode::kInvalidArgument, "cap half-angle must lie in (0, pi]");
  }
  if (d == 1) {
    if (cap.half_angle >= std::numbers::pi) return SampleSphereUniform(1, rng);
    return Vector(cap.axis.values().begin(), cap.axis.values().end());
  }
  if (cap.half_angle >= std::numbers::pi) return SampleSphereUniform(d, rng);

  // The polar angle psi from the axis has density proportional to
  // sin(psi)^(d-2) on [0, half_angle]; draw it by rejection from the uniform.
  const double sin_max = std::sin(std::min(cap.half_angle, std::numbers::pi / 2.0));
  const double power = static_cast<double>(d - 2);
  double psi = 0.0;
  for (;;) {
    psi = cap.half_angle * rng.Uniform01();
    if (d == 2) break;
    const double accept = std::pow(std::sin(psi) / sin_max, power);
    if (rng.Uniform01() < accept) break;
  }

  // Uniform unit vector in the orthogonal complement of the axis.
  const auto axis = cap.axis.values();
  Vector v(d);
  for (;;) {
    for (double& x : v) x = rng.StandardNormal();
    const double along = Dot(v, axis);
    for (std::size_t j = 0; j < d; ++j) v[j] -= along * axis[j];
    const double norm = Norm(v);
    if (norm >= 1e-12) {
      for (double& x : v) x /= norm;
      break;
    }
  }
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  Vector n(d);
  for (std::size_t j = 0; j < d; ++j) n[j] = c * axis[j] + s * v[j];
  return n;
}

double SqrtNonNegative(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

template <typename Integrand>
MonteCarloEstimate Estimate(const SphereRegion& region, std::size_t samples, RngStream& rng,
                            Integrand integrand) {
  if (samples < 100) Fail(ErrorCode::kInvalidArgument, "Monte Carlo needs at least 100 samples");
  std::vector<double> values(samples);
  double sum = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const Vector n = SampleRegion(region, rng);
    values[i] = integrand(n);
    sum += values[i];
  }
  const double mean = sum / static_cast<double>(samples);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double variance = ss / static_cast<double>(samples - 1);
  return {mean, std::sqrt(variance / static_cast<double>(samples)), samples};
}

std::size_t RegionDim(const SphereRegion& region) {
  if (const auto* cap = std::get_if<CapRegion>(&region)) return cap->axis.dim();
  return std::get<PredicateRegion>(region).dim;
}

}  // namespace

Vector SampleRegion(const SphereRegion& region, RngStream& rng) {
  if (const auto* cap = std::get_if<CapRegion>(&region)) return SampleCap(*cap, rng);
  const auto& pred = std::get<PredicateRegion>(region);
  if (pred.dim == 0 || !pred.contains) Fail(ErrorCode::kInvalidArgument, "invalid predicate region");
  for (std::size_t tries = 0; tries < kMaxRejections; ++tries) {
    Vector n = SampleSphereUniform(pred.dim, rng);
    if (pred.contains(n)) return n;
  }
  Fail(ErrorCode::kEmptyRegion, "no member of the region found in 10^6 proposals");
}

double Alpha(std::span<const double> n, const SymMatrix& a) {
  const double q = QuadraticForm(n, a);
  return SqrtNonNegative(q / Dot(n, n));
}

double AlphaMixture(std::span<const double> n, const MixtureSpec& mixture) {
  if (n.size() != mixture.dim()) Fail(ErrorCode::kDimensionMismatch, "direction/mixture dimension mismatch");
  const double nn = Dot(n, n);
  double total = 0.0;
  for (const auto& comp : mixture.components()) {
    total += comp.weight * SqrtNonNegative(mixture.scale() * QuadraticForm(n, comp.spec.cov()) / nn);
  }
  return total;
}

double AlphaPolar(double theta, const SymMatrix& a) {
  if (a.dim() != 2) Fail(ErrorCode::kDimensionMismatch, "polar sensitivity needs a 2 x 2 matrix");
  return Alpha(Direction::Polar(theta), a);
}

double AlphaMixturePolar(double theta, const MixtureSpec& mixture) {
  if (mixture.dim() != 2) Fail(ErrorCode::kDimensionMismatch, "polar sensitivity needs a 2-D mixture");
  return AlphaMixture(Direction::Polar(theta), mixture);
}

double EllipsoidProjectionHalfLength(const SymMatrix& a, std::span<const double> n) {
  Cholesky(a);
  return Alpha(n, a);
}

MonteCarloEstimate Tau(const SphereRegion& region, const SymMatrix& a, std::size_t samples,
                       RngStream& rng) {
  if (RegionDim(region) != a.dim()) Fail(ErrorCode::kDimensionMismatch, "region/matrix dimension mismatch");
  return Estimate(region, samples, rng, [&](const Vector& n) { return Alpha(n, a); });
}

MonteCarloEstimate TauMixture(const SphereRegion& region, const MixtureSpec& mixture,
                              std::size_t samples, RngStream& rng) {
  if (RegionDim(region) != mixture.dim()) Fail(ErrorCode::kDimensionMismatch, "region/mixture dimension mismatch");
  return Estimate(region, samples, rng, [&](const Vector& n) { return AlphaMixture(n, mixture); });
}

AlphaMaximum MaximizeAlphaMixture(const MixtureSpec& mixture, std::size_t grid) {
  const std::size_t d = mixture.dim();
  if (grid == 0) Fail(ErrorCode::kInvalidArgument, "search grid must be non-empty");
  AlphaMaximum best;
  best.value = -1.0;
  auto consider = [&](Vector n) {
    const double norm = Norm(n);
    if (!(norm > 0.0)) return;
    for (double& x : n) x /= norm;
    const double value = AlphaMixture(n, mixture);
    if (value > best.value) {
      best.value = value;
      best.direction = std::move(n);
    }
  };

  if (d == 1) {
    consider(Vector{1.0});
    return best;
  }
  if (d == 2) {
    for (std::size_t k = 0; k < grid; ++k) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(grid);
      consider(Vector{std::cos(theta), std::sin(theta)});
    }
  } else {
    RngStream rng(0x9E3779B97F4A7C15ULL, 0);
    for (std::size_t k = 0; k < grid; ++k) consider(SampleSphereUniform(d, rng));
  }
  for (const auto& comp : mixture.components()) {
    consider(Eigh(comp.spec.cov()).eigenvectors.front());
  }

  double step = 0.1;
  for (int level = 0; level < 50; ++level) {
    for (int pass = 0; pass < 1000; ++pass) {
      const double before = best.value;
      const Vector center = best.direction;
      for (std::size_t j = 0; j < d; ++j) {
        for (double sign : {1.0, -1.0}) {
          Vector trial = center;
          trial[j] += sign * step;
          consider(std::move(trial));
        }
      }
      if (!(best.value > before)) break;
    }
    step *= 0.5;
  }
  return best;
}

MixtureSpec NormalizeMixture(const MixtureSpec& mixture, std::size_t grid) {
  // AlphaMixture scales with sqrt(scale), so the unit-scale maximum fixes it.
  const MixtureSpec unit = mixture.WithScale(1.0);
  const AlphaMaximum peak = MaximizeAlphaMixture(unit, grid);
  if (!(peak.value > 0.0)) Fail(ErrorCode::kZeroMatrix, "mixture sensitivity is zero everywhere");
  return mixture.WithScale(1.0 / (peak.value * peak.value));
}

double AlphaOf(std::span<const double> n, const Distribution& dist) {
  if (const auto* g = std::get_if<GaussianSpec>(&dist)) return Alpha(n, g->cov());
  return AlphaMixture(n, std::get<MixtureSpec>(dist));
}

SensitivityProfile AlphaProfilePolar(const Distribution& dist, std::span<const double> thetas) {
  if (DimensionOf(dist) != 2) Fail(ErrorCode::kDimensionMismatch, "polar profile needs a 2-D distribution");
  SensitivityProfile profile;
  profile.keys.assign(thetas.begin(), thetas.end());
  profile.values.reserve(thetas.size());
  for (double theta : thetas) profile.values.push_back(AlphaOf(Direction::Polar(theta), dist));
  return profile;
}

SensitivityProfile AlphaProfile(const Distribution& dist, const std::vector<Direction>& directions) {
  SensitivityProfile profile;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    profile.keys.push_back(static_cast<double>(i));
    profile.values.push_back(AlphaOf(directions[i], dist));
  }
  return profile;
}

}  // namespace aif
