#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "aif/linalg.hpp"
#include "aif/random.hpp"

namespace aif {

/// N(0, A) with its Cholesky factor cached. Construction fails with
/// kNotPositiveDefinite for singular or indefinite A.
class GaussianSpec {
 public:
  explicit GaussianSpec(SymMatrix cov);

  static GaussianSpec Isotropic(std::size_t dim) { return GaussianSpec(SymMatrix::Identity(dim)); }

  std::size_t dim() const noexcept { return cov_.dim(); }
  const SymMatrix& cov() const noexcept { return cov_; }
  const CholeskyFactor& chol() const noexcept { return chol_; }

 private:
  SymMatrix cov_;
  CholeskyFactor chol_;
};

struct MixtureComponent {
  double weight;
  GaussianSpec spec;
};

/// sum_i weight_i N(0, scale * A_i).
class MixtureSpec {
 public:
  /// Weights must lie in (0, 1] and sum to 1 within 1e-9; all components share
  /// one dimension; scale > 0.
  MixtureSpec(std::vector<MixtureComponent> components, double scale = 1.0);

  std::size_t dim() const noexcept { return components_.front().spec.dim(); }
  const std::vector<MixtureComponent>& components() const noexcept { return components_; }
  double scale() const noexcept { return scale_; }
  MixtureSpec WithScale(double scale) const { return MixtureSpec(components_, scale); }

 private:
  std::vector<MixtureComponent> components_;
  double scale_;
};

using Distribution = std::variant<GaussianSpec, MixtureSpec>;

std::size_t DimensionOf(const Distribution& dist);
/// True when the distribution is exactly N(0, I), i.e. the forest is an EIF.
bool IsIsotropic(const Distribution& dist);

/// Number of coordinate axes a split hyperplane may intersect, minus one.
/// Full() means k = d - 1 (no masking).
class ExtensionLevel {
 public:
  static ExtensionLevel Full() { return ExtensionLevel(std::nullopt); }
  static ExtensionLevel Level(std::size_t k) { return ExtensionLevel(k); }

  bool is_full() const noexcept { return !k_.has_value(); }
  /// Resolved k for dimension d. Throws kInvalidArgument if k > d - 1.
  std::size_t Resolve(std::size_t dim) const;
  std::optional<std::size_t> raw() const noexcept { return k_; }

  friend bool operator==(const ExtensionLevel&, const ExtensionLevel&) = default;

 private:
  explicit ExtensionLevel(std::optional<std::size_t> k) : k_(k) {}
  std::optional<std::size_t> k_;
};

/// L z for a caller-supplied standard-normal vector z.
Vector TransformStandardNormal(const GaussianSpec& spec, std::span<const double> z);

Vector SampleGaussian(const GaussianSpec& spec, RngStream& rng);

/// Picks component i with probability weight_i, then draws from N(0, scale * A_i).
Vector SampleMixture(const MixtureSpec& spec, RngStream& rng);

/// Same as SampleMixture, also reporting the chosen component.
Vector SampleMixture(const MixtureSpec& spec, RngStream& rng, std::size_t* component);

Vector SampleNormalVector(const Distribution& dist, RngStream& rng);

/// Gaussian draw normalized to unit length; near-zero draws (< 1e-12) are redrawn.
Vector SampleSphereUniform(std::size_t dim, RngStream& rng);

/// Zeroes d - k - 1 distinct components of omega chosen uniformly without
/// replacement (partial Fisher-Yates). Full level returns omega unchanged and
/// consumes no randomness. Throws kDegenerateNormal if every surviving
/// component is zero.
Vector ApplyExtensionMask(std::span<const double> omega, ExtensionLevel level, RngStream& rng);

/// Componentwise uniform on [lo_j, hi_j].
Vector SampleIntercept(std::span<const double> lo, std::span<const double> hi, RngStream& rng);

}  // namespace aif
