#include "aif/sampling.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "aif/error.hpp"

namespace aif {

GaussianSpec::GaussianSpec(SymMatrix cov) : cov_(std::move(cov)), chol_(Cholesky(cov_)) {}

MixtureSpec::MixtureSpec(std::vector<MixtureComponent> components, double scale)
    : components_(std::move(components)), scale_(scale) {
  if (components_.empty()) Fail(ErrorCode::kInvalidArgument, "mixture needs at least one component");
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
    Fail(ErrorCode::kInvalidArgument, "mixture scale must be positive and finite");
  }
  double total = 0.0;
  const std::size_t dim = components_.front().spec.dim();
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    if (!(c.weight > 0.0 && c.weight <= 1.0)) {
      Fail(ErrorCode::kInvalidArgument,
           "mixture weight " + std::to_string(i) + " must lie in (0, 1]");
    }
    if (c.spec.dim() != dim) {
      Fail(ErrorCode::kDimensionMismatch, "mixture component " + std::to_string(i) +
                                              " has dimension " + std::to_string(c.spec.dim()) +
                                              ", expected " + std::to_string(dim));
    }
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    Fail(ErrorCode::kInvalidArgument, "mixture weights sum to " + std::to_string(total));
  }
}

std::size_t DimensionOf(const Distribution& dist) {
  return std::visit([](const auto& d) { return d.dim(); }, dist);
}

bool IsIsotropic(const Distribution& dist) {
  const auto* g = std::get_if<GaussianSpec>(&dist);
  return g != nullptr && g->cov().IsIdentity();
}

std::size_t ExtensionLevel::Resolve(std::size_t dim) const {
  if (dim == 0) Fail(ErrorCode::kInvalidArgument, "dimension must be positive");
  if (!k_) return dim - 1;
  if (*k_ > dim - 1) {
    Fail(ErrorCode::kInvalidArgument, "extension level " + std::to_string(*k_) +
                                          " exceeds d - 1 = " + std::to_string(dim - 1));
  }
  return *k_;
}

Vector TransformStandardNormal(const GaussianSpec& spec, std::span<const double> z) {
  return spec.chol().Apply(z);
}

Vector SampleGaussian(const GaussianSpec& spec, RngStream& rng) {
  Vector z(spec.dim());
  for (double& v : z) v = rng.StandardNormal();
  return spec.chol().Apply(z);
}

Vector SampleMixture(const MixtureSpec& spec, RngStream& rng, std::size_t* component) {
  const auto& comps = spec.components();
  const double u = rng.Uniform01();
  std::size_t pick = comps.size() - 1;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    cumulative += comps[i].weight;
    if (u < cumulative) {
      pick = i;
      break;
    }
  }
  if (component != nullptr) *component = pick;
  Vector draw = SampleGaussian(comps[pick].spec, rng);
  if (spec.scale() != 1.0) {
    const double root = std::sqrt(spec.scale());
    for (double& v : draw) v *= root;
  }
  return draw;
}

Vector SampleMixture(const MixtureSpec& spec, RngStream& rng) {
  return SampleMixture(spec, rng, nullptr);
}

Vector SampleNormalVector(const Distribution& dist, RngStream& rng) {
  if (const auto* g = std::get_if<GaussianSpec>(&dist)) return SampleGaussian(*g, rng);
  return SampleMixture(std::get<MixtureSpec>(dist), rng);
}

Vector SampleSphereUniform(std::size_t dim, RngStream& rng) {
  if (dim == 0) Fail(ErrorCode::kInvalidArgument, "sphere dimension must be positive");
  Vector v(dim);
  for (;;) {
    for (double& x : v) x = rng.StandardNormal();
    const double norm = Norm(v);
    if (norm >= 1e-12) {
      for (double& x : v) x /= norm;
      return v;
    }
  }
}

Vector ApplyExtensionMask(std::span<const double> omega, ExtensionLevel level, RngStream& rng) {
  const std::size_t dim = omega.size();
  const std::size_t k = level.Resolve(dim);
  Vector out(omega.begin(), omega.end());
  const std::size_t zeroed = dim - k - 1;
  if (zeroed > 0) {
    std::vector<std::size_t> idx(dim);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < zeroed; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.Below(dim - i));
      std::swap(idx[i], idx[j]);
      out[idx[i]] = 0.0;
    }
  }
  for (double v : out) {
    if (v != 0.0) return out;
  }
  Fail(ErrorCode::kDegenerateNormal, "all surviving normal components are zero");
}

Vector SampleIntercept(std::span<const double> lo, std::span<const double> hi, RngStream& rng) {
  if (lo.size() != hi.size()) Fail(ErrorCode::kDimensionMismatch, "intercept box bounds differ in length");
  Vector p(lo.size());
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (lo[j] > hi[j]) Fail(ErrorCode::kInvalidArgument, "intercept box has lo > hi");
    p[j] = rng.Uniform(lo[j], hi[j]);
  }
  return p;
}

}  // namespace aif
