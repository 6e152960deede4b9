#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "aif/forest.hpp"
#include "aif/sampling.hpp"

namespace aif {

inline constexpr int kConfigSchemaVersion = 1;

/// Everything needed to fit a forest. Serialized as JSON:
///
///   {
///     "schema_version": 1,
///     "distribution": {"kind": "gaussian", "cov": [[1, 0], [0, 0.05]]},
///     "trees": 500, "subsample": 128, "extension": "full",
///     "seed": 7, "leaf_adjustment": true, "standardize": false
///   }
///
/// A gaussian may give "diag": [...] instead of "cov". A mixture is
///   {"kind": "mixture", "scale": 2,
///    "components": [{"weight": 0.5, "cov": [[...]]}, ...]}
/// Matrices are row-major nested arrays; symmetry is checked to 1e-9 and
/// then enforced exactly.
struct RunConfig {
  Distribution distribution = GaussianSpec::Isotropic(2);
  ForestParams forest;
  bool standardize = false;
};

/// Parses and validates a config. Syntax errors report line:column, semantic
/// errors report the offending JSON path. Throws Error(kParseError /
/// kInvalidArgument / kUnsupportedVersion / kNotPositiveDefinite ...).
RunConfig ParseRunConfig(std::string_view text, std::string_view source = "<config>");
RunConfig LoadRunConfig(const std::filesystem::path& path);

std::string DumpRunConfig(const RunConfig& config);

/// "gaussian" or "mixture".
std::string_view DistributionKind(const Distribution& dist);

}  // namespace aif
