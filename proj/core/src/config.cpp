#include "aif/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "aif/error.hpp"
#include "config_json.hpp"
#include "json_util.hpp"

namespace aif {

namespace detail {

namespace {

[[noreturn]] void Invalid(std::string_view source, const std::string& path, const std::string& what) {
  Fail(ErrorCode::kInvalidArgument, std::string(source) + ": " + (path.empty() ? "/" : path) + ": " + what);
}

const Json& Member(const Json& obj, const char* key, std::string_view source, const std::string& path) {
  if (!obj.is_object()) Invalid(source, path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) Invalid(source, path + "/" + key, "missing required field");
  return *it;
}

double Number(const Json& j, std::string_view source, const std::string& path) {
  if (!j.is_number()) Invalid(source, path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) Invalid(source, path, "expected a finite number");
  return v;
}

std::uint64_t Unsigned(const Json& j, std::string_view source, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    Invalid(source, path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

bool Boolean(const Json& j, std::string_view source, const std::string& path) {
  if (!j.is_boolean()) Invalid(source, path, "expected true or false");
  return j.get<bool>();
}

std::vector<double> NumberArray(const Json& j, std::string_view source, const std::string& path) {
  if (!j.is_array() || j.empty()) Invalid(source, path, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(Number(j[i], source, path + "/" + std::to_string(i)));
  return out;
}

SymMatrix Matrix(const Json& dist, std::string_view source, const std::string& path) {
  if (dist.contains("cov")) {
    const Json& cov = dist["cov"];
    const std::string p = path + "/cov";
    if (!cov.is_array() || cov.empty()) Invalid(source, p, "expected a square array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < cov.size(); ++i) rows.push_back(NumberArray(cov[i], source, p + "/" + std::to_string(i)));
    try {
      return SymMatrix::FromRows(rows);
    } catch (const Error& e) {
      Invalid(source, p, e.what());
    }
  }
  if (dist.contains("diag")) return SymMatrix::Diagonal(NumberArray(dist["diag"], source, path + "/diag"));
  Invalid(source, path, "expected a \"cov\" or \"diag\" field");
}

GaussianSpec Gaussian(const Json& j, std::string_view source, const std::string& path) {
  SymMatrix cov = Matrix(j, source, path);
  try {
    return GaussianSpec(std::move(cov));
  } catch (const Error& e) {
    Fail(e.code(), std::string(source) + ": " + path + ": covariance is not positive definite (" + e.what() + ")");
  }
}

}  // namespace

Distribution DistributionFromJson(const Json& j, std::string_view source, const std::string& path) {
  const Json& kind = Member(j, "kind", source, path);
  if (kind == "gaussian") return Gaussian(j, source, path);
  if (kind != "mixture") Invalid(source, path + "/kind", "expected \"gaussian\" or \"mixture\"");

  const Json& comps = Member(j, "components", source, path);
  if (!comps.is_array() || comps.empty()) Invalid(source, path + "/components", "expected a non-empty array");
  std::vector<MixtureComponent> components;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string p = path + "/components/" + std::to_string(i);
    const double weight = Number(Member(comps[i], "weight", source, p), source, p + "/weight");
    components.push_back({weight, Gaussian(comps[i], source, p)});
  }
  const double scale = j.contains("scale") ? Number(j["scale"], source, path + "/scale") : 1.0;
  try {
    return MixtureSpec(std::move(components), scale);
  } catch (const Error& e) {
    Fail(e.code(), std::string(source) + ": " + path + ": " + e.what());
  }
}

Json DistributionToJson(const Distribution& dist) {
  if (const auto* g = std::get_if<GaussianSpec>(&dist)) {
    return Json{{"kind", "gaussian"}, {"cov", g->cov().ToRows()}};
  }
  const auto& m = std::get<MixtureSpec>(dist);
  Json comps = Json::array();
  for (const auto& c : m.components()) comps.push_back(Json{{"weight", c.weight}, {"cov", c.spec.cov().ToRows()}});
  return Json{{"kind", "mixture"}, {"scale", m.scale()}, {"components", std::move(comps)}};
}

RunConfig RunConfigFromJson(const Json& j, std::string_view source) {
  if (!j.is_object()) Invalid(source, "", "expected a JSON object");
  const std::uint64_t version = Unsigned(Member(j, "schema_version", source, ""), source, "/schema_version");
  if (version != kConfigSchemaVersion) {
    Fail(ErrorCode::kUnsupportedVersion, std::string(source) + ": config schema_version " + std::to_string(version) +
                                             " is not supported (expected " + std::to_string(kConfigSchemaVersion) + ")");
  }
  static const char* kKnown[] = {"schema_version", "distribution", "trees", "subsample", "extension",
                                 "seed", "leaf_adjustment", "standardize"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      Invalid(source, "/" + key, "unknown field");
    }
  }

  RunConfig config;
  config.distribution = DistributionFromJson(Member(j, "distribution", source, ""), source, "/distribution");
  const std::size_t dim = DimensionOf(config.distribution);
  if (j.contains("trees")) config.forest.trees = Unsigned(j["trees"], source, "/trees");
  if (j.contains("subsample")) config.forest.subsample = Unsigned(j["subsample"], source, "/subsample");
  if (j.contains("seed")) config.forest.seed = Unsigned(j["seed"], source, "/seed");
  if (j.contains("leaf_adjustment")) config.forest.leaf_adjustment = Boolean(j["leaf_adjustment"], source, "/leaf_adjustment");
  if (j.contains("standardize")) config.standardize = Boolean(j["standardize"], source, "/standardize");
  if (j.contains("extension")) {
    const Json& ext = j["extension"];
    if (ext.is_string() && ext == "full") {
      config.forest.extension = ExtensionLevel::Full();
    } else {
      const std::uint64_t k = Unsigned(ext, source, "/extension");
      if (k + 1 > dim) Invalid(source, "/extension", "must be \"full\" or an integer in [0, d - 1] = [0, " + std::to_string(dim - 1) + "]");
      config.forest.extension = ExtensionLevel::Level(k);
    }
  }
  if (config.forest.trees < 1) Invalid(source, "/trees", "must be at least 1");
  if (config.forest.subsample < 2) Invalid(source, "/subsample", "must be at least 2");
  return config;
}

Json RunConfigToJson(const RunConfig& config) {
  Json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["distribution"] = DistributionToJson(config.distribution);
  j["trees"] = config.forest.trees;
  j["subsample"] = config.forest.subsample;
  if (config.forest.extension.is_full()) {
    j["extension"] = "full";
  } else {
    j["extension"] = *config.forest.extension.raw();
  }
  j["seed"] = config.forest.seed;
  j["leaf_adjustment"] = config.forest.leaf_adjustment;
  j["standardize"] = config.standardize;
  return j;
}

}  // namespace detail

RunConfig ParseRunConfig(std::string_view text, std::string_view source) {
  return detail::RunConfigFromJson(detail::ParseJson(text, source), source);
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseRunConfig(buf.str(), path.string());
}

std::string DumpRunConfig(const RunConfig& config) { return detail::RunConfigToJson(config).dump(2) + "\n"; }

std::string_view DistributionKind(const Distribution& dist) {
  return std::holds_alternative<GaussianSpec>(dist) ? "gaussian" : "mixture";
}

}  // namespace aif
