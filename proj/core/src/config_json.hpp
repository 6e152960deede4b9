#pragma once

#include <string>
#include <string_view>

#include "aif/config.hpp"
#include "json.hpp"

namespace aif::detail {

Distribution DistributionFromJson(const nlohmann::json& j, std::string_view source, const std::string& path);
nlohmann::json DistributionToJson(const Distribution& dist);
RunConfig RunConfigFromJson(const nlohmann::json& j, std::string_view source);
nlohmann::json RunConfigToJson(const RunConfig& config);

}  // namespace aif::detail
