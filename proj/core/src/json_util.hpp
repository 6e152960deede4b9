#pragma once

#include <string>
#include <string_view>

#include "aif/error.hpp"
#include "json.hpp"

namespace aif::detail {

using Json = nlohmann::json;

inline Json ParseJson(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    Fail(ErrorCode::kParseError, std::string(source) + ":" + std::to_string(line) + ":" +
                                     std::to_string(column) + ": " + e.what());
  }
}

}  // namespace aif::detail
