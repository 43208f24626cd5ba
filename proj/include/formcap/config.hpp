#pragma once

#include <string_view>
#include <vector>
#include <string>

#include <json.hpp>

namespace formcap {

// config/defaults.json as compiled into the library.
const nlohmann::json& default_config();
std::string_view default_config_text();

// config/base_dictionary.txt, comments and blank lines removed.
std::vector<std::string> base_dictionary_words();

}  // namespace formcap
