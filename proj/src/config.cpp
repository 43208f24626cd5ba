#include "formcap/config.hpp"

#include <sstream>

namespace formcap {

namespace embedded {
extern const std::string_view kDefaultsJson;
extern const std::string_view kBaseDictionary;
}  // namespace embedded

std::string_view default_config_text() { return embedded::kDefaultsJson; }

const nlohmann::json& default_config() {
    static const nlohmann::json config = nlohmann::json::parse(embedded::kDefaultsJson);
    return config;
}

std::vector<std::string> base_dictionary_words() {
    std::vector<std::string> words;
    std::istringstream in{std::string(embedded::kBaseDictionary)};
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        words.push_back(line);
    }
    return words;
}

}  // namespace formcap
