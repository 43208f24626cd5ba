#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "formcap/record.hpp"

namespace formcap {

// Screen limit on composed menu length.
inline constexpr std::size_t kMaxMenuEntries = 23;

// Most-recently-used values for one field, most recent first, no
// duplicates, at most `capacity` entries.
class MruQueue {
public:
    MruQueue(FieldId field, std::size_t capacity);

    const FieldId& field() const { return field_; }
    std::size_t capacity() const { return capacity_; }
    const std::vector<std::string>& items() const { return items_; }

    // Move-to-front; empty values are ignored. O(capacity).
    void record_use(std::string_view value);
    void assign(std::vector<std::string> items);

private:
    FieldId field_;
    std::size_t capacity_;
    std::vector<std::string> items_;
};

struct SplitMenu {
    std::vector<std::string> recent;
    std::vector<std::string> fixed;
    bool category = false;  // labels the field instead of filling it

    std::size_t size() const { return recent.size() + fixed.size(); }
    const std::string& at(std::size_t index) const;
    // Position of the first entry equal to value, if any.
    std::optional<std::size_t> position_of(std::string_view value) const;
};

nlohmann::json split_menu_to_json(const SplitMenu& menu);

struct Choice {
    std::string value;
    bool category = false;
};

// Per-field menu state for one schema.
class MenuState {
public:
    explicit MenuState(const Schema& schema);

    // Throws Error(no_menu) when the field has no adaptive menu.
    void record_use(std::string_view field, std::string_view value);
    // Throws Error(no_menu) when the field has no menu of any kind.
    SplitMenu menu_for(std::string_view field) const;
    // Throws Error(invalid_argument) when index is past the end.
    Choice choose(std::string_view field, std::size_t index);

    const MruQueue* queue(std::string_view field) const;
    // Total number of remembered entries over every field.
    std::size_t entry_count() const;

    // {field-id: [recent...]} for adaptive fields.
    nlohmann::json to_json() const;
    void load_json(const nlohmann::json& j);

private:
    MruQueue& queue_or_throw(std::string_view field);

    Schema schema_;
    std::map<FieldId, MruQueue, std::less<>> queues_;
};

}  // namespace formcap
