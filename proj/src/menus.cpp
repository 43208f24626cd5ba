#include "formcap/menus.hpp"

#include <algorithm>

#include "formcap/error.hpp"

namespace formcap {

MruQueue::MruQueue(FieldId field, std::size_t capacity)
    : field_(std::move(field)), capacity_(capacity) {
    if (capacity_ == 0) throw Error(ErrorCode::invalid_argument, "menu capacity must be >= 1");
    items_.reserve(capacity_ + 1);
}

void MruQueue::record_use(std::string_view value) {
    if (value.empty()) return;
    auto it = std::find(items_.begin(), items_.end(), value);
    if (it != items_.end()) {
        std::rotate(items_.begin(), it, it + 1);
        return;
    }
    items_.insert(items_.begin(), std::string(value));
    if (items_.size() > capacity_) items_.pop_back();
}

void MruQueue::assign(std::vector<std::string> items) {
    items_.clear();
    // Oldest first so the first listed item ends up in front.
    for (auto it = items.rbegin(); it != items.rend(); ++it) record_use(*it);
}

const std::string& SplitMenu::at(std::size_t index) const {
    if (index < recent.size()) return recent[index];
    if (index < size()) return fixed[index - recent.size()];
    throw Error(ErrorCode::invalid_argument,
                "menu index " + std::to_string(index) + " out of range (" +
                    std::to_string(size()) + " entries)");
}

std::optional<std::size_t> SplitMenu::position_of(std::string_view value) const {
    for (std::size_t i = 0; i < size(); ++i) {
        if (at(i) == value) return i;
    }
    return std::nullopt;
}

nlohmann::json split_menu_to_json(const SplitMenu& menu) {
    return {{"recent", menu.recent}, {"fixed", menu.fixed}, {"category", menu.category}};
}

MenuState::MenuState(const Schema& schema) : schema_(schema) {
    for (const auto& spec : schema.fields()) {
        if (spec.adaptive_menu) {
            queues_.emplace(spec.id, MruQueue(spec.id, static_cast<std::size_t>(spec.menu_capacity)));
        }
    }
}

MruQueue& MenuState::queue_or_throw(std::string_view field) {
    auto it = queues_.find(field);
    if (it == queues_.end()) {
        schema_.at(field);
        throw Error(ErrorCode::no_menu, "no menu for field '" + std::string(field) + "'");
    }
    return it->second;
}

void MenuState::record_use(std::string_view field, std::string_view value) {
    queue_or_throw(field).record_use(value);
}

const MruQueue* MenuState::queue(std::string_view field) const {
    auto it = queues_.find(field);
    return it == queues_.end() ? nullptr : &it->second;
}

SplitMenu MenuState::menu_for(std::string_view field) const {
    const auto& spec = schema_.at(field);
    if (!spec.has_menu()) {
        throw Error(ErrorCode::no_menu, "no menu for field '" + std::string(field) + "'");
    }
    SplitMenu menu;
    if (!spec.adaptive_menu && spec.static_choices.empty()) {
        menu.category = true;
        menu.fixed = spec.category_choices;
    } else {
        if (const auto* q = queue(field)) menu.recent = q->items();
        menu.fixed = spec.static_choices;
    }
    if (menu.recent.size() > kMaxMenuEntries) menu.recent.resize(kMaxMenuEntries);
    if (menu.size() > kMaxMenuEntries) menu.fixed.resize(kMaxMenuEntries - menu.recent.size());
    return menu;
}

Choice MenuState::choose(std::string_view field, std::size_t index) {
    auto menu = menu_for(field);
    Choice choice{menu.at(index), menu.category};
    if (!menu.category) {
        if (auto it = queues_.find(field); it != queues_.end()) it->second.record_use(choice.value);
    }
    return choice;
}

std::size_t MenuState::entry_count() const {
    std::size_t n = 0;
    for (const auto& [_, q] : queues_) n += q.items().size();
    return n;
}

nlohmann::json MenuState::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [field, q] : queues_) j[field] = q.items();
    return j;
}

void MenuState::load_json(const nlohmann::json& j) {
    for (const auto& [field, items] : j.items()) {
        queue_or_throw(field).assign(items.get<std::vector<std::string>>());
    }
}

}  // namespace formcap
