#include "formcap/fillin.hpp"

#include <algorithm>
#include <array>

#include "formcap/error.hpp"

namespace formcap {

namespace {
constexpr std::array<std::string_view, 4> kTransformNames = {"verbatim", "email_domain",
                                                             "phone_area_prefix", "phone_area"};
}

std::string_view to_string(Transform t) { return kTransformNames[static_cast<std::size_t>(t)]; }

Transform parse_transform(std::string_view text) {
    for (std::size_t i = 0; i < kTransformNames.size(); ++i) {
        if (kTransformNames[i] == text) return static_cast<Transform>(i);
    }
    throw Error(ErrorCode::invalid_argument, "unknown transform '" + std::string(text) + "'");
}

std::string apply_transform(Transform transform, std::string_view value) {
    switch (transform) {
        case Transform::verbatim:
            return std::string(value);
        case Transform::email_domain:
            return split_email(value).domain_part;
        case Transform::phone_area_prefix:
            return word_count(value) == 0 ? std::string() : split_phone(value).copyable_prefix;
        case Transform::phone_area: {
            auto words = tokenize(value);
            return words.empty() ? std::string() : words.front();
        }
    }
    return {};
}

RuleSet::RuleSet(std::vector<FillinRule> rules) {
    for (auto& rule : rules) add(std::move(rule));
}

void RuleSet::add(FillinRule rule) {
    if (rule.trigger == rule.target) {
        throw Error(ErrorCode::invalid_argument, "rule trigger and target are both '" + rule.target + "'");
    }
    if (contains(rule.trigger, rule.target)) {
        throw Error(ErrorCode::conflict,
                    "duplicate rule " + rule.trigger + " -> " + rule.target);
    }
    rules_.push_back(std::move(rule));
}

const FillinRule* RuleSet::find(std::string_view trigger, std::string_view target) const {
    auto it = std::find_if(rules_.begin(), rules_.end(), [&](const FillinRule& r) {
        return r.trigger == trigger && r.target == target;
    });
    return it == rules_.end() ? nullptr : &*it;
}

bool RuleSet::contains(std::string_view trigger, std::string_view target) const {
    return find(trigger, target) != nullptr;
}

std::vector<FillinRule> RuleSet::for_trigger(std::string_view trigger) const {
    std::vector<FillinRule> out;
    for (const auto& r : rules_) {
        if (r.trigger == trigger) out.push_back(r);
    }
    return out;
}

bool RuleSet::is_trigger(std::string_view field) const {
    return std::any_of(rules_.begin(), rules_.end(),
                       [&](const FillinRule& r) { return r.trigger == field; });
}

void RuleSet::validate(const Schema& schema) const {
    for (const auto& r : rules_) {
        schema.at(r.trigger);
        schema.at(r.target);
    }
}

RuleSet default_rules() {
    RuleSet rules;
    for (const char* target : {"Address1", "Address2", "City", "State", "ZipCode", "Country"}) {
        rules.add({"Company", target, Transform::verbatim});
    }
    rules.add({"Company", "Email", Transform::email_domain});
    for (const char* phone : {"Phone1", "Phone2", "Phone3", "Phone4"}) {
        rules.add({"Company", phone, Transform::phone_area_prefix});
    }
    for (const char* target : {"State", "ZipCode", "Country"}) {
        rules.add({"City", target, Transform::verbatim});
    }
    for (const char* phone : {"Phone1", "Phone2", "Phone3", "Phone4"}) {
        rules.add({"City", phone, Transform::phone_area});
    }
    rules.add({"State", "Country", Transform::verbatim});
    return rules;
}

nlohmann::json rules_to_json(const RuleSet& rules) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rules.rules()) {
        arr.push_back({{"trigger", r.trigger}, {"target", r.target}, {"transform", to_string(r.transform)}});
    }
    return {{"rules", arr}};
}

RuleSet rules_from_json(const nlohmann::json& j) {
    RuleSet rules;
    for (const auto& r : j.at("rules")) {
        rules.add({r.at("trigger").get<std::string>(), r.at("target").get<std::string>(),
                   parse_transform(r.value("transform", std::string("verbatim")))});
    }
    return rules;
}

nlohmann::json fillin_event_to_json(const FillinEvent& e) {
    return {{"target", e.target}, {"value", e.value}, {"source_seq", e.source_seq}, {"trigger", e.trigger}};
}

std::vector<FillinEvent> apply_on_commit(Record& draft, std::string_view field,
                                         std::string_view value, const RecordStore& store,
                                         const RuleSet& rules) {
    store.schema().at(field);
    if (value.empty()) throw Error(ErrorCode::invalid_argument, "empty value for trigger '" + std::string(field) + "'");

    std::vector<FillinEvent> events;
    const Record* source = store.find_latest_match(field, value);
    if (source == nullptr) return events;
    for (const auto& rule : rules.rules()) {
        if (rule.trigger != field) continue;
        const auto& current = draft.value(rule.target);
        if (is_user_provenance(current.provenance)) continue;
        const auto& source_raw = source->raw(rule.target);
        if (source_raw.empty()) continue;
        auto filled = apply_transform(rule.transform, source_raw);
        if (filled.empty()) continue;
        draft.set(rule.target, filled, Provenance::fillin);
        events.push_back({rule.target, std::move(filled), source->seq, rule.trigger});
    }
    return events;
}

}  // namespace formcap
