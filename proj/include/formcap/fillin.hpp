#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "formcap/record.hpp"
#include "formcap/store.hpp"

namespace formcap {

enum class Transform { verbatim, email_domain, phone_area_prefix, phone_area };

std::string_view to_string(Transform transform);
Transform parse_transform(std::string_view text);

// verbatim: unchanged; email_domain: drop the user id, keep "@...";
// phone_area_prefix: drop the last word; phone_area: first word only.
std::string apply_transform(Transform transform, std::string_view value);

struct FillinRule {
    FieldId trigger;
    FieldId target;
    Transform transform = Transform::verbatim;

    friend bool operator==(const FillinRule&, const FillinRule&) = default;
};

class RuleSet {
public:
    RuleSet() = default;
    explicit RuleSet(std::vector<FillinRule> rules);

    // Throws on trigger == target or a repeated (trigger, target) pair.
    void add(FillinRule rule);
    bool contains(std::string_view trigger, std::string_view target) const;
    const FillinRule* find(std::string_view trigger, std::string_view target) const;
    std::vector<FillinRule> for_trigger(std::string_view trigger) const;
    std::span<const FillinRule> rules() const { return rules_; }
    std::size_t size() const { return rules_.size(); }
    bool is_trigger(std::string_view field) const;

    // Every trigger and target must be a schema field.
    void validate(const Schema& schema) const;

private:
    std::vector<FillinRule> rules_;
};

// Company -> address, city, state, zip, country, e-mail domain, phone
// area+prefix (11 targets); City -> state, zip, country, phone area;
// State -> country.
RuleSet default_rules();

nlohmann::json rules_to_json(const RuleSet& rules);
RuleSet rules_from_json(const nlohmann::json& j);

struct FillinEvent {
    FieldId target;
    std::string value;
    std::uint64_t source_seq = 0;
    FieldId trigger;

    friend bool operator==(const FillinEvent&, const FillinEvent&) = default;
};

nlohmann::json fillin_event_to_json(const FillinEvent& event);

// Runs the rules for `field` after the user commits `value` on a draft.
// Copies transformed values from the latest store record whose `field`
// equals `value` into targets that are empty or hold an earlier fillin.
// User-entered targets and empty source values are skipped. The trigger
// field itself is left to the caller.
std::vector<FillinEvent> apply_on_commit(Record& draft, std::string_view field,
                                         std::string_view value, const RecordStore& store,
                                         const RuleSet& rules);

}  // namespace formcap
