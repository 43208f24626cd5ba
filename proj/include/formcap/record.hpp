#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace formcap {

using FieldId = std::string;

enum class FieldKind { text, numeric, phone, email, date };

// How a field value arrived. Governs whether predictive fillin may
// overwrite it: only empty and fillin values are replaceable.
enum class Provenance { empty, typed, written, menu_chosen, fillin };

// Per-word entry method, one column of the scoring sheet. The first four
// are recognition-cascade stages for handwritten words.
enum class EntryMethod { correct, first_menu, letters, second_menu, typed, menu, fillin };

std::string_view to_string(FieldKind kind);
std::string_view to_string(Provenance provenance);
std::string_view to_string(EntryMethod method);
FieldKind parse_field_kind(std::string_view text);
Provenance parse_provenance(std::string_view text);
EntryMethod parse_entry_method(std::string_view text);

bool is_user_provenance(Provenance provenance);
bool is_recognition_stage(EntryMethod method);

struct FieldSpec {
    FieldId id;
    std::string label;
    FieldKind kind = FieldKind::text;
    std::vector<std::string> static_choices;
    bool adaptive_menu = false;
    int menu_capacity = 4;
    std::vector<std::string> category_choices;

    bool has_menu() const {
        return adaptive_menu || !static_choices.empty() || !category_choices.empty();
    }
};

class Schema {
public:
    Schema() = default;
    // Throws Error(invalid_argument) on duplicate ids, duplicate choices or
    // a non-positive capacity on an adaptive field.
    explicit Schema(std::vector<FieldSpec> fields);

    std::span<const FieldSpec> fields() const { return fields_; }
    std::size_t size() const { return fields_.size(); }

    const FieldSpec* find(std::string_view id) const;
    const FieldSpec& at(std::string_view id) const;
    bool contains(std::string_view id) const { return find(id) != nullptr; }
    std::optional<std::size_t> index_of(std::string_view id) const;

private:
    std::vector<FieldSpec> fields_;
};

struct FieldValue {
    std::string raw;
    Provenance provenance = Provenance::empty;
    std::vector<EntryMethod> word_methods;

    bool empty() const { return raw.empty(); }

    static FieldValue make(std::string raw, Provenance provenance);
};

struct Record {
    std::string id;
    std::uint64_t seq = 0;  // 0 until finalized into a store
    std::map<FieldId, FieldValue> values;

    // Missing fields read as empty.
    const FieldValue& value(std::string_view field) const;
    const std::string& raw(std::string_view field) const { return value(field).raw; }
    void set(const FieldId& field, std::string raw, Provenance provenance);
};

// Every value field must exist in the schema and satisfy
// provenance == empty <=> raw == "".
void validate_record(const Schema& schema, const Record& record);

std::vector<std::string> tokenize(std::string_view value);
std::string join_words(std::span<const std::string> words);
std::size_t word_count(std::string_view value);
// Number of non-whitespace characters, the unit used by the typing cost.
std::size_t char_count(std::string_view value);

struct PhoneParts {
    std::string copyable_prefix;
    std::string last;
};

// Drops the last whitespace word: "509 555 0000" -> {"509 555", "0000"}.
PhoneParts split_phone(std::string_view value);

struct EmailParts {
    std::string user;
    std::string domain_part;  // keeps the leading '@'
};

EmailParts split_email(std::string_view value);

inline const std::vector<std::string>& phone_categories() {
    static const std::vector<std::string> kCategories = {
        "Phone", "Home", "Work", "Fax", "Car", "Beeper", "Mobile", "Other"};
    return kCategories;
}

// The 17-field organizer schema with the compiled-in country list.
Schema default_schema();
Schema default_schema(std::vector<std::string> countries, int menu_capacity = 4);

void to_json(nlohmann::json& j, const FieldSpec& spec);
void from_json(const nlohmann::json& j, FieldSpec& spec);
nlohmann::json schema_to_json(const Schema& schema);
Schema schema_from_json(const nlohmann::json& j);

}  // namespace formcap
