#include "formcap/record.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <utility>

#include "formcap/config.hpp"
#include "formcap/error.hpp"

namespace formcap {

namespace {

constexpr std::array<std::string_view, 5> kKindNames = {"text", "numeric", "phone", "email", "date"};
constexpr std::array<std::string_view, 5> kProvenanceNames = {"empty", "typed", "written",
                                                              "menu_chosen", "fillin"};
constexpr std::array<std::string_view, 7> kMethodNames = {
    "correct", "first_menu", "letters", "second_menu", "typed", "menu", "fillin"};

template <typename Enum, std::size_t N>
Enum parse_enum(const std::array<std::string_view, N>& names, std::string_view text,
                std::string_view what) {
    for (std::size_t i = 0; i < N; ++i) {
        if (names[i] == text) return static_cast<Enum>(i);
    }
    throw Error(ErrorCode::invalid_argument,
                "unknown " + std::string(what) + " '" + std::string(text) + "'");
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

template <typename T>
bool has_duplicates(std::vector<T> items) {
    std::sort(items.begin(), items.end());
    return std::adjacent_find(items.begin(), items.end()) != items.end();
}

}  // namespace

std::string_view to_string(FieldKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }
std::string_view to_string(Provenance p) { return kProvenanceNames[static_cast<std::size_t>(p)]; }
std::string_view to_string(EntryMethod m) { return kMethodNames[static_cast<std::size_t>(m)]; }

FieldKind parse_field_kind(std::string_view text) {
    return parse_enum<FieldKind>(kKindNames, text, "field kind");
}
Provenance parse_provenance(std::string_view text) {
    return parse_enum<Provenance>(kProvenanceNames, text, "provenance");
}
EntryMethod parse_entry_method(std::string_view text) {
    return parse_enum<EntryMethod>(kMethodNames, text, "entry method");
}

bool is_user_provenance(Provenance p) {
    return p == Provenance::typed || p == Provenance::written || p == Provenance::menu_chosen;
}

bool is_recognition_stage(EntryMethod m) {
    return m == EntryMethod::correct || m == EntryMethod::first_menu ||
           m == EntryMethod::letters || m == EntryMethod::second_menu;
}

Schema::Schema(std::vector<FieldSpec> fields) : fields_(std::move(fields)) {
    std::set<std::string_view> ids;
    for (const auto& spec : fields_) {
        if (spec.id.empty()) throw Error(ErrorCode::invalid_argument, "empty field id");
        if (!ids.insert(spec.id).second) {
            throw Error(ErrorCode::invalid_argument, "duplicate field id '" + spec.id + "'");
        }
        if (spec.adaptive_menu && spec.menu_capacity < 1) {
            throw Error(ErrorCode::invalid_argument,
                        "field '" + spec.id + "' has an adaptive menu with capacity < 1");
        }
        if (has_duplicates(spec.static_choices) || has_duplicates(spec.category_choices)) {
            throw Error(ErrorCode::invalid_argument,
                        "field '" + spec.id + "' has duplicate menu choices");
        }
    }
}

const FieldSpec* Schema::find(std::string_view id) const {
    auto it = std::find_if(fields_.begin(), fields_.end(),
                           [&](const FieldSpec& f) { return f.id == id; });
    return it == fields_.end() ? nullptr : &*it;
}

const FieldSpec& Schema::at(std::string_view id) const {
    if (const auto* spec = find(id)) return *spec;
    throw Error(ErrorCode::not_found, "unknown field '" + std::string(id) + "'");
}

std::optional<std::size_t> Schema::index_of(std::string_view id) const {
    for (std::size_t i = 0; i < fields_.size(); ++i) {
        if (fields_[i].id == id) return i;
    }
    return std::nullopt;
}

FieldValue FieldValue::make(std::string raw, Provenance provenance) {
    FieldValue v;
    v.provenance = raw.empty() ? Provenance::empty : provenance;
    if (!raw.empty() && provenance == Provenance::empty) v.provenance = Provenance::typed;
    v.raw = std::move(raw);
    return v;
}

const FieldValue& Record::value(std::string_view field) const {
    static const FieldValue kEmpty;
    auto it = values.find(std::string(field));
    return it == values.end() ? kEmpty : it->second;
}

void Record::set(const FieldId& field, std::string raw, Provenance provenance) {
    values[field] = FieldValue::make(std::move(raw), provenance);
}

void validate_record(const Schema& schema, const Record& record) {
    for (const auto& [field, value] : record.values) {
        if (!schema.contains(field)) {
            throw Error(ErrorCode::not_found, "unknown field '" + field + "'");
        }
        if (value.raw.empty() != (value.provenance == Provenance::empty)) {
            throw Error(ErrorCode::invalid_argument,
                        "field '" + field + "': provenance must be empty iff value is empty");
        }
    }
}

std::vector<std::string> tokenize(std::string_view value) {
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < value.size()) {
        while (i < value.size() && is_space(value[i])) ++i;
        std::size_t start = i;
        while (i < value.size() && !is_space(value[i])) ++i;
        if (i > start) words.emplace_back(value.substr(start, i - start));
    }
    return words;
}

std::string join_words(std::span<const std::string> words) {
    std::string out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += ' ';
        out += words[i];
    }
    return out;
}

std::size_t word_count(std::string_view value) { return tokenize(value).size(); }

std::size_t char_count(std::string_view value) {
    return static_cast<std::size_t>(
        std::count_if(value.begin(), value.end(), [](char c) { return !is_space(c); }));
}

PhoneParts split_phone(std::string_view value) {
    auto words = tokenize(value);
    if (words.empty()) throw Error(ErrorCode::invalid_argument, "empty phone");
    PhoneParts parts;
    parts.last = words.back();
    words.pop_back();
    parts.copyable_prefix = join_words(words);
    return parts;
}

EmailParts split_email(std::string_view value) {
    auto at = value.find('@');
    if (at == std::string_view::npos) return {std::string(value), ""};
    return {std::string(value.substr(0, at)), std::string(value.substr(at))};
}

Schema default_schema() {
    const auto& cfg = default_config().at("schema");
    return default_schema(cfg.at("countries").get<std::vector<std::string>>(),
                          cfg.at("menu_capacity").get<int>());
}

Schema default_schema(std::vector<std::string> countries, int menu_capacity) {
    auto field = [&](FieldId id, std::string label, FieldKind kind, bool adaptive) {
        FieldSpec spec;
        spec.id = std::move(id);
        spec.label = std::move(label);
        spec.kind = kind;
        spec.adaptive_menu = adaptive;
        spec.menu_capacity = menu_capacity;
        return spec;
    };
    auto phone = [&](int n) {
        auto spec = field("Phone" + std::to_string(n), "Phone " + std::to_string(n),
                          FieldKind::phone, false);
        spec.category_choices = phone_categories();
        return spec;
    };

    std::vector<FieldSpec> fields;
    auto honorific = field("Honorific", "Honorific", FieldKind::text, true);
    honorific.static_choices = {"Ms.", "Mrs.", "Mr.", "Dr."};
    fields.push_back(std::move(honorific));
    fields.push_back(field("FirstName", "First Name", FieldKind::text, false));
    fields.push_back(field("LastName", "Last Name", FieldKind::text, false));
    fields.push_back(field("Title", "Title", FieldKind::text, true));
    fields.push_back(field("Company", "Company", FieldKind::text, true));
    fields.push_back(field("Address1", "Address", FieldKind::text, true));
    fields.push_back(field("Address2", "Address 2", FieldKind::text, false));
    fields.push_back(field("City", "City", FieldKind::text, true));
    fields.push_back(field("State", "State", FieldKind::text, true));
    fields.push_back(field("ZipCode", "Zip Code", FieldKind::numeric, true));
    auto country = field("Country", "Country", FieldKind::text, true);
    country.static_choices = std::move(countries);
    fields.push_back(std::move(country));
    fields.push_back(field("Email", "E-Mail", FieldKind::email, true));
    for (int n = 1; n <= 4; ++n) fields.push_back(phone(n));
    fields.push_back(field("Birthdate", "Birthdate", FieldKind::date, false));
    return Schema(std::move(fields));
}

void to_json(nlohmann::json& j, const FieldSpec& spec) {
    j = nlohmann::json{{"id", spec.id},
                       {"label", spec.label},
                       {"kind", to_string(spec.kind)},
                       {"static_choices", spec.static_choices},
                       {"adaptive_menu", spec.adaptive_menu},
                       {"menu_capacity", spec.menu_capacity},
                       {"category_choices", spec.category_choices}};
}

void from_json(const nlohmann::json& j, FieldSpec& spec) {
    spec.id = j.at("id").get<std::string>();
    spec.label = j.value("label", spec.id);
    spec.kind = parse_field_kind(j.value("kind", std::string("text")));
    spec.static_choices = j.value("static_choices", std::vector<std::string>{});
    spec.adaptive_menu = j.value("adaptive_menu", false);
    spec.menu_capacity = j.value("menu_capacity", 4);
    spec.category_choices = j.value("category_choices", std::vector<std::string>{});
}

nlohmann::json schema_to_json(const Schema& schema) {
    nlohmann::json fields = nlohmann::json::array();
    for (const auto& spec : schema.fields()) fields.push_back(spec);
    return {{"fields", fields}};
}

Schema schema_from_json(const nlohmann::json& j) {
    return Schema(j.at("fields").get<std::vector<FieldSpec>>());
}

}  // namespace formcap
