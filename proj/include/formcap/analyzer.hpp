#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "formcap/fillin.hpp"
#include "formcap/record.hpp"

namespace formcap {

// A whole field or a logical part of one (phone area code, phone area
// code + prefix, e-mail domain).
enum class Component { whole, phone_area, phone_area_prefix, email_domain };

struct Attribute {
    FieldId field;
    Component component = Component::whole;

    std::string id() const;  // "Phone1", "Phone1.area_prefix", ...
    std::string extract(const Record& record) const;

    friend bool operator==(const Attribute&, const Attribute&) = default;
};

// Components worth testing as dependency ranges for a field of this kind.
std::vector<Component> components_for(FieldKind kind);
Transform transform_for(Component component);
Component component_for(Transform transform);

struct Histogram {
    FieldId field;
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;

    // (value, count) by count descending, value ascending.
    std::vector<std::pair<std::string, std::size_t>> ranked() const;
};

Histogram histogram(std::span<const Record> corpus, const FieldId& field);

struct CoverageCurve {
    FieldId field;
    // coverage[k-1] is the share of non-empty values covered by the k most
    // frequent values; entries past the distinct count are 1.
    std::vector<double> coverage;
    Histogram histogram;
    std::size_t distinct = 0;
};

// Throws Error(no_data) when every value is empty, invalid_argument when k < 1.
CoverageCurve coverage_curve(std::span<const Record> corpus, const FieldId& field, std::size_t k);

// Smallest menu size reaching `target`; nullopt when that size exceeds
// max_entries or the curve never gets there.
std::optional<std::size_t> recommend_menu_size(const CoverageCurve& curve, double target = 0.5,
                                               std::size_t max_entries = 23);

struct DependencyStats {
    std::string domain;
    std::string range;
    std::size_t support = 0;            // records with both non-empty
    std::size_t repeated = 0;           // ...whose domain value occurs at least twice
    std::size_t functional = 0;         // records kept by the best domain->range map
    double density = 0.0;               // repeated / support
    double functionality = 0.0;         // functional / support
};

// Throws Error(no_data) when no record has both attributes non-empty.
DependencyStats dependency_stats(std::span<const Record> corpus, const Attribute& domain,
                                 const Attribute& range);

struct MiningThresholds {
    double min_density = 0.2;
    double min_functionality = 0.8;
    std::size_t min_support = 10;

    static MiningThresholds defaults();  // from the compiled-in config
};

struct MenuSizing {
    FieldId field;
    std::size_t distinct = 0;
    std::optional<std::size_t> size;
    double top1_share = 0.0;
};

struct MiningReport {
    MiningThresholds thresholds;
    std::vector<DependencyStats> dependencies;  // every pair with support > 0
    RuleSet rules;
    std::vector<MenuSizing> menus;
};

// Tests every ordered (field, field-or-component) pair and recommends a
// fillin rule for each pair passing all three thresholds. Per (trigger,
// target) the whole-field rule wins over component rules.
MiningReport mine(std::span<const Record> corpus, const Schema& schema,
                  const MiningThresholds& thresholds, double menu_target = 0.5,
                  std::size_t menu_max_entries = 23);

nlohmann::json coverage_to_json(const CoverageCurve& curve, std::optional<std::size_t> recommended);
nlohmann::json mining_report_to_json(const MiningReport& report);
std::string format_mining_report(const MiningReport& report);
// k,coverage rows for plotting.
std::string coverage_csv(const CoverageCurve& curve);

}  // namespace formcap
