#include "formcap/analyzer.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "formcap/config.hpp"
#include "formcap/error.hpp"

namespace formcap {

namespace {

std::string_view component_suffix(Component c) {
    switch (c) {
        case Component::whole: return "";
        case Component::phone_area: return "area";
        case Component::phone_area_prefix: return "area_prefix";
        case Component::email_domain: return "domain";
    }
    return "";
}

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

}  // namespace

std::string Attribute::id() const {
    if (component == Component::whole) return field;
    return field + "." + std::string(component_suffix(component));
}

std::string Attribute::extract(const Record& record) const {
    const auto& raw = record.raw(field);
    switch (component) {
        case Component::whole: return raw;
        case Component::phone_area: return apply_transform(Transform::phone_area, raw);
        case Component::phone_area_prefix: return apply_transform(Transform::phone_area_prefix, raw);
        case Component::email_domain: return apply_transform(Transform::email_domain, raw);
    }
    return raw;
}

std::vector<Component> components_for(FieldKind kind) {
    switch (kind) {
        case FieldKind::phone: return {Component::phone_area_prefix, Component::phone_area};
        case FieldKind::email: return {Component::email_domain};
        default: return {};
    }
}

Transform transform_for(Component c) {
    switch (c) {
        case Component::whole: return Transform::verbatim;
        case Component::phone_area: return Transform::phone_area;
        case Component::phone_area_prefix: return Transform::phone_area_prefix;
        case Component::email_domain: return Transform::email_domain;
    }
    return Transform::verbatim;
}

Component component_for(Transform t) {
    switch (t) {
        case Transform::verbatim: return Component::whole;
        case Transform::phone_area: return Component::phone_area;
        case Transform::phone_area_prefix: return Component::phone_area_prefix;
        case Transform::email_domain: return Component::email_domain;
    }
    return Component::whole;
}

std::vector<std::pair<std::string, std::size_t>> Histogram::ranked() const {
    std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
    // counts is a std::map, so a stable sort on count keeps values ascending.
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

Histogram histogram(std::span<const Record> corpus, const FieldId& field) {
    Histogram h;
    h.field = field;
    for (const auto& record : corpus) {
        const auto& raw = record.raw(field);
        if (raw.empty()) continue;
        ++h.counts[raw];
        ++h.total;
    }
    return h;
}

CoverageCurve coverage_curve(std::span<const Record> corpus, const FieldId& field, std::size_t k) {
    if (k < 1) throw Error(ErrorCode::invalid_argument, "coverage curve needs k >= 1");
    CoverageCurve curve;
    curve.field = field;
    curve.histogram = histogram(corpus, field);
    if (curve.histogram.total == 0) {
        throw Error(ErrorCode::no_data, "no data for field '" + field + "'");
    }
    const auto ranked = curve.histogram.ranked();
    curve.distinct = ranked.size();
    curve.coverage.reserve(k);
    std::size_t covered = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (i < ranked.size()) covered += ranked[i].second;
        curve.coverage.push_back(static_cast<double>(covered) /
                                 static_cast<double>(curve.histogram.total));
    }
    return curve;
}

std::optional<std::size_t> recommend_menu_size(const CoverageCurve& curve, double target,
                                               std::size_t max_entries) {
    if (!(target > 0.0 && target <= 1.0)) {
        throw Error(ErrorCode::invalid_argument, "menu coverage target must be in (0, 1]");
    }
    for (std::size_t i = 0; i < curve.coverage.size(); ++i) {
        if (curve.coverage[i] >= target) {
            const std::size_t size = i + 1;
            if (size > max_entries) return std::nullopt;
            return size;
        }
    }
    return std::nullopt;
}

DependencyStats dependency_stats(std::span<const Record> corpus, const Attribute& domain,
                                 const Attribute& range) {
    if (domain == range) throw Error(ErrorCode::invalid_argument, "domain and range must differ");
    DependencyStats stats;
    stats.domain = domain.id();
    stats.range = range.id();

    // domain value -> (range value -> count)
    std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>> pairs;
    std::unordered_map<std::string, std::size_t> domain_counts;
    for (const auto& record : corpus) {
        auto d = domain.extract(record);
        if (d.empty()) continue;
        auto r = range.extract(record);
        if (r.empty()) continue;
        ++pairs[d][r];
        ++domain_counts[d];
        ++stats.support;
    }
    if (stats.support == 0) {
        throw Error(ErrorCode::no_data,
                    "no records with both " + stats.domain + " and " + stats.range);
    }
    for (const auto& [d, n] : domain_counts) {
        if (n >= 2) stats.repeated += n;
    }
    for (const auto& [d, ranges] : pairs) {
        std::size_t best = 0;
        for (const auto& [r, n] : ranges) best = std::max(best, n);
        stats.functional += best;
    }
    stats.density = static_cast<double>(stats.repeated) / static_cast<double>(stats.support);
    stats.functionality = static_cast<double>(stats.functional) / static_cast<double>(stats.support);
    return stats;
}

MiningThresholds MiningThresholds::defaults() {
    const auto& m = default_config().at("mining");
    MiningThresholds t;
    t.min_density = m.at("min_density").get<double>();
    t.min_functionality = m.at("min_functionality").get<double>();
    t.min_support = m.at("min_support").get<std::size_t>();
    return t;
}

MiningReport mine(std::span<const Record> corpus, const Schema& schema,
                  const MiningThresholds& thresholds, double menu_target,
                  std::size_t menu_max_entries) {
    MiningReport report;
    report.thresholds = thresholds;
    auto passes = [&](const DependencyStats& s) {
        return s.support >= thresholds.min_support && s.density >= thresholds.min_density &&
               s.functionality >= thresholds.min_functionality;
    };

    for (const auto& domain_spec : schema.fields()) {
        const Attribute domain{domain_spec.id, Component::whole};
        for (const auto& range_spec : schema.fields()) {
            if (range_spec.id == domain_spec.id) continue;
            std::vector<Component> candidates{Component::whole};
            for (auto c : components_for(range_spec.kind)) candidates.push_back(c);
            bool ruled = false;
            for (auto component : candidates) {
                const Attribute range{range_spec.id, component};
                DependencyStats stats;
                try {
                    stats = dependency_stats(corpus, domain, range);
                } catch (const Error& e) {
                    if (e.code() == ErrorCode::no_data) continue;
                    throw;
                }
                if (!ruled && passes(stats)) {
                    report.rules.add({domain_spec.id, range_spec.id, transform_for(component)});
                    ruled = true;
                }
                report.dependencies.push_back(std::move(stats));
            }
        }
    }

    for (const auto& spec : schema.fields()) {
        MenuSizing sizing;
        sizing.field = spec.id;
        try {
            auto curve = coverage_curve(corpus, spec.id, std::max<std::size_t>(menu_max_entries, 1));
            sizing.distinct = curve.distinct;
            sizing.size = recommend_menu_size(curve, menu_target, menu_max_entries);
            sizing.top1_share = curve.coverage.front();
        } catch (const Error& e) {
            if (e.code() != ErrorCode::no_data) throw;
        }
        report.menus.push_back(std::move(sizing));
    }
    return report;
}

nlohmann::json coverage_to_json(const CoverageCurve& curve, std::optional<std::size_t> recommended) {
    nlohmann::json top = nlohmann::json::array();
    for (const auto& [value, count] : curve.histogram.ranked()) {
        if (top.size() >= curve.coverage.size()) break;
        top.push_back({{"value", value}, {"count", count}});
    }
    nlohmann::json j = {{"field", curve.field},
                        {"total", curve.histogram.total},
                        {"distinct", curve.distinct},
                        {"coverage", curve.coverage},
                        {"top_values", top}};
    j["recommended_size"] = recommended ? nlohmann::json(*recommended) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json mining_report_to_json(const MiningReport& report) {
    nlohmann::json deps = nlohmann::json::array();
    for (const auto& d : report.dependencies) {
        deps.push_back({{"domain", d.domain},
                        {"range", d.range},
                        {"support", d.support},
                        {"density", d.density},
                        {"functionality", d.functionality}});
    }
    nlohmann::json menus = nlohmann::json::array();
    for (const auto& m : report.menus) {
        menus.push_back({{"field", m.field},
                         {"distinct", m.distinct},
                         {"top1_share", m.top1_share},
                         {"menu_size", m.size ? nlohmann::json(*m.size) : nlohmann::json(nullptr)}});
    }
    return {{"thresholds",
             {{"min_density", report.thresholds.min_density},
              {"min_functionality", report.thresholds.min_functionality},
              {"min_support", report.thresholds.min_support}}},
            {"rules", rules_to_json(report.rules).at("rules")},
            {"menus", menus},
            {"dependencies", deps}};
}

std::string format_mining_report(const MiningReport& report) {
    std::ostringstream out;
    out << "Recommended fillin rules (density >= " << fixed(report.thresholds.min_density, 2)
        << ", functionality >= " << fixed(report.thresholds.min_functionality, 2)
        << ", support >= " << report.thresholds.min_support << ")\n";
    char line[256];
    std::snprintf(line, sizeof line, "  %-12s %-12s %-18s %8s %8s %8s\n", "trigger", "target",
                  "transform", "support", "density", "funct.");
    out << line;
    for (const auto& rule : report.rules.rules()) {
        const std::string range_id = Attribute{rule.target, component_for(rule.transform)}.id();
        auto it = std::find_if(report.dependencies.begin(), report.dependencies.end(),
                               [&](const DependencyStats& d) {
                                   return d.domain == rule.trigger && d.range == range_id;
                               });
        if (it == report.dependencies.end()) continue;
        std::snprintf(line, sizeof line, "  %-12s %-12s %-18s %8zu %8.3f %8.3f\n",
                      rule.trigger.c_str(), rule.target.c_str(),
                      std::string(to_string(rule.transform)).c_str(), it->support, it->density,
                      it->functionality);
        out << line;
    }
    out << "\nMenu sizes\n";
    std::snprintf(line, sizeof line, "  %-12s %8s %8s %10s\n", "field", "distinct", "top-1", "menu size");
    out << line;
    for (const auto& m : report.menus) {
        std::snprintf(line, sizeof line, "  %-12s %8zu %8.3f %10s\n", m.field.c_str(), m.distinct,
                      m.top1_share, m.size ? std::to_string(*m.size).c_str() : "none");
        out << line;
    }
    return out.str();
}

std::string coverage_csv(const CoverageCurve& curve) {
    std::ostringstream out;
    out << "k,coverage\n";
    for (std::size_t i = 0; i < curve.coverage.size(); ++i) {
        out << (i + 1) << ',' << fixed(curve.coverage[i], 6) << '\n';
    }
    return out.str();
}

}  // namespace formcap
