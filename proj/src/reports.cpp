#include "formcap/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "formcap/error.hpp"

namespace formcap {

namespace {

std::string percent_cell(std::optional<double> value) {
    if (!value) return "";
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.0f", *value);
    return buf;
}

// Zero cells print blank.
std::string nonzero_cell(double value) {
    return value == 0.0 ? std::string() : percent_cell(value);
}

double pct(std::size_t part, std::size_t whole) {
    return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

}  // namespace

std::string_view to_string(Pass pass) { return pass == Pass::worst ? "worst" : "best"; }

Pass parse_pass(std::string_view text) {
    if (text == "worst" || text == "first") return Pass::worst;
    if (text == "best" || text == "second") return Pass::best;
    throw Error(ErrorCode::invalid_argument, "unknown pass '" + std::string(text) + "'");
}

void MedianTable::set(const std::string& condition, Pass pass, double minutes) {
    if (!(minutes > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "median minutes must be > 0 for " + condition);
    }
    if (std::find(order_.begin(), order_.end(), condition) == order_.end()) order_.push_back(condition);
    minutes_[{condition, pass}] = minutes;
}

std::optional<double> MedianTable::get(const std::string& condition, Pass pass) const {
    auto it = minutes_.find({condition, pass});
    if (it == minutes_.end()) return std::nullopt;
    return it->second;
}

double MedianTable::at(const std::string& condition, Pass pass) const {
    if (auto v = get(condition, pass)) return *v;
    throw Error(ErrorCode::not_found,
                "missing median (" + condition + ", " + std::string(to_string(pass)) + ")");
}

double median(std::vector<double> values) {
    if (values.empty()) throw Error(ErrorCode::no_data, "median of no values");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

MedianTable MedianTable::from_results(std::span<const RunResult> results) {
    std::vector<std::string> order;
    std::map<std::pair<std::string, Pass>, std::vector<double>> samples;
    for (const auto& r : results) {
        if (r.pass != 1 && r.pass != 2) continue;
        if (std::find(order.begin(), order.end(), r.condition) == order.end()) order.push_back(r.condition);
        samples[{r.condition, r.pass == 1 ? Pass::worst : Pass::best}].push_back(r.duration_seconds / 60.0);
    }
    MedianTable table;
    for (const auto& condition : order) {
        for (Pass pass : {Pass::worst, Pass::best}) {
            auto it = samples.find({condition, pass});
            if (it != samples.end()) table.set(condition, pass, median(it->second));
        }
    }
    return table;
}

MedianTable MedianTable::published() {
    MedianTable t;
    const struct {
        const char* condition;
        double worst;
        double best;
    } kRows[] = {{"Typed", 2.72, 2.52}, {"Null", 4.25, 3.65}, {"D", 4.50, 3.30},
                 {"AM", 4.32, 1.37},    {"PF", 4.07, 2.02},   {"All", 4.15, 1.08}};
    for (const auto& row : kRows) {
        t.set(row.condition, Pass::worst, row.worst);
        t.set(row.condition, Pass::best, row.best);
    }
    return t;
}

nlohmann::json median_table_to_json(const MedianTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : table.conditions()) {
        nlohmann::json row = {{"condition", c}};
        for (Pass p : {Pass::worst, Pass::best}) {
            if (auto v = table.get(c, p)) row[std::string(to_string(p))] = *v;
        }
        rows.push_back(row);
    }
    return {{"medians", rows}};
}

MedianTable median_table_from_json(const nlohmann::json& j) {
    MedianTable table;
    const auto& rows = j.contains("medians") ? j.at("medians") : j;
    if (rows.is_array()) {
        for (const auto& row : rows) {
            const auto c = row.at("condition").get<std::string>();
            for (Pass p : {Pass::worst, Pass::best}) {
                const std::string key(to_string(p));
                if (row.contains(key)) table.set(c, p, row.at(key).get<double>());
            }
        }
    } else if (rows.is_object()) {
        for (const auto& [c, row] : rows.items()) {
            for (const auto& [key, value] : row.items()) table.set(c, parse_pass(key), value.get<double>());
        }
    } else {
        throw Error(ErrorCode::parse, "median table must be an array or object");
    }
    return table;
}

std::string format_median_table(const MedianTable& table) {
    std::ostringstream out;
    char cell[32];
    out << "      ";
    for (const auto& c : table.conditions()) {
        std::snprintf(cell, sizeof cell, "%8s", c.c_str());
        out << cell;
    }
    out << '\n';
    for (Pass p : {Pass::worst, Pass::best}) {
        std::snprintf(cell, sizeof cell, "%-6s", p == Pass::worst ? "Worst" : "Best");
        out << cell;
        for (const auto& c : table.conditions()) {
            if (auto v = table.get(c, p)) {
                std::snprintf(cell, sizeof cell, "%8.2f", *v);
            } else {
                std::snprintf(cell, sizeof cell, "%8s", "-");
            }
            out << cell;
        }
        out << '\n';
    }
    return out.str();
}

std::string median_table_csv(const MedianTable& table) {
    std::ostringstream out;
    out << "condition,worst,best\n";
    for (const auto& c : table.conditions()) {
        out << c << ',';
        if (auto v = table.get(c, Pass::worst)) out << *v;
        out << ',';
        if (auto v = table.get(c, Pass::best)) out << *v;
        out << '\n';
    }
    return out.str();
}

std::vector<std::pair<std::string, double>> speedup_vs_null(const MedianTable& table) {
    std::vector<std::string> missing;
    if (!table.get("Null", Pass::worst)) missing.push_back("(Null, worst)");
    for (const auto& c : table.conditions()) {
        if (!table.get(c, Pass::best)) missing.push_back("(" + c + ", best)");
    }
    if (!missing.empty()) {
        std::string message = "missing medians:";
        for (const auto& m : missing) message += " " + m;
        throw Error(ErrorCode::not_found, message);
    }
    const double null_worst = table.at("Null", Pass::worst);
    std::vector<std::pair<std::string, double>> out;
    for (const auto& c : table.conditions()) {
        out.emplace_back(c, 100.0 * (null_worst / table.at(c, Pass::best) - 1.0));
    }
    return out;
}

bool has_speedup_inputs(const MedianTable& table) {
    if (!table.get("Null", Pass::worst)) return false;
    const auto conditions = table.conditions();
    return std::all_of(conditions.begin(), conditions.end(),
                       [&](const std::string& c) { return table.get(c, Pass::best).has_value(); });
}

Throughput throughput_metrics(double chars_per_record, double words_per_record, double minutes) {
    if (!(chars_per_record > 0 && words_per_record > 0 && minutes > 0)) {
        throw Error(ErrorCode::invalid_argument, "throughput inputs must be positive");
    }
    return {chars_per_record / minutes, words_per_record / minutes};
}

std::optional<double> FieldBreakdown::stage_percent(std::size_t stage) const {
    if (written_words == 0) return std::nullopt;
    return pct(recognized_by.at(stage), written_words);
}
double FieldBreakdown::typed_percent() const { return pct(typed, total_words); }
double FieldBreakdown::menu_percent() const { return pct(menu, total_words); }
double FieldBreakdown::fillin_percent() const { return pct(fillin, total_words); }
double FieldBreakdown::recognized_percent() const {
    return pct(recognized_by[3], total_words);
}

std::vector<FieldBreakdown> method_breakdown(std::span<const RunResult> results) {
    if (results.empty()) throw Error(ErrorCode::no_data, "no run results");
    std::vector<FieldBreakdown> rows;
    auto row_for = [&](const FieldId& field) -> FieldBreakdown& {
        for (auto& r : rows) {
            if (r.field == field) return r;
        }
        rows.push_back(FieldBreakdown{field});
        return rows.back();
    };
    for (const auto& result : results) {
        for (const auto& sheet : result.sheet) {
            if (sheet.words.empty()) continue;
            auto& row = row_for(sheet.field);
            for (const auto& w : sheet.words) {
                ++row.total_words;
                if (w.written) ++row.written_words;
                switch (w.method) {
                    case EntryMethod::typed: ++row.typed; break;
                    case EntryMethod::menu: ++row.menu; break;
                    case EntryMethod::fillin: ++row.fillin; break;
                    default: {
                        const auto stage = static_cast<std::size_t>(w.method);
                        for (std::size_t s = stage; s < 4; ++s) ++row.recognized_by[s];
                    }
                }
            }
        }
    }
    return rows;
}

nlohmann::json breakdown_to_json(const std::vector<FieldBreakdown>& rows) {
    static const char* kStages[] = {"correct", "first_menu", "letters", "second_menu"};
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json stages = nlohmann::json::object();
        for (std::size_t s = 0; s < 4; ++s) {
            auto v = r.stage_percent(s);
            stages[kStages[s]] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
        }
        out.push_back({{"field", r.field},
                       {"total_words", r.total_words},
                       {"written_words", r.written_words},
                       {"cumulative_recognition_percent", stages},
                       {"typed_percent", r.typed_percent()},
                       {"menu_percent", r.menu_percent()},
                       {"fillin_percent", r.fillin_percent()},
                       {"recognized_percent", r.recognized_percent()}});
    }
    return out;
}

std::string format_breakdown(const std::vector<FieldBreakdown>& rows) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%-12s %8s %8s %8s %8s | %8s %8s %8s\n", "Field", "Correct",
                  "1stMenu", "Letters", "2ndMenu", "Typed", "AdMenu", "Fillin");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-12s %8s %8s %8s %8s | %8s %8s %8s\n", r.field.c_str(),
                      percent_cell(r.stage_percent(0)).c_str(), percent_cell(r.stage_percent(1)).c_str(),
                      percent_cell(r.stage_percent(2)).c_str(), percent_cell(r.stage_percent(3)).c_str(),
                      nonzero_cell(r.typed_percent()).c_str(), nonzero_cell(r.menu_percent()).c_str(),
                      nonzero_cell(r.fillin_percent()).c_str());
        out << line;
    }
    return out.str();
}

std::string breakdown_csv(const std::vector<FieldBreakdown>& rows) {
    std::ostringstream out;
    out << "field,total_words,written_words,correct,first_menu,letters,second_menu,typed,menu,fillin\n";
    for (const auto& r : rows) {
        out << r.field << ',' << r.total_words << ',' << r.written_words;
        for (std::size_t s = 0; s < 4; ++s) {
            out << ',';
            if (auto v = r.stage_percent(s)) out << *v;
        }
        out << ',' << r.typed_percent() << ',' << r.menu_percent() << ',' << r.fillin_percent() << '\n';
    }
    return out.str();
}

}  // namespace formcap
