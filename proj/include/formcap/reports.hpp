#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "formcap/simulator.hpp"

namespace formcap {

enum class Pass { worst, best };

std::string_view to_string(Pass pass);
Pass parse_pass(std::string_view text);

// Median entry time in minutes per (condition, pass).
class MedianTable {
public:
    void set(const std::string& condition, Pass pass, double minutes);
    std::optional<double> get(const std::string& condition, Pass pass) const;
    double at(const std::string& condition, Pass pass) const;
    // Conditions in first-insertion order.
    const std::vector<std::string>& conditions() const { return order_; }

    // Median over records of each (condition, pass 1|2); midpoint for even counts.
    static MedianTable from_results(std::span<const RunResult> results);
    // The published medians of the six-condition study.
    static MedianTable published();

private:
    std::map<std::pair<std::string, Pass>, double> minutes_;
    std::vector<std::string> order_;
};

double median(std::vector<double> values);

nlohmann::json median_table_to_json(const MedianTable& table);
MedianTable median_table_from_json(const nlohmann::json& j);
std::string format_median_table(const MedianTable& table);
std::string median_table_csv(const MedianTable& table);

// Percent speedup of each condition's repeat entry over a novel entry in
// Null: 100 * (null_worst / best - 1). Ordered as table.conditions().
std::vector<std::pair<std::string, double>> speedup_vs_null(const MedianTable& table);
// True when speedup_vs_null has every median it needs.
bool has_speedup_inputs(const MedianTable& table);

struct Throughput {
    double cpm = 0.0;
    double wpm = 0.0;
};

Throughput throughput_metrics(double chars_per_record, double words_per_record, double minutes);

struct FieldBreakdown {
    FieldId field;
    std::size_t total_words = 0;
    std::size_t written_words = 0;
    // Cumulative written words right by each cascade stage.
    std::array<std::size_t, 4> recognized_by{};
    std::size_t typed = 0;
    std::size_t menu = 0;
    std::size_t fillin = 0;

    // Left half, over written words; nullopt when nothing was written.
    std::optional<double> stage_percent(std::size_t stage) const;
    // Right half, over all words.
    double typed_percent() const;
    double menu_percent() const;
    double fillin_percent() const;
    // Written words that recognition got right, over all words.
    double recognized_percent() const;
};

// Rows in schema order of first appearance; fields with no words are skipped.
std::vector<FieldBreakdown> method_breakdown(std::span<const RunResult> results);

nlohmann::json breakdown_to_json(const std::vector<FieldBreakdown>& rows);
std::string format_breakdown(const std::vector<FieldBreakdown>& rows);
std::string breakdown_csv(const std::vector<FieldBreakdown>& rows);

}  // namespace formcap
