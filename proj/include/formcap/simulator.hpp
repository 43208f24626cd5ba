#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "formcap/fillin.hpp"
#include "formcap/menus.hpp"
#include "formcap/record.hpp"
#include "formcap/store.hpp"

namespace formcap {

// One row of the experimental condition matrix.
struct Condition {
    std::string name;
    bool typed_only = false;
    bool writing = false;
    bool add_to_dictionary = false;
    bool adaptive_menus = false;
    bool predictive_fillin = false;
};

// Typed, Null, D, AM, PF, All.
const std::vector<Condition>& condition_presets();
const Condition& condition_preset(std::string_view name);
// "all" or a comma-separated list of preset names.
std::vector<Condition> parse_conditions(std::string_view list);

enum class RecognitionMode { deterministic_dictionary, stochastic };

// Cumulative success probability after: correct, first menu,
// letter-by-letter, second menu.
using StageRates = std::array<double, 4>;

struct RecognitionModel {
    RecognitionMode mode = RecognitionMode::deterministic_dictionary;
    std::map<FieldId, StageRates, std::less<>> stage_rates;
    StageRates default_rates{1.0, 1.0, 1.0, 1.0};
    // Deterministic mode: a word missing from the dictionary is recovered
    // by letter-by-letter recognition iff it is at most this long...
    std::size_t letters_max_length = 5;
    // ...unless a custom predicate is installed.
    std::function<bool(std::string_view)> letters_predicate;

    const StageRates& rates_for(std::string_view field) const;
    bool letters_succeeds(std::string_view word) const;
    void validate() const;

    static RecognitionModel defaults();
};

nlohmann::json recognition_to_json(const RecognitionModel& model);
// Keys absent from j keep the values of `base`.
RecognitionModel recognition_from_json(const nlohmann::json& j,
                                       RecognitionModel base = RecognitionModel::defaults());

enum class Action {
    tap_field,
    open_menu,
    scan_menu_item,
    choose_item,
    write_word,
    open_recog_menu,
    try_letters,
    open_keyboard,
    type_char,
    close_keyboard,
    add_to_dict_confirm,
    fillin_overhead,
};
inline constexpr std::size_t kActionCount = 12;

std::string_view to_string(Action action);

using ActionCounts = std::array<std::uint64_t, kActionCount>;

// Seconds per action.
struct CostModel {
    std::array<double, kActionCount> seconds{};

    double& operator[](Action a) { return seconds[static_cast<std::size_t>(a)]; }
    double operator[](Action a) const { return seconds[static_cast<std::size_t>(a)]; }
    void validate() const;

    // Calibrated from the compiled-in config.
    static CostModel defaults();
};

struct CalibrationTargets {
    double typed_best_minutes = 2.52;
    double handwriting_best_minutes = 3.30;
    double chars_per_record = 98.2;
    double words_per_record = 20.8;
    double fields_per_record = 11.0;

    static CalibrationTargets defaults();
};

// Solves type_char and write_word so that a mean record typed from the
// keyboard takes typed_best_minutes and a mean record written with every
// word recognized takes handwriting_best_minutes, given the other
// (fixed) action costs in `fixed`.
CostModel calibrate(CostModel fixed, const CalibrationTargets& targets);

nlohmann::json cost_model_to_json(const CostModel& cost);
CostModel cost_model_from_json(const nlohmann::json& j, CostModel base = CostModel::defaults());

double price(const ActionCounts& counts, const CostModel& cost);

struct WordEntry {
    std::string text;
    EntryMethod method = EntryMethod::typed;
    bool written = false;       // went through the handwriting cascade
    bool asked_to_add = false;  // typed word missing from the dictionary
    bool added = false;
    double seconds = 0.0;
};

struct FieldSheet {
    FieldId field;
    std::vector<WordEntry> words;
    double overhead_seconds = 0.0;  // taps, menus, fillin checks
};

struct RunResult {
    std::string condition;
    std::string record_id;
    int pass = 1;  // 1 = first entry (worst case), 2 = repeat (best case)
    double duration_seconds = 0.0;
    ActionCounts actions{};
    std::vector<FieldSheet> sheet;

    std::string pass_label() const;
};

nlohmann::json run_result_to_json(const RunResult& result);
RunResult run_result_from_json(const nlohmann::json& j);

// Engine state one simulated user works against.
struct SimState {
    RecordStore store;
    MenuState menus;
    Dictionary dictionary;
    RuleSet rules;
};

// Device image restored before each condition: the preload store, the
// base dictionary and initial menus. Conditions that add to the
// dictionary also get every first, last and company name word of the
// preload.
struct ExperimentImage {
    SimState base;

    SimState for_condition(const Condition& condition) const;

    // 200 generated names, compiled-in dictionary, default rules, empty menus.
    static ExperimentImage defaults();
    static ExperimentImage from_store(const RecordStore& store, RuleSet rules = default_rules());
};

// Enters `target` into `state` field by field in schema order and
// finalizes it. `pass` only labels the result and the stored record id.
RunResult simulate_entry(const Record& target, const Condition& condition, SimState& state,
                         const RecognitionModel& recognition, const CostModel& cost,
                         std::uint64_t seed, int pass = 1);

struct ExperimentOptions {
    int repeats = 2;
    std::uint64_t seed = 1;
    bool parallel = true;
};

// For each condition: restore the image, then enter every record
// `repeats` times in a row. Output order is condition, record, pass.
std::vector<RunResult> run_experiment(std::span<const Record> records,
                                      std::span<const Condition> conditions,
                                      const ExperimentImage& image,
                                      const RecognitionModel& recognition, const CostModel& cost,
                                      const ExperimentOptions& options);

}  // namespace formcap
