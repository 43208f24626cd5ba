#include "formcap/simulator.hpp"

#include <algorithm>
#include <cctype>
#include <future>
#include <random>

#include "formcap/config.hpp"
#include "formcap/error.hpp"
#include "formcap/synthetic.hpp"

namespace formcap {

namespace {

constexpr std::array<std::string_view, kActionCount> kActionNames = {
    "tap_field",       "open_menu",   "scan_menu_item", "choose_item",
    "write_word",      "open_recog_menu", "try_letters", "open_keyboard",
    "type_char",       "close_keyboard", "add_to_dict_confirm", "fillin_overhead"};

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool all_digits(std::string_view word) {
    return !word.empty() && std::all_of(word.begin(), word.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
    });
}

// Digits are recognized without a dictionary.
bool numeric_word(FieldKind kind, std::string_view word) {
    return kind == FieldKind::numeric || kind == FieldKind::phone || kind == FieldKind::date ||
           all_digits(word);
}

bool is_word_prefix(const std::vector<std::string>& prefix, const std::vector<std::string>& words) {
    return !prefix.empty() && prefix.size() < words.size() &&
           std::equal(prefix.begin(), prefix.end(), words.begin());
}

// Accumulates action counts for one run and per-word/per-field seconds.
class Meter {
public:
    Meter(const CostModel& cost, ActionCounts& counts) : cost_(cost), counts_(counts) {}

    double charge(Action a, std::uint64_t n = 1) {
        counts_[static_cast<std::size_t>(a)] += n;
        return cost_[a] * static_cast<double>(n);
    }

private:
    const CostModel& cost_;
    ActionCounts& counts_;
};

class EntrySession {
public:
    EntrySession(const Condition& condition, SimState& state, const RecognitionModel& recognition,
                 const CostModel& cost, std::uint64_t seed, RunResult& result)
        : condition_(condition),
          state_(state),
          recognition_(recognition),
          meter_(cost, result.actions),
          rng_(seed),
          result_(result) {}

    Record run(const Record& target) {
        Record draft;
        for (const auto& spec : state_.store.schema().fields()) {
            FieldSheet sheet;
            sheet.field = spec.id;
            enter_field(spec, target.raw(spec.id), draft, sheet);
            result_.sheet.push_back(std::move(sheet));
        }
        return draft;
    }

private:
    void enter_field(const FieldSpec& spec, const std::string& target, Record& draft,
                     FieldSheet& sheet) {
        const FieldValue current = draft.value(spec.id);
        if (target.empty()) {
            if (!current.empty()) {
                // Scrub a value predictive fillin put into a field that should stay blank.
                sheet.overhead_seconds += meter_.charge(Action::tap_field);
                draft.set(spec.id, "", Provenance::empty);
            }
            return;
        }
        const auto words = tokenize(target);

        std::size_t first_word = 0;
        if (condition_.predictive_fillin && current.provenance == Provenance::fillin) {
            if (current.raw == target) {
                sheet.overhead_seconds += meter_.charge(Action::fillin_overhead);
                for (const auto& w : words) sheet.words.push_back({w, EntryMethod::fillin});
                draft.values[spec.id].word_methods.assign(words.size(), EntryMethod::fillin);
                return;
            }
            const auto filled = tokenize(current.raw);
            if (is_word_prefix(filled, words)) {
                // Keep the copied area code/prefix and append the rest.
                sheet.overhead_seconds += meter_.charge(Action::fillin_overhead);
                for (const auto& w : filled) sheet.words.push_back({w, EntryMethod::fillin});
                first_word = filled.size();
            } else {
                sheet.overhead_seconds += meter_.charge(Action::tap_field);
            }
        }

        if (first_word == 0 && condition_.adaptive_menus && spec.adaptive_menu) {
            const auto menu = state_.menus.menu_for(spec.id);
            sheet.overhead_seconds += meter_.charge(Action::open_menu);
            if (auto pos = menu.position_of(target)) {
                sheet.overhead_seconds += meter_.charge(Action::scan_menu_item, *pos + 1);
                sheet.overhead_seconds += meter_.charge(Action::choose_item);
                for (const auto& w : words) sheet.words.push_back({w, EntryMethod::menu});
                commit(spec, target, Provenance::menu_chosen, draft, sheet);
                return;
            }
            // Checked the whole menu without finding the value.
            sheet.overhead_seconds += meter_.charge(Action::scan_menu_item, menu.size());
        }

        sheet.overhead_seconds += meter_.charge(Action::tap_field);
        for (std::size_t i = first_word; i < words.size(); ++i) {
            sheet.words.push_back(condition_.typed_only ? type_word(words[i])
                                                        : write_word(spec, words[i]));
        }
        commit(spec, target, condition_.typed_only ? Provenance::typed : Provenance::written, draft,
               sheet);
    }

    void commit(const FieldSpec& spec, const std::string& value, Provenance provenance,
                Record& draft, const FieldSheet& sheet) {
        draft.set(spec.id, value, provenance);
        auto& stored = draft.values[spec.id];
        for (const auto& w : sheet.words) stored.word_methods.push_back(w.method);
        if (condition_.predictive_fillin && state_.rules.is_trigger(spec.id)) {
            apply_on_commit(draft, spec.id, value, state_.store, state_.rules);
        }
    }

    double keyboard(std::string_view word) {
        double s = meter_.charge(Action::open_keyboard);
        s += meter_.charge(Action::type_char, char_count(word));
        s += meter_.charge(Action::close_keyboard);
        return s;
    }

    WordEntry type_word(const std::string& word) {
        WordEntry entry{word, EntryMethod::typed};
        entry.seconds = keyboard(word);
        return entry;
    }

    EntryMethod recognize(const FieldSpec& spec, const std::string& word) {
        if (recognition_.mode == RecognitionMode::deterministic_dictionary) {
            if (numeric_word(spec.kind, word) || state_.dictionary.contains(word)) {
                return EntryMethod::correct;
            }
            return recognition_.letters_succeeds(word) ? EntryMethod::letters : EntryMethod::typed;
        }
        const auto& rates = recognition_.rates_for(spec.id);
        const double u = draw_unit(rng_);
        static constexpr std::array<EntryMethod, 4> kStages = {
            EntryMethod::correct, EntryMethod::first_menu, EntryMethod::letters,
            EntryMethod::second_menu};
        for (std::size_t i = 0; i < rates.size(); ++i) {
            if (u < rates[i]) return kStages[i];
        }
        return EntryMethod::typed;
    }

    // Write, then walk the remedial cascade until the word is right.
    WordEntry write_word(const FieldSpec& spec, const std::string& word) {
        WordEntry entry{word, recognize(spec, word), true};
        double s = meter_.charge(Action::write_word);
        switch (entry.method) {
            case EntryMethod::correct:
                break;
            case EntryMethod::first_menu:
                s += meter_.charge(Action::open_recog_menu);
                s += meter_.charge(Action::choose_item);
                break;
            case EntryMethod::letters:
                s += meter_.charge(Action::open_recog_menu);
                s += meter_.charge(Action::try_letters);
                break;
            case EntryMethod::second_menu:
                s += meter_.charge(Action::open_recog_menu);
                s += meter_.charge(Action::try_letters);
                s += meter_.charge(Action::open_recog_menu);
                s += meter_.charge(Action::choose_item);
                break;
            default:
                s += meter_.charge(Action::open_recog_menu);
                s += meter_.charge(Action::try_letters);
                s += meter_.charge(Action::open_recog_menu);
                s += keyboard(word);
                if (!state_.dictionary.contains(word)) {
                    entry.asked_to_add = true;
                    if (condition_.add_to_dictionary) {
                        s += meter_.charge(Action::add_to_dict_confirm);
                        state_.dictionary.add(word);
                        entry.added = true;
                    }
                }
                break;
        }
        entry.seconds = s;
        return entry;
    }

    const Condition& condition_;
    SimState& state_;
    const RecognitionModel& recognition_;
    Meter meter_;
    std::mt19937_64 rng_;
    RunResult& result_;
};

StageRates rates_from_json(const nlohmann::json& j) {
    auto v = j.get<std::vector<double>>();
    if (v.size() != 4) throw Error(ErrorCode::invalid_argument, "stage rates need 4 entries");
    return {v[0], v[1], v[2], v[3]};
}

}  // namespace

const std::vector<Condition>& condition_presets() {
    static const std::vector<Condition> kPresets = {
        {"Typed", true, false, false, false, false},
        {"Null", false, true, false, false, false},
        {"D", false, true, true, false, false},
        {"AM", false, true, false, true, false},
        {"PF", false, true, false, false, true},
        {"All", false, true, true, true, true},
    };
    return kPresets;
}

const Condition& condition_preset(std::string_view name) {
    for (const auto& c : condition_presets()) {
        if (c.name == name) return c;
    }
    throw Error(ErrorCode::not_found, "unknown condition '" + std::string(name) + "'");
}

std::vector<Condition> parse_conditions(std::string_view list) {
    if (list == "all" || list.empty()) return condition_presets();
    std::vector<Condition> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        auto end = list.find(',', start);
        if (end == std::string_view::npos) end = list.size();
        auto name = list.substr(start, end - start);
        while (!name.empty() && name.front() == ' ') name.remove_prefix(1);
        while (!name.empty() && name.back() == ' ') name.remove_suffix(1);
        if (!name.empty()) out.push_back(condition_preset(name));
        start = end + 1;
    }
    if (out.empty()) throw Error(ErrorCode::invalid_argument, "no conditions given");
    return out;
}

const StageRates& RecognitionModel::rates_for(std::string_view field) const {
    auto it = stage_rates.find(field);
    return it == stage_rates.end() ? default_rates : it->second;
}

bool RecognitionModel::letters_succeeds(std::string_view word) const {
    if (letters_predicate) return letters_predicate(word);
    return word.size() <= letters_max_length;
}

void RecognitionModel::validate() const {
    auto check = [](const StageRates& r, std::string_view what) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (!(r[i] >= 0.0 && r[i] <= 1.0) || (i > 0 && r[i] < r[i - 1])) {
                throw Error(ErrorCode::invalid_argument,
                            "stage rates for " + std::string(what) +
                                " must be non-decreasing values in [0, 1]");
            }
        }
    };
    check(default_rates, "default");
    for (const auto& [field, rates] : stage_rates) check(rates, field);
}

RecognitionModel RecognitionModel::defaults() {
    return recognition_from_json(default_config().at("recognition"), RecognitionModel{});
}

nlohmann::json recognition_to_json(const RecognitionModel& m) {
    nlohmann::json rates = nlohmann::json::object();
    for (const auto& [field, r] : m.stage_rates) rates[field] = r;
    return {{"mode", m.mode == RecognitionMode::stochastic ? "stochastic" : "deterministic_dictionary"},
            {"letters_max_length", m.letters_max_length},
            {"stage_rates", rates},
            {"default_stage_rates", m.default_rates}};
}

RecognitionModel recognition_from_json(const nlohmann::json& j, RecognitionModel base) {
    if (j.contains("mode")) {
        const auto mode = j.at("mode").get<std::string>();
        if (mode == "stochastic") {
            base.mode = RecognitionMode::stochastic;
        } else if (mode == "deterministic_dictionary" || mode == "deterministic") {
            base.mode = RecognitionMode::deterministic_dictionary;
        } else {
            throw Error(ErrorCode::invalid_argument, "unknown recognition mode '" + mode + "'");
        }
    }
    if (j.contains("letters_max_length")) {
        base.letters_max_length = j.at("letters_max_length").get<std::size_t>();
    }
    if (j.contains("default_stage_rates")) {
        base.default_rates = rates_from_json(j.at("default_stage_rates"));
    }
    if (j.contains("stage_rates")) {
        for (const auto& [field, rates] : j.at("stage_rates").items()) {
            base.stage_rates[field] = rates_from_json(rates);
        }
    }
    base.validate();
    return base;
}

std::string_view to_string(Action a) { return kActionNames[static_cast<std::size_t>(a)]; }

void CostModel::validate() const {
    for (std::size_t i = 0; i < kActionCount; ++i) {
        if (!(seconds[i] >= 0.0)) {
            throw Error(ErrorCode::invalid_argument,
                        "cost of " + std::string(kActionNames[i]) + " must be >= 0");
        }
    }
}

CalibrationTargets CalibrationTargets::defaults() {
    const auto& c = default_config().at("cost_model").at("calibration");
    CalibrationTargets t;
    t.typed_best_minutes = c.at("typed_best_minutes").get<double>();
    t.handwriting_best_minutes = c.at("handwriting_best_minutes").get<double>();
    t.chars_per_record = c.at("chars_per_record").get<double>();
    t.words_per_record = c.at("words_per_record").get<double>();
    t.fields_per_record = c.at("fields_per_record").get<double>();
    return t;
}

CostModel calibrate(CostModel fixed, const CalibrationTargets& t) {
    if (!(t.chars_per_record > 0 && t.words_per_record > 0)) {
        throw Error(ErrorCode::invalid_argument, "calibration needs positive chars and words per record");
    }
    const double field_taps = t.fields_per_record * fixed[Action::tap_field];
    const double keyboard_per_word = fixed[Action::open_keyboard] + fixed[Action::close_keyboard];
    fixed[Action::type_char] =
        (t.typed_best_minutes * 60.0 - field_taps - t.words_per_record * keyboard_per_word) /
        t.chars_per_record;
    fixed[Action::write_word] = (t.handwriting_best_minutes * 60.0 - field_taps) / t.words_per_record;
    if (fixed[Action::type_char] < 0 || fixed[Action::write_word] < 0) {
        throw Error(ErrorCode::invalid_argument, "fixed action costs exceed the calibration targets");
    }
    return fixed;
}

CostModel CostModel::defaults() {
    const auto& cfg = default_config().at("cost_model");
    CostModel fixed = cost_model_from_json(cfg.at("fixed_seconds"), CostModel{});
    return calibrate(fixed, CalibrationTargets::defaults());
}

nlohmann::json cost_model_to_json(const CostModel& cost) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t i = 0; i < kActionCount; ++i) j[std::string(kActionNames[i])] = cost.seconds[i];
    return j;
}

CostModel cost_model_from_json(const nlohmann::json& j, CostModel base) {
    for (const auto& [key, value] : j.items()) {
        auto it = std::find(kActionNames.begin(), kActionNames.end(), key);
        if (it == kActionNames.end()) {
            throw Error(ErrorCode::invalid_argument, "unknown cost model action '" + key + "'");
        }
        base.seconds[static_cast<std::size_t>(it - kActionNames.begin())] = value.get<double>();
    }
    base.validate();
    return base;
}

double price(const ActionCounts& counts, const CostModel& cost) {
    double total = 0.0;
    for (std::size_t i = 0; i < kActionCount; ++i) {
        total += static_cast<double>(counts[i]) * cost.seconds[i];
    }
    return total;
}

std::string RunResult::pass_label() const {
    if (pass == 1) return "worst";
    if (pass == 2) return "best";
    return "repeat" + std::to_string(pass);
}

nlohmann::json run_result_to_json(const RunResult& r) {
    nlohmann::json actions = nlohmann::json::object();
    for (std::size_t i = 0; i < kActionCount; ++i) {
        if (r.actions[i]) actions[std::string(kActionNames[i])] = r.actions[i];
    }
    nlohmann::json sheet = nlohmann::json::array();
    for (const auto& f : r.sheet) {
        nlohmann::json words = nlohmann::json::array();
        for (const auto& w : f.words) {
            words.push_back({{"text", w.text},
                             {"method", to_string(w.method)},
                             {"written", w.written},
                             {"asked_to_add", w.asked_to_add},
                             {"added", w.added},
                             {"seconds", w.seconds}});
        }
        sheet.push_back({{"field", f.field}, {"overhead_seconds", f.overhead_seconds}, {"words", words}});
    }
    return {{"condition", r.condition},
            {"record_id", r.record_id},
            {"pass", r.pass},
            {"case", r.pass_label()},
            {"duration_seconds", r.duration_seconds},
            {"actions", actions},
            {"sheet", sheet}};
}

RunResult run_result_from_json(const nlohmann::json& j) {
    RunResult r;
    r.condition = j.at("condition").get<std::string>();
    r.record_id = j.at("record_id").get<std::string>();
    r.pass = j.at("pass").get<int>();
    r.duration_seconds = j.at("duration_seconds").get<double>();
    if (j.contains("actions")) {
        for (const auto& [key, value] : j.at("actions").items()) {
            auto it = std::find(kActionNames.begin(), kActionNames.end(), key);
            if (it == kActionNames.end()) throw Error(ErrorCode::parse, "unknown action '" + key + "'");
            r.actions[static_cast<std::size_t>(it - kActionNames.begin())] = value.get<std::uint64_t>();
        }
    }
    if (j.contains("sheet")) {
        for (const auto& f : j.at("sheet")) {
            FieldSheet sheet;
            sheet.field = f.at("field").get<std::string>();
            sheet.overhead_seconds = f.value("overhead_seconds", 0.0);
            for (const auto& w : f.at("words")) {
                WordEntry e;
                e.text = w.at("text").get<std::string>();
                e.method = parse_entry_method(w.at("method").get<std::string>());
                e.written = w.value("written", false);
                e.asked_to_add = w.value("asked_to_add", false);
                e.added = w.value("added", false);
                e.seconds = w.value("seconds", 0.0);
                sheet.words.push_back(std::move(e));
            }
            r.sheet.push_back(std::move(sheet));
        }
    }
    return r;
}

SimState ExperimentImage::for_condition(const Condition& condition) const {
    SimState state = base;
    if (condition.add_to_dictionary) {
        for (const auto& record : state.store.records()) {
            for (const char* field : {"FirstName", "LastName", "Company"}) {
                for (const auto& word : tokenize(record.raw(field))) state.dictionary.add(word);
            }
        }
    }
    return state;
}

ExperimentImage ExperimentImage::defaults() {
    const auto& exp = default_config().at("experiment");
    RecordStore store(default_schema());
    for (auto& r : generate_address_book(exp.at("preload_records").get<std::size_t>(),
                                         exp.at("preload_seed").get<std::uint64_t>())) {
        store.finalize(std::move(r));
    }
    return from_store(store);
}

ExperimentImage ExperimentImage::from_store(const RecordStore& store, RuleSet rules) {
    const auto words = base_dictionary_words();
    return ExperimentImage{
        SimState{store, MenuState(store.schema()), Dictionary(words), std::move(rules)}};
}

RunResult simulate_entry(const Record& target, const Condition& condition, SimState& state,
                         const RecognitionModel& recognition, const CostModel& cost,
                         std::uint64_t seed, int pass) {
    validate_record(state.store.schema(), target);
    RunResult result;
    result.condition = condition.name;
    result.record_id = target.id;
    result.pass = pass;

    Record entered = EntrySession(condition, state, recognition, cost, seed, result).run(target);
    entered.id = target.id.empty() ? std::string() : target.id + "/" + condition.name + "/" + std::to_string(pass);
    for (const auto& spec : state.store.schema().fields()) {
        const auto& raw = entered.raw(spec.id);
        if (spec.adaptive_menu && !raw.empty()) state.menus.record_use(spec.id, raw);
    }
    state.store.finalize(std::move(entered));
    result.duration_seconds = price(result.actions, cost);
    return result;
}

std::vector<RunResult> run_experiment(std::span<const Record> records,
                                      std::span<const Condition> conditions,
                                      const ExperimentImage& image,
                                      const RecognitionModel& recognition, const CostModel& cost,
                                      const ExperimentOptions& options) {
    if (records.empty()) throw Error(ErrorCode::invalid_argument, "experiment needs records");
    if (options.repeats < 1) throw Error(ErrorCode::invalid_argument, "repeats must be >= 1");
    recognition.validate();
    cost.validate();

    auto run_condition = [&](std::size_t ci) {
        const auto& condition = conditions[ci];
        SimState state = image.for_condition(condition);
        std::vector<RunResult> out;
        for (std::size_t ri = 0; ri < records.size(); ++ri) {
            for (int pass = 1; pass <= options.repeats; ++pass) {
                const std::uint64_t seed =
                    splitmix(options.seed ^ splitmix((ci << 40) ^ (ri << 8) ^ static_cast<std::uint64_t>(pass)));
                out.push_back(simulate_entry(records[ri], condition, state, recognition, cost, seed, pass));
            }
        }
        return out;
    };

    std::vector<std::vector<RunResult>> per_condition(conditions.size());
    if (options.parallel && conditions.size() > 1) {
        std::vector<std::future<std::vector<RunResult>>> futures;
        for (std::size_t ci = 0; ci < conditions.size(); ++ci) {
            futures.push_back(std::async(std::launch::async, run_condition, ci));
        }
        for (std::size_t ci = 0; ci < conditions.size(); ++ci) per_condition[ci] = futures[ci].get();
    } else {
        for (std::size_t ci = 0; ci < conditions.size(); ++ci) per_condition[ci] = run_condition(ci);
    }

    std::vector<RunResult> results;
    for (auto& batch : per_condition) {
        for (auto& r : batch) results.push_back(std::move(r));
    }
    return results;
}

}  // namespace formcap
