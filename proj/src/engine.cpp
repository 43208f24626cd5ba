#include "formcap/engine.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "formcap/error.hpp"

namespace formcap {

std::string_view to_string(CommitSource source) {
    switch (source) {
        case CommitSource::typed: return "typed";
        case CommitSource::written: return "written";
        case CommitSource::menu: return "menu";
    }
    return "typed";
}

CommitSource parse_commit_source(std::string_view text) {
    if (text == "typed") return CommitSource::typed;
    if (text == "written") return CommitSource::written;
    if (text == "menu") return CommitSource::menu;
    throw Error(ErrorCode::invalid_argument, "unknown source '" + std::string(text) + "'");
}

Provenance provenance_for(CommitSource source) {
    switch (source) {
        case CommitSource::typed: return Provenance::typed;
        case CommitSource::written: return Provenance::written;
        case CommitSource::menu: return Provenance::menu_chosen;
    }
    return Provenance::typed;
}

nlohmann::json commit_result_to_json(const CommitResult& result) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& e : result.events) events.push_back(fillin_event_to_json(e));
    return {{"fillin_events", events},
            {"menu", result.menu ? split_menu_to_json(*result.menu) : nlohmann::json(nullptr)}};
}

CaptureEngine::CaptureEngine(Schema schema, RuleSet rules, MatchOptions options)
    : schema_(std::move(schema)), store_(schema_, options), menus_(schema_), rules_(std::move(rules)) {
    rules_.validate(schema_);
}

RuleSet CaptureEngine::rules() const {
    std::shared_lock lock(mutex_);
    return rules_;
}

std::string CaptureEngine::create_draft() {
    std::unique_lock lock(mutex_);
    std::string id = "draft-" + std::to_string(next_draft_++);
    drafts_.emplace(id, Draft{});
    return id;
}

CaptureEngine::Draft& CaptureEngine::draft_or_throw(std::string_view draft_id) {
    auto it = drafts_.find(draft_id);
    if (it == drafts_.end()) {
        throw Error(ErrorCode::not_found, "unknown draft '" + std::string(draft_id) + "'");
    }
    return it->second;
}

CommitResult CaptureEngine::commit_field(std::string_view draft_id, std::string_view field,
                                         std::string_view value, CommitSource source) {
    std::unique_lock lock(mutex_);
    auto& d = draft_or_throw(draft_id);
    const auto* spec = schema_.find(field);
    if (!spec) throw Error(ErrorCode::not_found, "unknown field '" + std::string(field) + "'");
    if (d.finalized) {
        throw Error(ErrorCode::conflict, "draft '" + std::string(draft_id) + "' is finalized");
    }

    CommitResult result;
    if (value.empty()) {
        if (source != CommitSource::typed) {
            throw Error(ErrorCode::invalid_argument, "empty value from source " +
                                                         std::string(to_string(source)));
        }
        d.record.set(spec->id, "", Provenance::empty);
    } else {
        d.record.set(spec->id, std::string(value), provenance_for(source));
        result.events = apply_on_commit(d.record, spec->id, value, store_, rules_);
    }
    if (spec->has_menu()) result.menu = menus_.menu_for(spec->id);
    return result;
}

std::uint64_t CaptureEngine::finalize_locked(Record record) {
    record.seq = 0;
    const std::uint64_t seq = store_.finalize(record);
    const auto& stored = store_.records().back();
    for (const auto& spec : schema_.fields()) {
        if (!spec.adaptive_menu) continue;
        const auto& raw = stored.raw(spec.id);
        if (!raw.empty()) menus_.record_use(spec.id, raw);
    }
    if (store_file_) {
        std::ofstream out(*store_file_, std::ios::app);
        if (!out) throw Error(ErrorCode::invalid_argument, "cannot append to " + store_file_->string());
        out << record_to_json(stored).dump() << '\n';
    }
    return seq;
}

std::uint64_t CaptureEngine::finalize(std::string_view draft_id) {
    std::unique_lock lock(mutex_);
    auto& d = draft_or_throw(draft_id);
    if (d.finalized) {
        throw Error(ErrorCode::conflict, "draft '" + std::string(draft_id) + "' already finalized");
    }
    const auto seq = finalize_locked(d.record);
    d.finalized = true;
    return seq;
}

Record CaptureEngine::draft(std::string_view draft_id) const {
    std::shared_lock lock(mutex_);
    auto it = drafts_.find(draft_id);
    if (it == drafts_.end()) {
        throw Error(ErrorCode::not_found, "unknown draft '" + std::string(draft_id) + "'");
    }
    return it->second.record;
}

SplitMenu CaptureEngine::menu(std::string_view field) const {
    std::shared_lock lock(mutex_);
    if (!schema_.contains(field)) {
        throw Error(ErrorCode::not_found, "unknown field '" + std::string(field) + "'");
    }
    return menus_.menu_for(field);
}

std::vector<Record> CaptureEngine::records(std::size_t limit, std::size_t offset) const {
    std::shared_lock lock(mutex_);
    const auto all = store_.records();
    std::vector<Record> out;
    for (std::size_t i = offset; i < all.size() && out.size() < limit; ++i) out.push_back(all[i]);
    return out;
}

std::size_t CaptureEngine::record_count() const {
    std::shared_lock lock(mutex_);
    return store_.size();
}

RecordStore CaptureEngine::snapshot() const {
    std::shared_lock lock(mutex_);
    return store_;
}

std::size_t CaptureEngine::import_corpus(std::istream& in, CorpusFormat format) {
    // Parse into a scratch store first so a bad file changes nothing.
    RecordStore scratch(schema_);
    scratch.import_corpus(in, format);
    std::unique_lock lock(mutex_);
    for (const auto& r : scratch.records()) {
        Record copy = r;
        // Drop scratch-assigned ids so the live store numbers them.
        if (copy.id == "r" + std::to_string(copy.seq)) copy.id.clear();
        finalize_locked(std::move(copy));
    }
    return scratch.size();
}

void CaptureEngine::attach_store_file(const std::filesystem::path& path) {
    {
        std::ifstream in(path);
        if (in) {
            std::unique_lock lock(mutex_);
            store_file_.reset();
            RecordStore scratch(schema_);
            scratch.import_corpus(in, CorpusFormat::jsonl);
            for (const auto& r : scratch.records()) finalize_locked(r);
        }
    }
    std::unique_lock lock(mutex_);
    store_file_ = path;
}

}  // namespace formcap
