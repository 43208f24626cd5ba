#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "formcap/fillin.hpp"
#include "formcap/menus.hpp"
#include "formcap/record.hpp"
#include "formcap/store.hpp"

namespace formcap {

enum class CommitSource { typed, written, menu };

std::string_view to_string(CommitSource source);
CommitSource parse_commit_source(std::string_view text);
Provenance provenance_for(CommitSource source);

struct CommitResult {
    std::vector<FillinEvent> events;
    std::optional<SplitMenu> menu;  // nullopt for fields without a menu
};

nlohmann::json commit_result_to_json(const CommitResult& result);

// Live capture state: the case base, menus, rules and open drafts.
// Mutations take an exclusive lock, reads a shared one, so all writes are
// serialized and per-draft operations are ordered.
class CaptureEngine {
public:
    explicit CaptureEngine(Schema schema = default_schema(), RuleSet rules = default_rules(),
                           MatchOptions options = {});

    const Schema& schema() const { return schema_; }
    RuleSet rules() const;

    // Ids are "draft-1", "draft-2", ... in creation order.
    std::string create_draft();

    // A typed empty value clears the field; any other empty value is an
    // invalid_argument error. Unknown draft or field: not_found. Finalized
    // draft: conflict.
    CommitResult commit_field(std::string_view draft_id, std::string_view field,
                              std::string_view value, CommitSource source);

    // Appends the draft to the store and applies MRU updates for every
    // non-empty adaptive field. Returns the new seq.
    std::uint64_t finalize(std::string_view draft_id);

    Record draft(std::string_view draft_id) const;
    SplitMenu menu(std::string_view field) const;
    std::vector<Record> records(std::size_t limit = SIZE_MAX, std::size_t offset = 0) const;
    std::size_t record_count() const;
    // Copy of the case base for analysis and simulation.
    RecordStore snapshot() const;

    // Imported records are finalized in file order and feed the menus
    // exactly as live finalizes do.
    std::size_t import_corpus(std::istream& in, CorpusFormat format);

    // Loads `path` if it exists, then appends every later finalize to it.
    void attach_store_file(const std::filesystem::path& path);

private:
    struct Draft {
        Record record;
        bool finalized = false;
    };

    Draft& draft_or_throw(std::string_view draft_id);
    std::uint64_t finalize_locked(Record record);

    Schema schema_;
    mutable std::shared_mutex mutex_;
    RecordStore store_;
    MenuState menus_;
    RuleSet rules_;
    std::map<std::string, Draft, std::less<>> drafts_;
    std::uint64_t next_draft_ = 1;
    std::optional<std::filesystem::path> store_file_;
};

}  // namespace formcap
