#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "formcap/record.hpp"

namespace formcap {

enum class CorpusFormat { jsonl, csv };

CorpusFormat parse_corpus_format(std::string_view text);

struct MatchOptions {
    bool case_insensitive = false;
};

// Case base of finalized records, kept in insertion (seq) order.
// Not synchronized; the capture engine serializes writers.
class RecordStore {
public:
    explicit RecordStore(Schema schema, MatchOptions options = {});

    const Schema& schema() const { return schema_; }
    std::span<const Record> records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    std::uint64_t last_seq() const { return next_seq_ - 1; }

    // Assigns the next seq (and an id "r<seq>" when the id is blank).
    // Throws on schema violations and duplicate ids.
    std::uint64_t finalize(Record record);

    // Latest record whose raw value for `field` equals `value`.
    const Record* find_latest_match(std::string_view field, std::string_view value) const;

    // Appends records in file order. Parse errors carry the 1-based line.
    std::size_t import_corpus(std::istream& in, CorpusFormat format);
    void export_jsonl(std::ostream& out) const;

private:
    std::size_t import_jsonl(std::istream& in);
    std::size_t import_csv(std::istream& in);

    Schema schema_;
    MatchOptions options_;
    std::vector<Record> records_;
    std::unordered_set<std::string> ids_;
    std::uint64_t next_seq_ = 1;
};

// One JSONL line: {"id":..., "fields": {id: raw}, "prov": {id: provenance}}.
nlohmann::json record_to_json(const Record& record);
Record record_from_json(const nlohmann::json& j, const Schema& schema);

// Recognition dictionary with exact, case-sensitive membership.
class Dictionary {
public:
    Dictionary() = default;
    explicit Dictionary(std::span<const std::string> words);

    bool contains(std::string_view word) const;
    // True if the word was not present before.
    bool add(std::string_view word);
    std::size_t size() const { return words_.size(); }
    std::vector<std::string> sorted_words() const;

private:
    std::unordered_set<std::string> words_;
};

}  // namespace formcap
