#include "formcap/store.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>

#include "formcap/error.hpp"

namespace formcap {

namespace {

bool equal_ignore_case(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) ==
                      std::tolower(static_cast<unsigned char>(y));
           });
}

struct CsvRow {
    std::size_t line = 0;  // line on which the row starts
    std::vector<std::string> cells;
};

// RFC 4180 reader: quoted cells may hold commas, doubled quotes and newlines.
class CsvReader {
public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    bool next(CsvRow& row) {
        row.cells.clear();
        int c = in_.peek();
        if (c == std::char_traits<char>::eof()) return false;
        ++line_;
        row.line = line_;
        std::string cell;
        bool quoted = false;
        bool after_quote = false;
        for (;;) {
            c = in_.get();
            if (c == std::char_traits<char>::eof()) {
                if (quoted) throw Error(ErrorCode::parse, "unterminated quoted cell", row.line);
                row.cells.push_back(std::move(cell));
                return true;
            }
            char ch = static_cast<char>(c);
            if (quoted) {
                if (ch == '"') {
                    if (in_.peek() == '"') {
                        in_.get();
                        cell += '"';
                    } else {
                        quoted = false;
                        after_quote = true;
                    }
                } else {
                    if (ch == '\n') ++line_;
                    cell += ch;
                }
                continue;
            }
            if (ch == ',') {
                row.cells.push_back(std::move(cell));
                cell.clear();
                after_quote = false;
            } else if (ch == '\n' || ch == '\r') {
                if (ch == '\r' && in_.peek() == '\n') in_.get();
                row.cells.push_back(std::move(cell));
                return true;
            } else if (ch == '"') {
                if (!cell.empty() || after_quote) {
                    throw Error(ErrorCode::parse, "stray quote in cell", line_);
                }
                quoted = true;
            } else {
                if (after_quote) throw Error(ErrorCode::parse, "text after closing quote", line_);
                cell += ch;
            }
        }
    }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

bool blank_line(std::string_view line) {
    return std::all_of(line.begin(), line.end(),
                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

}  // namespace

CorpusFormat parse_corpus_format(std::string_view text) {
    if (text == "jsonl") return CorpusFormat::jsonl;
    if (text == "csv") return CorpusFormat::csv;
    throw Error(ErrorCode::invalid_argument, "unknown corpus format '" + std::string(text) + "'");
}

RecordStore::RecordStore(Schema schema, MatchOptions options)
    : schema_(std::move(schema)), options_(options) {}

std::uint64_t RecordStore::finalize(Record record) {
    validate_record(schema_, record);
    const std::uint64_t seq = next_seq_;
    if (record.id.empty()) record.id = "r" + std::to_string(seq);
    if (ids_.count(record.id)) {
        throw Error(ErrorCode::conflict, "duplicate record id '" + record.id + "'");
    }
    record.seq = seq;
    ids_.insert(record.id);
    records_.push_back(std::move(record));
    ++next_seq_;
    return seq;
}

const Record* RecordStore::find_latest_match(std::string_view field,
                                             std::string_view value) const {
    for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
        const auto& raw = it->raw(field);
        if (raw.empty()) continue;
        if (options_.case_insensitive ? equal_ignore_case(raw, value) : raw == value) {
            return &*it;
        }
    }
    return nullptr;
}

std::size_t RecordStore::import_corpus(std::istream& in, CorpusFormat format) {
    return format == CorpusFormat::jsonl ? import_jsonl(in) : import_csv(in);
}

std::size_t RecordStore::import_jsonl(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<Record> parsed;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank_line(line)) continue;
        try {
            parsed.push_back(record_from_json(nlohmann::json::parse(line), schema_));
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::parse,
                        "line " + std::to_string(line_no) + ": " + e.what(), line_no);
        } catch (const Error& e) {
            throw Error(e.code() == ErrorCode::not_found ? ErrorCode::not_found : ErrorCode::parse,
                        "line " + std::to_string(line_no) + ": " + e.what(), line_no);
        }
    }
    for (auto& record : parsed) finalize(std::move(record));
    return parsed.size();
}

std::size_t RecordStore::import_csv(std::istream& in) {
    CsvReader reader(in);
    CsvRow row;
    if (!reader.next(row)) return 0;
    const std::vector<std::string> header = row.cells;
    for (const auto& name : header) {
        if (!schema_.contains(name)) {
            throw Error(ErrorCode::not_found, "unknown field '" + name + "'", row.line);
        }
    }
    std::vector<Record> parsed;
    while (reader.next(row)) {
        if (row.cells.size() == 1 && row.cells[0].empty()) continue;
        if (row.cells.size() != header.size()) {
            throw Error(ErrorCode::parse,
                        "line " + std::to_string(row.line) + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(row.cells.size()),
                        row.line);
        }
        Record record;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (!row.cells[i].empty()) record.set(header[i], row.cells[i], Provenance::typed);
        }
        parsed.push_back(std::move(record));
    }
    for (auto& record : parsed) finalize(std::move(record));
    return parsed.size();
}

void RecordStore::export_jsonl(std::ostream& out) const {
    for (const auto& record : records_) out << record_to_json(record).dump() << '\n';
}

nlohmann::json record_to_json(const Record& record) {
    nlohmann::json fields = nlohmann::json::object();
    nlohmann::json prov = nlohmann::json::object();
    for (const auto& [field, value] : record.values) {
        if (value.empty()) continue;
        fields[field] = value.raw;
        prov[field] = to_string(value.provenance);
    }
    nlohmann::json j = {{"fields", fields}, {"prov", prov}};
    if (!record.id.empty()) j["id"] = record.id;
    return j;
}

Record record_from_json(const nlohmann::json& j, const Schema& schema) {
    if (!j.is_object() || !j.contains("fields") || !j.at("fields").is_object()) {
        throw Error(ErrorCode::parse, "record must be an object with a \"fields\" object");
    }
    Record record;
    if (j.contains("id")) record.id = j.at("id").get<std::string>();
    const nlohmann::json empty = nlohmann::json::object();
    const auto& prov = j.contains("prov") ? j.at("prov") : empty;
    for (const auto& [field, raw] : j.at("fields").items()) {
        if (!schema.contains(field)) throw Error(ErrorCode::not_found, "unknown field '" + field + "'");
        auto text = raw.get<std::string>();
        if (text.empty()) continue;
        Provenance p = Provenance::typed;
        if (prov.contains(field)) {
            p = parse_provenance(prov.at(field).get<std::string>());
            if (p == Provenance::empty) {
                throw Error(ErrorCode::parse, "field '" + field + "' is non-empty but marked empty");
            }
        }
        record.set(field, std::move(text), p);
    }
    for (const auto& [field, _] : prov.items()) {
        if (!schema.contains(field)) throw Error(ErrorCode::not_found, "unknown field '" + field + "'");
    }
    return record;
}

Dictionary::Dictionary(std::span<const std::string> words) {
    for (const auto& w : words) add(w);
}

bool Dictionary::contains(std::string_view word) const {
    return words_.count(std::string(word)) > 0;
}

bool Dictionary::add(std::string_view word) {
    if (word.empty()) throw Error(ErrorCode::invalid_argument, "empty word");
    return words_.emplace(word).second;
}

std::vector<std::string> Dictionary::sorted_words() const {
    std::vector<std::string> out(words_.begin(), words_.end());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace formcap
