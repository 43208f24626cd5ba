#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "formcap/engine.hpp"
#include "formcap/error.hpp"
#include "formcap/synthetic.hpp"

using namespace formcap;

namespace {

void preload(CaptureEngine& engine) {
    RecordStore scratch(default_schema());
    for (auto& r : worst_case_records()) scratch.finalize(r);
    std::stringstream file;
    scratch.export_jsonl(file);
    engine.import_corpus(file, CorpusFormat::jsonl);
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error");
    return ErrorCode::parse;
}

}  // namespace

TEST_CASE("commit returns fillin events and the menu") {
    CaptureEngine engine;
    preload(engine);
    const auto id = engine.create_draft();
    CHECK(id == "draft-1");
    const auto result = engine.commit_field(id, "Company", "IBM", CommitSource::written);
    CHECK(result.events.size() >= 5);
    REQUIRE(result.menu);
    // The import fed the menus; Leland's Aldus is the most recent company.
    CHECK(result.menu->recent.front() == "Aldus Corporation");
    const auto draft = engine.draft(id);
    CHECK(draft.value("Company").provenance == Provenance::written);
    CHECK(draft.value("City").provenance == Provenance::fillin);

    const auto first_name = engine.commit_field(id, "FirstName", "Robert", CommitSource::typed);
    CHECK_FALSE(first_name.menu);
    CHECK(first_name.events.empty());
}

TEST_CASE("user commit overrides a fillin value") {
    CaptureEngine engine;
    preload(engine);
    const auto id = engine.create_draft();
    engine.commit_field(id, "Company", "IBM", CommitSource::written);
    engine.commit_field(id, "City", "Spokane", CommitSource::menu);
    CHECK(engine.draft(id).value("City").provenance == Provenance::menu_chosen);
    // A later Company commit leaves the user's City alone.
    const auto again = engine.commit_field(id, "Company", "RAIMA Corp", CommitSource::written);
    for (const auto& e : again.events) CHECK(e.target != "City");
    CHECK(engine.draft(id).raw("City") == "Spokane");
}

TEST_CASE("empty values") {
    CaptureEngine engine;
    const auto id = engine.create_draft();
    engine.commit_field(id, "City", "Spokane", CommitSource::typed);
    engine.commit_field(id, "City", "", CommitSource::typed);
    CHECK(engine.draft(id).raw("City").empty());
    CHECK(code_of([&] { engine.commit_field(id, "City", "", CommitSource::written); }) ==
          ErrorCode::invalid_argument);
}

TEST_CASE("draft lifecycle errors") {
    CaptureEngine engine;
    CHECK(code_of([&] { engine.commit_field("draft-9", "City", "x", CommitSource::typed); }) ==
          ErrorCode::not_found);
    const auto id = engine.create_draft();
    CHECK(code_of([&] { engine.commit_field(id, "Planet", "x", CommitSource::typed); }) ==
          ErrorCode::not_found);
    engine.finalize(id);
    CHECK(code_of([&] { engine.finalize(id); }) == ErrorCode::conflict);
    CHECK(code_of([&] { engine.commit_field(id, "City", "x", CommitSource::typed); }) ==
          ErrorCode::conflict);
    CHECK(code_of([&] { engine.finalize("nope"); }) == ErrorCode::not_found);
    CHECK(code_of([&] { engine.menu("FirstName"); }) == ErrorCode::no_menu);
    CHECK(code_of([&] { engine.menu("Planet"); }) == ErrorCode::not_found);
}

TEST_CASE("finalize updates menus and seq") {
    CaptureEngine engine;
    const auto empty = engine.create_draft();
    CHECK(engine.finalize(empty) == 1);
    CHECK(engine.menu("City").recent.empty());

    const auto a = engine.create_draft();
    engine.commit_field(a, "City", "Bellevue", CommitSource::written);
    // Commits alone do not touch the menus.
    CHECK(engine.menu("City").recent.empty());
    const auto seq_a = engine.finalize(a);
    CHECK(engine.menu("City").recent.front() == "Bellevue");

    const auto b = engine.create_draft();
    engine.commit_field(b, "City", "Redmond", CommitSource::written);
    CHECK(engine.finalize(b) > seq_a);
    CHECK(engine.menu("City").recent == std::vector<std::string>{"Redmond", "Bellevue"});
    CHECK(engine.record_count() == 3);
    CHECK(engine.records(1, 1).front().raw("City") == "Bellevue");
    CHECK(engine.records(10, 5).empty());
}

TEST_CASE("drafts are invisible to fillin") {
    CaptureEngine engine;
    const auto a = engine.create_draft();
    engine.commit_field(a, "Company", "Acme", CommitSource::typed);
    engine.commit_field(a, "City", "Pullman", CommitSource::typed);
    const auto b = engine.create_draft();
    CHECK(engine.commit_field(b, "Company", "Acme", CommitSource::typed).events.empty());
    engine.finalize(a);
    const auto c = engine.create_draft();
    CHECK(engine.commit_field(c, "Company", "Acme", CommitSource::typed).events.size() == 1);
}

TEST_CASE("store file persistence") {
    const auto path = std::filesystem::temp_directory_path() / "formcap_engine_store.jsonl";
    std::filesystem::remove(path);
    {
        CaptureEngine engine;
        engine.attach_store_file(path);
        const auto id = engine.create_draft();
        engine.commit_field(id, "Company", "Acme", CommitSource::typed);
        engine.commit_field(id, "City", "Pullman", CommitSource::written);
        engine.finalize(id);
    }
    CaptureEngine reloaded;
    reloaded.attach_store_file(path);
    REQUIRE(reloaded.record_count() == 1);
    CHECK(reloaded.records().front().value("City").provenance == Provenance::written);
    CHECK(reloaded.menu("City").recent.front() == "Pullman");
    std::filesystem::remove(path);
}

TEST_CASE("concurrent drafts serialize cleanly") {
    CaptureEngine engine;
    preload(engine);
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&engine, t] {
            for (int i = 0; i < 25; ++i) {
                const auto id = engine.create_draft();
                engine.commit_field(id, "Company", "IBM", CommitSource::written);
                engine.commit_field(id, "FirstName", "T" + std::to_string(t), CommitSource::typed);
                engine.menu("City");
                engine.finalize(id);
            }
        });
    }
    for (auto& th : threads) th.join();
    CHECK(engine.record_count() == 5 + 8 * 25);
    const auto records = engine.records();
    for (std::size_t i = 0; i < records.size(); ++i) CHECK(records[i].seq == i + 1);
}
