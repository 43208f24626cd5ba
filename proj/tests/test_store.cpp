#include <doctest.h>

#include <random>
#include <sstream>

#include "formcap/error.hpp"
#include "formcap/store.hpp"
#include "formcap/synthetic.hpp"

using namespace formcap;

namespace {

RecordStore preloaded() {
    RecordStore store(default_schema());
    for (auto& r : worst_case_records()) store.finalize(r);
    return store;
}

}  // namespace

TEST_CASE("finalize assigns increasing seq") {
    RecordStore store(default_schema());
    Record a;
    a.set("City", "Seattle", Provenance::typed);
    CHECK(store.finalize(a) == 1);
    CHECK(store.finalize(Record{}) == 2);  // all-empty is allowed
    CHECK(store.records()[0].id == "r1");
    CHECK(store.last_seq() == 2);
    Record dup;
    dup.id = "r1";
    CHECK_THROWS_AS(store.finalize(dup), Error);
}

TEST_CASE("find_latest_match") {
    auto store = preloaded();
    const auto* ibm = store.find_latest_match("Company", "IBM");
    REQUIRE(ibm);
    CHECK(ibm->raw("FirstName") == "Robert");
    CHECK(ibm->raw("Title") == "Account Marketing Rep");
    CHECK(store.find_latest_match("Company", "Acme") == nullptr);
    CHECK(store.find_latest_match("Company", "ibm") == nullptr);

    // Carlson and Leland are both in Seattle; Leland was finalized later.
    const auto* seattle = store.find_latest_match("City", "Seattle");
    REQUIRE(seattle);
    CHECK(seattle->id == "leland");
}

TEST_CASE("latest match wins in either insertion order") {
    for (bool swap : {false, true}) {
        RecordStore store(default_schema());
        Record a, b;
        a.set("City", "Seattle", Provenance::typed);
        a.set("ZipCode", "98101", Provenance::typed);
        b.set("City", "Seattle", Provenance::typed);
        b.set("ZipCode", "98133", Provenance::typed);
        if (swap) std::swap(a, b);
        store.finalize(a);
        store.finalize(b);
        CHECK(store.find_latest_match("City", "Seattle")->raw("ZipCode") == b.raw("ZipCode"));
    }
}

TEST_CASE("case-insensitive matching is opt-in") {
    RecordStore store(default_schema(), MatchOptions{true});
    for (auto& r : worst_case_records()) store.finalize(r);
    REQUIRE(store.find_latest_match("Company", "ibm"));
}

TEST_CASE("find_latest_match agrees with a scan oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        RecordStore store(default_schema());
        const auto n = 1 + rng() % 30;
        for (std::size_t i = 0; i < n; ++i) {
            Record r;
            if (rng() % 4) r.set("City", "C" + std::to_string(rng() % 5), Provenance::typed);
            store.finalize(r);
        }
        for (int c = 0; c < 6; ++c) {
            const std::string v = "C" + std::to_string(c);
            std::uint64_t best = 0;
            for (const auto& r : store.records()) {
                if (r.raw("City") == v) best = std::max(best, r.seq);
            }
            const auto* hit = store.find_latest_match("City", v);
            CHECK((hit ? hit->seq : 0) == best);
        }
    }
}

TEST_CASE("jsonl import and export round trip") {
    const auto records = generate_address_book(200, 448);
    RecordStore a(default_schema());
    for (const auto& r : records) a.finalize(r);
    std::stringstream file;
    a.export_jsonl(file);

    RecordStore b(default_schema());
    CHECK(b.import_corpus(file, CorpusFormat::jsonl) == 200);
    REQUIRE(b.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(record_to_json(a.records()[i]) == record_to_json(b.records()[i]));
    }
}

TEST_CASE("import of an empty file") {
    RecordStore store(default_schema());
    std::stringstream empty;
    CHECK(store.import_corpus(empty, CorpusFormat::jsonl) == 0);
    std::stringstream csv;
    CHECK(store.import_corpus(csv, CorpusFormat::csv) == 0);
}

TEST_CASE("import errors carry the line") {
    RecordStore store(default_schema());
    std::stringstream bad(
        "{\"fields\":{\"City\":\"A\"}}\n"
        "{\"fields\":{\"City\":\"B\"}}\n"
        "{\"fields\":{\"City\":\n");
    try {
        store.import_corpus(bad, CorpusFormat::jsonl);
        FAIL("expected a parse error");
    } catch (const Error& e) {
        CHECK(e.line() == 3);
    }
    CHECK(store.size() == 0);  // nothing from a failed import

    std::stringstream unknown("{\"fields\":{\"Planet\":\"Mars\"}}\n");
    CHECK_THROWS_AS(store.import_corpus(unknown, CorpusFormat::jsonl), Error);

    std::stringstream marked("{\"fields\":{\"City\":\"A\"},\"prov\":{\"City\":\"empty\"}}\n");
    CHECK_THROWS_AS(store.import_corpus(marked, CorpusFormat::jsonl), Error);
}

TEST_CASE("csv import") {
    RecordStore store(default_schema());
    std::stringstream csv(
        "FirstName,Company,City\n"
        "Eric,\"RAIMA Corp\",Bellevue\n"
        "Mike,\"General, \"\"Construction\"\"\",\n");
    CHECK(store.import_corpus(csv, CorpusFormat::csv) == 2);
    CHECK(store.records()[0].raw("Company") == "RAIMA Corp");
    CHECK(store.records()[0].value("City").provenance == Provenance::typed);
    CHECK(store.records()[1].raw("Company") == "General, \"Construction\"");
    CHECK(store.records()[1].raw("City").empty());

    std::stringstream bad("Planet\nMars\n");
    CHECK_THROWS_AS(store.import_corpus(bad, CorpusFormat::csv), Error);
}

TEST_CASE("provenance survives a reload") {
    RecordStore a(default_schema());
    Record r;
    r.set("City", "Spokane", Provenance::fillin);
    r.set("Company", "IBM", Provenance::menu_chosen);
    a.finalize(r);
    std::stringstream file;
    a.export_jsonl(file);
    RecordStore b(default_schema());
    b.import_corpus(file, CorpusFormat::jsonl);
    CHECK(b.records()[0].value("City").provenance == Provenance::fillin);
    CHECK(b.records()[0].value("Company").provenance == Provenance::menu_chosen);
}

TEST_CASE("dictionary") {
    Dictionary d;
    CHECK_FALSE(d.contains("RAIMA"));
    CHECK(d.add("RAIMA"));
    CHECK(d.contains("RAIMA"));
    CHECK_FALSE(d.add("RAIMA"));
    CHECK_FALSE(d.contains("raima"));
    CHECK_THROWS_AS(d.add(""), Error);
}
