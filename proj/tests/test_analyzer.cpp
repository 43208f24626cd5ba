#include <doctest.h>

#include <random>

#include "formcap/analyzer.hpp"
#include "formcap/error.hpp"
#include "formcap/synthetic.hpp"
#include "oracles.hpp"

using namespace formcap;

namespace {

std::vector<Record> column_corpus(const FieldId& field, const std::vector<std::string>& values) {
    std::vector<Record> out;
    for (const auto& v : values) {
        Record r;
        r.set(field, v, Provenance::typed);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Record> pair_corpus(const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::vector<Record> out;
    for (const auto& [d, r] : pairs) {
        Record rec;
        rec.set("Company", d, Provenance::typed);
        rec.set("City", r, Provenance::typed);
        out.push_back(std::move(rec));
    }
    return out;
}

CoverageCurve curve_of(std::vector<double> points) {
    CoverageCurve c;
    c.coverage = std::move(points);
    return c;
}

}  // namespace

TEST_CASE("coverage curve hand example") {
    const auto corpus = column_corpus("City", {"A", "A", "A", "B", "B", "C"});
    const auto curve = coverage_curve(corpus, "City", 5);
    CHECK(curve.coverage[0] == doctest::Approx(0.5));
    CHECK(curve.coverage[1] == doctest::Approx(5.0 / 6.0));
    CHECK(curve.coverage[2] == 1.0);
    CHECK(curve.coverage[4] == 1.0);
    CHECK(curve.distinct == 3);

    CHECK(coverage_curve(column_corpus("City", {"X", "X"}), "City", 1).coverage[0] == 1.0);
    CHECK_THROWS_AS(coverage_curve(column_corpus("City", {"X"}), "City", 0), Error);
    CHECK_THROWS_AS(coverage_curve({}, "City", 3), Error);
}

TEST_CASE("ranked breaks ties by value") {
    const auto h = histogram(column_corpus("City", {"b", "a", "c", "c"}), "City");
    const auto r = h.ranked();
    CHECK(r[0].first == "c");
    CHECK(r[1].first == "a");
    CHECK(r[2].first == "b");
}

TEST_CASE("recommend_menu_size") {
    CHECK(recommend_menu_size(curve_of({0.5, 0.83, 1.0})) == 1u);
    std::vector<double> flat;
    for (int k = 1; k <= 60; ++k) flat.push_back(k >= 40 ? 0.5 + k / 1000.0 : k / 80.0);
    CHECK_FALSE(recommend_menu_size(curve_of(flat)).has_value());
    std::vector<double> company;
    for (int k = 1; k <= 30; ++k) company.push_back(k < 20 ? 0.1 + k * 0.02 : 0.5 + k * 0.001);
    CHECK(recommend_menu_size(curve_of(company)) == 20u);
    CHECK_THROWS_AS(recommend_menu_size(curve_of({1.0}), 0.0), Error);
    CHECK_THROWS_AS(recommend_menu_size(curve_of({1.0}), 1.5), Error);
}

TEST_CASE("recommend_menu_size agrees with a scan on random curves") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<double> c;
        double v = 0;
        const auto n = 1 + rng() % 40;
        for (std::size_t i = 0; i < n; ++i) {
            v = std::min(1.0, v + draw_unit(rng) * 0.1);
            c.push_back(v);
        }
        const double target = 0.05 + 0.95 * draw_unit(rng);
        CHECK(recommend_menu_size(curve_of(c), target, 23) == oracle::menu_size(c, target, 23));
    }
}

TEST_CASE("dependency stats hand examples") {
    auto s = dependency_stats(pair_corpus({{"X", "p"}, {"X", "p"}, {"X", "q"}, {"Y", "r"}}),
                              {"Company"}, {"City"});
    CHECK(s.support == 4);
    CHECK(s.density == doctest::Approx(0.75));
    CHECK(s.functionality == doctest::Approx(0.75));

    s = dependency_stats(pair_corpus({{"X", "p"}, {"X", "p"}, {"Y", "r"}, {"Y", "r"}}), {"Company"},
                         {"City"});
    CHECK(s.functionality == 1.0);
    CHECK(s.density == 1.0);

    // A unique key never repeats.
    s = dependency_stats(pair_corpus({{"1", "p"}, {"2", "p"}, {"3", "q"}}), {"Company"}, {"City"});
    CHECK(s.density == 0.0);
    CHECK(s.functionality == 1.0);

    CHECK_THROWS_AS(dependency_stats(pair_corpus({}), {"Company"}, {"City"}), Error);
    CHECK_THROWS_AS(dependency_stats(pair_corpus({{"a", "b"}}), {"City"}, {"City"}), Error);
}

TEST_CASE("analyzer matches brute force on random corpora") {
    std::mt19937_64 rng(43);
    const std::vector<Attribute> attrs = {
        {"Company"}, {"City"}, {"Phone1"}, {"Phone1", Component::phone_area_prefix},
        {"Phone1", Component::phone_area}, {"Email"}, {"Email", Component::email_domain},
        {"FirstName"}};
    for (int trial = 0; trial < 200; ++trial) {
        const auto corpus = oracle::random_corpus(rng, 100);
        for (const auto& a : attrs) {
            if (a.component != Component::whole) continue;
            const auto col = oracle::column(corpus, a);
            if (std::all_of(col.begin(), col.end(), [](const auto& v) { return v.empty(); })) continue;
            const auto curve = coverage_curve(corpus, a.field, 23);
            CHECK(curve.coverage == oracle::coverage(col, 23));
        }
        for (const auto& d : attrs) {
            for (const auto& r : attrs) {
                if (d == r) continue;
                const auto o = oracle::dependency(oracle::column(corpus, d), oracle::column(corpus, r));
                if (o.support == 0) continue;
                const auto s = dependency_stats(corpus, d, r);
                CHECK(s.support == o.support);
                CHECK(s.density == o.density);
                CHECK(s.functionality == o.functionality);
            }
        }
    }
}

TEST_CASE("mine recommends functional dense pairs") {
    std::vector<Record> corpus;
    for (int i = 0; i < 40; ++i) {
        Record r;
        const int c = i % 4;
        r.set("Company", "Co" + std::to_string(c), Provenance::typed);
        r.set("City", "City" + std::to_string(c), Provenance::typed);
        r.set("Phone1", "509 55" + std::to_string(c) + " " + std::to_string(1000 + i), Provenance::typed);
        r.set("Birthdate", "1/" + std::to_string(i + 1) + "/60", Provenance::typed);
        corpus.push_back(std::move(r));
    }
    const auto report = mine(corpus, default_schema(), MiningThresholds::defaults());
    CHECK(report.rules.contains("Company", "City"));
    REQUIRE(report.rules.find("Company", "Phone1"));
    CHECK(report.rules.find("Company", "Phone1")->transform == Transform::phone_area_prefix);
    // Birthdate is a unique key here.
    CHECK(report.rules.for_trigger("Birthdate").empty());

    const auto phone = std::find_if(report.dependencies.begin(), report.dependencies.end(),
                                    [](const auto& d) { return d.domain == "Company" && d.range == "Phone1"; });
    REQUIRE(phone != report.dependencies.end());
    CHECK(phone->functionality == doctest::Approx(0.1));

    // Deterministic output.
    const auto again = mine(corpus, default_schema(), MiningThresholds::defaults());
    CHECK(mining_report_to_json(again) == mining_report_to_json(report));
    CHECK(format_mining_report(report).find("Company") != std::string::npos);
}

TEST_CASE("mine on the synthetic address book finds the company rules") {
    const auto corpus = generate_address_book(200, 448);
    const auto report = mine(corpus, default_schema(), MiningThresholds::defaults());
    CHECK(report.rules.contains("Company", "City"));
    CHECK(report.rules.contains("Company", "ZipCode"));
    CHECK(report.rules.contains("City", "State"));
    const auto company = std::find_if(report.menus.begin(), report.menus.end(),
                                      [](const auto& m) { return m.field == "Company"; });
    REQUIRE(company != report.menus.end());
    CHECK(company->top1_share > 0.10);
}

TEST_CASE("coverage json and csv") {
    const auto corpus = column_corpus("City", {"A", "A", "B"});
    const auto curve = coverage_curve(corpus, "City", 2);
    const auto j = coverage_to_json(curve, recommend_menu_size(curve));
    CHECK(j.at("recommended_size") == 1);
    CHECK(j.at("top_values")[0].at("value") == "A");
    CHECK(coverage_csv(curve) == "k,coverage\n1,0.666667\n2,1.000000\n");
}
