#pragma once

// Brute-force reference implementations. Deliberately naive: they share no
// code with the library beyond the Record type and transforms.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "formcap/analyzer.hpp"
#include "formcap/fillin.hpp"
#include "formcap/record.hpp"
#include "formcap/store.hpp"

namespace oracle {

// Distinct non-empty values of the sequence suffix, most recent first.
inline std::vector<std::string> mru_replay(const std::vector<std::string>& uses, std::size_t capacity) {
    std::vector<std::string> out;
    for (auto it = uses.rbegin(); it != uses.rend() && out.size() < capacity; ++it) {
        if (it->empty()) continue;
        if (std::find(out.begin(), out.end(), *it) == out.end()) out.push_back(*it);
    }
    return out;
}

inline std::vector<std::string> column(const std::vector<formcap::Record>& corpus,
                                       const formcap::Attribute& a) {
    std::vector<std::string> out;
    for (const auto& r : corpus) out.push_back(a.extract(r));
    return out;
}

// Count every distinct value by rescanning, sort the counts, prefix-sum.
inline std::vector<double> coverage(const std::vector<std::string>& values, std::size_t k) {
    std::vector<std::string> seen;
    std::vector<std::size_t> counts;
    std::size_t total = 0;
    for (const auto& v : values) {
        if (v.empty()) continue;
        ++total;
        if (std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
        seen.push_back(v);
        counts.push_back(static_cast<std::size_t>(std::count(values.begin(), values.end(), v)));
    }
    std::sort(counts.rbegin(), counts.rend());
    std::vector<double> out;
    std::size_t covered = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (i < counts.size()) covered += counts[i];
        out.push_back(static_cast<double>(covered) / static_cast<double>(total));
    }
    return out;
}

inline std::optional<std::size_t> menu_size(const std::vector<double>& curve, double target,
                                            std::size_t max_entries) {
    for (std::size_t size = 1; size <= curve.size() && size <= max_entries; ++size) {
        if (curve[size - 1] >= target) return size;
    }
    return std::nullopt;
}

struct Dependency {
    std::size_t support = 0;
    std::size_t repeated = 0;
    std::size_t functional = 0;
    double density = 0;
    double functionality = 0;
};

// Pair counting: every record is compared against every other record.
inline Dependency dependency(const std::vector<std::string>& dom, const std::vector<std::string>& ran) {
    Dependency d;
    const std::size_t n = dom.size();
    auto usable = [&](std::size_t i) { return !dom[i].empty() && !ran[i].empty(); };
    // same_pair[i]: usable records agreeing with record i on both values.
    std::vector<std::size_t> same_domain(n, 0), same_pair(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!usable(i)) continue;
        ++d.support;
        for (std::size_t j = 0; j < n; ++j) {
            if (!usable(j) || dom[j] != dom[i]) continue;
            ++same_domain[i];
            if (ran[j] == ran[i]) ++same_pair[i];
        }
        if (same_domain[i] >= 2) ++d.repeated;
    }
    // Per domain value, the best range value keeps same_pair records.
    std::vector<bool> counted(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (!usable(i) || counted[i]) continue;
        std::size_t best = 0;
        for (std::size_t j = i; j < n; ++j) {
            if (!usable(j) || dom[j] != dom[i]) continue;
            counted[j] = true;
            best = std::max(best, same_pair[j]);
        }
        d.functional += best;
    }
    if (d.support) {
        d.density = static_cast<double>(d.repeated) / static_cast<double>(d.support);
        d.functionality = static_cast<double>(d.functional) / static_cast<double>(d.support);
    }
    return d;
}

// A small address-book-shaped corpus drawn from tiny alphabets so values
// repeat, with blanks sprinkled in.
inline std::vector<formcap::Record> random_corpus(std::mt19937_64& rng, std::size_t max_records) {
    std::uniform_int_distribution<std::size_t> size_dist(1, max_records);
    const std::size_t n = size_dist(rng);
    const std::size_t companies = 1 + rng() % 8;
    const std::size_t cities = 1 + rng() % 6;
    std::vector<formcap::Record> out;
    for (std::size_t i = 0; i < n; ++i) {
        formcap::Record r;
        auto maybe = [&](const std::string& field, const std::string& value) {
            if (rng() % 7 != 0) r.set(field, value, formcap::Provenance::typed);
        };
        const auto c = rng() % companies;
        maybe("Company", "Co" + std::to_string(c));
        maybe("City", "City" + std::to_string(rng() % 3 == 0 ? rng() % cities : c % cities));
        maybe("Phone1", std::to_string(200 + c % 3) + " " + std::to_string(500 + rng() % 3) + " " +
                            std::to_string(1000 + rng() % 5));
        maybe("Email", "u" + std::to_string(rng() % 4) + "@d" + std::to_string(c % 4) + ".com");
        maybe("FirstName", "N" + std::to_string(rng() % 30));
        out.push_back(std::move(r));
    }
    return out;
}

inline nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return nlohmann::json::parse(ss.str());
}

}  // namespace oracle
