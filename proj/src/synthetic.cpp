#include "formcap/synthetic.hpp"

#include <array>
#include <cctype>
#include <cstdio>

namespace formcap {

namespace {

struct City {
    const char* name;
    const char* area;
    int zip_low;
    int zip_high;
};

constexpr std::array<City, 15> kCities = {{
    {"Seattle", "206", 98101, 98199},   {"Bellevue", "206", 98004, 98008},
    {"Redmond", "206", 98052, 98053},   {"Kirkland", "206", 98033, 98034},
    {"Everett", "206", 98201, 98208},   {"Tacoma", "206", 98402, 98499},
    {"Olympia", "360", 98501, 98516},   {"Spokane", "509", 99201, 99224},
    {"Pullman", "509", 99163, 99165},   {"Yakima", "509", 98901, 98908},
    {"Walla Walla", "509", 99362, 99362}, {"Vancouver", "360", 98660, 98687},
    {"Bellingham", "360", 98225, 98229}, {"Richland", "509", 99352, 99354},
    {"Wenatchee", "509", 98801, 98807},
}};

constexpr std::array<const char*, 40> kCompanies = {
    "Boeing", "Microsoft", "Washington State University", "Weyerhaeuser", "PACCAR",
    "Nordstrom", "Safeco", "Puget Sound Power", "Washington Mutual", "Seafirst Bank",
    "Key Bank", "Alaska Airlines", "Costco", "Starbucks", "Egghead Software",
    "McCaw Cellular", "Attachmate", "WRQ", "Immunex", "Fluke",
    "Intermec", "Physio-Control", "Group Health", "Providence Hospital",
    "Sacred Heart Medical Center", "Itron", "Key Tronic", "Washington Water Power",
    "Schweitzer Engineering", "Pullman Memorial Hospital", "City of Pullman",
    "Spokane Public Schools", "Tacoma Public Utilities", "Pacific Northwest Bell", "US West",
    "Battelle", "Westinghouse Hanford", "Pemco", "Holland America", "Univar",
};

constexpr std::array<const char*, 24> kStreets = {
    "Main Street", "Pine Street", "First Ave", "Second Ave", "Grand Blvd", "Lake Drive",
    "River Road", "NE 8th Street", "Union Street", "Madison Street", "College Ave",
    "Stadium Way", "Airport Road", "Maple Lane", "Pacific Highway", "Park Place",
    "Spring Street", "Division Street", "Monroe Street", "Hill Court", "Valley View",
    "Mill Road", "Sunset Blvd", "Industrial Way",
};

constexpr std::array<const char*, 40> kFirstNames = {
    "John", "James", "Robert", "Michael", "William", "David", "Richard", "Thomas",
    "Charles", "Joseph", "Mark", "Paul", "Steven", "Kenneth", "Gary", "Donald",
    "Mary", "Patricia", "Linda", "Barbara", "Elizabeth", "Jennifer", "Susan", "Margaret",
    "Dorothy", "Lisa", "Nancy", "Karen", "Betty", "Helen", "Sandra", "Donna",
    "Carol", "Ruth", "Sharon", "Michelle", "Laura", "Sarah", "Kevin", "Brian",
};

constexpr std::array<const char*, 40> kLastNames = {
    "Smith", "Johnson", "Williams", "Jones", "Brown", "Davis", "Miller", "Wilson",
    "Moore", "Taylor", "Thompson", "White", "Harris", "Martin", "Garcia", "Martinez",
    "Robinson", "Clark", "Lewis", "Lee", "Walker", "Hall", "Allen", "Young",
    "King", "Wright", "Hill", "Scott", "Green", "Adams", "Baker", "Nelson",
    "Carter", "Mitchell", "Roberts", "Turner", "Phillips", "Campbell", "Parker", "Evans",
};

constexpr std::array<const char*, 24> kTitles = {
    "President", "President", "President", "Vice President", "Director",
    "Director of Development", "Manager", "Sales Manager", "Engineer", "Senior Engineer",
    "Software Engineer", "Professor", "Assistant Professor", "Dean", "Account Manager",
    "Controller", "Treasurer", "Consultant", "Attorney", "Program Manager",
    "Technical Lead", "Office Manager", "Chief Executive Officer", "Analyst",
};

constexpr std::array<const char*, 6> kOneOffSuffixes = {
    "& Associates", "Consulting", "Construction", "Insurance", "Design Group", "Law Office",
};

struct Office {
    std::string address;
    std::string address2;
    const City* city;
    std::string zip;
    std::string prefix;
};

struct Company {
    std::string name;
    std::string domain;
    std::vector<Office> offices;
};

template <typename T, std::size_t N>
const T& pick(std::mt19937_64& rng, const std::array<T, N>& items) {
    return items[draw_index(rng, N)];
}

std::string digits(std::mt19937_64& rng, int width, int low = 0) {
    int span = 1;
    for (int i = 0; i < width; ++i) span *= 10;
    int n = low + static_cast<int>(draw_index(rng, static_cast<std::size_t>(span - low)));
    char buf[16];
    std::snprintf(buf, sizeof buf, "%0*d", width, n);
    return buf;
}

std::string zip_for(std::mt19937_64& rng, const City& city) {
    int zip = city.zip_low +
              static_cast<int>(draw_index(rng, static_cast<std::size_t>(city.zip_high - city.zip_low + 1)));
    return std::to_string(zip);
}

Office make_office(std::mt19937_64& rng, const City& city) {
    Office o;
    o.address = std::to_string(100 + draw_index(rng, 19900)) + " " + pick(rng, kStreets);
    if (draw_unit(rng) < 0.3) o.address2 = "Suite " + std::to_string(100 + draw_index(rng, 800));
    o.city = &city;
    o.zip = zip_for(rng, city);
    o.prefix = digits(rng, 3, 200);
    return o;
}

std::string domain_for(const std::string& name) {
    std::string d;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c))) d += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return d + ".com";
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

std::size_t draw_index(std::mt19937_64& rng, std::size_t n) {
    return n == 0 ? 0 : static_cast<std::size_t>(rng() % n);
}

double draw_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<Record> worst_case_records() {
    struct Row {
        const char* id;
        std::array<const char*, 12> values;
    };
    // FirstName LastName Title Company Address1 Address2 City State ZipCode
    // Phone1 Phone2 Phone3
    static const std::array<Row, 5> kRows = {{
        {"anderson", {"Robert", "Anderson", "Account Marketing Rep", "IBM", "W 201 N River Drive",
                      "", "Spokane", "WA", "99201", "509 555 0000", "509 555 1111", ""}},
        {"brice", {"Eric", "Brice", "Director of Engineering", "RAIMA Corp", "3245 146th Place SE",
                   "", "Bellevue", "WA", "98007", "206 555 2222", "206 555 3333", "205 555 4444"}},
        {"carlson", {"Mike", "Carlson", "VP Engineering & Estimating", "General Construction",
                     "2111 N Northgate Way", "Suite 305", "Seattle", "WA", "98133", "206 555 5555",
                     "206 555 6666", ""}},
        {"friedman", {"Peter", "Friedman", "President", "NOVA Information Systems",
                      "12277 134th Court NE", "Suite 203", "Redmond", "WA", "98052",
                      "206 555 7777", "", ""}},
        {"leland", {"Thomas", "Leland", "Staffing Manager", "Aldus Corporation",
                    "411 First Ave South", "", "Seattle", "WA", "98104 2871", "206 555 8888",
                    "206 555 9999", ""}},
    }};
    static const std::array<const char*, 12> kFields = {
        "FirstName", "LastName", "Title", "Company", "Address1", "Address2",
        "City", "State", "ZipCode", "Phone1", "Phone2", "Phone3"};

    std::vector<Record> out;
    for (const auto& row : kRows) {
        Record r;
        r.id = row.id;
        for (std::size_t i = 0; i < kFields.size(); ++i) {
            if (*row.values[i]) r.set(kFields[i], row.values[i], Provenance::typed);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Record> generate_address_book(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);

    std::vector<Company> companies;
    for (const char* name : kCompanies) {
        Company c{name, domain_for(name), {}};
        const std::size_t offices = draw_unit(rng) < 0.3 ? 2 : 1;
        for (std::size_t i = 0; i < offices; ++i) c.offices.push_back(make_office(rng, pick(rng, kCities)));
        companies.push_back(std::move(c));
    }
    double total_weight = 0;
    for (std::size_t i = 0; i < companies.size(); ++i) total_weight += 1.0 / static_cast<double>(i + 1);

    auto pick_company = [&]() -> const Company& {
        double u = draw_unit(rng) * total_weight;
        for (std::size_t i = 0; i < companies.size(); ++i) {
            u -= 1.0 / static_cast<double>(i + 1);
            if (u < 0) return companies[i];
        }
        return companies.back();
    };

    std::vector<Record> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) {
        Record r;
        r.id = "p" + std::to_string(n + 1);
        const std::string first = pick(rng, kFirstNames);
        const std::string last = pick(rng, kLastNames);
        r.set("FirstName", first, Provenance::typed);
        r.set("LastName", last, Provenance::typed);
        if (draw_unit(rng) < 0.1) {
            static const std::array<const char*, 4> kHonorifics = {"Mr.", "Ms.", "Mrs.", "Dr."};
            r.set("Honorific", pick(rng, kHonorifics), Provenance::typed);
        }

        const double kind = draw_unit(rng);
        Office office;
        std::string company;
        std::string domain;
        if (kind < 0.7) {
            const auto& c = pick_company();
            company = c.name;
            domain = c.domain;
            office = c.offices.size() > 1 && draw_unit(rng) < 0.2 ? c.offices[1] : c.offices[0];
        } else if (kind < 0.9) {
            company = std::string(pick(rng, kLastNames)) + " " + pick(rng, kOneOffSuffixes);
            domain = domain_for(company);
            office = make_office(rng, pick(rng, kCities));
        } else {
            office = make_office(rng, pick(rng, kCities));
            office.address2.clear();
        }
        if (!company.empty()) {
            r.set("Title", pick(rng, kTitles), Provenance::typed);
            r.set("Company", company, Provenance::typed);
        }
        r.set("Address1", office.address, Provenance::typed);
        r.set("Address2", office.address2, Provenance::typed);
        r.set("City", office.city->name, Provenance::typed);
        r.set("State", "WA", Provenance::typed);
        r.set("ZipCode", office.zip, Provenance::typed);
        if (draw_unit(rng) < 0.05) r.set("Country", "United States", Provenance::typed);
        if (!domain.empty() && draw_unit(rng) < 0.12) {
            r.set("Email", lower(first.substr(0, 1) + last) + "@" + domain, Provenance::typed);
        }

        std::vector<std::string> phones;
        phones.push_back(std::string(office.city->area) + " " + office.prefix + " " + digits(rng, 4));
        const double more = draw_unit(rng);
        const std::size_t extra = more < 0.45 ? 0 : more < 0.85 ? 1 : 2;
        for (std::size_t i = 0; i < extra; ++i) {
            phones.push_back(std::string(office.city->area) + " " + digits(rng, 3, 200) + " " + digits(rng, 4));
        }
        for (std::size_t i = 0; i < phones.size(); ++i) {
            r.set("Phone" + std::to_string(i + 1), phones[i], Provenance::typed);
        }
        if (draw_unit(rng) < 0.05) {
            r.set("Birthdate", std::to_string(1 + draw_index(rng, 12)) + "/" +
                                   std::to_string(1 + draw_index(rng, 28)) + "/" +
                                   std::to_string(30 + draw_index(rng, 50)),
                  Provenance::typed);
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace formcap
