#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "formcap/record.hpp"

namespace formcap {

// The five test names (first/last swapped, phones replaced), entered in
// the experiment. None of their companies occurs in generated preloads.
std::vector<Record> worst_case_records();

// Deterministic Washington-area address book: a Zipf-weighted pool of
// multi-office companies plus one-off employers, one to three phones,
// sparse honorific/country/e-mail. Records carry ids "p1".."pN".
std::vector<Record> generate_address_book(std::size_t count, std::uint64_t seed);

// Portable helpers over a raw 64-bit engine (std distributions are
// implementation-defined, these are not).
std::size_t draw_index(std::mt19937_64& rng, std::size_t n);
double draw_unit(std::mt19937_64& rng);

}  // namespace formcap
