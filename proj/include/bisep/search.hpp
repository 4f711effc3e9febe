#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bisep/report.hpp"

namespace bisep {

struct SearchConfig {
  Field field = Field::prime(2);
  std::size_t max_dim_r = 4;
  std::size_t max_dim_s = 4;
  std::vector<std::string> filter{"biseparable"};
  std::vector<std::string> expect{"frobenius"};
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultBudget;
  std::size_t jobs = 1;
  std::size_t random_algebras = 64;  // random structure-constant attempts
  bool builtin = true;
  bool timing = true;
};

struct SearchCandidate {
  std::string origin;  // how R was produced
  Extension ext;
};

struct SearchStats {
  std::size_t algebras = 0;
  std::size_t random_attempts = 0;
  std::size_t random_accepted = 0;
  std::size_t subalgebra_budget_skips = 0;
};

// Fixed families of algebras of dimension 2..max_dim used by the search.
std::vector<std::pair<std::string, Algebra>> builtin_search_algebras(const Field& f, std::size_t max_dim);

// The deterministic candidate queue: algebras R in a fixed order, each with
// its proper unital subalgebras generated by at most two elements, deduped by
// the reduced echelon basis of their span.
std::vector<SearchCandidate> search_candidates(const SearchConfig& cfg, SearchStats* stats = nullptr);

struct SearchResult {
  json report;
  std::size_t violations = 0;
  std::size_t unknowns = 0;
  std::size_t filter_hits = 0;
  std::size_t candidates = 0;
};

SearchResult run_search(const SearchConfig& cfg);

}  // namespace bisep
