#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bisep/invertible.hpp"

namespace bisep {

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultBudget;
  std::size_t jobs = 1;
  // Replaces the two-point algebra over F_2 by one with a mutated structure
  // constant, to exercise the failure path.
  bool inject_fault = false;
};

struct CriterionOutcome {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<std::string> checks;      // "claim: expected X, got Y" for every comparison made
  std::vector<std::string> mismatches;  // the failing subset
  double ms = 0;
  double limit_ms = 0;  // 0 = no time limit
};

// Criteria 1-10; each one is self-contained.
std::vector<int> acceptance_ids();
CriterionOutcome run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionOutcome> run_acceptance(const AcceptanceOptions& opt);

// Every claimed property of the catalog entries (defaults plus a few
// parameter variants), recomputed by the deciders.
struct ClaimOutcome {
  std::string entry;  // catalog name with any parameters
  std::string property;
  std::string expected, got;
  bool pass = false;
};
std::vector<ClaimOutcome> run_catalog_claims(const AcceptanceOptions& opt);

// Exhaustive F_2 checks used by criterion 9; exposed for the unit tests.
struct OracleStats {
  std::size_t algebras = 0;
  std::size_t modules = 0;
  std::size_t add_checks = 0;
  std::size_t extensions = 0;
  std::vector<std::string> discrepancies;
};
OracleStats run_add_oracle(std::size_t max_module_dim, std::size_t max_algebra_dim);
OracleStats run_extension_oracle(std::size_t max_dim_r, std::uint64_t budget);

}  // namespace bisep
