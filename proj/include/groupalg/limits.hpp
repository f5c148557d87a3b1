#pragma once

#include <cstdint>

namespace groupalg {

// Central resource bounds.  Defaults are picked once from the environment
// (GROUPALG_* variables) and can be overridden programmatically or by CLI
// flags; every bound violation surfaces as BoundExceeded / SearchBudgetExceeded
// naming the limit, never as silent truncation.
struct Limits {
  int max_group_order = 4096;            // largest Cayley table we materialize
  int subgroup_enum_bound = 256;         // full subgroup lattice enumeration
  std::int64_t max_algebra_elements = 1 << 20;   // element enumeration cap
  std::int64_t search_budget = 20'000'000;       // backtracking node budget
  int max_maximal_subgroups = 20;                // inclusion-exclusion width
  std::int64_t algebra_hom_budget = 1 << 24;     // brute-force linear map count
  std::int64_t bovdi_budget = 1 << 27;           // structure-constant candidates
  std::int64_t exhaustive_scan_bound = 10'000;   // O(N^2) pairing scans

  // Env names: GROUPALG_MAX_GROUP_ORDER, GROUPALG_SUBGROUP_ENUM_BOUND,
  // GROUPALG_MAX_ALGEBRA_ELEMENTS, GROUPALG_SEARCH_BUDGET,
  // GROUPALG_MAX_MAXIMAL_SUBGROUPS, GROUPALG_ALGEBRA_HOM_BUDGET,
  // GROUPALG_BOVDI_BUDGET, GROUPALG_EXHAUSTIVE_SCAN_BOUND.
  static Limits from_env();
};

Limits& limits();  // mutable process-wide instance, seeded by from_env()

}  // namespace groupalg
