#include "groupalg/limits.hpp"

#include <cstdlib>
#include <string>

namespace groupalg {

namespace {

template <typename T>
void read_env(const char* name, T& slot) {
  const char* v = std::getenv(name);
  if (!v || !*v) return;
  try {
    slot = static_cast<T>(std::stoll(v));
  } catch (...) {
    // Unparseable overrides are ignored; defaults stay in force.
  }
}

}  // namespace

Limits Limits::from_env() {
  Limits l;
  read_env("GROUPALG_MAX_GROUP_ORDER", l.max_group_order);
  read_env("GROUPALG_SUBGROUP_ENUM_BOUND", l.subgroup_enum_bound);
  read_env("GROUPALG_MAX_ALGEBRA_ELEMENTS", l.max_algebra_elements);
  read_env("GROUPALG_SEARCH_BUDGET", l.search_budget);
  read_env("GROUPALG_MAX_MAXIMAL_SUBGROUPS", l.max_maximal_subgroups);
  read_env("GROUPALG_ALGEBRA_HOM_BUDGET", l.algebra_hom_budget);
  read_env("GROUPALG_BOVDI_BUDGET", l.bovdi_budget);
  read_env("GROUPALG_EXHAUSTIVE_SCAN_BOUND", l.exhaustive_scan_bound);
  return l;
}

Limits& limits() {
  static Limits instance = Limits::from_env();
  return instance;
}

}  // namespace groupalg
