#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "groupalg/algebra.hpp"
#include "groupalg/group.hpp"
#include "groupalg/numeric.hpp"

namespace groupalg {

/// Hom-counting target: a tabulated group, or an abelian group known only by
/// its primary cyclic invariants (a unit group too large to tabulate).
/// Exactly one of the two descriptions is populated.
struct HomTarget {
  std::optional<FiniteGroup> table;
  std::optional<std::vector<int>> invariants;
  std::string label;
  BigInt order() const;
};

HomTarget hom_target(const FiniteGroup& g);
/// Prefers the materialized table; falls back to abelian invariants.
/// PreconditionViolated when the unit group carries neither.
HomTarget hom_target(const UnitGroupInfo& u);

/// Exact |Hom(g, t)|.  Abelian pairs resolve to a product of gcds of cyclic
/// invariants; an invariants-only target factors through the abelianization
/// of g and uses the same product; everything else runs generator-image
/// backtracking with order-divisibility pruning and incremental closure
/// verification (the accepted maps are checked multiplicative on every pair
/// of the closure, so the count is exact, not heuristic).
BigInt count_homs(const FiniteGroup& g, const HomTarget& t);
BigInt count_homs(const FiniteGroup& g, const FiniteGroup& t);

/// The backtracking route unconditionally, bypassing the gcd fast path
/// (used to cross-check the fast path in tests).
BigInt count_homs_backtracking(const FiniteGroup& g, const FiniteGroup& t);

/// Exact |Epi(g, h)|: enumerates homomorphisms by the same backtracking and
/// keeps those whose image is all of h.
BigInt count_epis_bruteforce(const FiniteGroup& g, const FiniteGroup& h);

/// Exact |Epi(g, h)| as the signed sum of |Hom(g, S)| over intersections S of
/// subsets of the maximal subgroups of h; the empty subset contributes h
/// itself.  Repeated intersections keep their individual signs, but their
/// hom counts are memoized by member bitset.
BigInt count_epis_inclusion_exclusion(const FiniteGroup& g,
                                      const FiniteGroup& h);

/// One representative per isomorphism class of subgroups, ascending order,
/// deterministic (first representative found within each class).
std::vector<FiniteGroup> subgroup_class_representatives(const FiniteGroup& g);

struct LovaszResult {
  enum class Kind { Isomorphic, Distinguished, OrderMismatch };
  Kind kind = Kind::OrderMismatch;
  std::optional<std::vector<int>> map;  // Isomorphic: explicit index map g->h
  std::optional<FiniteGroup> witness;   // Distinguished: separating subgroup
  BigInt count_g = 0;                   // Distinguished: |Hom(g, witness)|
  BigInt count_h = 0;                   // Distinguished: |Hom(h, witness)|
  std::string detail;
};

/// Decide g ≅ h by comparing |Hom(g,K)| with |Hom(h,K)| over one K per
/// isomorphism class of subgroups of g, smallest classes first.  The counts
/// agree on every class exactly when the groups are isomorphic; on full
/// agreement an explicit map is produced (failure to find one at that point
/// is an internal error, not a verdict).
LovaszResult lovasz_compare(const FiniteGroup& g, const FiniteGroup& h);

/// Unital algebra homomorphism count over a common coefficient ring, by
/// exhausting all |R|^(dim a * dim b) linear maps and keeping those that fix
/// the identity and preserve the products of all basis pairs.
BigInt count_algebra_homs_bruteforce(const AlgebraPtr& a, const AlgebraPtr& b);

/// |Hom(source, K)| for one K per isomorphism class of subgroups of the
/// reference group, keyed by class invariant key (suffix #k on the rare
/// key collision), ascending subgroup order.
struct HomCountProfile {
  std::string source;
  std::vector<std::pair<std::string, BigInt>> entries;
};

HomCountProfile hom_profile(const FiniteGroup& source,
                            const FiniteGroup& reference);

}  // namespace groupalg
