#pragma once

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace groupalg {

using Bitset = boost::dynamic_bitset<>;

/// Finite group as an explicit Cayley table over indices 0..n-1.
/// Invariant: element 0 is the identity (constructors normalize), inverse[]
/// is consistent with the table, and the table passed full validation unless
/// it came from a structure-preserving internal construction.
struct FiniteGroup {
  int n = 1;
  std::vector<int> table;    // row-major, table[a*n+b] = a*b
  std::vector<int> inverse;  // inverse[a]*a = a*inverse[a] = 0
  std::string label = "1";

  int order() const { return n; }
  int mul(int a, int b) const { return table[static_cast<std::size_t>(a) * n + b]; }
  int inv(int a) const { return inverse[a]; }
  int pow(int g, long long e) const;
  int element_order(int g) const;
  int conj(int g, int by) const { return mul(mul(by, g), inv(by)); }
  int commutator(int a, int b) const {
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }
  bool is_abelian() const;
};

FiniteGroup trivial_group();

/// Validates associativity, identity and inverses (errors name the first
/// violating element or triple), then relabels so the identity is index 0.
FiniteGroup group_from_table(const std::vector<std::vector<int>>& rows,
                             const std::string& label);

/// Identity/inverse discovery and normalization only; associativity is taken
/// on trust.  For tables inherited from validated structures (subgroups,
/// products, unit groups, ∘ on an associative algebra) where re-checking all
/// triples would be wasteful or infeasible.
FiniteGroup group_from_table_unchecked(int n, std::vector<int> flat_table,
                                       std::string label);

/// Named constructors: cyclic m / abelian m1,m2,... / dihedral m (order 2m) /
/// quaternion8 / heisenberg p (unitriangular 3x3 over the p-element field) /
/// modular_p3 p (order p^3, exponent p^2).
FiniteGroup catalog_group(const std::string& name, const std::vector<int>& params);
std::vector<std::pair<std::string, std::string>> catalog_listing();

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Relabel by a permutation of indices (then renormalize identity to 0).
FiniteGroup relabeled(const FiniteGroup& g, const std::vector<int>& perm);
FiniteGroup shuffled(const FiniteGroup& g, unsigned seed);

struct SubgroupHandle {
  const FiniteGroup* parent = nullptr;
  Bitset members;  // size == parent->n
  int size() const { return static_cast<int>(members.count()); }
};

/// Full subgroup list via cyclic seeding + iterated joins; deterministic order
/// (size, then bitset).  Lagrange divisibility is asserted on every result.
std::vector<SubgroupHandle> subgroups(const FiniteGroup& g);
std::vector<SubgroupHandle> maximal_subgroups(const FiniteGroup& g);

Bitset subgroup_closure(const FiniteGroup& g, Bitset seed);
bool is_subgroup(const FiniteGroup& g, const Bitset& members);
bool is_normal(const FiniteGroup& g, const Bitset& members);

/// Reindex a subgroup as a standalone group (members in ascending index order,
/// so the parent identity maps to index 0).
FiniteGroup subgroup_as_group(const SubgroupHandle& h);

FiniteGroup quotient_group(const FiniteGroup& g, const Bitset& normal_sub);

Bitset center_of(const FiniteGroup& g);
Bitset derived_subgroup(const FiniteGroup& g);

struct GroupInvariants {
  int order = 1;
  int exponent = 1;
  std::optional<int> nilpotency_class;  // nullopt: not nilpotent
  int center_order = 1;
  int derived_order = 1;
  std::map<int, int> order_statistics;  // element order -> multiplicity
  std::optional<std::vector<int>> abelian_invariants;  // present iff abelian
};

GroupInvariants structure_invariants(const FiniteGroup& g);
std::string invariant_key(const GroupInvariants& inv);
std::string invariant_key(const FiniteGroup& g);

/// Canonical order for prime-power cyclic decompositions: ascending prime,
/// descending power within a prime.  [4,3] for order 12; [4,2] for C4 x C2.
std::vector<int> canonical_primary_list(std::vector<int> parts);

/// Cyclic p-power decomposition of an abelian group from its element order
/// statistics alone (order -> multiplicity).  Lets implicit abelian groups be
/// classified by streaming element orders, with no table ever materialized.
std::vector<int> primary_invariants_from_stats(const std::map<int, int>& stats,
                                               int order);

/// Prime-power cyclic orders of an abelian group (PreconditionViolated else).
std::vector<int> abelian_invariants_of(const FiniteGroup& g);
/// Invariants of G/[G,G]; works for any G.
std::vector<int> abelianization_invariants(const FiniteGroup& g);

/// Independent generators (element, prime-power order) of an abelian group,
/// aligned with abelian_invariants_of.
std::vector<std::pair<int, int>> abelian_basis(const FiniteGroup& g);

/// Greedy shortest generating chain: repeatedly adjoin the smallest-index
/// element outside the closure so far.
std::vector<int> minimal_generating_sequence(const FiniteGroup& g);

/// Explicit isomorphism g -> h (index map), or nullopt.  Abelian pairs are
/// decided by invariants and the map is assembled from matched bases; the
/// general path is order-filtered backtracking over generator images with a
/// node budget (SearchBudgetExceeded, distinct from "no isomorphism").
std::optional<std::vector<int>> is_isomorphic(const FiniteGroup& g,
                                              const FiniteGroup& h);

/// Full verification: bijective and multiplicative on all pairs.
bool map_is_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                        const std::vector<int>& map);

/// Direct factors down to indecomposables (deterministic first-found split on
/// complementary normal pairs; abelian groups split via their invariants).
/// The reassembled product is verified isomorphic to g.
std::vector<FiniteGroup> indecomposable_factors(const FiniteGroup& g);

}  // namespace groupalg
