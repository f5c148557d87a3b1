#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groupalg/group.hpp"
#include "groupalg/numeric.hpp"
#include "groupalg/ring.hpp"

namespace groupalg {

struct FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

/// Element of a finite free R-algebra: coordinate vector over the basis,
/// entries are ring element indices.
using Vec = std::vector<int>;

/// Finite R-algebra of finite free rank: structure constants as basis-product
/// coordinate vectors.  Associativity and (when present) the identity law are
/// validated on construction.  `one == nullopt` marks a nonunital algebra.
struct FiniteAlgebra {
  RingPtr ring;
  int dim = 0;
  std::vector<Vec> bp;  // bp[i*dim+j] = coordinates of e_i * e_j
  std::optional<Vec> one;
  std::string label;

  bool commutative = false;
  // Monomial tables (every basis product is a single basis vector scaled by 1,
  // or zero) get a fast multiplication path; group algebras are monomial.
  bool monomial = false;
  std::vector<int> mono;  // monomial: target basis index or -1 for zero

  enum class Kind {
    generic,
    ring_as_algebra,
    group_algebra,
    augmentation_ideal,
    unitization,
    product,
  };
  Kind kind = Kind::generic;
  std::shared_ptr<const FiniteGroup> base_group;  // group_algebra / aug ideal
  AlgebraPtr base_algebra;                        // unitization
  std::vector<AlgebraPtr> factors;                // product
  // Group algebra of a p-group over the prime field F_p: units are exactly
  // the elements of nonzero augmentation.
  bool pgroup_over_prime_field = false;

  BigInt element_count() const;  // |R|^dim
  bool within_enumeration_bound() const;
  mutable std::optional<bool> qr_all_cache;  // memo for is_quasi_regular

  Vec zero_vec() const { return Vec(dim, ring->zero); }
  bool is_zero(const Vec& x) const;
  Vec add(const Vec& x, const Vec& y) const;
  Vec sub(const Vec& x, const Vec& y) const;
  Vec neg(const Vec& x) const;
  Vec scal(int r, const Vec& x) const;
  Vec mul(const Vec& x, const Vec& y) const;
  Vec circle(const Vec& x, const Vec& y) const;  // x + y + x*y
  int augmentation(const Vec& x) const;          // group algebra / aug ideal

  std::uint64_t encode(const Vec& x) const;
  Vec decode(std::uint64_t code) const;
};

AlgebraPtr ring_as_algebra(const RingPtr& r);
AlgebraPtr group_algebra(const RingPtr& r, const FiniteGroup& g);
AlgebraPtr augmentation_ideal(const RingPtr& r, const FiniteGroup& g);
AlgebraPtr unitization(const AlgebraPtr& a);
AlgebraPtr algebra_product(const std::vector<AlgebraPtr>& factors);
AlgebraPtr algebra_from_constants(const RingPtr& r, int dim,
                                  const std::vector<std::vector<std::vector<int>>>& constants,
                                  const std::optional<std::vector<int>>& one,
                                  const std::string& label);

/// Quasi-inverse under x∘y = x + y + xy, if it exists.  In a finite monoid an
/// element is invertible exactly when some positive ∘-power is the identity,
/// so the ∘-powers of x are walked until they hit 0 (quasi-inverse is the
/// previous power, then verified explicitly on both sides) or repeat (not
/// quasi-regular).  A bounded exhaustive scan backs up the rare case where
/// cycle detection runs out of budget.
std::optional<Vec> quasi_inverse(const FiniteAlgebra& a, const Vec& x);
bool is_quasi_regular_element(const FiniteAlgebra& a, const Vec& x);
bool is_quasi_regular(const FiniteAlgebra& a);

/// Group of all quasi-regular elements under ∘, as a validated table group.
/// codes_out (optional) receives the element code of each group index.
FiniteGroup quasi_regular_group(const FiniteAlgebra& a,
                                std::vector<std::uint64_t>* codes_out = nullptr);

enum class UnitMode { Table, Implicit };

/// Unit group of a unital algebra.  Structure data (order, abelian flag,
/// invariants) is always present; codes/table only when materializable within
/// bounds.  Fast paths: nonzero-augmentation for p-group algebras over F_p,
/// componentwise units for products, scalar-part units for unitizations of
/// quasi-regular algebras; the generic route is an exhaustive pairing scan.
struct UnitGroupInfo {
  AlgebraPtr algebra;
  BigInt order = 1;
  bool abelian = true;
  std::optional<std::vector<int>> invariants;  // abelian and within bounds
  // Unit element codes, identity first then ascending; aligned with table
  // indices whenever table is present.
  std::optional<std::vector<std::uint64_t>> codes;
  std::optional<FiniteGroup> table;                 // iff tabulated
  std::string label;
};

UnitGroupInfo unit_group(const AlgebraPtr& a, UnitMode mode);

/// Independent unit test for one element: invertibility of the left regular
/// representation over a field (exact rank), or a pairing scan otherwise.
bool element_is_unit_regular_rep(const FiniteAlgebra& a, const Vec& x);

/// Explicit check that units of the unitization of quasi-regular A are the
/// pairs with unit scalar part, and that they decompose as Q(A) x R*
/// (bijective map with the homomorphism property verified on generators).
struct UnitizationCheck {
  bool unit_pattern_holds = false;  // (x, r) unit  <=>  r unit in R
  bool splitting_holds = false;     // (A^un)* ≅ Q(A) x R*
  std::string detail;
};
UnitizationCheck check_unitization_units(const AlgebraPtr& a_un);

}  // namespace groupalg
