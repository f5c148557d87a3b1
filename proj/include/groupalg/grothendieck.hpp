#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "groupalg/algebra.hpp"
#include "groupalg/group.hpp"
#include "groupalg/numeric.hpp"

namespace groupalg {

/// Interned isomorphism classes of directly indecomposable finite groups.
/// Cheap invariant fingerprints bucket the candidates; collisions inside a
/// bucket are resolved by explicit isomorphism tests, so no two
/// representatives are isomorphic.  Insertion order is deterministic.
class ClassRegistry {
 public:
  /// Index of the class of g, appending a representative when new.
  /// Precondition: g is directly indecomposable (callers decompose first).
  int intern(const FiniteGroup& g);
  const FiniteGroup& representative(int idx) const;
  int size() const { return static_cast<int>(reps_.size()); }

 private:
  std::vector<FiniteGroup> reps_;
  std::map<std::string, std::vector<int>> buckets_;
};

/// Sparse exact-rational vector over registry indices.  The zero class (the
/// trivial group) is the empty map; no zero coefficients are stored.
struct LVector {
  std::map<int, Rational> coef;
  bool is_zero() const { return coef.empty(); }
  bool operator==(const LVector& o) const { return coef == o.coef; }
};

/// v += q * w, erasing entries that cancel to zero.
void lv_add_scaled(LVector& v, const Rational& q, const LVector& w);
std::string lv_to_string(const ClassRegistry& reg, const LVector& v);

/// Multiset of interned indecomposable direct factors of g.
LVector class_vector(ClassRegistry& reg, const FiniteGroup& g);

/// Class vector of the unit group of a: primary cyclic invariants when the
/// unit group is abelian (no table needed), the tabulated group otherwise.
LVector unit_class_vector(ClassRegistry& reg, const AlgebraPtr& a);

struct CertificateTerm {
  Rational q;  // nonzero
  AlgebraPtr algebra;
};

/// Exact rational combination of unit-group classes summing to the class of
/// the target group: sum q_i * [units(A_i)] = [target].
struct Certificate {
  RingPtr ring;
  FiniteGroup target;
  std::vector<CertificateTerm> terms;
};

/// Recompute both sides of the certificate identity from scratch.
bool verify_certificate(ClassRegistry& reg, const Certificate& cert);

struct MembershipResult {
  std::optional<Certificate> certificate;
  /// Component of the target outside the span of the pool's unit-group
  /// vectors; nonzero exactly when no certificate exists over this pool.
  LVector residual;
};

/// Solve sum q_i * [units(pool_i)] = [k] by exact rational elimination.
/// Small pools are scanned for a minimal-support solution (fewest algebras,
/// then earliest pool positions); larger pools get a single full solve.
/// A miss means "not in the span of this pool", nothing stronger.
MembershipResult solve_membership(ClassRegistry& reg, const FiniteGroup& k,
                                  const std::vector<AlgebraPtr>& pool);

/// Certificates for the cyclic groups of order p^i, i = 0..n, built from the
/// layered unit groups of the cyclic group algebras over the p-element
/// field: units(F_p C_{p^m}) is C_{p-1} times a product of cyclic p-groups
/// whose top multiplicity is positive, which lets each layer be expressed
/// through the algebras and the certificates below it.
std::vector<Certificate> cyclic_certificate(int p, int n);

/// Executable membership witness: units(a) is isomorphic to
/// units(b) x k^n.
struct HereditaryWitness {
  FiniteGroup k;
  AlgebraPtr a;
  AlgebraPtr b;
  int n = 1;
};

/// Clear denominators and split signs: positively weighted algebras multiply
/// into a, negatively weighted ones into b, the common denominator becomes n.
/// An empty negative side falls back to the coefficient ring itself.
HereditaryWitness certificate_to_witness(const Certificate& cert);

/// Recompute unit groups on both sides and compare: primary invariants when
/// everything is abelian, explicit isomorphism otherwise.
bool verify_witness(const HereditaryWitness& w);

struct HereditaryRow {
  FiniteGroup subgroup_rep;
  std::optional<Certificate> certificate;
  LVector residual;
};

struct HereditaryReport {
  std::vector<HereditaryRow> rows;  // one per subgroup isomorphism class
  bool hereditary = false;          // all rows certified
};

/// Membership solve for one representative per subgroup isomorphism class
/// of g over the given pool.
HereditaryReport is_hereditary(ClassRegistry& reg, const FiniteGroup& g,
                               const std::vector<AlgebraPtr>& pool);

/// The p-element field together with the cyclic p-power group algebras that
/// fit the enumeration bound, plus any caller-supplied extras.
std::vector<AlgebraPtr> default_pool(int p,
                                     const std::vector<AlgebraPtr>& extra = {});

}  // namespace groupalg
