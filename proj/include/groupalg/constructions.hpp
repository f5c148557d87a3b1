#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "groupalg/algebra.hpp"
#include "groupalg/grothendieck.hpp"
#include "groupalg/group.hpp"
#include "groupalg/ring.hpp"

namespace groupalg {

/// Commutator-halving algebra on a group of odd prime exponent p and
/// nilpotency class at most 2: with m(g,h) = [g,h]^((p+1)/2), the operations
/// g + h = g h m(g,h)^{-1} and g * h = m(g,h) turn the element set of g into
/// a nilpotent F_p-algebra whose circle operation x∘y = x + y + xy is the
/// original group law, element by element.  Every axiom (abelian p-torsion
/// addition, associativity, distributivity, the circle identity) is checked
/// exhaustively on the instance; if the convention fails, the mirrored
/// commutator [h,g] is tried before ConstructionFailed reports the first
/// violating triple.
///
/// coords_out (optional) receives the coordinate vector of each group
/// element, so callers can confirm the element-level match themselves.
AlgebraPtr baer_algebra(const FiniteGroup& g, std::vector<Vec>* coords_out = nullptr);

/// Search for an F_2-algebra of the given dimension whose circle group is
/// isomorphic to g (a 2-group of nilpotency class at most 2 and exponent
/// dividing 4, with 2^dim = |g|).  Structure constants in filtration
/// triangular shape (e_i e_j supported on basis vectors above both factors)
/// are enumerated first, then the full constant space, in lexicographic
/// order; the first associative quasi-regular hit with the right circle
/// group is returned.  nullopt means the candidate budget ran out
/// (0 = configured default), which is not a nonexistence proof.
std::optional<AlgebraPtr> bovdi_search(const FiniteGroup& g, int dim,
                                       std::int64_t budget = 0);

/// One subgroup isomorphism class of a group, with its unit-class
/// certificate and the executable witness derived from it.  The witness is
/// verified at construction time; certificate verification through the class
/// registry is left to callers, since it tabulates unit groups and can hit
/// enumeration bounds much earlier than the witness check does.
struct ClassWitness {
  FiniteGroup subgroup_rep;
  Certificate certificate;
  HereditaryWitness witness;
};

/// Verified witnesses for every subgroup isomorphism class of g over the
/// prime field r: abelian classes are assembled from the cyclic-tower
/// certificates factor by factor, nonabelian class-2 ones go through the
/// unitization of a matching nilpotent algebra (commutator halving for odd
/// characteristic, structure-constant search for characteristic 2).
/// UnsupportedClass when g fits neither route.
std::vector<ClassWitness> hereditary_certificates(const FiniteGroup& g,
                                                  const RingPtr& r);

/// |Hom(h, k)| recovered from unit-group data alone:
/// (|Hom(h, units(a))| / |Hom(h, units(b))|)^(1/n) for a witness with target
/// k.  Failed divisibility or root extraction means the witness does not
/// satisfy its defining isomorphism and is reported as InternalError.
BigInt recovered_hom_count(const FiniteGroup& h, const HereditaryWitness& w);

/// One comparison row: hom counts of both groups into the unit groups of one
/// witness pair, and the subgroup hom counts recovered from them.
struct PipelineRow {
  FiniteGroup subgroup_rep;
  HereditaryWitness witness;
  BigInt hom_a_g, hom_b_g;  // |Hom(g, units(a))|, |Hom(g, units(b))|
  BigInt hom_a_h, hom_b_h;
  BigInt recovered_g, recovered_h;
  bool matched = false;
};

struct PipelineReport {
  enum class Verdict { IsomorphicCertified, AlgebrasDistinguished, Inconclusive };
  Verdict verdict = Verdict::Inconclusive;
  std::string g_label;
  std::string h_label;
  std::string ring_label;
  /// One row per indecomposable subgroup class of g; counts for product
  /// classes follow multiplicatively and are not repeated.
  std::vector<PipelineRow> rows;
  std::optional<std::vector<int>> isomorphism;  // IsomorphicCertified
  std::optional<int> distinguished_row;         // AlgebrasDistinguished
  std::string reason;
};

/// Full criterion run over the prime field r.  For every indecomposable
/// subgroup class K of g, |Hom(., K)| is recovered for both groups from the
/// unit groups of the same witness algebras; a disagreement separates the
/// group algebras, while agreement on all rows extends multiplicatively to
/// every subgroup class of g and the subgroup-count comparison then produces
/// an explicit isomorphism.  Resource exhaustion, a failed construction, or
/// an unsupported group class degrades to Inconclusive with the reason
/// preserved; order mismatch is Inconclusive as well, since free modules of
/// different rank already rule the algebra isomorphism out.
PipelineReport criterion_check(const FiniteGroup& g, const FiniteGroup& h,
                               const RingPtr& r);

}  // namespace groupalg
