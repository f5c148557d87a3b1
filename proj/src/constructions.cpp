#include "groupalg/constructions.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "groupalg/errors.hpp"
#include "groupalg/homcount.hpp"
#include "groupalg/limits.hpp"
#include "groupalg/numeric.hpp"

namespace groupalg {

namespace {

std::string triple(int a, int b, int c) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " +
         std::to_string(c) + ")";
}

// Candidate ring structure on the element set of a group, as flat tables.
struct ElementTables {
  int n = 0;
  std::vector<int> add;
  std::vector<int> mul;
  int sum(int a, int b) const { return add[static_cast<std::size_t>(a) * n + b]; }
  int prod(int a, int b) const { return mul[static_cast<std::size_t>(a) * n + b]; }
};

ElementTables halving_tables(const FiniteGroup& g, int half, bool mirrored) {
  ElementTables t;
  t.n = g.n;
  t.add.resize(static_cast<std::size_t>(g.n) * g.n);
  t.mul.resize(static_cast<std::size_t>(g.n) * g.n);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      const int c = mirrored ? g.commutator(b, a) : g.commutator(a, b);
      const int m = g.pow(c, half);
      t.mul[static_cast<std::size_t>(a) * g.n + b] = m;
      t.add[static_cast<std::size_t>(a) * g.n + b] = g.mul(g.mul(a, b), g.inv(m));
    }
  return t;
}

// Exhaustive check of every law the construction promises, on the element
// tables themselves: abelian p-torsion addition with identity 0,
// associativity of both operations, distributivity, and the circle identity
// x + y + xy = xy_group.  Empty string on success, otherwise the first
// violated law with its witnesses.
std::string element_law_violation(const FiniteGroup& g, const ElementTables& t,
                                  int p) {
  const int n = t.n;
  for (int a = 0; a < n; ++a) {
    if (t.sum(0, a) != a)
      return "0 is not an additive identity at " + std::to_string(a);
    int s = 0;
    for (int i = 0; i < p; ++i) s = t.sum(s, a);
    if (s != 0) return "element " + std::to_string(a) + " is not p-torsion";
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (t.sum(a, b) != t.sum(b, a))
        return "addition is not commutative at (" + std::to_string(a) + ", " +
               std::to_string(b) + ")";
      const int circ = t.sum(t.sum(a, b), t.prod(a, b));
      if (circ != g.mul(a, b))
        return "circle operation deviates from the group law at (" +
               std::to_string(a) + ", " + std::to_string(b) + ")";
    }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab_sum = t.sum(a, b);
      const int ab_prod = t.prod(a, b);
      for (int c = 0; c < n; ++c) {
        if (t.sum(ab_sum, c) != t.sum(a, t.sum(b, c)))
          return "addition is not associative at " + triple(a, b, c);
        if (t.prod(ab_prod, c) != t.prod(a, t.prod(b, c)))
          return "multiplication is not associative at " + triple(a, b, c);
        if (t.prod(ab_sum, c) != t.sum(t.prod(a, c), t.prod(b, c)))
          return "right distributivity fails at " + triple(a, b, c);
        if (t.prod(c, ab_sum) != t.sum(t.prod(c, a), t.prod(c, b)))
          return "left distributivity fails at " + triple(a, b, c);
      }
    }
  return "";
}

// Pick an additive basis, assign coordinates to every element, and read the
// structure constants off the basis products.  The coordinate maps for +, *
// and the circle operation are then re-verified on all element pairs, so the
// returned algebra provably carries the element tables (and hence the group
// law) onto coordinate vectors.
AlgebraPtr coordinatize(const FiniteGroup& g, const ElementTables& t, int p,
                        std::vector<Vec>* coords_out) {
  FiniteGroup addg =
      group_from_table_unchecked(t.n, t.add, g.label + " additive");
  std::vector<std::pair<int, int>> basis = abelian_basis(addg);
  const int k = static_cast<int>(basis.size());
  for (const auto& [elt, ord] : basis)
    if (ord != p)
      throw InternalError("additive basis element " + std::to_string(elt) +
                          " has order " + std::to_string(ord));

  std::vector<Vec> coords(g.n);
  std::vector<char> seen(g.n, 0);
  Vec tuple(k, 0);
  for (;;) {
    int e = 0;
    for (int i = 0; i < k; ++i)
      e = addg.mul(e, addg.pow(basis[i].first, tuple[i]));
    if (seen[e])
      throw InternalError("additive basis enumeration repeats element " +
                          std::to_string(e));
    seen[e] = 1;
    coords[e] = tuple;
    int i = 0;
    for (; i < k; ++i) {
      if (++tuple[i] < p) break;
      tuple[i] = 0;
    }
    if (i == k) break;
  }
  for (int e = 0; e < g.n; ++e)
    if (!seen[e])
      throw InternalError("additive basis misses element " + std::to_string(e));

  std::vector<std::vector<std::vector<int>>> constants(
      k, std::vector<std::vector<int>>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      constants[i][j] = coords[t.prod(basis[i].first, basis[j].first)];
  AlgebraPtr alg = algebra_from_constants(ring_fp(p), k, constants,
                                          std::nullopt, "baer(" + g.label + ")");

  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      if (alg->add(coords[a], coords[b]) != coords[t.sum(a, b)])
        throw InternalError("coordinate addition disagrees with the element "
                            "table at (" +
                            std::to_string(a) + ", " + std::to_string(b) + ")");
      if (alg->mul(coords[a], coords[b]) != coords[t.prod(a, b)])
        throw InternalError("coordinate multiplication disagrees with the "
                            "element table at (" +
                            std::to_string(a) + ", " + std::to_string(b) + ")");
      if (alg->circle(coords[a], coords[b]) != coords[g.mul(a, b)])
        throw InternalError("coordinate circle operation disagrees with the "
                            "group law at (" +
                            std::to_string(a) + ", " + std::to_string(b) + ")");
    }
  if (!is_quasi_regular(*alg))
    throw InternalError("circle group covers all elements yet quasi-regularity "
                        "failed");
  if (coords_out) *coords_out = std::move(coords);
  return alg;
}

}  // namespace

AlgebraPtr baer_algebra(const FiniteGroup& g, std::vector<Vec>* coords_out) {
  if (g.n == 1)
    throw PreconditionViolated("commutator halving needs a nontrivial group");
  GroupInvariants inv = structure_invariants(g);
  const int p = inv.exponent;
  if (p == 2 || !small_is_prime(p))
    throw PreconditionViolated("group exponent must be an odd prime, got " +
                               std::to_string(p));
  if (!inv.nilpotency_class || *inv.nilpotency_class > 2)
    throw PreconditionViolated(
        "group must be nilpotent of class at most 2 (" + g.label + " is not)");
  const int half = (p + 1) / 2;

  std::string first_fail;
  for (int attempt = 0; attempt < 2; ++attempt) {
    ElementTables t = halving_tables(g, half, attempt == 1);
    std::string fail = element_law_violation(g, t, p);
    if (fail.empty()) return coordinatize(g, t, p, coords_out);
    if (attempt == 0) first_fail = std::move(fail);
  }
  throw ConstructionFailed("commutator halving fails for " + g.label +
                           " under both conventions; first failure: " +
                           first_fail);
}

namespace {

// Structure constants over the 2-element field, one bitmask per basis pair:
// bit k of c[i*d+j] is the e_k coordinate of e_i e_j.
struct BitConstants {
  int d = 0;
  std::vector<std::uint32_t> c;
};

bool bit_associative(const BitConstants& bc) {
  const int d = bc.d;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const std::uint32_t cij = bc.c[static_cast<std::size_t>(i) * d + j];
      for (int k = 0; k < d; ++k) {
        std::uint32_t lhs = 0;
        for (int b = 0; b < d; ++b)
          if (cij >> b & 1u) lhs ^= bc.c[static_cast<std::size_t>(b) * d + k];
        std::uint32_t rhs = 0;
        const std::uint32_t cjk = bc.c[static_cast<std::size_t>(j) * d + k];
        for (int b = 0; b < d; ++b)
          if (cjk >> b & 1u) rhs ^= bc.c[static_cast<std::size_t>(i) * d + b];
        if (lhs != rhs) return false;
      }
    }
  return true;
}

}  // namespace

std::optional<AlgebraPtr> bovdi_search(const FiniteGroup& g, int dim,
                                       std::int64_t budget) {
  if (budget <= 0) budget = limits().bovdi_budget;
  if (dim < 1 || dim > 20)
    throw PreconditionViolated("dimension must be between 1 and 20, got " +
                               std::to_string(dim));
  if ((static_cast<std::int64_t>(1) << dim) != g.n)
    throw PreconditionViolated("group order " + std::to_string(g.n) +
                               " is not 2^" + std::to_string(dim));
  GroupInvariants inv = structure_invariants(g);
  if (4 % inv.exponent != 0)
    throw PreconditionViolated("group exponent must divide 4, got " +
                               std::to_string(inv.exponent));
  if (!inv.nilpotency_class || *inv.nilpotency_class > 2)
    throw PreconditionViolated(
        "group must be nilpotent of class at most 2 (" + g.label + " is not)");

  const int d = dim;
  // Constant positions (i, j, k) in lexicographic order.  The first position
  // is the most significant mask bit, so counting masks upward walks the
  // candidate constant arrays in lexicographic order.
  std::vector<std::array<int, 3>> full_pos, tri_pos;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        full_pos.push_back({i, j, k});
        if (k > i && k > j) tri_pos.push_back({i, j, k});
      }

  std::int64_t used = 0;
  bool budget_hit = false;
  auto scan = [&](const std::vector<std::array<int, 3>>& pos)
      -> std::optional<AlgebraPtr> {
    const int bits = static_cast<int>(pos.size());
    BitConstants bc{d, std::vector<std::uint32_t>(
                           static_cast<std::size_t>(d) * d, 0)};
    for (std::uint64_t mask = 0;; ++mask) {
      if (bits < 63 && mask >= (static_cast<std::uint64_t>(1) << bits)) break;
      if (++used > budget) {
        budget_hit = true;
        break;
      }
      std::fill(bc.c.begin(), bc.c.end(), 0u);
      for (int b = 0; b < bits; ++b)
        if (mask >> (bits - 1 - b) & 1u) {
          const auto& [i, j, k] = pos[b];
          bc.c[static_cast<std::size_t>(i) * d + j] |= 1u << k;
        }
      if (!bit_associative(bc)) continue;
      std::vector<std::vector<std::vector<int>>> constants(
          d, std::vector<std::vector<int>>(d, std::vector<int>(d, 0)));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k)
            constants[i][j][k] =
                bc.c[static_cast<std::size_t>(i) * d + j] >> k & 1;
      AlgebraPtr alg = algebra_from_constants(ring_fp(2), d, constants,
                                              std::nullopt,
                                              "bovdi(" + g.label + ")");
      if (!is_quasi_regular(*alg)) continue;
      FiniteGroup qg = quasi_regular_group(*alg);
      if (is_isomorphic(qg, g)) return alg;
    }
    return std::nullopt;
  };

  if (auto hit = scan(tri_pos)) return hit;
  if (budget_hit) return std::nullopt;
  return scan(full_pos);
}

namespace {

int require_prime_field(const RingPtr& r) {
  if (!r) throw PreconditionViolated("coefficient ring is null");
  if (!r->prime)
    throw PreconditionViolated("coefficient ring must be a prime field, got " +
                               r->label);
  return *r->prime;
}

int power_exponent(int v, int p, const std::string& what) {
  int e = 0;
  while (v > 1) {
    if (v % p != 0)
      throw InternalError(what + " " + std::to_string(v) +
                          " is not a power of " + std::to_string(p));
    v /= p;
    ++e;
  }
  return e;
}

HomTarget unit_target(const AlgebraPtr& a) {
  UnitGroupInfo u = unit_group(a, UnitMode::Implicit);
  if (!u.table && !u.invariants) u = unit_group(a, UnitMode::Table);
  return hom_target(u);
}

BigInt recovered_ratio(const BigInt& a, const BigInt& b, int n,
                       const std::string& what) {
  if (b <= 0)
    throw InternalError("hom count into units of " + what + " is not positive");
  if (a % b != 0)
    throw InternalError("hom counts " + to_string(a) + " and " + to_string(b) +
                        " for " + what +
                        " violate divisibility; the witness does not satisfy "
                        "its defining isomorphism");
  const BigInt ratio = a / b;
  auto root = exact_nth_root(ratio, static_cast<unsigned>(n));
  if (!root)
    throw InternalError("hom count ratio " + to_string(ratio) + " for " + what +
                        " is not a perfect " + std::to_string(n) +
                        "th power; the witness does not satisfy its defining "
                        "isomorphism");
  return *root;
}

}  // namespace

std::vector<ClassWitness> hereditary_certificates(const FiniteGroup& g,
                                                  const RingPtr& r) {
  const int p = require_prime_field(r);
  {
    int v = g.n;
    while (v % p == 0) v /= p;
    if (v != 1)
      throw UnsupportedClass("group order " + std::to_string(g.n) +
                             " is not a power of " + std::to_string(p));
  }
  GroupInvariants inv = structure_invariants(g);
  if (!inv.abelian_invariants) {
    if (!inv.nilpotency_class || *inv.nilpotency_class > 2)
      throw UnsupportedClass("nonabelian groups are handled only up to "
                             "nilpotency class 2 (" + g.label + " is not)");
    if (p > 2 && inv.exponent != p)
      throw UnsupportedClass(
          "the odd-characteristic nonabelian route needs exponent " +
          std::to_string(p) + ", " + g.label + " has exponent " +
          std::to_string(inv.exponent));
    if (p == 2 && 4 % inv.exponent != 0)
      throw UnsupportedClass(
          "the characteristic-2 nonabelian route needs exponent dividing 4, " +
          g.label + " has exponent " + std::to_string(inv.exponent));
  }

  const int top = power_exponent(inv.exponent, p, "group exponent");
  std::vector<Certificate> tower = cyclic_certificate(p, top);

  std::vector<ClassWitness> out;
  for (const FiniteGroup& rep : subgroup_class_representatives(g)) {
    Certificate cert;
    cert.ring = r;
    cert.target = rep;
    if (rep.is_abelian()) {
      // combine the cyclic-tower certificates factor by factor
      std::vector<std::pair<AlgebraPtr, Rational>> acc;
      for (int q : abelian_invariants_of(rep)) {
        const int e = power_exponent(q, p, "cyclic factor order");
        for (const CertificateTerm& term : tower[e].terms) {
          bool found = false;
          for (auto& [ptr, coef] : acc)
            if (ptr == term.algebra) {
              coef += term.q;
              found = true;
              break;
            }
          if (!found) acc.emplace_back(term.algebra, term.q);
        }
      }
      for (auto& [ptr, coef] : acc)
        if (coef != 0) cert.terms.push_back({coef, ptr});
    } else {
      AlgebraPtr base;
      if (p > 2) {
        base = baer_algebra(rep);
      } else {
        const int dim = power_exponent(rep.n, 2, "subgroup order");
        auto found = bovdi_search(rep, dim);
        if (!found)
          throw ConstructionFailed(
              "no " + std::to_string(dim) +
              "-dimensional structure constants found for " + rep.label +
              " within the candidate budget (GROUPALG_BOVDI_BUDGET)");
        base = *found;
      }
      cert.terms.push_back({Rational(1), unitization(base)});
      // the scalar units cancel against the field itself; over the 2-element
      // field they are trivial and the correction term vanishes
      if (p > 2) cert.terms.push_back({Rational(-1), ring_as_algebra(r)});
    }
    ClassWitness cw{rep, cert, certificate_to_witness(cert)};
    if (!verify_witness(cw.witness))
      throw InternalError("constructed witness for the class of " + rep.label +
                          " failed verification");
    out.push_back(std::move(cw));
  }
  return out;
}

BigInt recovered_hom_count(const FiniteGroup& h, const HereditaryWitness& w) {
  if (w.n < 1)
    throw PreconditionViolated("witness exponent must be positive, got " +
                               std::to_string(w.n));
  if (!w.a || !w.b) throw PreconditionViolated("witness algebras are null");
  return recovered_ratio(count_homs(h, unit_target(w.a)),
                         count_homs(h, unit_target(w.b)), w.n,
                         "the witness of " + w.k.label);
}

PipelineReport criterion_check(const FiniteGroup& g, const FiniteGroup& h,
                               const RingPtr& r) {
  PipelineReport rep;
  rep.g_label = g.label;
  rep.h_label = h.label;
  rep.ring_label = r ? r->label : "(null)";
  if (g.n != h.n) {
    rep.verdict = PipelineReport::Verdict::Inconclusive;
    rep.reason = "orders " + std::to_string(g.n) + " and " +
                 std::to_string(h.n) +
                 " differ: group algebras of different rank over the same "
                 "ring are never isomorphic, so there is nothing to compare";
    return rep;
  }
  auto degrade = [&rep](const Error& e) {
    rep.verdict = PipelineReport::Verdict::Inconclusive;
    rep.reason = e.what();
  };
  try {
    std::vector<ClassWitness> classes = hereditary_certificates(g, r);
    for (ClassWitness& cw : classes) {
      if (indecomposable_factors(cw.subgroup_rep).size() != 1) continue;
      PipelineRow row;
      row.subgroup_rep = cw.subgroup_rep;
      row.witness = cw.witness;
      const std::string what = "the witness of " + cw.subgroup_rep.label;
      HomTarget ua = unit_target(cw.witness.a);
      HomTarget ub = unit_target(cw.witness.b);
      row.hom_a_g = count_homs(g, ua);
      row.hom_b_g = count_homs(g, ub);
      row.hom_a_h = count_homs(h, ua);
      row.hom_b_h = count_homs(h, ub);
      row.recovered_g =
          recovered_ratio(row.hom_a_g, row.hom_b_g, cw.witness.n, what);
      row.recovered_h =
          recovered_ratio(row.hom_a_h, row.hom_b_h, cw.witness.n, what);
      row.matched = row.recovered_g == row.recovered_h;
      rep.rows.push_back(std::move(row));
    }
    int bad = -1;
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
      if (!rep.rows[i].matched) {
        bad = static_cast<int>(i);
        break;
      }
    if (bad >= 0) {
      const PipelineRow& row = rep.rows[bad];
      rep.verdict = PipelineReport::Verdict::AlgebrasDistinguished;
      rep.distinguished_row = bad;
      rep.reason = "recovered hom counts into the class of " +
                   row.subgroup_rep.label + " differ: " +
                   to_string(row.recovered_g) + " vs " +
                   to_string(row.recovered_h);
    } else {
      LovaszResult lr = lovasz_compare(g, h);
      if (lr.kind != LovaszResult::Kind::Isomorphic || !lr.map)
        throw InternalError(
            "recovered counts agree on every indecomposable class, yet the "
            "subgroup comparison produced no isomorphism: " + lr.detail);
      rep.verdict = PipelineReport::Verdict::IsomorphicCertified;
      rep.isomorphism = lr.map;
      rep.reason = "all recovered subgroup hom counts agree; explicit "
                   "isomorphism constructed";
    }
  } catch (const UnsupportedClass& e) {
    degrade(e);
  } catch (const ConstructionFailed& e) {
    degrade(e);
  } catch (const BoundExceeded& e) {
    degrade(e);
  } catch (const SearchBudgetExceeded& e) {
    degrade(e);
  }
  return rep;
}

}  // namespace groupalg
