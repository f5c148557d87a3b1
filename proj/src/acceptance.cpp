#include "groupalg/acceptance.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "groupalg/algebra.hpp"
#include "groupalg/constructions.hpp"
#include "groupalg/errors.hpp"
#include "groupalg/grothendieck.hpp"
#include "groupalg/group.hpp"
#include "groupalg/homcount.hpp"
#include "groupalg/numeric.hpp"
#include "groupalg/ring.hpp"

namespace groupalg {

namespace {

struct CheckFailed {
  std::string detail;
};

void require(bool ok, const std::string& detail) {
  if (!ok) throw CheckFailed{detail};
}

FiniteGroup cyc(int m) { return catalog_group("cyclic", {m}); }
FiniteGroup ab(const std::vector<int>& parts) {
  return catalog_group("abelian", parts);
}
FiniteGroup dih(int m) { return catalog_group("dihedral", {m}); }
FiniteGroup heis(int p) { return catalog_group("heisenberg", {p}); }

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Every named instance the constructors can produce up to the order bound,
// duplicates included (heis2 and M8 are both D4 in disguise; the checks
// below treat isomorphic duplicates as relabeled pairs).
std::vector<FiniteGroup> small_catalog(int max_order) {
  std::vector<FiniteGroup> out;
  for (int m = 1; m <= max_order; ++m) out.push_back(cyc(m));
  const std::vector<std::vector<int>> noncyclic = {
      {2, 2},    {4, 2},       {2, 2, 2}, {3, 3},    {2, 2, 3},
      {8, 2},    {4, 4},       {4, 2, 2}, {2, 2, 2, 2},
      {9, 3},    {3, 3, 3},    {5, 5}};
  for (const auto& parts : noncyclic) {
    int n = 1;
    for (int q : parts) n *= q;
    if (n <= max_order) out.push_back(ab(parts));
  }
  for (int m = 2; 2 * m <= max_order; ++m) out.push_back(dih(m));
  if (max_order >= 8) out.push_back(catalog_group("quaternion8", {}));
  for (int p : {2, 3})
    if (ipow(p, 3) <= max_order) {
      out.push_back(heis(p));
      out.push_back(catalog_group("modular_p3", {p}));
    }
  return out;
}

Rational coeff_for(const Certificate& cert, const std::string& label) {
  for (const auto& t : cert.terms)
    if (t.algebra->label == label) return t.q;
  return Rational(0);
}

std::string verdict_name(PipelineReport::Verdict v) {
  switch (v) {
    case PipelineReport::Verdict::IsomorphicCertified:
      return "IsomorphicCertified";
    case PipelineReport::Verdict::AlgebrasDistinguished:
      return "AlgebrasDistinguished";
    default:
      return "Inconclusive";
  }
}

void expect_distinguished(const FiniteGroup& g, const FiniteGroup& h,
                          const RingPtr& r) {
  const PipelineReport rep = criterion_check(g, h, r);
  require(rep.verdict == PipelineReport::Verdict::AlgebrasDistinguished,
          g.label + " vs " + h.label + " over " + r->label +
              ": expected separation, got " + verdict_name(rep.verdict) +
              (rep.reason.empty() ? "" : " (" + rep.reason + ")"));
  require(rep.distinguished_row.has_value(),
          g.label + " vs " + h.label + ": separation without a row index");
  const PipelineRow& row = rep.rows[static_cast<std::size_t>(*rep.distinguished_row)];
  require(row.recovered_g != row.recovered_h,
          g.label + " vs " + h.label + ": separating row has equal counts");
}

void expect_certified(const FiniteGroup& g, const FiniteGroup& h,
                      const RingPtr& r) {
  const PipelineReport rep = criterion_check(g, h, r);
  require(rep.verdict == PipelineReport::Verdict::IsomorphicCertified,
          g.label + " vs " + h.label + " over " + r->label +
              ": expected a certified match, got " + verdict_name(rep.verdict) +
              (rep.reason.empty() ? "" : " (" + rep.reason + ")"));
  require(rep.isomorphism.has_value(),
          g.label + " vs " + h.label + ": certified without a map");
  require(map_is_isomorphism(g, h, *rep.isomorphism),
          g.label + " vs " + h.label + ": certified map fails verification");
}

// 1: units of the 5-element-field group algebra of C5, and the membership
// solve expressing [C5] through that unit group.
void check_unit_group_and_membership() {
  const RingPtr f5 = ring_fp(5);
  const AlgebraPtr f5c5 = group_algebra(f5, cyc(5));
  const UnitGroupInfo u = unit_group(f5c5, UnitMode::Implicit);
  require(u.invariants.has_value(), "units of F5[C5] lost their invariants");
  require(*u.invariants == std::vector<int>{4, 5, 5, 5, 5},
          "units of F5[C5] are not C4 x C5^4");

  ClassRegistry reg;
  const MembershipResult m =
      solve_membership(reg, cyc(5), {ring_as_algebra(f5), f5c5});
  require(m.certificate.has_value(), "[C5] not in the span of {F5, F5[C5]}");
  require(coeff_for(*m.certificate, "F5[C5]") == Rational(1, 4),
          "coefficient on F5[C5] is not 1/4");
  require(coeff_for(*m.certificate, "F5") == Rational(-1, 4),
          "coefficient on F5 is not -1/4");
  require(m.residual.is_zero(), "membership left a nonzero residual");
}

// 2: the signed maximal-subgroup expansion of the surjection count against
// direct enumeration, over every ordered catalog pair.
void check_epi_counts() {
  const auto cat = small_catalog(16);
  int pairs = 0;
  for (const auto& g : cat)
    for (const auto& h : cat) {
      const BigInt fast = count_epis_inclusion_exclusion(g, h);
      const BigInt brute = count_epis_bruteforce(g, h);
      require(fast == brute, "surjection counts disagree for " + g.label +
                                 " -> " + h.label + ": " + to_string(fast) +
                                 " vs " + to_string(brute));
      ++pairs;
    }
  require(pairs >= 200,
          "catalog grid too small: " + std::to_string(pairs) + " pairs");
}

// 3: hom-count comparison separates every non-isomorphic equal-order pair
// and certifies relabeled copies with an explicit map.
void check_lovasz_grid() {
  const auto cat = small_catalog(16);
  int separated = 0;
  for (std::size_t i = 0; i < cat.size(); ++i)
    for (std::size_t j = i + 1; j < cat.size(); ++j) {
      if (cat[i].n != cat[j].n) continue;
      const bool iso = is_isomorphic(cat[i], cat[j]).has_value();
      const LovaszResult r = lovasz_compare(cat[i], cat[j]);
      if (iso) {
        require(r.kind == LovaszResult::Kind::Isomorphic && r.map.has_value(),
                cat[i].label + " vs " + cat[j].label +
                    ": duplicate pair not recognized");
        continue;
      }
      require(r.kind == LovaszResult::Kind::Distinguished,
              cat[i].label + " vs " + cat[j].label + ": not separated");
      require(r.witness.has_value(),
              cat[i].label + " vs " + cat[j].label + ": no witness subgroup");
      require(count_homs(cat[i], *r.witness) == r.count_g &&
                  count_homs(cat[j], *r.witness) == r.count_h &&
                  r.count_g != r.count_h,
              cat[i].label + " vs " + cat[j].label +
                  ": witness counts do not check out");
      ++separated;
    }
  require(separated >= 20, "too few separated pairs: " +
                               std::to_string(separated));

  for (std::size_t i = 0; i < cat.size(); ++i) {
    const FiniteGroup sh = shuffled(cat[i], 101 + static_cast<unsigned>(i));
    const LovaszResult r = lovasz_compare(cat[i], sh);
    require(r.kind == LovaszResult::Kind::Isomorphic && r.map.has_value() &&
                map_is_isomorphism(cat[i], sh, *r.map),
            cat[i].label + ": relabeled copy not certified");
  }
}

// 4: unital algebra homomorphism counts out of small group algebras equal
// group homomorphism counts into the target's unit group.
void check_algebra_hom_adjunction() {
  const RingPtr f2 = ring_fp(2);
  const std::vector<FiniteGroup> sources = {cyc(2), cyc(4), ab({2, 2})};
  const std::vector<AlgebraPtr> targets = {
      ring_as_algebra(f2), group_algebra(f2, cyc(2)),
      unitization(algebra_from_constants(f2, 1, {{{0}}}, std::nullopt,
                                         "x^2=0"))};
  for (const auto& g : sources)
    for (const auto& a : targets) {
      const BigInt lhs =
          count_algebra_homs_bruteforce(group_algebra(f2, g), a);
      const UnitGroupInfo u = unit_group(a, UnitMode::Table);
      const BigInt rhs = count_homs(g, hom_target(u));
      require(lhs == rhs, "algebra homs F2[" + g.label + "] -> " + a->label +
                              " = " + to_string(lhs) + " but group homs " +
                              g.label + " -> " + u.label + " = " +
                              to_string(rhs));
    }
}

// 5: over the whole quasi-regular pool, units of the unitization are exactly
// the elements with unit scalar part, and they split as Q(A) x R*.
void check_unitization_pool() {
  std::vector<AlgebraPtr> pool;
  for (const auto& [p, n] : std::vector<std::pair<int, int>>{
           {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}})
    pool.push_back(augmentation_ideal(ring_fp(p), cyc(ipow(p, n))));
  pool.push_back(baer_algebra(heis(3)));
  pool.push_back(baer_algebra(heis(5)));
  for (const auto& [name, dim] :
       std::vector<std::pair<FiniteGroup, int>>{{cyc(4), 2},
                                                {dih(4), 3},
                                                {catalog_group("quaternion8", {}), 3}}) {
    const auto hit = bovdi_search(name, dim);
    require(hit.has_value(), "no structure-constant hit for " + name.label);
    pool.push_back(*hit);
  }

  for (const auto& a : pool) {
    require(is_quasi_regular(*a), a->label + " is not quasi-regular");
    const UnitizationCheck chk = check_unitization_units(unitization(a));
    require(chk.unit_pattern_holds,
            a->label + ": unit pattern broken: " + chk.detail);
    require(chk.splitting_holds,
            a->label + ": unit group does not split: " + chk.detail);
  }
}

// 6: cyclic tower certificates for all feasible prime powers; every layer
// verifies, converts to a verified witness, and has top coefficient 1/a
// with a a positive integer.
void check_cyclic_towers() {
  ClassRegistry reg;
  for (const auto& [p, n] : std::vector<std::pair<int, int>>{
           {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {7, 1}}) {
    const auto certs = cyclic_certificate(p, n);
    require(static_cast<int>(certs.size()) == n + 1,
            "tower for p=" + std::to_string(p) + " has the wrong height");
    for (int i = 0; i <= n; ++i) {
      const Certificate& cert = certs[static_cast<std::size_t>(i)];
      require(verify_certificate(reg, cert),
              "layer " + std::to_string(i) + " of the p=" + std::to_string(p) +
                  " tower does not verify");
      if (i >= 1) {
        const std::string top =
            "F" + std::to_string(p) + "[C" + std::to_string(ipow(p, i)) + "]";
        const Rational q = coeff_for(cert, top);
        require(boost::multiprecision::numerator(q) == 1 &&
                    boost::multiprecision::denominator(q) >= 1,
                "top coefficient of " + top + " is " + to_string(q) +
                    ", not a positive unit fraction");
      }
      const HereditaryWitness w = certificate_to_witness(cert);
      require(verify_witness(w), "witness of layer " + std::to_string(i) +
                                     ", p=" + std::to_string(p) +
                                     " fails verification");
    }
  }
}

// 7: commutator-halving algebras for both feasible Heisenberg groups,
// elementwise circle match included, plus the unitization witness.
void check_commutator_halving() {
  for (int p : {3, 5}) {
    const FiniteGroup g = heis(p);
    std::vector<Vec> coords;
    const AlgebraPtr a = baer_algebra(g, &coords);
    require(a->dim == 3, "halving algebra for " + g.label +
                             " has dimension " + std::to_string(a->dim));
    int mismatches = 0;
    for (int x = 0; x < g.n; ++x)
      for (int y = 0; y < g.n; ++y)
        if (a->circle(coords[static_cast<std::size_t>(x)],
                      coords[static_cast<std::size_t>(y)]) !=
            coords[static_cast<std::size_t>(g.mul(x, y))])
          ++mismatches;
    require(mismatches == 0, g.label + ": circle law differs from the group " +
                                 "law on " + std::to_string(mismatches) +
                                 " pairs");
    const FiniteGroup qg = quasi_regular_group(*a);
    const auto iso = is_isomorphic(qg, g);
    require(iso.has_value() && map_is_isomorphism(qg, g, *iso),
            g.label + ": circle group not isomorphic to the source");

    const auto rows = hereditary_certificates(g, ring_fp(p));
    const HereditaryWitness& w = rows.back().witness;
    require(w.k.n == g.n && w.n == 1, g.label + ": witness shape is off");
    require(w.b->label == "F" + std::to_string(p),
            g.label + ": witness divisor is " + w.b->label);
    require(verify_witness(w), g.label + ": unitization witness fails");
  }
}

// 8: structure-constant search over the 2-element field finds dimension-3
// algebras whose circle groups match both nonabelian groups of order 8.
void check_constant_search() {
  for (const auto& g : {dih(4), catalog_group("quaternion8", {})}) {
    const auto hit = bovdi_search(g, 3);
    require(hit.has_value(), "search found nothing for " + g.label);
    require((*hit)->dim == 3 && (*hit)->ring->prime == 2,
            g.label + ": hit has the wrong shape");
    const FiniteGroup qg = quasi_regular_group(**hit);
    const auto iso = is_isomorphic(qg, g);
    require(iso.has_value() && map_is_isomorphism(qg, g, *iso),
            g.label + ": circle group of the hit is not the target");
  }
}

// 9: the pipeline separates all distinct abelian groups of order 8 over F2
// and order 9 over F3, and certifies relabeled copies.
void check_pipeline_abelian() {
  const RingPtr f2 = ring_fp(2);
  const std::vector<FiniteGroup> order8 = {cyc(8), ab({4, 2}), ab({2, 2, 2})};
  for (const auto& g : order8)
    for (const auto& h : order8)
      if (g.label != h.label) expect_distinguished(g, h, f2);
  unsigned seed = 7;
  for (const auto& g : order8) expect_certified(g, shuffled(g, seed++), f2);

  const RingPtr f3 = ring_fp(3);
  const std::vector<FiniteGroup> order9 = {cyc(9), ab({3, 3})};
  for (const auto& g : order9)
    for (const auto& h : order9)
      if (g.label != h.label) expect_distinguished(g, h, f3);
  for (const auto& g : order9) expect_certified(g, shuffled(g, seed++), f3);
}

// 10: order 27 over F3 with the exponent-3 nonabelian group on the left.
void check_pipeline_order27() {
  const RingPtr f3 = ring_fp(3);
  const FiniteGroup g = heis(3);
  for (const auto& h : {cyc(27), ab({9, 3}), ab({3, 3, 3}),
                        catalog_group("modular_p3", {3})})
    expect_distinguished(g, h, f3);
  expect_certified(g, shuffled(g, 41), f3);
}

// 11: order 8 over F2 with both nonabelian groups on the left.
void check_pipeline_order8() {
  const RingPtr f2 = ring_fp(2);
  const FiniteGroup d4 = dih(4);
  const FiniteGroup q8 = catalog_group("quaternion8", {});
  unsigned seed = 51;
  for (const auto& g : {d4, q8}) {
    for (const auto& h : {cyc(8), ab({4, 2}), ab({2, 2, 2})})
      expect_distinguished(g, h, f2);
    expect_certified(g, shuffled(g, seed++), f2);
  }
  expect_distinguished(d4, q8, f2);
  expect_distinguished(q8, d4, f2);
}

// 12: every witness the suite produces satisfies the count-recovery identity
// against direct hom counting, for every catalog group of the right prime.
void check_recovered_counts() {
  struct Tagged {
    int p;
    HereditaryWitness w;
  };
  std::vector<Tagged> witnesses;
  std::set<std::string> seen;
  const auto add = [&](int p, const HereditaryWitness& w) {
    const std::string key = std::to_string(p) + "|" + w.a->label + "|" +
                            w.b->label + "|" + std::to_string(w.k.n) + "|" +
                            std::to_string(w.n);
    if (seen.insert(key).second) witnesses.push_back({p, w});
  };
  for (const auto& [p, n] : std::vector<std::pair<int, int>>{
           {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {7, 1}})
    for (const auto& cert : cyclic_certificate(p, n))
      add(p, certificate_to_witness(cert));
  for (int p : {3, 5})
    add(p, hereditary_certificates(heis(p), ring_fp(p)).back().witness);
  add(2, hereditary_certificates(dih(4), ring_fp(2)).back().witness);
  add(2, hereditary_certificates(catalog_group("quaternion8", {}), ring_fp(2))
             .back()
             .witness);

  const auto cat = small_catalog(27);
  int checked = 0;
  for (const auto& tagged : witnesses)
    for (const auto& g : cat) {
      int m = g.n;
      while (m % tagged.p == 0) m /= tagged.p;
      if (m != 1) continue;
      const BigInt rec = recovered_hom_count(g, tagged.w);
      const BigInt direct = count_homs(g, tagged.w.k);
      require(rec == direct,
              "counts for " + g.label + " into " + tagged.w.k.label +
                  " disagree: recovered " + to_string(rec) + ", direct " +
                  to_string(direct));
      ++checked;
    }
  require(checked >= 100,
          "identity grid too small: " + std::to_string(checked) + " checks");
}

}  // namespace

int run_acceptance(std::ostream& out) {
  const std::vector<std::pair<const char*, std::function<void()>>> items = {
      {"unit group of F5[C5] and span membership of C5",
       check_unit_group_and_membership},
      {"surjection counts by signed expansion vs direct enumeration",
       check_epi_counts},
      {"hom-count comparison separates the small catalog", check_lovasz_grid},
      {"algebra hom counts match group homs into unit groups",
       check_algebra_hom_adjunction},
      {"unit pattern and splitting across the quasi-regular pool",
       check_unitization_pool},
      {"cyclic tower certificates and their witnesses", check_cyclic_towers},
      {"commutator-halving algebras for the Heisenberg groups",
       check_commutator_halving},
      {"structure-constant search hits for D4 and Q8", check_constant_search},
      {"pipeline separates abelian groups of order 8 and 9",
       check_pipeline_abelian},
      {"pipeline at order 27, odd characteristic", check_pipeline_order27},
      {"pipeline at order 8, even characteristic", check_pipeline_order8},
      {"recovered hom counts equal direct counts for every witness",
       check_recovered_counts},
  };

  int failures = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [name, run] = items[i];
    try {
      run();
      out << "ok " << (i + 1) << " - " << name << "\n";
    } catch (const CheckFailed& f) {
      ++failures;
      out << "FAIL " << (i + 1) << " - " << name << ": " << f.detail << "\n";
    } catch (const std::exception& e) {
      ++failures;
      out << "FAIL " << (i + 1) << " - " << name << ": unexpected error: "
          << e.what() << "\n";
    }
    out.flush();
  }
  out << items.size() << " items, " << (items.size() - failures)
      << " passed, " << failures << " failed\n";
  return failures;
}

}  // namespace groupalg
