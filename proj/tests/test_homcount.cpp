#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <groupalg/algebra.hpp>
#include <groupalg/errors.hpp>
#include <groupalg/homcount.hpp>
#include <groupalg/limits.hpp>

#include "oracles.hpp"

using namespace groupalg;

namespace {

FiniteGroup cyc(int m) { return catalog_group("cyclic", {m}); }
FiniteGroup ab(std::vector<int> parts) { return catalog_group("abelian", parts); }
FiniteGroup dih(int m) { return catalog_group("dihedral", {m}); }
FiniteGroup q8() { return catalog_group("quaternion8", {}); }
FiniteGroup heis(int p) { return catalog_group("heisenberg", {p}); }
FiniteGroup m27() { return catalog_group("modular_p3", {3}); }

struct LimitGuard {
  Limits saved = limits();
  ~LimitGuard() { limits() = saved; }
};

}  // namespace

TEST_CASE("hom counts match frozen values and presentation oracles") {
  CHECK(count_homs(cyc(4), cyc(2)) == 2);
  CHECK(count_homs(ab({2, 2}), cyc(2)) == 4);
  CHECK(count_homs(cyc(2), cyc(4)) == 2);

  for (const auto& g : {cyc(6), dih(4), q8(), heis(3)})
    CHECK(count_homs(g, trivial_group()) == 1);

  const auto d4 = dih(4);
  CHECK(count_homs(d4, d4) == 36);
  CHECK(oracle::count_homs_from_d4(d4) == 36);
  CHECK(count_homs(q8(), d4) == 28);
  CHECK(oracle::count_homs_from_q8(d4) == 28);

  const auto h3 = heis(3);
  CHECK(count_homs(h3, h3) == 729);
  CHECK(oracle::count_homs_from_heis3(h3) == 729);
  CHECK(count_homs(m27(), h3) == 297);
  CHECK(oracle::count_homs_from_m27(h3) == 297);
  CHECK(count_homs(cyc(27), h3) == 27);
}

TEST_CASE("hom counts agree with the all-functions oracle on small pairs") {
  const std::vector<FiniteGroup> pool = {
      trivial_group(), cyc(2), cyc(3), cyc(4), ab({2, 2}),
      cyc(5),          cyc(6), dih(3), dih(4), q8()};
  for (const auto& g : pool)
    for (const auto& h : pool) {
      double space = std::pow(static_cast<double>(h.n), g.n);
      if (space > 3e6) continue;
      CAPTURE(g.label);
      CAPTURE(h.label);
      CHECK(count_homs(g, h) == oracle::count_homs_allfunctions(g, h));
    }
}

TEST_CASE("abelian gcd fast path agrees with backtracking") {
  const std::vector<FiniteGroup> pool = {
      cyc(2),         cyc(4),    ab({2, 2}),       cyc(8),  ab({4, 2}),
      ab({2, 2, 2}),  cyc(9),    ab({3, 3}),       cyc(12), ab({2, 2, 3}),
      cyc(16),        ab({4, 4}), ab({4, 2, 2}),   ab({2, 2, 2, 2}),
      ab({8, 2}),     cyc(25),   cyc(27),          ab({9, 3}),
      ab({3, 3, 3}),  cyc(32),   ab({16, 4}),      ab({6, 6})};
  for (const auto& g : pool)
    for (const auto& h : pool) {
      BigInt fast = count_homs(g, h);
      if (fast > 200000) continue;  // keep the enumeration cross-check quick
      CAPTURE(g.label);
      CAPTURE(h.label);
      CHECK(fast == count_homs_backtracking(g, h));
    }
}

TEST_CASE("epimorphism counts: inclusion-exclusion, brute force, oracle") {
  CHECK(count_epis_inclusion_exclusion(ab({2, 2}), cyc(2)) == 3);
  CHECK(count_epis_bruteforce(ab({2, 2}), cyc(2)) == 3);
  CHECK(count_epis_inclusion_exclusion(cyc(6), cyc(3)) == 2);
  CHECK(count_epis_bruteforce(cyc(6), cyc(3)) == 2);
  CHECK(count_epis_inclusion_exclusion(cyc(2), cyc(4)) == 0);
  CHECK(count_epis_bruteforce(trivial_group(), trivial_group()) == 1);

  const std::vector<FiniteGroup> pool = {
      trivial_group(), cyc(2),  cyc(3),        cyc(4),  ab({2, 2}),
      cyc(6),          dih(3),  cyc(8),        ab({4, 2}), ab({2, 2, 2}),
      dih(4),          q8(),    cyc(12),       dih(6),  ab({2, 2, 3})};
  for (const auto& g : pool)
    for (const auto& h : pool) {
      CAPTURE(g.label);
      CAPTURE(h.label);
      CHECK(count_epis_inclusion_exclusion(g, h) == count_epis_bruteforce(g, h));
    }
  for (const auto& g : pool)
    CHECK(count_epis_inclusion_exclusion(g, g) >= 1);

  // Tiny pairs against the direct function-space oracle.
  CHECK(count_epis_inclusion_exclusion(dih(3), cyc(2)) ==
        oracle::count_epis_allfunctions(dih(3), cyc(2)));
  CHECK(count_epis_inclusion_exclusion(dih(4), ab({2, 2})) ==
        oracle::count_epis_allfunctions(dih(4), ab({2, 2})));
  CHECK(count_epis_inclusion_exclusion(q8(), ab({2, 2})) ==
        oracle::count_epis_allfunctions(q8(), ab({2, 2})));
}

TEST_CASE("hom counts are multiplicative over direct product targets") {
  const std::vector<std::array<FiniteGroup, 3>> triples = {
      {dih(4), cyc(2), cyc(3)},
      {dih(4), ab({2, 2}), cyc(2)},
      {q8(), ab({2, 2}), cyc(2)},
      {q8(), cyc(4), cyc(3)},
      {dih(3), dih(3), cyc(2)},
      {cyc(6), cyc(4), cyc(6)},
      {ab({4, 2}), cyc(8), cyc(2)}};
  for (const auto& [g, t1, t2] : triples) {
    CAPTURE(g.label);
    CAPTURE(t1.label);
    CAPTURE(t2.label);
    CHECK(count_homs(g, direct_product(t1, t2)) ==
          count_homs(g, t1) * count_homs(g, t2));
  }
}

TEST_CASE("counts are invariant under relabeling on both sides") {
  const auto d4 = dih(4);
  const auto h3 = heis(3);
  CHECK(count_homs(shuffled(d4, 11), shuffled(d4, 22)) == 36);
  CHECK(count_homs(shuffled(q8(), 5), shuffled(d4, 7)) == 28);
  CHECK(count_homs(shuffled(h3, 3), shuffled(h3, 9)) == 729);
  CHECK(count_epis_inclusion_exclusion(shuffled(d4, 4), shuffled(ab({2, 2}), 6)) ==
        count_epis_inclusion_exclusion(d4, ab({2, 2})));
}

TEST_CASE("subgroup class representatives collapse isomorphic subgroups") {
  const auto reps = subgroup_class_representatives(dih(4));
  REQUIRE(reps.size() == 5);  // 10 subgroups in 5 classes
  std::vector<int> sizes;
  for (const auto& r : reps) sizes.push_back(r.n);
  CHECK(sizes == std::vector<int>{1, 2, 4, 4, 8});
  CHECK(invariant_key(reps[2]) != invariant_key(reps[3]));  // C4 vs 2x2

  CHECK(subgroup_class_representatives(heis(3)).size() == 4);  // 1, 3, 3x3, G
  CHECK(subgroup_class_representatives(cyc(12)).size() == 6);
}

TEST_CASE("lovasz comparison verdicts") {
  const auto d4 = dih(4);

  SUBCASE("order mismatch") {
    const auto r = lovasz_compare(cyc(2), cyc(4));
    CHECK(r.kind == LovaszResult::Kind::OrderMismatch);
  }

  SUBCASE("same group yields a verified isomorphism") {
    const auto r = lovasz_compare(d4, d4);
    REQUIRE(r.kind == LovaszResult::Kind::Isomorphic);
    REQUIRE(r.map.has_value());
    CHECK(map_is_isomorphism(d4, d4, *r.map));
  }

  SUBCASE("relabeled copy is certified isomorphic") {
    const auto s = shuffled(heis(3), 17);
    const auto r = lovasz_compare(heis(3), s);
    REQUIRE(r.kind == LovaszResult::Kind::Isomorphic);
    CHECK(map_is_isomorphism(heis(3), s, *r.map));
  }

  SUBCASE("cyclic vs elementary abelian of order 4") {
    const auto r = lovasz_compare(cyc(4), ab({2, 2}));
    REQUIRE(r.kind == LovaszResult::Kind::Distinguished);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->n == 2);
    CHECK(r.count_g == 2);
    CHECK(r.count_h == 4);
  }

  SUBCASE("dihedral vs quaternion") {
    const auto r = lovasz_compare(d4, q8());
    REQUIRE(r.kind == LovaszResult::Kind::Distinguished);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->n <= 8);
    // Independent recount at the named witness.
    CHECK(count_homs(d4, *r.witness) == r.count_g);
    CHECK(count_homs(q8(), *r.witness) == r.count_h);
    CHECK(r.count_g != r.count_h);
  }

  SUBCASE("heisenberg vs modular group of order 27") {
    const auto r = lovasz_compare(heis(3), m27());
    REQUIRE(r.kind == LovaszResult::Kind::Distinguished);
    CHECK(r.witness->n == 27);
    CHECK(r.count_g == 729);
    CHECK(r.count_h == 297);
  }

  SUBCASE("cyclic vs elementary abelian of order 8") {
    const auto r = lovasz_compare(cyc(8), ab({2, 2, 2}));
    CHECK(r.kind == LovaszResult::Kind::Distinguished);
  }
}

TEST_CASE("hom profiles index subgroup classes of the reference group") {
  const auto d4 = dih(4);
  const auto pd = hom_profile(d4, d4);
  const auto pq = hom_profile(q8(), d4);
  CHECK(pd.source == d4.label);
  REQUIRE(pd.entries.size() == 5);
  REQUIRE(pq.entries.size() == 5);
  CHECK(pd.entries[0].second == 1);  // trivial subgroup
  CHECK(pq.entries[0].second == 1);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(pd.entries[i].first == pq.entries[i].first);
    CHECK(pd.entries[i].second == pq.entries[i].second);
  }
  CHECK(pd.entries[4].second == 36);
  CHECK(pq.entries[4].second == 28);
}

TEST_CASE("unital algebra hom counts by exhaustion") {
  const auto f2 = ring_fp(2);
  const auto a_f2c2 = group_algebra(f2, cyc(2));
  const auto a_f2 = ring_as_algebra(f2);
  CHECK(count_algebra_homs_bruteforce(a_f2c2, a_f2c2) == 2);
  CHECK(count_algebra_homs_bruteforce(a_f2c2, a_f2) == 1);
  CHECK(count_algebra_homs_bruteforce(group_algebra(f2, trivial_group()),
                                      group_algebra(f2, trivial_group())) == 1);

  SUBCASE("ring mismatch is rejected") {
    const auto b = group_algebra(ring_fp(3), cyc(3));
    CHECK_THROWS_AS(count_algebra_homs_bruteforce(a_f2c2, b), RingMismatch);
  }
  SUBCASE("nonunital operands are rejected") {
    const auto nil = augmentation_ideal(f2, cyc(2));
    CHECK_THROWS_AS(count_algebra_homs_bruteforce(a_f2c2, nil), NotUnital);
  }
  SUBCASE("map-space budget is enforced") {
    const auto big = group_algebra(f2, dih(4));
    CHECK_THROWS_AS(count_algebra_homs_bruteforce(big, big), BoundExceeded);
  }
}

TEST_CASE("algebra hom counts equal group hom counts into the unit group") {
  const auto f2 = ring_fp(2);
  // x^2 = 0 on a single generator, then a unit adjoined.
  const auto nil = algebra_from_constants(
      f2, 1, {{{0}}}, std::nullopt, "nil1");
  const std::vector<AlgebraPtr> targets = {
      ring_as_algebra(f2), group_algebra(f2, cyc(2)), unitization(nil)};
  const std::vector<FiniteGroup> sources = {cyc(2), ab({2, 2}), cyc(4)};
  for (const auto& a : targets) {
    const auto units = hom_target(unit_group(a, UnitMode::Table));
    for (const auto& g : sources) {
      CAPTURE(g.label);
      CAPTURE(a->label);
      CHECK(count_algebra_homs_bruteforce(group_algebra(f2, g), a) ==
            count_homs(g, units));
    }
  }
}

TEST_CASE("invariants-only targets count through the abelianization") {
  const auto f2 = ring_fp(2);
  const auto big = group_algebra(f2, cyc(16));
  const auto implicit = unit_group(big, UnitMode::Implicit);
  REQUIRE(!implicit.table.has_value());
  const auto t = hom_target(implicit);
  CHECK(t.order() == 32768);
  CHECK(count_homs(cyc(4), t) == 4096);
  CHECK(count_homs(dih(4), t) == 65536);

  // Cross-route: the same unit group small enough to tabulate.
  const auto mid = group_algebra(ring_fp(5), cyc(5));
  const auto as_table = hom_target(unit_group(mid, UnitMode::Table));
  HomTarget as_invariants;
  as_invariants.invariants = *unit_group(mid, UnitMode::Implicit).invariants;
  as_invariants.label = "implicit";
  for (const auto& g : {cyc(6), dih(3), heis(3)}) {
    CAPTURE(g.label);
    CHECK(count_homs(g, as_table) == count_homs(g, as_invariants));
  }

  UnitGroupInfo bare;
  bare.label = "bare";
  CHECK_THROWS_AS(hom_target(bare), PreconditionViolated);
}

TEST_CASE("budgets surface as typed errors") {
  SUBCASE("search budget") {
    LimitGuard guard;
    limits().search_budget = 50;
    CHECK_THROWS_AS(count_homs(dih(4), dih(4)), SearchBudgetExceeded);
  }
  SUBCASE("maximal subgroup cap") {
    LimitGuard guard;
    limits().max_maximal_subgroups = 2;
    CHECK_THROWS_AS(count_epis_inclusion_exclusion(ab({2, 2}), ab({2, 2, 2})),
                    BoundExceeded);
  }
}
