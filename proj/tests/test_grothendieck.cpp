#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <groupalg/errors.hpp>
#include <groupalg/grothendieck.hpp>

#include "oracles.hpp"

using namespace groupalg;

namespace {

FiniteGroup cyc(int m) { return catalog_group("cyclic", {m}); }
FiniteGroup ab(std::vector<int> parts) { return catalog_group("abelian", parts); }

Rational coeff_for(const Certificate& cert, const std::string& label) {
  for (const auto& t : cert.terms)
    if (t.algebra->label == label) return t.q;
  return Rational(0);
}

}  // namespace

TEST_CASE("registry interns one representative per isomorphism class") {
  ClassRegistry reg;
  const int a = reg.intern(cyc(2));
  const int b = reg.intern(shuffled(cyc(2), 3));
  CHECK(a == b);
  const int c4 = reg.intern(cyc(4));
  CHECK(c4 != a);
  const int h = reg.intern(catalog_group("heisenberg", {3}));
  const int m = reg.intern(catalog_group("modular_p3", {3}));
  CHECK(h != m);
  CHECK(reg.size() == 4);
  CHECK(reg.representative(a).n == 2);
  CHECK_THROWS_AS(reg.representative(99), PreconditionViolated);
}

TEST_CASE("class vectors decompose into indecomposable factors") {
  ClassRegistry reg;
  const LVector v12 = class_vector(reg, cyc(12));
  REQUIRE(v12.coef.size() == 2);  // C4 and C3
  for (const auto& [idx, q] : v12.coef) {
    CHECK(q == 1);
    const int n = reg.representative(idx).n;
    CHECK((n == 4 || n == 3));
  }
  CHECK(class_vector(reg, trivial_group()).is_zero());

  // Stable across factor orderings of the same group.
  CHECK(class_vector(reg, direct_product(cyc(3), cyc(4))) == v12);
  CHECK(class_vector(reg, direct_product(cyc(4), cyc(3))) == v12);

  // Additive over direct products.
  const auto d4 = catalog_group("dihedral", {4});
  LVector sum = class_vector(reg, d4);
  lv_add_scaled(sum, 1, class_vector(reg, cyc(6)));
  CHECK(class_vector(reg, direct_product(d4, cyc(6))) == sum);
}

TEST_CASE("unit-group class vectors via invariants and via tables agree") {
  ClassRegistry reg;
  const auto f5 = ring_fp(5);
  const LVector v = unit_class_vector(reg, group_algebra(f5, cyc(5)));
  // C4 once, C5 four times.
  const int ic4 = reg.intern(cyc(4));
  const int ic5 = reg.intern(cyc(5));
  REQUIRE(v.coef.size() == 2);
  CHECK(v.coef.at(ic4) == 1);
  CHECK(v.coef.at(ic5) == 4);

  // Nonabelian route: the units of F2[D3] contain D3, so the class vector
  // comes from the tabulated unit group.  Factor orders must multiply back
  // to the unit count.
  const auto f2 = ring_fp(2);
  const auto a = group_algebra(f2, catalog_group("dihedral", {3}));
  const auto info = unit_group(a, UnitMode::Table);
  CHECK(!info.abelian);
  const LVector w = unit_class_vector(reg, a);
  BigInt total = 1;
  for (const auto& [idx, q] : w.coef) {
    REQUIRE(boost::multiprecision::denominator(q) == 1);
    total *= bigint_pow(BigInt(reg.representative(idx).n),
                        boost::multiprecision::numerator(q).convert_to<unsigned>());
  }
  CHECK(total == info.order);
}

TEST_CASE("membership solving over explicit pools") {
  ClassRegistry reg;
  const auto f5 = ring_fp(5);
  const std::vector<AlgebraPtr> pool = {ring_as_algebra(f5),
                                        group_algebra(f5, cyc(5))};

  SUBCASE("the order-5 cyclic group against the two-element pool") {
    const MembershipResult r = solve_membership(reg, cyc(5), pool);
    REQUIRE(r.certificate.has_value());
    CHECK(r.residual.is_zero());
    CHECK(r.certificate->terms.size() == 2);
    CHECK(coeff_for(*r.certificate, "F5") == Rational(-1, 4));
    CHECK(coeff_for(*r.certificate, "F5[C5]") == Rational(1, 4));
    CHECK(verify_certificate(reg, *r.certificate));
  }

  SUBCASE("trivial target solves with an empty certificate") {
    const MembershipResult r = solve_membership(reg, trivial_group(), pool);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->terms.empty());
    CHECK(verify_certificate(reg, *r.certificate));
  }

  SUBCASE("the field alone cannot reach C5") {
    const MembershipResult r =
        solve_membership(reg, cyc(5), {ring_as_algebra(f5)});
    CHECK(!r.certificate.has_value());
    REQUIRE(r.residual.coef.size() == 1);
    const auto& [idx, q] = *r.residual.coef.begin();
    CHECK(reg.representative(idx).n == 5);
    CHECK(q == 1);
  }

  SUBCASE("solutions prefer fewer pool algebras") {
    // C4 needs only two of the five default algebras over F2.
    const MembershipResult r =
        solve_membership(reg, cyc(4), default_pool(2));
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate->terms.size() == 2);
    CHECK(coeff_for(*r.certificate, "F2[C4]") == 1);
    CHECK(coeff_for(*r.certificate, "F2[C2]") == -1);
    CHECK(verify_certificate(reg, *r.certificate));
  }
}

TEST_CASE("cyclic certificate towers") {
  ClassRegistry reg;

  SUBCASE("p = 2 tower to height 4") {
    const auto certs = cyclic_certificate(2, 4);
    REQUIRE(certs.size() == 5);
    CHECK(certs[0].terms.empty());

    CHECK(certs[1].terms.size() == 1);
    CHECK(coeff_for(certs[1], "F2[C2]") == 1);

    CHECK(coeff_for(certs[2], "F2[C4]") == 1);
    CHECK(coeff_for(certs[2], "F2[C2]") == -1);

    CHECK(coeff_for(certs[3], "F2[C8]") == 1);
    CHECK(coeff_for(certs[3], "F2[C4]") == -1);
    CHECK(coeff_for(certs[3], "F2[C2]") == -1);

    CHECK(coeff_for(certs[4], "F2[C16]") == 1);
    CHECK(coeff_for(certs[4], "F2[C8]") == -1);
    CHECK(coeff_for(certs[4], "F2[C4]") == -1);
    CHECK(coeff_for(certs[4], "F2[C2]") == -1);

    for (const auto& cert : certs) CHECK(verify_certificate(reg, cert));
  }

  SUBCASE("p = 3 tower to height 2") {
    const auto certs = cyclic_certificate(3, 2);
    REQUIRE(certs.size() == 3);
    CHECK(coeff_for(certs[1], "F3[C3]") == Rational(1, 2));
    CHECK(coeff_for(certs[1], "F3") == Rational(-1, 2));
    CHECK(coeff_for(certs[2], "F3[C9]") == Rational(1, 2));
    CHECK(coeff_for(certs[2], "F3[C3]") == Rational(-1));
    CHECK(coeff_for(certs[2], "F3") == Rational(1, 2));
    for (const auto& cert : certs) CHECK(verify_certificate(reg, cert));
  }

  SUBCASE("p = 5 and p = 7 base layers") {
    const auto c5 = cyclic_certificate(5, 1);
    CHECK(coeff_for(c5[1], "F5[C5]") == Rational(1, 4));
    CHECK(coeff_for(c5[1], "F5") == Rational(-1, 4));
    CHECK(verify_certificate(reg, c5[1]));

    const auto c7 = cyclic_certificate(7, 1);
    CHECK(coeff_for(c7[1], "F7[C7]") == Rational(1, 6));
    CHECK(coeff_for(c7[1], "F7") == Rational(-1, 6));
    CHECK(verify_certificate(reg, c7[1]));
  }

  SUBCASE("heights past the enumeration bound fail loudly") {
    CHECK_THROWS_AS(cyclic_certificate(2, 5), BoundExceeded);
    CHECK_THROWS_AS(cyclic_certificate(6, 1), NotPrime);
  }
}

TEST_CASE("witness construction and verification") {
  SUBCASE("order 5: denominators clear to a fourth power") {
    const auto certs = cyclic_certificate(5, 1);
    const HereditaryWitness w = certificate_to_witness(certs[1]);
    CHECK(w.n == 4);
    CHECK(w.a->label == "F5[C5]");
    CHECK(w.b->label == "F5");
    CHECK(verify_witness(w));

    HereditaryWitness bad = w;
    bad.n = 3;
    CHECK(!verify_witness(bad));
  }

  SUBCASE("order 4: integral certificate gives n = 1") {
    const auto certs = cyclic_certificate(2, 2);
    const HereditaryWitness w = certificate_to_witness(certs[2]);
    CHECK(w.n == 1);
    CHECK(w.a->label == "F2[C4]");
    CHECK(w.b->label == "F2[C2]");
    CHECK(verify_witness(w));
  }

  SUBCASE("order 16: the negative side is a three-fold product") {
    const auto certs = cyclic_certificate(2, 4);
    const HereditaryWitness w = certificate_to_witness(certs[4]);
    CHECK(w.n == 1);
    CHECK(w.a->label == "F2[C16]");
    CHECK(w.b->dim == 14);  // F2[C8] x F2[C4] x F2[C2]
    CHECK(verify_witness(w));
  }

  SUBCASE("order 9: mixed signs on both sides") {
    const auto certs = cyclic_certificate(3, 2);
    const HereditaryWitness w = certificate_to_witness(certs[2]);
    CHECK(w.n == 2);
    CHECK(w.a->dim == 10);  // F3[C9] x F3
    CHECK(w.b->dim == 6);   // F3[C3] x F3[C3]
    CHECK(verify_witness(w));
  }

  SUBCASE("trivial target maps to the bare ring") {
    const auto certs = cyclic_certificate(3, 0);
    const HereditaryWitness w = certificate_to_witness(certs[0]);
    CHECK(w.n == 1);
    CHECK(w.a->dim == 1);
    CHECK(w.b->dim == 1);
    CHECK(verify_witness(w));
  }

  SUBCASE("a purely negative certificate is rejected") {
    Certificate cert;
    cert.ring = ring_fp(5);
    cert.target = cyc(5);
    cert.terms.push_back(
        {Rational(-1), group_algebra(ring_fp(5), cyc(5))});
    CHECK_THROWS_AS(certificate_to_witness(cert), EmptyPositivePart);
  }
}

TEST_CASE("every witness in the supported cyclic range verifies") {
  const std::vector<std::pair<int, int>> range = {
      {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {7, 1}};
  for (const auto& [p, n] : range) {
    const auto certs = cyclic_certificate(p, n);
    for (const auto& cert : certs) {
      CAPTURE(p);
      CAPTURE(cert.target.label);
      const HereditaryWitness w = certificate_to_witness(cert);
      CHECK(verify_witness(w));
      CHECK(w.n >= 1);
    }
  }
}

TEST_CASE("hereditary reports per subgroup class") {
  ClassRegistry reg;

  SUBCASE("C4 over the default F2 pool") {
    const auto report = is_hereditary(reg, cyc(4), default_pool(2));
    CHECK(report.hereditary);
    REQUIRE(report.rows.size() == 3);  // 1, C2, C4
    for (const auto& row : report.rows) {
      REQUIRE(row.certificate.has_value());
      CHECK(verify_certificate(reg, *row.certificate));
      CHECK(row.residual.is_zero());
    }
  }

  SUBCASE("elementary abelian 2x2 over the default F2 pool") {
    const auto report = is_hereditary(reg, ab({2, 2}), default_pool(2));
    CHECK(report.hereditary);
    REQUIRE(report.rows.size() == 3);  // 1, C2, 2x2
  }

  SUBCASE("C5 over the bare field is not certified") {
    const auto report =
        is_hereditary(reg, cyc(5), {ring_as_algebra(ring_fp(5))});
    CHECK(!report.hereditary);
    bool saw_miss = false;
    for (const auto& row : report.rows)
      if (!row.certificate) {
        saw_miss = true;
        CHECK(!row.residual.is_zero());
        CHECK(row.subgroup_rep.n == 5);
      }
    CHECK(saw_miss);
  }
}

TEST_CASE("default pools track the enumeration bound") {
  const auto p2 = default_pool(2);
  REQUIRE(p2.size() == 5);  // F2 and the C2..C16 group algebras
  CHECK(p2[0]->dim == 1);
  CHECK(p2[4]->dim == 16);
  const auto p7 = default_pool(7);
  REQUIRE(p7.size() == 2);
  CHECK(p7[1]->dim == 7);
  const auto extra = default_pool(3, {ring_as_algebra(ring_fp(3))});
  CHECK(extra.size() == 4);  // F3, F3[C3], F3[C9], plus the duplicate
}
