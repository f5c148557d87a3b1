#include "groupalg/grothendieck.hpp"

#include <algorithm>
#include <sstream>

#include "groupalg/errors.hpp"
#include "groupalg/homcount.hpp"
#include "groupalg/limits.hpp"

namespace groupalg {

namespace {

// Pool sizes up to this get the minimal-support subset scan; larger pools
// fall back to a single full elimination.
constexpr int kSubsetScanCap = 12;

// Total algebra multiplicity a witness may carry before the direct products
// stop being worth materializing.
constexpr int kWitnessFactorCap = 64;

int prime_power_exponent(int v, int p) {
  int e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  return v == 1 ? e : -1;
}

// One span-basis row: vec is an exact combination of the original columns,
// recorded in expr; vec has no support on the pivots of earlier rows.
struct BasisRow {
  int pivot = -1;
  LVector vec;
  std::vector<Rational> expr;
};

// v -= matching rows; acc += the column combination that was subtracted.
void eliminate(const std::vector<BasisRow>& basis, LVector& v,
               std::vector<Rational>& acc) {
  for (const auto& b : basis) {
    auto it = v.coef.find(b.pivot);
    if (it == v.coef.end()) continue;
    const Rational f = it->second / b.vec.coef.at(b.pivot);
    lv_add_scaled(v, -f, b.vec);
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += f * b.expr[j];
  }
}

// Express target over the given columns, or return its irreducible part.
struct SpanSolve {
  std::optional<std::vector<Rational>> coeffs;
  LVector residual;
};

SpanSolve solve_span(const std::vector<const LVector*>& cols,
                     const LVector& target) {
  std::vector<BasisRow> basis;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    BasisRow row;
    row.vec = *cols[i];
    row.expr.assign(cols.size(), Rational(0));
    row.expr[i] = 1;
    for (const auto& b : basis) {
      auto it = row.vec.coef.find(b.pivot);
      if (it == row.vec.coef.end()) continue;
      const Rational f = it->second / b.vec.coef.at(b.pivot);
      lv_add_scaled(row.vec, -f, b.vec);
      for (std::size_t j = 0; j < cols.size(); ++j)
        row.expr[j] -= f * b.expr[j];
    }
    if (row.vec.is_zero()) continue;  // dependent column
    row.pivot = row.vec.coef.begin()->first;
    basis.push_back(std::move(row));
  }
  SpanSolve out;
  LVector v = target;
  std::vector<Rational> acc(cols.size(), Rational(0));
  eliminate(basis, v, acc);
  if (v.is_zero())
    out.coeffs = std::move(acc);
  else
    out.residual = std::move(v);
  return out;
}

Certificate make_certificate(const RingPtr& ring, const FiniteGroup& target,
                             const std::vector<AlgebraPtr>& algebras,
                             const std::vector<Rational>& q) {
  Certificate cert;
  cert.ring = ring;
  cert.target = target;
  for (std::size_t i = 0; i < algebras.size(); ++i)
    if (q[i] != 0) cert.terms.push_back({q[i], algebras[i]});
  return cert;
}

}  // namespace

int ClassRegistry::intern(const FiniteGroup& g) {
  const std::string key = invariant_key(g);
  auto& bucket = buckets_[key];
  for (int idx : bucket)
    if (is_isomorphic(reps_[static_cast<std::size_t>(idx)], g)) return idx;
  reps_.push_back(g);
  bucket.push_back(size() - 1);
  return size() - 1;
}

const FiniteGroup& ClassRegistry::representative(int idx) const {
  if (idx < 0 || idx >= size())
    throw PreconditionViolated("registry index " + std::to_string(idx) +
                               " out of range");
  return reps_[static_cast<std::size_t>(idx)];
}

void lv_add_scaled(LVector& v, const Rational& q, const LVector& w) {
  if (q == 0) return;
  for (const auto& [idx, c] : w.coef) {
    Rational& slot = v.coef[idx];
    slot += q * c;
    if (slot == 0) v.coef.erase(idx);
  }
}

std::string lv_to_string(const ClassRegistry& reg, const LVector& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : v.coef) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c) << "*[" << reg.representative(idx).label << "]";
  }
  return os.str();
}

LVector class_vector(ClassRegistry& reg, const FiniteGroup& g) {
  LVector v;
  for (const auto& f : indecomposable_factors(g)) v.coef[reg.intern(f)] += 1;
  return v;
}

LVector unit_class_vector(ClassRegistry& reg, const AlgebraPtr& a) {
  const UnitGroupInfo u = unit_group(a, UnitMode::Implicit);
  if (u.invariants) {
    LVector v;
    for (int q : *u.invariants)
      v.coef[reg.intern(catalog_group("cyclic", {q}))] += 1;
    return v;
  }
  const UnitGroupInfo t = unit_group(a, UnitMode::Table);
  return class_vector(reg, *t.table);
}

bool verify_certificate(ClassRegistry& reg, const Certificate& cert) {
  LVector sum;
  for (const auto& term : cert.terms)
    lv_add_scaled(sum, term.q, unit_class_vector(reg, term.algebra));
  return sum == class_vector(reg, cert.target);
}

MembershipResult solve_membership(ClassRegistry& reg, const FiniteGroup& k,
                                  const std::vector<AlgebraPtr>& pool) {
  const LVector target = class_vector(reg, k);
  std::vector<LVector> cols;
  cols.reserve(pool.size());
  for (const auto& a : pool) cols.push_back(unit_class_vector(reg, a));

  MembershipResult out;
  const int m = static_cast<int>(pool.size());
  const RingPtr ring = pool.empty() ? nullptr : pool.front()->ring;

  if (m <= kSubsetScanCap) {
    for (int size = 0; size <= m; ++size) {
      for (unsigned mask = 0; mask < (1u << m); ++mask) {
        if (__builtin_popcount(mask) != size) continue;
        std::vector<const LVector*> sub;
        std::vector<AlgebraPtr> subalg;
        for (int i = 0; i < m; ++i)
          if (mask & (1u << i)) {
            sub.push_back(&cols[static_cast<std::size_t>(i)]);
            subalg.push_back(pool[static_cast<std::size_t>(i)]);
          }
        SpanSolve s = solve_span(sub, target);
        if (s.coeffs) {
          out.certificate = make_certificate(ring, k, subalg, *s.coeffs);
          return out;
        }
        if (mask + 1 == (1u << m)) out.residual = std::move(s.residual);
      }
    }
    return out;
  }

  std::vector<const LVector*> all;
  for (const auto& c : cols) all.push_back(&c);
  SpanSolve s = solve_span(all, target);
  if (s.coeffs)
    out.certificate = make_certificate(ring, k, pool, *s.coeffs);
  else
    out.residual = std::move(s.residual);
  return out;
}

std::vector<Certificate> cyclic_certificate(int p, int n) {
  if (!small_is_prime(p))
    throw NotPrime("cyclic certificates need a prime, got " +
                   std::to_string(p));
  if (n < 0) throw BadParams("negative tower height");
  const RingPtr fp = ring_fp(p);
  const AlgebraPtr field_alg = ring_as_algebra(fp);

  // Slot 0 is the field itself; slot m >= 1 is F_p C_{p^m}.
  std::vector<AlgebraPtr> slot(static_cast<std::size_t>(n) + 1);
  slot[0] = field_alg;
  std::vector<std::map<int, Rational>> terms(static_cast<std::size_t>(n) + 1);

  int pm = 1;
  for (int m = 1; m <= n; ++m) {
    pm *= p;
    const BigInt elements = bigint_pow(BigInt(p), static_cast<unsigned>(pm));
    if (elements > limits().max_algebra_elements)
      throw BoundExceeded("group algebra on " + std::to_string(pm) +
                          " points over F" + std::to_string(p) + " has " +
                          to_string(elements) +
                          " elements, max_algebra_elements is " +
                          std::to_string(limits().max_algebra_elements));
    slot[static_cast<std::size_t>(m)] =
        group_algebra(fp, catalog_group("cyclic", {pm}));
    const UnitGroupInfo u =
        unit_group(slot[static_cast<std::size_t>(m)], UnitMode::Implicit);
    if (!u.invariants)
      throw InternalError("cyclic group algebra unit invariants unavailable");

    // Multiplicity of each cyclic p-power layer among the units.
    std::map<int, int> mult;
    for (int v : *u.invariants) {
      const int e = prime_power_exponent(v, p);
      if (e > 0) mult[e] += 1;
    }
    const int top = mult[m];
    if (top < 1)
      throw InternalError("no full-order cyclic layer in the units of " +
                          slot[static_cast<std::size_t>(m)]->label);

    auto& t = terms[static_cast<std::size_t>(m)];
    const Rational inv_top(1, top);
    t[m] += inv_top;
    if (p > 2) t[0] -= inv_top;  // F_2 has trivial units; skip the zero class
    for (int i = 1; i < m; ++i) {
      const auto it = mult.find(i);
      if (it == mult.end()) continue;
      const Rational w = Rational(it->second) * inv_top;
      for (const auto& [s, q] : terms[static_cast<std::size_t>(i)])
        t[s] -= w * q;
    }
    for (auto it = t.begin(); it != t.end();)
      it = it->second == 0 ? t.erase(it) : std::next(it);
  }

  std::vector<Certificate> out;
  int q = 1;
  for (int i = 0; i <= n; ++i) {
    Certificate cert;
    cert.ring = fp;
    cert.target = catalog_group("cyclic", {q});
    for (const auto& [s, coeff] : terms[static_cast<std::size_t>(i)])
      cert.terms.push_back({coeff, slot[static_cast<std::size_t>(s)]});
    out.push_back(std::move(cert));
    q *= p;
  }
  return out;
}

HereditaryWitness certificate_to_witness(const Certificate& cert) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;

  BigInt den = 1;
  for (const auto& t : cert.terms)
    den = boost::multiprecision::lcm(den, denominator(t.q));
  if (den > kWitnessFactorCap)
    throw BoundExceeded("witness denominator " + to_string(den) +
                        " too large to materialize");

  std::vector<AlgebraPtr> pos, neg;
  BigInt copies = 0;
  for (const auto& t : cert.terms) {
    const BigInt w = numerator(t.q) * (den / denominator(t.q));
    copies += abs(w);
    if (copies > kWitnessFactorCap)
      throw BoundExceeded("witness needs more than " +
                          std::to_string(kWitnessFactorCap) +
                          " algebra factors");
    for (BigInt c = 0; c < abs(w); ++c) (w > 0 ? pos : neg).push_back(t.algebra);
  }

  HereditaryWitness w;
  w.k = cert.target;
  if (pos.empty()) {
    if (cert.target.n != 1)
      throw EmptyPositivePart("certificate for " + cert.target.label +
                              " has no positively weighted algebra");
    if (!cert.ring)
      throw PreconditionViolated("certificate carries no coefficient ring");
    const AlgebraPtr r = ring_as_algebra(cert.ring);
    w.a = r;
    w.b = r;
    w.n = 1;
    return w;
  }
  w.n = den.convert_to<int>();
  w.a = pos.size() == 1 ? pos.front() : algebra_product(pos);
  w.b = neg.empty() ? ring_as_algebra(cert.ring)
                    : (neg.size() == 1 ? neg.front() : algebra_product(neg));
  return w;
}

bool verify_witness(const HereditaryWitness& w) {
  if (w.n < 1) return false;
  const UnitGroupInfo ua = unit_group(w.a, UnitMode::Implicit);
  const UnitGroupInfo ub = unit_group(w.b, UnitMode::Implicit);
  BigInt rhs_order = ub.order;
  for (int i = 0; i < w.n; ++i) rhs_order *= w.k.n;
  if (ua.order != rhs_order) return false;

  if (ua.invariants && ub.invariants && w.k.is_abelian()) {
    std::vector<int> lhs = *ua.invariants;
    std::vector<int> rhs = *ub.invariants;
    const std::vector<int> kinv = abelian_invariants_of(w.k);
    for (int i = 0; i < w.n; ++i)
      rhs.insert(rhs.end(), kinv.begin(), kinv.end());
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    return lhs == rhs;
  }

  const UnitGroupInfo ta = unit_group(w.a, UnitMode::Table);
  const UnitGroupInfo tb = unit_group(w.b, UnitMode::Table);
  FiniteGroup rhs = *tb.table;
  for (int i = 0; i < w.n; ++i) rhs = direct_product(rhs, w.k);
  return is_isomorphic(*ta.table, rhs).has_value();
}

HereditaryReport is_hereditary(ClassRegistry& reg, const FiniteGroup& g,
                               const std::vector<AlgebraPtr>& pool) {
  HereditaryReport report;
  report.hereditary = true;
  for (const auto& k : subgroup_class_representatives(g)) {
    HereditaryRow row;
    row.subgroup_rep = k;
    MembershipResult r = solve_membership(reg, k, pool);
    row.certificate = std::move(r.certificate);
    row.residual = std::move(r.residual);
    if (!row.certificate) report.hereditary = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::vector<AlgebraPtr> default_pool(int p,
                                     const std::vector<AlgebraPtr>& extra) {
  if (!small_is_prime(p))
    throw NotPrime("pool needs a prime field, got " + std::to_string(p));
  const RingPtr fp = ring_fp(p);
  std::vector<AlgebraPtr> pool = {ring_as_algebra(fp)};
  BigInt points = p;
  while (bigint_pow(BigInt(p), points.convert_to<unsigned>()) <=
         limits().max_algebra_elements) {
    pool.push_back(
        group_algebra(fp, catalog_group("cyclic", {points.convert_to<int>()})));
    points *= p;
  }
  pool.insert(pool.end(), extra.begin(), extra.end());
  return pool;
}

}  // namespace groupalg
