#include "groupalg/ring.hpp"

#include <algorithm>
#include <sstream>

#include "groupalg/errors.hpp"
#include "groupalg/numeric.hpp"

namespace groupalg {

namespace {

template <typename... A>
std::string cat(const A&... a) {
  std::ostringstream os;
  (os << ... << a);
  return os.str();
}

void validate_ring(FiniteCommRing& r) {
  const int m = r.size;
  auto ad = [&](int a, int b) { return r.add[std::size_t(a) * m + b]; };
  auto mu = [&](int a, int b) { return r.mul[std::size_t(a) * m + b]; };
  // additive abelian group
  int zero = -1;
  for (int c = 0; c < m && zero < 0; ++c) {
    bool ok = true;
    for (int a = 0; a < m && ok; ++a) ok = ad(c, a) == a && ad(a, c) == a;
    if (ok) zero = c;
  }
  if (zero < 0) throw RingAxiomViolation("no additive identity");
  r.zero = zero;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (ad(a, b) != ad(b, a))
        throw RingAxiomViolation(cat("addition not commutative at (", a, ",", b, ")"));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (ad(ad(a, b), c) != ad(a, ad(b, c)))
          throw RingAxiomViolation(cat("addition not associative at (", a, ",", b, ",", c, ")"));
  r.neg.assign(m, -1);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b)
      if (ad(a, b) == zero) {
        r.neg[a] = b;
        break;
      }
    if (r.neg[a] < 0)
      throw RingAxiomViolation(cat("element ", a, " has no additive inverse"));
  }
  // multiplicative monoid, commutative, with identity != zero
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (mu(a, b) != mu(b, a))
        throw RingAxiomViolation(cat("multiplication not commutative at (", a, ",", b, ")"));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (mu(mu(a, b), c) != mu(a, mu(b, c)))
          throw RingAxiomViolation(cat("multiplication not associative at (", a, ",", b, ",", c, ")"));
  int one = -1;
  for (int c = 0; c < m && one < 0; ++c) {
    bool ok = true;
    for (int a = 0; a < m && ok; ++a) ok = mu(c, a) == a;
    if (ok) one = c;
  }
  if (one < 0) throw RingAxiomViolation("no multiplicative identity");
  if (one == zero) throw RingAxiomViolation("identity equals zero");
  r.one = one;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (mu(a, ad(b, c)) != ad(mu(a, b), mu(a, c)))
          throw RingAxiomViolation(cat("distributivity fails at (", a, ",", b, ",", c, ")"));
  r.inv.assign(m, -1);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (mu(a, b) == one) {
        r.inv[a] = b;
        break;
      }
  r.is_field = true;
  for (int a = 0; a < m; ++a)
    if (a != zero && r.inv[a] < 0) {
      r.is_field = false;
      break;
    }
}

}  // namespace

std::vector<int> FiniteCommRing::units() const {
  std::vector<int> u;
  for (int a = 0; a < size; ++a)
    if (inv[a] >= 0) u.push_back(a);
  return u;
}

RingPtr ring_fp(int p) {
  if (!small_is_prime(p)) throw NotPrime(cat("Fp needs a prime, got ", p));
  auto r = std::make_shared<FiniteCommRing>();
  r->size = p;
  r->add.resize(std::size_t(p) * p);
  r->mul.resize(std::size_t(p) * p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      r->add[std::size_t(a) * p + b] = (a + b) % p;
      r->mul[std::size_t(a) * p + b] = (a * b) % p;
    }
  r->label = "F" + std::to_string(p);
  validate_ring(*r);
  r->prime = p;
  return r;
}

RingPtr ring_zn(int n) {
  if (n < 2) throw BadParams(cat("Zn needs n >= 2, got ", n));
  auto r = std::make_shared<FiniteCommRing>();
  r->size = n;
  r->add.resize(std::size_t(n) * n);
  r->mul.resize(std::size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      r->add[std::size_t(a) * n + b] = (a + b) % n;
      r->mul[std::size_t(a) * n + b] = (a * b) % n;
    }
  r->label = "Z" + std::to_string(n);
  validate_ring(*r);
  if (small_is_prime(n)) r->prime = n;
  return r;
}

RingPtr ring_from_tables(int size, const std::vector<std::vector<int>>& add,
                         const std::vector<std::vector<int>>& mul,
                         const std::string& label) {
  if (size < 2) throw BadParams("ring needs at least two elements");
  auto check_shape = [&](const std::vector<std::vector<int>>& t,
                         const char* which) {
    if (static_cast<int>(t.size()) != size)
      throw BadParams(cat(which, " table has ", t.size(), " rows, expected ", size));
    for (const auto& row : t) {
      if (static_cast<int>(row.size()) != size)
        throw BadParams(cat(which, " table row width mismatch"));
      for (int v : row)
        if (v < 0 || v >= size)
          throw BadParams(cat(which, " table entry out of range"));
    }
  };
  check_shape(add, "addition");
  check_shape(mul, "multiplication");
  auto r = std::make_shared<FiniteCommRing>();
  r->size = size;
  r->add.resize(std::size_t(size) * size);
  r->mul.resize(std::size_t(size) * size);
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) {
      r->add[std::size_t(a) * size + b] = add[a][b];
      r->mul[std::size_t(a) * size + b] = mul[a][b];
    }
  r->label = label;
  validate_ring(*r);
  // a prime-size field with natural labeling may still not be Fp-indexed;
  // only mark prime when the tables are the canonical mod-p ones
  if (small_is_prime(size)) {
    bool canonical = true;
    for (int a = 0; a < size && canonical; ++a)
      for (int b = 0; b < size && canonical; ++b)
        canonical = add[a][b] == (a + b) % size && mul[a][b] == (a * b) % size;
    if (canonical) r->prime = size;
  }
  return r;
}

FiniteGroup ring_unit_group(const FiniteCommRing& r,
                            std::vector<int>* unit_elements) {
  std::vector<int> units = r.units();
  // Keep the ring identity at index 0 so validated-group normalization never
  // permutes the correspondence reported through unit_elements.
  for (std::size_t i = 0; i < units.size(); ++i)
    if (units[i] == r.one) {
      std::rotate(units.begin(), units.begin() + i, units.begin() + i + 1);
      break;
    }
  const int m = static_cast<int>(units.size());
  std::vector<int> pos(r.size, -1);
  for (int i = 0; i < m; ++i) pos[units[i]] = i;
  std::vector<std::vector<int>> rows(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int p = r.mulc(units[i], units[j]);
      if (pos[p] < 0) throw InternalError("units not closed under product");
      rows[i][j] = pos[p];
    }
  if (unit_elements) *unit_elements = units;
  return group_from_table(rows, r.label + "*");
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  return a && b && a->size == b->size && a->add == b->add && a->mul == b->mul;
}

}  // namespace groupalg
