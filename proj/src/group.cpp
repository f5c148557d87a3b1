#include "groupalg/group.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "groupalg/errors.hpp"
#include "groupalg/limits.hpp"
#include "groupalg/numeric.hpp"

namespace groupalg {

namespace {

std::string cat() { return {}; }

template <typename T, typename... Rest>
std::string cat(const T& head, const Rest&... rest) {
  std::ostringstream os;
  os << head;
  return os.str() + cat(rest...);
}

// Finds identity and inverses, normalizes identity to index 0.  Associativity
// is taken on trust; use only for products of validated groups, subgroup
// reindexing and similar structure-preserving constructions.
FiniteGroup make_trusted(int n, std::vector<int> table, std::string label) {
  FiniteGroup g;
  g.n = n;
  g.table = std::move(table);
  g.label = std::move(label);
  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      ok = g.table[std::size_t(c) * n + a] == a &&
           g.table[std::size_t(a) * n + c] == a;
    if (ok) e = c;
  }
  if (e < 0) throw InternalError("trusted table has no identity: " + g.label);
  if (e != 0) {
    // Relabel through the transposition (0 e).
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    p[0] = e;
    p[e] = 0;
    std::vector<int> t(std::size_t(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        t[std::size_t(p[a]) * n + p[b]] = p[g.table[std::size_t(a) * n + b]];
    g.table = std::move(t);
  }
  g.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (g.mul(a, b) == 0 && g.mul(b, a) == 0) {
        g.inverse[a] = b;
        break;
      }
    if (g.inverse[a] < 0)
      throw InternalError("trusted table lacks inverse for element " +
                          std::to_string(a) + " in " + g.label);
  }
  return g;
}

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

}  // namespace

int FiniteGroup::pow(int g, long long e) const {
  if (e < 0) return pow(inv(g), -e);
  int acc = 0;
  int base = g;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

int FiniteGroup::element_order(int g) const {
  int x = g, k = 1;
  while (x != 0) {
    x = mul(x, g);
    ++k;
    if (k > n) throw InternalError("element order exceeds group order");
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup trivial_group() {
  FiniteGroup g;
  g.n = 1;
  g.table = {0};
  g.inverse = {0};
  g.label = "1";
  return g;
}

FiniteGroup group_from_table(const std::vector<std::vector<int>>& rows,
                             const std::string& label) {
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw MalformedTable("empty table for " + label);
  if (n > limits().max_group_order)
    throw BoundExceeded(cat("order ", n, " exceeds max_group_order ",
                            limits().max_group_order));
  std::vector<int> t(std::size_t(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(rows[a].size()) != n)
      throw MalformedTable(cat("row ", a, " has ", rows[a].size(),
                               " entries, expected ", n));
    for (int b = 0; b < n; ++b) {
      int v = rows[a][b];
      if (v < 0 || v >= n)
        throw MalformedTable(cat("entry (", a, ",", b, ") = ", v,
                                 " outside 0..", n - 1));
      t[std::size_t(a) * n + b] = v;
    }
  }
  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      ok = t[std::size_t(c) * n + a] == a && t[std::size_t(a) * n + c] == a;
    if (ok) e = c;
  }
  if (e < 0) throw NoIdentity("no two-sided identity in " + label);
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (int b = 0; b < n && !found; ++b)
      found = t[std::size_t(a) * n + b] == e && t[std::size_t(b) * n + a] == e;
    if (!found)
      throw NoInverse(cat("element ", a, " has no two-sided inverse"));
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        int ab_c = t[std::size_t(t[std::size_t(a) * n + b]) * n + c];
        int a_bc = t[std::size_t(a) * n + t[std::size_t(b) * n + c]];
        if (ab_c != a_bc)
          throw NotAssociative(cat("triple (", a, ",", b, ",", c, "): (ab)c = ",
                                   ab_c, " but a(bc) = ", a_bc));
      }
  return make_trusted(n, std::move(t), label);
}

FiniteGroup group_from_table_unchecked(int n, std::vector<int> flat_table,
                                       std::string label) {
  if (n < 1 || static_cast<int>(flat_table.size()) != n * n)
    throw MalformedTable(cat("flat table size ", flat_table.size(),
                             " does not match order ", n));
  return make_trusted(n, std::move(flat_table), std::move(label));
}

namespace {

FiniteGroup cyclic_group(int m) {
  if (m < 1) throw BadParams(cat("cyclic order must be >= 1, got ", m));
  if (m > limits().max_group_order)
    throw OrderOverflow(cat("cyclic order ", m, " exceeds max_group_order ",
                            limits().max_group_order));
  std::vector<int> t(std::size_t(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[std::size_t(a) * m + b] = (a + b) % m;
  return make_trusted(m, std::move(t), "C" + std::to_string(m));
}

FiniteGroup dihedral_group(int m) {
  // Elements r^i s^j encoded as i + m*j; s r s = r^-1.
  if (m < 1) throw BadParams(cat("dihedral parameter must be >= 1, got ", m));
  long long ord = 2LL * m;
  if (ord > limits().max_group_order)
    throw OrderOverflow(cat("dihedral order ", ord, " exceeds max_group_order ",
                            limits().max_group_order));
  int n = 2 * m;
  auto idx = [m](int i, int j) { return ((i % m + m) % m) + m * j; };
  std::vector<int> t(std::size_t(n) * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < 2; ++l) {
          int ri = j == 0 ? i + k : i - k;
          t[std::size_t(idx(i, j)) * n + idx(k, l)] = idx(ri, j ^ l);
        }
  return make_trusted(n, std::move(t), "D" + std::to_string(m));
}

FiniteGroup quaternion_group() {
  // a^i b^j, i mod 4, j mod 2, with b^2 = a^2 and b a b^-1 = a^-1.
  const int n = 8;
  auto idx = [](int i, int j) { return ((i % 4 + 4) % 4) + 4 * j; };
  std::vector<int> t(std::size_t(n) * n);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 2; ++l) {
          int ri, rj;
          if (j == 0) {
            ri = i + k;
            rj = l;
          } else {
            ri = i - k + (l == 1 ? 2 : 0);
            rj = 1 ^ l;
          }
          t[std::size_t(idx(i, j)) * n + idx(k, l)] = idx(ri, rj);
        }
  return make_trusted(n, std::move(t), "Q8");
}

FiniteGroup heisenberg_group(int p) {
  if (!small_is_prime(p))
    throw NotPrime(cat("heisenberg needs a prime parameter, got ", p));
  long long ord = 1LL * p * p * p;
  if (ord > limits().max_group_order)
    throw OrderOverflow(cat("heisenberg order ", ord, " exceeds max_group_order ",
                            limits().max_group_order));
  // (a,b,c) ~ unitriangular [[1,a,c],[0,1,b],[0,0,1]]; product adds a,b and
  // c' picks up a*b''.
  int n = static_cast<int>(ord);
  auto idx = [p](int a, int b, int c) { return (a * p + b) * p + c; };
  std::vector<int> t(std::size_t(n) * n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int a2 = 0; a2 < p; ++a2)
          for (int b2 = 0; b2 < p; ++b2)
            for (int c2 = 0; c2 < p; ++c2)
              t[std::size_t(idx(a, b, c)) * n + idx(a2, b2, c2)] =
                  idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
  return make_trusted(n, std::move(t), "heis" + std::to_string(p));
}

FiniteGroup modular_p3_group(int p) {
  if (!small_is_prime(p))
    throw NotPrime(cat("modular_p3 needs a prime parameter, got ", p));
  long long ord = 1LL * p * p * p;
  if (ord > limits().max_group_order)
    throw OrderOverflow(cat("modular_p3 order ", ord, " exceeds max_group_order ",
                            limits().max_group_order));
  // a^i b^j with a of order p^2, b of order p, b a b^-1 = a^(1+p).
  int p2 = p * p;
  int n = static_cast<int>(ord);
  auto idx = [p2](int i, int j) { return i + p2 * j; };
  // (1+p)^j mod p^2
  std::vector<int> tw(p);
  tw[0] = 1;
  for (int j = 1; j < p; ++j) tw[j] = (tw[j - 1] * (1 + p)) % p2;
  std::vector<int> t(std::size_t(n) * n);
  for (int i = 0; i < p2; ++i)
    for (int j = 0; j < p; ++j)
      for (int k = 0; k < p2; ++k)
        for (int l = 0; l < p; ++l)
          t[std::size_t(idx(i, j)) * n + idx(k, l)] =
              idx((i + k * tw[j]) % p2, (j + l) % p);
  return make_trusted(n, std::move(t), "M" + std::to_string(n));
}

}  // namespace

FiniteGroup catalog_group(const std::string& name,
                          const std::vector<int>& params) {
  auto want = [&](std::size_t k) {
    if (params.size() != k)
      throw BadParams(cat(name, " expects ", k, " parameter(s), got ",
                          params.size()));
  };
  if (name == "cyclic") {
    want(1);
    return cyclic_group(params[0]);
  }
  if (name == "abelian") {
    if (params.empty()) throw BadParams("abelian expects at least one factor");
    FiniteGroup g = cyclic_group(params[0]);
    for (std::size_t i = 1; i < params.size(); ++i)
      g = direct_product(g, cyclic_group(params[i]));
    return g;
  }
  if (name == "dihedral") {
    want(1);
    return dihedral_group(params[0]);
  }
  if (name == "quaternion8") {
    want(0);
    return quaternion_group();
  }
  if (name == "heisenberg") {
    want(1);
    return heisenberg_group(params[0]);
  }
  if (name == "modular_p3") {
    want(1);
    return modular_p3_group(params[0]);
  }
  throw UnknownName("no catalog group named '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> catalog_listing() {
  return {
      {"cyclic", "cyclic:m - cyclic group of order m"},
      {"abelian", "abelian:m1,m2,... - direct product of cyclic groups"},
      {"dihedral", "dihedral:m - dihedral group of order 2m"},
      {"quaternion8", "quaternion8 - quaternion group of order 8"},
      {"heisenberg", "heisenberg:p - unitriangular 3x3 over the p-element field, order p^3"},
      {"modular_p3", "modular_p3:p - order p^3 with a presentation of exponent p^2"},
  };
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  long long ord = 1LL * g.n * h.n;
  if (ord > limits().max_group_order)
    throw OrderOverflow(cat("product order ", ord, " exceeds max_group_order ",
                            limits().max_group_order));
  int n = static_cast<int>(ord);
  std::vector<int> t(std::size_t(n) * n);
  auto idx = [&](int a, int b) { return a * h.n + b; };
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < h.n; ++b)
      for (int c = 0; c < g.n; ++c)
        for (int d = 0; d < h.n; ++d)
          t[std::size_t(idx(a, b)) * n + idx(c, d)] =
              idx(g.mul(a, c), h.mul(b, d));
  return make_trusted(n, std::move(t), g.label + "x" + h.label);
}

FiniteGroup relabeled(const FiniteGroup& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n)
    throw BadParams("permutation size mismatch");
  std::vector<char> seen(g.n, 0);
  for (int v : perm) {
    if (v < 0 || v >= g.n || seen[v]) throw BadParams("not a permutation");
    seen[v] = 1;
  }
  std::vector<int> t(std::size_t(g.n) * g.n);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      t[std::size_t(perm[a]) * g.n + perm[b]] = perm[g.mul(a, b)];
  return make_trusted(g.n, std::move(t), g.label + "'");
}

FiniteGroup shuffled(const FiniteGroup& g, unsigned seed) {
  std::vector<int> p = identity_perm(g.n);
  std::mt19937 rng(seed);
  std::shuffle(p.begin(), p.end(), rng);
  return relabeled(g, p);
}

Bitset subgroup_closure(const FiniteGroup& g, Bitset seed) {
  seed.resize(g.n);
  seed.set(0);
  std::vector<int> members;
  for (int i = 0; i < g.n; ++i)
    if (seed.test(i)) members.push_back(i);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j < members.size(); ++j) {
      int p = g.mul(members[i], members[j]);
      if (!seed.test(p)) {
        seed.set(p);
        members.push_back(p);
      }
    }
  return seed;
}

bool is_subgroup(const FiniteGroup& g, const Bitset& members) {
  if (members.size() != static_cast<std::size_t>(g.n) || !members.test(0))
    return false;
  for (int a = members.find_first(); a != -1;
       a = static_cast<int>(members.find_next(a)))
    for (int b = members.find_first(); b != -1;
         b = static_cast<int>(members.find_next(b)))
      if (!members.test(g.mul(a, b))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const Bitset& members) {
  for (int s = members.find_first(); s != -1;
       s = static_cast<int>(members.find_next(s)))
    for (int x = 0; x < g.n; ++x)
      if (!members.test(g.conj(s, x))) return false;
  return true;
}

std::vector<SubgroupHandle> subgroups(const FiniteGroup& g) {
  if (g.n > limits().subgroup_enum_bound)
    throw BoundExceeded(cat("subgroup enumeration for order ", g.n,
                            " exceeds bound ", limits().subgroup_enum_bound));
  std::set<Bitset> all;
  Bitset triv(g.n);
  triv.set(0);
  all.insert(triv);
  std::vector<Bitset> cyclics;
  {
    std::set<Bitset> seen;
    for (int x = 0; x < g.n; ++x) {
      Bitset s(g.n);
      s.set(x);
      Bitset c = subgroup_closure(g, s);
      if (seen.insert(c).second) cyclics.push_back(c);
    }
  }
  for (const Bitset& c : cyclics) all.insert(c);
  // Iterated joins with cyclic subgroups reach every subgroup.
  std::vector<Bitset> frontier(all.begin(), all.end());
  while (!frontier.empty()) {
    std::vector<Bitset> next;
    for (const Bitset& s : frontier)
      for (const Bitset& c : cyclics) {
        if ((c & s) == c) continue;  // c already inside s
        Bitset j = subgroup_closure(g, s | c);
        if (all.insert(j).second) next.push_back(j);
      }
    frontier = std::move(next);
  }
  std::vector<SubgroupHandle> out;
  out.reserve(all.size());
  for (const Bitset& s : all) {
    if (g.n % static_cast<int>(s.count()) != 0)
      throw InternalError("subgroup size violates Lagrange divisibility");
    out.push_back(SubgroupHandle{&g, s});
  }
  std::sort(out.begin(), out.end(),
            [](const SubgroupHandle& a, const SubgroupHandle& b) {
              if (a.members.count() != b.members.count())
                return a.members.count() < b.members.count();
              return a.members < b.members;
            });
  return out;
}

std::vector<SubgroupHandle> maximal_subgroups(const FiniteGroup& g) {
  std::vector<SubgroupHandle> subs = subgroups(g);
  std::vector<SubgroupHandle> proper;
  for (auto& s : subs)
    if (s.size() < g.n) proper.push_back(s);
  std::vector<SubgroupHandle> out;
  for (const auto& s : proper) {
    bool maximal = true;
    for (const auto& t : proper) {
      if (t.members == s.members) continue;
      if ((s.members & t.members) == s.members) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(s);
  }
  return out;
}

FiniteGroup subgroup_as_group(const SubgroupHandle& h) {
  const FiniteGroup& g = *h.parent;
  std::vector<int> members;
  for (int i = h.members.find_first(); i != -1;
       i = static_cast<int>(h.members.find_next(i)))
    members.push_back(i);
  const int m = static_cast<int>(members.size());
  std::vector<int> pos(g.n, -1);
  for (int i = 0; i < m; ++i) pos[members[i]] = i;
  std::vector<int> t(std::size_t(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int p = g.mul(members[a], members[b]);
      if (pos[p] < 0) throw InternalError("subgroup bitset not closed");
      t[std::size_t(a) * m + b] = pos[p];
    }
  return make_trusted(m, std::move(t),
                      cat("sub", m, "(", g.label, ")"));
}

FiniteGroup quotient_group(const FiniteGroup& g, const Bitset& normal_sub) {
  if (!is_subgroup(g, normal_sub) || !is_normal(g, normal_sub))
    throw PreconditionViolated("quotient requires a normal subgroup");
  std::vector<int> coset_of(g.n, -1);
  std::vector<int> reps;
  for (int x = 0; x < g.n; ++x) {
    if (coset_of[x] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);  // smallest element of the coset, by scan order
    for (int s = normal_sub.find_first(); s != -1;
         s = static_cast<int>(normal_sub.find_next(s)))
      coset_of[g.mul(s, x)] = id;
  }
  const int m = static_cast<int>(reps.size());
  std::vector<int> t(std::size_t(m) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      t[std::size_t(a) * m + b] = coset_of[g.mul(reps[a], reps[b])];
  return make_trusted(m, std::move(t), cat(g.label, "/N", normal_sub.count()));
}

Bitset center_of(const FiniteGroup& g) {
  Bitset z(g.n);
  for (int x = 0; x < g.n; ++x) {
    bool central = true;
    for (int y = 0; y < g.n && central; ++y)
      central = g.mul(x, y) == g.mul(y, x);
    if (central) z.set(x);
  }
  return z;
}

Bitset derived_subgroup(const FiniteGroup& g) {
  Bitset seed(g.n);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) seed.set(g.commutator(a, b));
  return subgroup_closure(g, seed);
}

namespace {

// [S, G]: closure of commutators with one side in S.
Bitset commutator_with_group(const FiniteGroup& g, const Bitset& s) {
  Bitset seed(g.n);
  for (int a = s.find_first(); a != -1; a = static_cast<int>(s.find_next(a)))
    for (int b = 0; b < g.n; ++b) seed.set(g.commutator(a, b));
  return subgroup_closure(g, seed);
}

}  // namespace

std::vector<int> primary_invariants_from_stats(const std::map<int, int>& stats,
                                               int order) {
  // For each prime p | order, N_k = #elements of order dividing p^k determines
  // the multiset of cyclic p-power factors.
  std::vector<int> parts;
  int rest = order;
  for (int p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    // counts N_k until the whole p-part is covered
    std::vector<long long> nk;  // nk[k] = #elements with order | p^k
    nk.push_back(1);
    long long ppart_total = 1;
    for (const auto& [o, c] : stats) {
      int q = o;
      while (q % p == 0) q /= p;
      if (q == 1) ppart_total += (o == 1 ? 0 : c);
    }
    long long pk = 1;
    while (nk.back() < ppart_total) {
      pk *= p;
      long long count = 0;
      for (const auto& [o, c] : stats)
        if (pk % o == 0) count += c;
      nk.push_back(count);
    }
    // e_k = log_p nk[k]; c_k = e_k - e_(k-1) = #factors of order >= p^k
    std::vector<int> e;
    for (long long v : nk) {
      int exp = 0;
      long long w = v;
      while (w > 1) {
        if (w % p != 0)
          throw InternalError("order-divisibility count is not a p-power");
        w /= p;
        ++exp;
      }
      e.push_back(exp);
    }
    std::vector<int> cks;
    for (std::size_t k = 1; k < e.size(); ++k) cks.push_back(e[k] - e[k - 1]);
    for (std::size_t k = 0; k < cks.size(); ++k) {
      int next = k + 1 < cks.size() ? cks[k + 1] : 0;
      int mult = cks[k] - next;
      if (mult < 0) throw InternalError("inconsistent order statistics");
      long long val = 1;
      for (std::size_t i = 0; i <= k; ++i) val *= p;
      for (int i = 0; i < mult; ++i) parts.push_back(static_cast<int>(val));
    }
  }
  return canonical_primary_list(std::move(parts));
}

std::vector<int> canonical_primary_list(std::vector<int> parts) {
  auto prime_of = [](int v) {
    for (int p = 2; p * p <= v; ++p)
      if (v % p == 0) return p;
    return v;
  };
  std::sort(parts.begin(), parts.end(), [&](int a, int b) {
    int pa = prime_of(a), pb = prime_of(b);
    if (pa != pb) return pa < pb;
    return a > b;
  });
  return parts;
}

GroupInvariants structure_invariants(const FiniteGroup& g) {
  GroupInvariants inv;
  inv.order = g.n;
  for (int x = 0; x < g.n; ++x) inv.order_statistics[g.element_order(x)]++;
  long long e = 1;
  for (const auto& [o, c] : inv.order_statistics) {
    (void)c;
    e = std::lcm(e, static_cast<long long>(o));
  }
  inv.exponent = static_cast<int>(e);
  inv.center_order = static_cast<int>(center_of(g).count());
  Bitset derived = derived_subgroup(g);
  inv.derived_order = static_cast<int>(derived.count());
  // Lower central series for the nilpotency class.
  {
    Bitset cur(g.n);
    for (int i = 0; i < g.n; ++i) cur.set(i);
    int cls = 0;
    bool nilpotent = false;
    while (true) {
      if (cur.count() == 1) {
        nilpotent = true;
        break;
      }
      Bitset next = commutator_with_group(g, cur);
      ++cls;
      if (next == cur) break;  // stabilized above the trivial subgroup
      cur = next;
    }
    if (nilpotent) inv.nilpotency_class = cls;
  }
  if (inv.derived_order == 1)
    inv.abelian_invariants =
        primary_invariants_from_stats(inv.order_statistics, g.n);
  return inv;
}

std::string invariant_key(const GroupInvariants& inv) {
  std::ostringstream os;
  os << "o" << inv.order << ";e" << inv.exponent << ";z" << inv.center_order
     << ";d" << inv.derived_order << ";c";
  if (inv.nilpotency_class)
    os << *inv.nilpotency_class;
  else
    os << "-";
  os << ";s[";
  bool first = true;
  for (const auto& [o, c] : inv.order_statistics) {
    if (!first) os << ",";
    first = false;
    os << o << ":" << c;
  }
  os << "]";
  if (inv.abelian_invariants) {
    os << ";ab[";
    first = true;
    for (int v : *inv.abelian_invariants) {
      if (!first) os << ",";
      first = false;
      os << v;
    }
    os << "]";
  }
  return os.str();
}

std::string invariant_key(const FiniteGroup& g) {
  return invariant_key(structure_invariants(g));
}

std::vector<int> abelian_invariants_of(const FiniteGroup& g) {
  std::map<int, int> stats;
  for (int x = 0; x < g.n; ++x) stats[g.element_order(x)]++;
  if (derived_subgroup(g).count() != 1)
    throw PreconditionViolated("abelian invariants of a nonabelian group");
  return primary_invariants_from_stats(stats, g.n);
}

std::vector<int> abelianization_invariants(const FiniteGroup& g) {
  Bitset d = derived_subgroup(g);
  if (d.count() == 1) return abelian_invariants_of(g);
  return abelian_invariants_of(quotient_group(g, d));
}

namespace {

// Basis of an abelian p-group given as (element list inside parent table):
// pick a maximal-order element, recurse on the quotient, lift each quotient
// basis element to one of the same order.
std::vector<std::pair<int, int>> abelian_p_basis(const FiniteGroup& a) {
  std::vector<std::pair<int, int>> basis;
  if (a.n == 1) return basis;
  int g1 = 0, best = 1;
  for (int x = 0; x < a.n; ++x) {
    int o = a.element_order(x);
    if (o > best) {
      best = o;
      g1 = x;
    }
  }
  Bitset cyc(a.n);
  cyc.set(g1);
  cyc = subgroup_closure(a, cyc);
  // cosets of <g1>: representative = first element found, plus membership map
  std::vector<int> coset_of(a.n, -1);
  std::vector<int> reps;
  for (int x = 0; x < a.n; ++x) {
    if (coset_of[x] >= 0) continue;
    int id = static_cast<int>(reps.size());
    reps.push_back(x);
    for (int s = cyc.find_first(); s != -1;
         s = static_cast<int>(cyc.find_next(s)))
      coset_of[a.mul(s, x)] = id;
  }
  const int m = static_cast<int>(reps.size());
  std::vector<int> qt(std::size_t(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      qt[std::size_t(i) * m + j] = coset_of[a.mul(reps[i], reps[j])];
  FiniteGroup q;
  {
    // reuse the validated-path normalizer: identity coset contains 0 => rep 0
    q.n = m;
    q.table = std::move(qt);
    q.inverse.assign(m, -1);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (q.table[std::size_t(i) * m + j] == coset_of[0] &&
            q.table[std::size_t(j) * m + i] == coset_of[0]) {
          q.inverse[i] = j;
          break;
        }
    if (coset_of[0] != 0)
      throw InternalError("identity coset not indexed 0");
  }
  std::vector<std::pair<int, int>> qbasis = abelian_p_basis(q);
  basis.emplace_back(g1, best);
  // discrete logs in <g1> for the lifting correction
  std::vector<int> dlog(a.n, -1);
  {
    int acc = 0;
    for (int k = 0; k < best; ++k) {
      dlog[acc] = k;
      acc = a.mul(acc, g1);
    }
  }
  for (auto [qb, qord] : qbasis) {
    int h = reps[qb];
    int hp = a.pow(h, qord);  // lands in <g1>
    if (dlog[hp] < 0) throw InternalError("lift power escaped the pivot cycle");
    int tpow = dlog[hp];
    if (tpow % qord != 0)
      throw InternalError("maximal-order pivot lifting failed");
    int corrected = a.mul(h, a.pow(g1, -(tpow / qord)));
    if (a.element_order(corrected) != qord)
      throw InternalError("lifted basis element has wrong order");
    basis.emplace_back(corrected, qord);
  }
  return basis;
}

}  // namespace

std::vector<std::pair<int, int>> abelian_basis(const FiniteGroup& g) {
  if (!g.is_abelian())
    throw PreconditionViolated("abelian basis of a nonabelian group");
  // split into primary components, solve each p-part separately
  std::vector<std::pair<int, int>> basis;
  std::vector<int> primes;
  {
    int rest = g.n;
    for (int p = 2; p <= rest; ++p)
      if (rest % p == 0) {
        primes.push_back(p);
        while (rest % p == 0) rest /= p;
      }
  }
  for (int p : primes) {
    Bitset part(g.n);
    for (int x = 0; x < g.n; ++x) {
      int o = g.element_order(x);
      while (o % p == 0) o /= p;
      if (o == 1) part.set(x);
    }
    SubgroupHandle h{&g, part};
    FiniteGroup sub = subgroup_as_group(h);
    std::vector<int> members;
    for (int i = part.find_first(); i != -1;
         i = static_cast<int>(part.find_next(i)))
      members.push_back(i);
    for (auto [el, ord] : abelian_p_basis(sub))
      basis.emplace_back(members[el], ord);
  }
  // order basis to match canonical invariants: prime asc, order desc
  auto prime_of = [](int v) {
    for (int p = 2; p * p <= v; ++p)
      if (v % p == 0) return p;
    return v;
  };
  std::stable_sort(basis.begin(), basis.end(), [&](auto x, auto y) {
    int px = prime_of(x.second), py = prime_of(y.second);
    if (px != py) return px < py;
    return x.second > y.second;
  });
  // consistency with the counting route
  long long prod = 1;
  for (auto& [el, o] : basis) {
    (void)el;
    prod *= o;
  }
  if (prod != g.n) throw InternalError("abelian basis does not span");
  return basis;
}

std::vector<int> minimal_generating_sequence(const FiniteGroup& g) {
  if (g.n == 1) return {};
  int p = 2;
  while (g.n % p != 0) ++p;
  int rest = g.n;
  while (rest % p == 0) rest /= p;
  if (rest == 1) {
    // p-group: elements independent modulo <commutators, p-th powers> form a
    // generating set of minimum size, so grow the closure over that subgroup
    // and keep only the adjoined elements.
    Bitset seed(g.n);
    for (int a = 0; a < g.n; ++a) {
      seed.set(g.pow(a, p));
      for (int b = a + 1; b < g.n; ++b) seed.set(g.commutator(a, b));
    }
    Bitset frattini = subgroup_closure(g, seed);
    std::vector<int> gens;
    Bitset k = frattini;
    while (static_cast<int>(k.count()) < g.n) {
      int x = 0;
      while (k.test(x)) ++x;
      gens.push_back(x);
      k.set(x);
      k = subgroup_closure(g, k);
    }
    Bitset span(g.n);
    span.set(0);
    for (int x : gens) span.set(x);
    if (static_cast<int>(subgroup_closure(g, span).count()) != g.n)
      throw InternalError("generators modulo Frattini failed to span");
    return gens;
  }
  // Mixed order: greedy by maximal closure growth, smallest index on ties.
  std::vector<int> gens;
  Bitset closure(g.n);
  closure.set(0);
  while (static_cast<int>(closure.count()) < g.n) {
    int best = -1;
    std::size_t best_size = 0;
    Bitset best_closure;
    for (int x = 0; x < g.n; ++x) {
      if (closure.test(x)) continue;
      Bitset trial = closure;
      trial.set(x);
      trial = subgroup_closure(g, trial);
      if (trial.count() > best_size) {
        best = x;
        best_size = trial.count();
        best_closure = std::move(trial);
        if (static_cast<int>(best_size) == g.n) break;
      }
    }
    gens.push_back(best);
    closure = std::move(best_closure);
  }
  return gens;
}

namespace {

// Shared incremental-closure search for homomorphisms/isomorphisms.  phi is
// defined on the subgroup generated by the placed generators; the invariant
// "phi(x * g_j) = phi(x) * phi(g_j) for every known x and placed g_j" is
// maintained, which certifies the homomorphism property once every generator
// is placed and the domain is all of G.
struct MapSearch {
  const FiniteGroup& g;
  const FiniteGroup& h;
  const std::vector<int>& gens;
  bool injective;
  std::vector<int> phi;
  std::vector<char> used;   // target hit-set (injective mode)
  std::vector<int> domain;  // elements with phi defined, in discovery order
  std::vector<int> level_domain_size;
  std::int64_t nodes = 0;
  std::int64_t budget;

  MapSearch(const FiniteGroup& g_, const FiniteGroup& h_,
            const std::vector<int>& gens_, bool injective_)
      : g(g_), h(h_), gens(gens_), injective(injective_),
        phi(g_.n, -1), used(h_.n, 0), budget(limits().search_budget) {
    phi[0] = 0;
    used[0] = 1;
    domain.push_back(0);
  }

  bool assign(int x, int y, std::vector<int>& trail) {
    if (phi[x] >= 0) return phi[x] == y;
    if (injective && used[y]) return false;
    phi[x] = y;
    if (injective) used[y] = 1;
    trail.push_back(x);
    domain.push_back(x);
    return true;
  }

  // Close the map after placing generator #level; returns false on conflict.
  bool close(int level, std::vector<int>& trail) {
    std::size_t old_size = level_domain_size.back();
    // old elements only need the new generator; new elements need all of them
    std::size_t scan = 0;
    while (scan < domain.size()) {
      int x = domain[scan];
      int jfrom = scan < old_size ? level : 0;
      for (int j = jfrom; j <= level; ++j) {
        int p = g.mul(x, gens[j]);
        int q = h.mul(phi[x], phi[gens[j]]);
        if (phi[p] >= 0) {
          if (phi[p] != q) return false;
        } else {
          if (injective && used[q]) return false;
          phi[p] = q;
          if (injective) used[q] = 1;
          trail.push_back(p);
          domain.push_back(p);
        }
      }
      ++scan;
    }
    return true;
  }

  void rollback(const std::vector<int>& trail, std::size_t domain_size) {
    for (int x : trail) {
      if (injective) used[phi[x]] = 0;
      phi[x] = -1;
    }
    domain.resize(domain_size);
  }

  template <typename OnComplete>
  void run(std::size_t level, const OnComplete& on_complete) {
    if (level == gens.size()) {
      on_complete(phi);
      return;
    }
    int gen = gens[level];
    int gord = g.element_order(gen);
    for (int t = 0; t < h.n; ++t) {
      int tord = h.element_order(t);
      bool ok = injective ? tord == gord : gord % tord == 0;
      if (!ok) continue;
      if (++nodes > budget)
        throw SearchBudgetExceeded(
            "map search exceeded node budget " + std::to_string(budget));
      std::vector<int> trail;
      std::size_t dsz = domain.size();
      level_domain_size.push_back(dsz);
      if (assign(gen, t, trail) && close(static_cast<int>(level), trail))
        run(level + 1, on_complete);
      rollback(trail, dsz);
      level_domain_size.pop_back();
    }
  }
};

}  // namespace

bool map_is_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                        const std::vector<int>& map) {
  if (g.n != h.n || static_cast<int>(map.size()) != g.n) return false;
  std::vector<char> hit(h.n, 0);
  for (int v : map) {
    if (v < 0 || v >= h.n || hit[v]) return false;
    hit[v] = 1;
  }
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (map[g.mul(a, b)] != h.mul(map[a], map[b])) return false;
  return true;
}

std::optional<std::vector<int>> is_isomorphic(const FiniteGroup& g,
                                              const FiniteGroup& h) {
  if (g.n != h.n) return std::nullopt;
  if (g.n == 1) return std::vector<int>{0};
  GroupInvariants ig = structure_invariants(g);
  GroupInvariants ih = structure_invariants(h);
  if (invariant_key(ig) != invariant_key(ih)) return std::nullopt;
  if (ig.abelian_invariants) {
    // matched bases give the isomorphism directly
    auto bg = abelian_basis(g);
    auto bh = abelian_basis(h);
    std::vector<int> map(g.n, -1);
    // enumerate exponent tuples over the shared order profile
    std::vector<int> exps(bg.size(), 0);
    while (true) {
      int eg = 0, eh = 0;
      for (std::size_t i = 0; i < bg.size(); ++i) {
        eg = g.mul(eg, g.pow(bg[i].first, exps[i]));
        eh = h.mul(eh, h.pow(bh[i].first, exps[i]));
      }
      if (map[eg] >= 0 && map[eg] != eh)
        throw InternalError("abelian basis enumeration inconsistent");
      map[eg] = eh;
      std::size_t k = 0;
      for (; k < exps.size(); ++k) {
        if (++exps[k] < bg[k].second) break;
        exps[k] = 0;
      }
      if (k == exps.size()) break;
    }
    for (int v : map)
      if (v < 0) throw InternalError("abelian basis does not enumerate G");
    if (!map_is_isomorphism(g, h, map))
      throw InternalError("abelian basis map failed verification");
    return map;
  }
  std::vector<int> gens = minimal_generating_sequence(g);
  MapSearch search(g, h, gens, /*injective=*/true);
  std::optional<std::vector<int>> result;
  struct Done {};
  try {
    search.run(0, [&](const std::vector<int>& phi) {
      if (static_cast<int>(search.domain.size()) != g.n)
        throw InternalError("generator closure did not cover G");
      result = phi;
      throw Done{};
    });
  } catch (const Done&) {
  }
  if (result && !map_is_isomorphism(g, h, *result))
    throw InternalError("isomorphism search produced an invalid map");
  return result;
}

namespace {

std::vector<FiniteGroup> indecomposable_factors_impl(const FiniteGroup& g) {
  if (g.n == 1) return {};
  if (g.is_abelian()) {
    std::vector<FiniteGroup> out;
    for (int d : abelian_invariants_of(g))
      out.push_back(catalog_group("cyclic", {d}));
    return out;
  }
  std::vector<SubgroupHandle> subs = subgroups(g);
  std::vector<Bitset> normals;
  for (const auto& s : subs)
    if (is_normal(g, s.members)) normals.push_back(s.members);
  for (const Bitset& n1 : normals) {
    std::size_t c1 = n1.count();
    if (c1 == 1 || c1 == static_cast<std::size_t>(g.n)) continue;
    for (const Bitset& n2 : normals) {
      std::size_t c2 = n2.count();
      if (c2 == 1 || c2 == static_cast<std::size_t>(g.n)) continue;
      if (c1 * c2 != static_cast<std::size_t>(g.n)) continue;
      if ((n1 & n2).count() != 1) continue;
      bool commute = true;
      for (int a = n1.find_first(); a != -1 && commute;
           a = static_cast<int>(n1.find_next(a)))
        for (int b = n2.find_first(); b != -1 && commute;
             b = static_cast<int>(n2.find_next(b)))
          commute = g.mul(a, b) == g.mul(b, a);
      if (!commute) continue;
      FiniteGroup f1 = subgroup_as_group(SubgroupHandle{&g, n1});
      FiniteGroup f2 = subgroup_as_group(SubgroupHandle{&g, n2});
      std::vector<FiniteGroup> out = indecomposable_factors_impl(f1);
      std::vector<FiniteGroup> right = indecomposable_factors_impl(f2);
      out.insert(out.end(), std::make_move_iterator(right.begin()),
                 std::make_move_iterator(right.end()));
      return out;
    }
  }
  return {g};
}

}  // namespace

std::vector<FiniteGroup> indecomposable_factors(const FiniteGroup& g) {
  std::vector<FiniteGroup> factors = indecomposable_factors_impl(g);
  if (g.n == 1) return factors;
  // reassembly check: the product of the factors is isomorphic to g
  FiniteGroup prod = trivial_group();
  for (const FiniteGroup& f : factors) prod = direct_product(prod, f);
  if (!is_isomorphic(prod, g))
    throw InternalError("indecomposable factorization failed reassembly");
  return factors;
}

}  // namespace groupalg
