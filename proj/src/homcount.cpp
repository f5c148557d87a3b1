#include "groupalg/homcount.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "groupalg/errors.hpp"
#include "groupalg/limits.hpp"

namespace groupalg {

namespace {

BigInt gcd_pair_product(const std::vector<int>& a, const std::vector<int>& b) {
  BigInt r = 1;
  for (int x : a)
    for (int y : b) r *= std::gcd(x, y);
  return r;
}

// Generator-image backtracking.  A partial map is kept on the subgroup
// generated by the images chosen so far and closed under multiplication after
// every extension; each ordered pair inside the closure is checked once, so a
// surviving assignment is a verified homomorphism on the whole closure.
struct HomSearch {
  const FiniteGroup& g;
  const FiniteGroup& t;
  std::vector<int> gens;
  std::vector<int> gen_order;
  std::vector<int> t_order;
  std::vector<int> img;      // g index -> t index, -1 while undefined
  std::vector<int> defined;  // discovery order; doubles as the undo trail
  std::int64_t nodes = 0;
  bool surjective_only = false;
  BigInt total = 0;

  HomSearch(const FiniteGroup& g_, const FiniteGroup& t_) : g(g_), t(t_) {
    gens = minimal_generating_sequence(g);
    gen_order.reserve(gens.size());
    for (int x : gens) gen_order.push_back(g.element_order(x));
    t_order.resize(static_cast<std::size_t>(t.n));
    for (int y = 0; y < t.n; ++y)
      t_order[static_cast<std::size_t>(y)] = t.element_order(y);
    img.assign(static_cast<std::size_t>(g.n), -1);
    img[0] = 0;
    defined.push_back(0);
  }

  void bump() {
    if (++nodes > limits().search_budget)
      throw SearchBudgetExceeded(
          "hom search " + g.label + " -> " + t.label +
          " exceeded GROUPALG_SEARCH_BUDGET = " +
          std::to_string(limits().search_budget));
  }

  // Defines img[gen] = cand and closes under products.  New elements join
  // `defined`; every ordered pair with at least one element from this stage
  // is checked for compatibility.  False on contradiction (caller rewinds).
  bool extend(int gen, int cand) {
    if (img[static_cast<std::size_t>(gen)] != -1)
      throw InternalError("generator already inside the previous closure");
    img[static_cast<std::size_t>(gen)] = cand;
    defined.push_back(gen);
    std::size_t work = defined.size() - 1;
    while (work < defined.size()) {
      const int x = defined[work++];
      const int fx = img[static_cast<std::size_t>(x)];
      for (std::size_t i = 0; i < defined.size(); ++i) {
        bump();
        const int d = defined[i];
        const int fd = img[static_cast<std::size_t>(d)];
        int c = g.mul(x, d);
        int fc = t.mul(fx, fd);
        if (img[static_cast<std::size_t>(c)] == -1) {
          img[static_cast<std::size_t>(c)] = fc;
          defined.push_back(c);
        } else if (img[static_cast<std::size_t>(c)] != fc) {
          return false;
        }
        c = g.mul(d, x);
        fc = t.mul(fd, fx);
        if (img[static_cast<std::size_t>(c)] == -1) {
          img[static_cast<std::size_t>(c)] = fc;
          defined.push_back(c);
        } else if (img[static_cast<std::size_t>(c)] != fc) {
          return false;
        }
      }
    }
    return true;
  }

  void search(std::size_t k) {
    if (k == gens.size()) {
      if (static_cast<int>(defined.size()) != g.n)
        throw InternalError("generating closure smaller than the source group");
      if (surjective_only) {
        Bitset seen(static_cast<std::size_t>(t.n));
        for (int v : img) seen.set(static_cast<std::size_t>(v));
        if (static_cast<int>(seen.count()) != t.n) return;
      }
      total += 1;
      return;
    }
    const int want = gen_order[k];
    for (int cand = 0; cand < t.n; ++cand) {
      bump();
      // The image order divides the generator order.
      if (want % t_order[static_cast<std::size_t>(cand)] != 0) continue;
      const std::size_t mark = defined.size();
      if (extend(gens[k], cand)) search(k + 1);
      for (std::size_t i = mark; i < defined.size(); ++i)
        img[static_cast<std::size_t>(defined[i])] = -1;
      defined.resize(mark);
    }
  }

  BigInt run() {
    search(0);
    return total;
  }
};

}  // namespace

BigInt HomTarget::order() const {
  if (table) return table->n;
  BigInt r = 1;
  for (int v : *invariants) r *= v;
  return r;
}

HomTarget hom_target(const FiniteGroup& g) {
  HomTarget t;
  t.table = g;
  t.label = g.label;
  return t;
}

HomTarget hom_target(const UnitGroupInfo& u) {
  HomTarget t;
  t.label = u.label;
  if (u.table) {
    t.table = *u.table;
    return t;
  }
  if (u.invariants) {
    t.invariants = *u.invariants;
    return t;
  }
  throw PreconditionViolated(
      "unit group " + u.label +
      " has neither a table nor abelian invariants; hom counts need one");
}

BigInt count_homs_backtracking(const FiniteGroup& g, const FiniteGroup& t) {
  return HomSearch(g, t).run();
}

BigInt count_homs(const FiniteGroup& g, const FiniteGroup& t) {
  if (g.is_abelian() && t.is_abelian())
    return gcd_pair_product(abelian_invariants_of(g), abelian_invariants_of(t));
  return count_homs_backtracking(g, t);
}

BigInt count_homs(const FiniteGroup& g, const HomTarget& t) {
  if (t.table) return count_homs(g, *t.table);
  // Abelian target: every hom factors through the abelianization of g.
  return gcd_pair_product(abelianization_invariants(g), *t.invariants);
}

BigInt count_epis_bruteforce(const FiniteGroup& g, const FiniteGroup& h) {
  if (h.n > g.n) return 0;
  HomSearch s(g, h);
  s.surjective_only = true;
  return s.run();
}

BigInt count_epis_inclusion_exclusion(const FiniteGroup& g,
                                      const FiniteGroup& h) {
  const auto maxs = maximal_subgroups(h);
  const int m = static_cast<int>(maxs.size());
  if (m > limits().max_maximal_subgroups)
    throw BoundExceeded(
        h.label + " has " + std::to_string(m) +
        " maximal subgroups; inclusion-exclusion cap "
        "GROUPALG_MAX_MAXIMAL_SUBGROUPS = " +
        std::to_string(limits().max_maximal_subgroups));

  std::map<Bitset, BigInt> hom_memo;
  const auto hom_of = [&](const Bitset& members) -> const BigInt& {
    auto it = hom_memo.find(members);
    if (it == hom_memo.end()) {
      SubgroupHandle handle{&h, members};
      it = hom_memo.emplace(members, count_homs(g, subgroup_as_group(handle)))
               .first;
    }
    return it->second;
  };

  BigInt total = 0;
  Bitset whole(static_cast<std::size_t>(h.n));
  whole.set();
  // DFS over subsets of the maximal list; the running intersection is shared
  // along the prefix, and equal intersections reuse one hom count while still
  // contributing once per subset with their own sign.
  const std::function<void(int, const Bitset&, bool)> rec =
      [&](int idx, const Bitset& cur, bool odd) {
        if (idx == m) {
          if (odd)
            total -= hom_of(cur);
          else
            total += hom_of(cur);
          return;
        }
        rec(idx + 1, cur, odd);
        rec(idx + 1, cur & maxs[static_cast<std::size_t>(idx)].members, !odd);
      };
  rec(0, whole, false);
  if (total < 0)
    throw InternalError("negative epimorphism count for " + g.label + " -> " +
                        h.label);
  return total;
}

std::vector<FiniteGroup> subgroup_class_representatives(const FiniteGroup& g) {
  std::vector<FiniteGroup> reps;
  std::vector<std::string> keys;
  for (const auto& handle : subgroups(g)) {
    // the whole group represents its own class; re-extraction would only
    // rename it
    FiniteGroup cand =
        handle.size() == g.n ? g : subgroup_as_group(handle);
    std::string key = invariant_key(cand);
    bool duplicate = false;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (reps[i].n != cand.n || keys[i] != key) continue;
      if (is_isomorphic(reps[i], cand)) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      reps.push_back(std::move(cand));
      keys.push_back(std::move(key));
    }
  }
  return reps;
}

LovaszResult lovasz_compare(const FiniteGroup& g, const FiniteGroup& h) {
  LovaszResult r;
  if (g.n != h.n) {
    r.kind = LovaszResult::Kind::OrderMismatch;
    r.detail = "orders differ: " + std::to_string(g.n) + " vs " +
               std::to_string(h.n);
    return r;
  }
  const auto reps = subgroup_class_representatives(g);
  for (const auto& k : reps) {
    BigInt cg = count_homs(g, k);
    BigInt ch = count_homs(h, k);
    if (cg != ch) {
      r.kind = LovaszResult::Kind::Distinguished;
      r.witness = k;
      r.count_g = std::move(cg);
      r.count_h = std::move(ch);
      r.detail = "hom counts into the subgroup class [" + invariant_key(k) +
                 "] differ: " + to_string(r.count_g) + " vs " +
                 to_string(r.count_h);
      return r;
    }
  }
  auto map = is_isomorphic(g, h);
  if (!map)
    throw InternalError("hom counts agree on every subgroup class of " +
                        g.label + " yet no isomorphism onto " + h.label +
                        " was found");
  r.kind = LovaszResult::Kind::Isomorphic;
  r.map = std::move(map);
  r.detail = "hom counts agree on all " + std::to_string(reps.size()) +
             " subgroup classes";
  return r;
}

BigInt count_algebra_homs_bruteforce(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!a->one) throw NotUnital("hom source " + a->label + " lacks identity");
  if (!b->one) throw NotUnital("hom target " + b->label + " lacks identity");
  if (!same_ring(a->ring, b->ring))
    throw RingMismatch("hom count between algebras over different rings: " +
                       a->label + " vs " + b->label);

  const int cells = a->dim * b->dim;
  const BigInt candidates =
      bigint_pow(BigInt(a->ring->size), static_cast<unsigned>(cells));
  if (candidates > limits().algebra_hom_budget)
    throw BoundExceeded("linear map space " + to_string(candidates) +
                        " exceeds GROUPALG_ALGEBRA_HOM_BUDGET = " +
                        std::to_string(limits().algebra_hom_budget));

  const FiniteCommRing& ring = *a->ring;
  // cols[i] = image of basis vector e_i of a, as an element of b.
  std::vector<Vec> cols(static_cast<std::size_t>(a->dim), b->zero_vec());
  const auto apply = [&](const Vec& x) {
    Vec out = b->zero_vec();
    for (int i = 0; i < a->dim; ++i) {
      const int c = x[static_cast<std::size_t>(i)];
      if (c == ring.zero) continue;
      out = b->add(out, b->scal(c, cols[static_cast<std::size_t>(i)]));
    }
    return out;
  };
  const auto is_hom = [&]() {
    if (apply(*a->one) != *b->one) return false;
    for (int i = 0; i < a->dim; ++i)
      for (int j = 0; j < a->dim; ++j) {
        const Vec& prod = a->bp[static_cast<std::size_t>(i) * a->dim + j];
        if (apply(prod) != b->mul(cols[static_cast<std::size_t>(i)],
                                  cols[static_cast<std::size_t>(j)]))
          return false;
      }
    return true;
  };

  BigInt count = 0;
  // Odometer over all dim(a)*dim(b) ring digits.
  std::vector<int> digits(static_cast<std::size_t>(cells), 0);
  for (;;) {
    for (int i = 0; i < a->dim; ++i)
      for (int j = 0; j < b->dim; ++j)
        cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            digits[static_cast<std::size_t>(i) * b->dim + j];
    if (is_hom()) ++count;
    int pos = 0;
    while (pos < cells && digits[static_cast<std::size_t>(pos)] ==
                              ring.size - 1) {
      digits[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == cells) break;
    ++digits[static_cast<std::size_t>(pos)];
  }
  return count;
}

HomCountProfile hom_profile(const FiniteGroup& source,
                            const FiniteGroup& reference) {
  HomCountProfile p;
  p.source = source.label;
  std::map<std::string, int> seen;
  for (const auto& k : subgroup_class_representatives(reference)) {
    std::string key = invariant_key(k);
    const int hits = ++seen[key];
    if (hits > 1) key += "#" + std::to_string(hits);
    BigInt count = count_homs(source, k);
    if (k.n == 1 && count != 1)
      throw InternalError("trivial-target hom count must be 1");
    p.entries.emplace_back(std::move(key), std::move(count));
  }
  return p;
}

}  // namespace groupalg
