#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groupalg/group.hpp"

namespace groupalg {

/// Finite unital commutative ring by explicit addition/multiplication tables.
/// Axioms are validated on construction (RingAxiomViolation names the failing
/// axiom and witnesses).  Elements are indices 0..size-1.
struct FiniteCommRing {
  int size = 0;
  std::vector<int> add;  // row-major
  std::vector<int> mul;
  int zero = 0;
  int one = 0;
  std::vector<int> neg;      // additive inverse
  std::vector<int> inv;      // multiplicative inverse or -1
  bool is_field = false;
  std::optional<int> prime;  // set for prime fields Fp
  std::string label;

  int addc(int a, int b) const { return add[static_cast<std::size_t>(a) * size + b]; }
  int mulc(int a, int b) const { return mul[static_cast<std::size_t>(a) * size + b]; }
  int negc(int a) const { return neg[a]; }
  int subc(int a, int b) const { return addc(a, negc(b)); }
  bool is_unit(int a) const { return inv[a] >= 0; }
  std::vector<int> units() const;
};

using RingPtr = std::shared_ptr<const FiniteCommRing>;

RingPtr ring_fp(int p);                  // prime field (NotPrime otherwise)
RingPtr ring_zn(int n);                  // integers mod n, n >= 2
RingPtr ring_from_tables(int size, const std::vector<std::vector<int>>& add,
                         const std::vector<std::vector<int>>& mul,
                         const std::string& label);

/// Multiplicative group of units as an explicit (abelian) group, together
/// with the unit element indices in table order.
FiniteGroup ring_unit_group(const FiniteCommRing& r,
                            std::vector<int>* unit_elements = nullptr);

/// Pointer identity or structural equality of the full tables.
bool same_ring(const RingPtr& a, const RingPtr& b);

}  // namespace groupalg
