#pragma once
// Finite lattices on abstract node ids: Hasse diagrams, isomorphism,
// standard constructions and stacking.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "congwb/congruence.hpp"
#include "congwb/groups.hpp"

namespace congwb {

struct Bitset {
  std::vector<uint64_t> w;
  Bitset() = default;
  explicit Bitset(size_t n) : w((n + 63) / 64, 0) {}
  void set(size_t i) { w[i >> 6] |= uint64_t{1} << (i & 63); }
  bool test(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  size_t count() const;
};

// up[i] = { j : i <= j }
struct AbstractLattice {
  std::vector<Bitset> up;
  std::vector<std::string> labels;
  size_t size() const { return up.size(); }
  bool leq(size_t i, size_t j) const { return up[i].test(j); }
  int bottom() const;  // -1 if none
  int top() const;
  bool is_lattice() const;
};

struct LatticeGuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

AbstractLattice from_order(size_t n, const std::function<bool(size_t, size_t)>& leq);
AbstractLattice from_covers(size_t n, const std::vector<std::pair<int, int>>& covers);
AbstractLattice from_congruences(const std::vector<Congruence>& nodes);
AbstractLattice from_congruence_lattice(const CongruenceLattice& L);
AbstractLattice subgroup_lattice(const std::vector<NormalSubgroup>& subs);

// transitive reduction as (lower, upper) pairs, sorted
std::vector<std::pair<int, int>> hasse(const AbstractLattice& L);
bool is_isomorphic(const AbstractLattice& a, const AbstractLattice& b, size_t guard = 5000);

AbstractLattice eq_lattice(int n);
AbstractLattice direct_product(const AbstractLattice& a, const AbstractLattice& b);
AbstractLattice chain(size_t n);
AbstractLattice adjoin_top(const AbstractLattice& a);
// Pile the group lattices above the base: the first layer's bottom is the
// base top, each later layer sits above the previous one, then a new top.
// |result| = |base| + sum |groups| (+1 when groups is empty).
AbstractLattice stack_lattices(const AbstractLattice& base, const std::vector<AbstractLattice>& groups);

}  // namespace congwb
