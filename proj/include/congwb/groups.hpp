#pragma once
// Group H-classes, normal subgroup lattices and the natural embeddings used
// to name subgroups.

#include <string>
#include <vector>

#include "congwb/psgrp.hpp"

namespace congwb {

struct GroupHClass {
  std::vector<Idx> elements;           // indices in S; elements[0] is the identity
  Idx identity = 0;
  std::vector<std::vector<int>> mult;  // local indices
  std::vector<int> inv;
  int d_class = -1;
  int rank = -1;
  size_t order() const { return elements.size(); }
  int local(Idx x) const;              // -1 if absent
};

// A normal subgroup as a sorted list of local indices of its parent group.
struct NormalSubgroup {
  std::vector<int> members;
  std::string name;
  bool operator==(const NormalSubgroup& o) const { return members == o.members; }
  size_t order() const { return members.size(); }
};

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GroupHClass group_h_class(const PartialSemigroup& S, const GreenData& G, Idx e);

// Sorted by order, then members; includes trivial and whole group.
std::vector<NormalSubgroup> normal_subgroups(const GroupHClass& G, size_t max_order = 10000);
bool is_normal(const GroupHClass& G, const std::vector<int>& members);
bool subset_of(const NormalSubgroup& a, const NormalSubgroup& b);

// Anchor for rank q: smallest admissible object, preferring the natural
// idempotent id_q^natural; falls back to the smallest-index idempotent.
struct NaturalEmbedding {
  int q = 0;
  ObjectId anchor_obj = -1;
  Idx anchor = 0;
  GroupHClass group;
  // for diagram and map families: permutation of [q] for each local element
  std::vector<std::vector<int>> perm;
  // for linear families: the q x q block of each local element (row-major)
  std::vector<std::vector<int>> block;
  int field_p = 0;
};

NaturalEmbedding natural_embedding(const PartialSemigroup& S, const GreenData& G,
                                   const IdealChain& C, const FamilySpec& spec, int q);

// Names: "1", "S4", "A4", "K", "Kbar", "C4", "D4", "Z2(3)", "S2(2)", ...
void name_subgroups(const NaturalEmbedding& E, const FamilySpec& spec,
                    std::vector<NormalSubgroup>& subs);

// trivial / cyclic / dihedral / symmetric / alternating / other
std::string structure_probe(const GroupHClass& G);

// Elements whose permutation is a product of two disjoint transpositions of
// [4], plus the identity (the Klein group of S_4 pulled back).
std::vector<int> klein_members(const NaturalEmbedding& E);
// Scalar multiples c*E_q with c in the given multiplicative subgroup.
std::vector<int> scalar_members(const NaturalEmbedding& E, const std::vector<int>& scalars);

}  // namespace congwb
