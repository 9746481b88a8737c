#pragma once
// Congruences as canonical partitions of the element universe, principal
// congruences by pair closure and brute-force lattice enumeration.

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "congwb/psgrp.hpp"

namespace congwb {

// cls[x] = smallest element index of x's class.
struct Congruence {
  std::vector<Idx> cls;
  bool operator==(const Congruence&) const = default;
  size_t n_classes() const;
  bool related(Idx x, Idx y) const { return cls[x] == cls[y]; }
  std::vector<std::vector<Idx>> classes() const;
};

struct CongruenceHash {
  size_t operator()(const Congruence& c) const;
};

Congruence canonical_from_labels(const std::vector<Idx>& labels);
Congruence diagonal(size_t n);
Congruence hom_universal(const PartialSemigroup& S);  // the hom-respecting universal relation

bool contains(const Congruence& big, const Congruence& small);
Congruence join(const Congruence& a, const Congruence& b);
Congruence meet(const Congruence& a, const Congruence& b);

// Checks (C1)-(C3) directly.
bool is_congruence(const PartialSemigroup& S, const Congruence& c);

struct SeedError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Congruence principal_congruence(const PartialSemigroup& S,
                                const std::vector<std::pair<Idx, Idx>>& pairs);
// Closure of an existing relation under translation (starting partition
// given by `start`, extra pairs merged in).
Congruence close_congruence(const PartialSemigroup& S, const Congruence& start,
                            const std::vector<std::pair<Idx, Idx>>& pairs);

struct EnumOptions {
  bool force = false;
  unsigned threads = 1;
  size_t max_elements = 2500;
  size_t max_congruences = 100000;
};

struct CongruenceLattice {
  std::vector<Congruence> nodes;            // nodes[0] = diagonal, sorted by class count desc then encoding
  std::vector<std::pair<int, int>> covers;  // (lower, upper)
  std::vector<std::string> labels;
  std::unordered_map<Congruence, int, CongruenceHash> index;
  int find(const Congruence& c) const {
    auto it = index.find(c);
    return it == index.end() ? -1 : it->second;
  }
  size_t size() const { return nodes.size(); }
  bool is_chain() const;
};

// Distinct nontrivial principal congruences (one per hom-compatible pair).
std::vector<Congruence> principal_congruences(const PartialSemigroup& S, const EnumOptions& opt);
CongruenceLattice all_congruences(const PartialSemigroup& S, const EnumOptions& opt = {});
void build_covers(CongruenceLattice& L, const std::vector<Congruence>& principals);

// Greatest congruence contained in the equivalence theta.
Congruence largest_congruence_below(const PartialSemigroup& S, const Congruence& theta);
Congruence h_relation(const PartialSemigroup& S, const GreenData& G);
Congruence max_h_congruence(const PartialSemigroup& S, const GreenData& G);
bool is_idempotent_separating(const GreenData& G, const Congruence& c);

// sigma is given on the ideal (indices of the restricted semigroup I, with
// I.parent_index into T).
bool is_liftable(const PartialSemigroup& I, const Congruence& sigma, const PartialSemigroup& T);
Congruence extend_by_diagonal(const PartialSemigroup& I, const Congruence& sigma, size_t n_parent);
Congruence restrict(const Congruence& sigma, const PartialSemigroup& I);

// Union of congruences with disjoint supports etc. is just a join.
Congruence relation_union(const Congruence& a, const Congruence& b);

}  // namespace congwb
