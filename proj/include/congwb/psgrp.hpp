#pragma once
// Finite partial semigroup kernel: indexed elements, CSR composition table,
// Green's relations and ideal chains.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "congwb/elements.hpp"

namespace congwb {

using Idx = uint32_t;

struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Size guard for materialized instances; CONGWB_MAX_ELEMENTS overrides 5000.
size_t max_elements_guard();

struct PartialSemigroup {
  size_t n = 0;
  int n_objects = 0;
  std::vector<ObjectId> bd, br;
  std::vector<std::vector<Idx>> hom;      // hom[A*n_objects+B]
  std::vector<std::vector<Idx>> by_dom;   // elements with bd == A
  std::vector<std::vector<Idx>> by_ran;   // elements with br == A
  std::vector<Idx> pos_in_dom;            // position of y within by_dom[bd(y)]
  std::vector<size_t> row_off;
  std::vector<Idx> table;
  // optional payload
  std::vector<Element> elements;
  std::vector<int> rank_label;            // family rank (or -1 if unknown)
  std::vector<Idx> parent_index;          // index in the parent when restricted
  // a generating set, bucketed by range / domain object
  std::vector<Idx> gens;
  std::vector<std::vector<Idx>> gens_by_ran, gens_by_dom;

  Idx compose(Idx x, Idx y) const { return table[row_off[x] + pos_in_dom[y]]; }
  bool composable(Idx x, Idx y) const { return br[x] == bd[y]; }
  // multipliers c with c*x defined / x*c defined
  const std::vector<Idx>& left_mult(Idx x) const { return by_ran[bd[x]]; }
  const std::vector<Idx>& right_mult(Idx x) const { return by_dom[br[x]]; }
  const std::vector<Idx>& homset(ObjectId a, ObjectId b) const { return hom[a * n_objects + b]; }
  bool same_hom(Idx x, Idx y) const { return bd[x] == bd[y] && br[x] == br[y]; }
  std::string name(Idx x) const;
};

struct BuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Materialize from a deduplicated element list and a composer.
PartialSemigroup build_partial_semigroup(
    const std::vector<Element>& elems, int n_objects,
    const std::function<Element(const Element&, const Element&)>& composer, bool force = false);

// Build the family instance described by a FamilySpec (all hom-sets).
PartialSemigroup build_instance(const FamilySpec& spec, bool force = false);

// Greedy generating set (higher rank first); fills gens and its buckets.
void compute_generators(PartialSemigroup& S);

// Table-level constructor (used for restriction and tests).
PartialSemigroup from_table(size_t n, int n_objects, std::vector<ObjectId> bd,
                            std::vector<ObjectId> br,
                            const std::function<Idx(Idx, Idx)>& mult);

// Exhaustive when n <= 300, else 1e5 sampled triples with a fixed seed.
// Returns false on a violation.
bool check_associativity(const PartialSemigroup& S, size_t samples = 100000);

struct GreenData {
  std::vector<int> r_class, l_class, h_class, d_class, j_class;
  int n_r = 0, n_l = 0, n_h = 0, n_d = 0;
  std::vector<std::vector<Idx>> r_members, l_members, h_members, d_members;
  // j_leq[a][b]: D-class a <=_J D-class b
  std::vector<std::vector<char>> j_leq;
  std::vector<Idx> idempotents;
  bool d_equals_j = false;
  bool j_is_chain = false;
};

GreenData green_relations(const PartialSemigroup& S);

struct IdealChain {
  std::vector<int> d_sorted;       // D-class ids, <=_J ascending
  std::vector<int> rank_of_class;  // rank label for d_sorted[i]
  // element mask of I_r where r is the i-th rank label
  std::vector<char> ideal_mask(int r) const;
  std::vector<Idx> ideal(int r) const;
  std::vector<int> ranks() const { return rank_of_class; }
  int d_at_rank(int r) const;      // D-class id with that rank label, -1 if none
  const PartialSemigroup* S = nullptr;
  const GreenData* G = nullptr;
};

struct ChainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

IdealChain ideal_chain(const PartialSemigroup& S, const GreenData& G);

bool is_ideal(const PartialSemigroup& S, const std::vector<char>& mask);
bool is_stable(const PartialSemigroup& S, const GreenData& G);
bool is_regular(const PartialSemigroup& S);
bool is_h_trivial_class(const GreenData& G, int d_class);

// Sub-partial-semigroup on an ideal; parent_index maps back.
PartialSemigroup restrict_to_ideal(const PartialSemigroup& S, const std::vector<char>& mask);

}  // namespace congwb
