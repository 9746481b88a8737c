#pragma once
// Predicted congruence sets: partial rectangular bands, small ideals, the
// per-family classification dispatch and the generic stacking descriptions,
// plus verification against the brute-force lattice.

#include <string>
#include <vector>

#include "congwb/lattice.hpp"
#include "congwb/properties.hpp"

namespace congwb {

struct Named {
  std::string label;
  Congruence c;
};

struct Prediction {
  std::vector<Named> items;           // distinct congruences, first label wins
  std::vector<std::string> aliases;   // "label = earlier label" for repeats
  std::vector<std::string> notes;     // hypotheses checked, findings
  void add(const std::string& label, Congruence c);
  int find(const Congruence& c) const;
  AbstractLattice lattice() const;    // inclusion order, labels attached
  std::vector<Congruence> congruences() const;
};

struct HypothesisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All sigma_{E1,E2} on the minimal ideal, extended by the diagonal.
Prediction predict_prb(IdealContext& X);
// prod Eq(|X_A|) x prod Eq(|Y_A|) when every factor is small enough
AbstractLattice prb_lattice(IdealContext& X);

enum class SmallVariant { RetractableH2, NonretractH2, NonretractH3 };
Prediction predict_small(IdealContext& X, SmallVariant v);

// Per-family classification on I_r (X must be I_r of its FamilySpec).
Prediction predict_theorem(IdealContext& X);

// Generic stacking with Cong(I_k) computed by the oracle.
Prediction predict_stacked(IdealContext& X, int k, const EnumOptions& opt = {});
// H-congruence-aware stacking with Cong(I_k) computed by the oracle.
Prediction predict_stacked_h(IdealContext& X, int k, const EnumOptions& opt = {});
// Trivial minimal ideal: R_{I_q,N} with N a tuple of subgroups.
Prediction predict_tuples(IdealContext& X);

// Congruences of I_k, extended by the diagonal to X.S
std::vector<Congruence> lifted_oracle(IdealContext& X, int k, const EnumOptions& opt);

struct VerifyReport {
  std::string family;
  std::vector<int> objects;
  int p = 0;
  int r = 0;
  size_t n_elements = 0;
  size_t predicted = 0, oracle = 0;
  bool equal = false;
  int isomorphic = -1;  // -1 not checked
  std::vector<std::string> missing;  // predicted, absent from the oracle
  std::vector<std::string> extra;    // in the oracle, not predicted
  std::vector<std::string> notes;
  double seconds = 0;
  std::string line(bool timing = true) const;
};

VerifyReport verify_prediction(IdealContext& X, const Prediction& P, const CongruenceLattice& L);
VerifyReport verify_theorem(const FamilySpec& spec, int r, const EnumOptions& opt = {});

// Labels every node of L that matches a named construction on X.
void label_lattice(IdealContext& X, CongruenceLattice& L);

}  // namespace congwb
