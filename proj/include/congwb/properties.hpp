#pragma once
// Separation and multiplication properties of an ideal I_r, decided by
// exhaustive witness search.

#include <string>

#include "congwb/constructions.hpp"

namespace congwb {

struct PropertyResult {
  bool holds = false;
  std::string witness;  // a counterexample pair when false, a sample witness when true
};

struct PropertyReport {
  int r = 0;
  PropertyResult dmax, dmax_below, ngen;
  PropertyResult s1, s2, s3, s3z, m1, m2, m3, m3z;
  PropertyResult sep, mult, sepb, multb, sepz, multz;
  // Mult => Sep, Multz => Sepz, Multb => Sepb, and the horizontal chains
  bool consistent() const;
};

struct PropertyOptions {
  bool ngen = true;
  bool separation = true;  // S-items via principal congruences
};

PropertyReport check_properties(IdealContext& X, const PropertyOptions& opt = {});

// Class-level helpers used by the small-ideal hypotheses.
bool d_class_regular(const IdealContext& X, int d);
bool d_class_stable(const IdealContext& X, int d);

}  // namespace congwb
