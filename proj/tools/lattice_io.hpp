#pragma once
// JSON and DOT encodings of congruence lattices and single congruences.

#include <string>

#include "congwb/constructions.hpp"
#include "json.hpp"

namespace congwb::io {

using nlohmann::json;

json spec_json(const FamilySpec& spec);
FamilySpec spec_from_json(const json& j);

json elements_json(const PartialSemigroup& S);
json classes_json(const Congruence& c);
// classes must partition 0..n-1
Congruence congruence_from_json(const json& classes, size_t n);

json congruence_json(const IdealContext& X, const std::string& label, const Congruence& c);

// { family, objects, [field], rank, n_elements, elements, congruences, covers }
json lattice_json(const IdealContext& X, const CongruenceLattice& L);
CongruenceLattice lattice_from_json(const json& j);

// Hasse diagram, bottom to top; Rees congruences and the diagonal filled.
std::string lattice_dot(const CongruenceLattice& L);
bool is_rees_label(const std::string& label);

}  // namespace congwb::io
