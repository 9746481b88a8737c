#include "lattice_io.hpp"

#include <map>
#include <regex>
#include <sstream>

#include "congwb/lattice.hpp"

namespace congwb::io {

json spec_json(const FamilySpec& spec) {
  json j = {{"family", family_name(spec.family)}, {"objects", spec.objects}};
  if (is_linear_family(spec.family)) j["field"] = spec.field_p;
  return j;
}

FamilySpec spec_from_json(const json& j) {
  FamilySpec sp;
  sp.family = parse_family(j.at("family").get<std::string>());
  sp.objects = j.at("objects").get<std::vector<int>>();
  if (j.contains("field")) sp.field_p = j.at("field").get<int>();
  sp.validate();
  return sp;
}

json elements_json(const PartialSemigroup& S) {
  json a = json::array();
  for (Idx x = 0; x < S.n; ++x) a.push_back(S.elements.empty() ? std::to_string(x) : to_string(S.elements[x]));
  return a;
}

json classes_json(const Congruence& c) {
  json a = json::array();
  for (auto& cl : c.classes()) a.push_back(cl);
  return a;
}

Congruence congruence_from_json(const json& classes, size_t n) {
  std::vector<Idx> lab(n, static_cast<Idx>(-1));
  Idx k = 0;
  for (auto& cl : classes) {
    for (auto& x : cl) {
      auto i = x.get<size_t>();
      if (i >= n || lab[i] != static_cast<Idx>(-1)) throw std::invalid_argument("classes do not partition the elements");
      lab[i] = k;
    }
    ++k;
  }
  for (Idx l : lab)
    if (l == static_cast<Idx>(-1)) throw std::invalid_argument("classes do not cover the elements");
  return canonical_from_labels(lab);
}

json congruence_json(const IdealContext& X, const std::string& label, const Congruence& c) {
  json j = spec_json(X.spec);
  j["rank"] = X.r;
  j["n_elements"] = X.S.n;
  j["elements"] = elements_json(X.S);
  j["label"] = label;
  j["n_classes"] = c.n_classes();
  j["classes"] = classes_json(c);
  return j;
}

json lattice_json(const IdealContext& X, const CongruenceLattice& L) {
  json j = spec_json(X.spec);
  j["rank"] = X.r;
  j["n_elements"] = X.S.n;
  j["elements"] = elements_json(X.S);
  json nodes = json::array();
  for (size_t i = 0; i < L.size(); ++i) {
    std::string lab = i < L.labels.size() ? L.labels[i] : "";
    nodes.push_back({{"id", i}, {"label", lab}, {"classes", classes_json(L.nodes[i])}});
  }
  j["congruences"] = nodes;
  json covers = json::array();
  for (auto [a, b] : L.covers) covers.push_back({a, b});
  j["covers"] = covers;
  return j;
}

CongruenceLattice lattice_from_json(const json& j) {
  CongruenceLattice L;
  size_t n = j.at("n_elements").get<size_t>();
  for (auto& node : j.at("congruences")) {
    if (node.at("id").get<size_t>() != L.nodes.size()) throw std::invalid_argument("congruence ids out of order");
    L.nodes.push_back(congruence_from_json(node.at("classes"), n));
    L.labels.push_back(node.value("label", ""));
    L.index[L.nodes.back()] = static_cast<int>(L.nodes.size()) - 1;
  }
  for (auto& e : j.at("covers")) {
    int a = e.at(0).get<int>(), b = e.at(1).get<int>();
    if (a < 0 || b < 0 || static_cast<size_t>(a) >= L.size() || static_cast<size_t>(b) >= L.size())
      throw std::invalid_argument("cover refers to a missing congruence");
    L.covers.emplace_back(a, b);
  }
  return L;
}

bool is_rees_label(const std::string& label) {
  static const std::regex rees("Delta|Nabla|R_I[0-9]+");
  return std::regex_match(label, rees);
}

std::string lattice_dot(const CongruenceLattice& L) {
  // height = longest chain from the bottom, covers are sorted by lower end
  std::vector<int> height(L.size(), 0);
  std::vector<std::vector<int>> up(L.size());
  std::vector<int> indeg(L.size(), 0);
  for (auto [a, b] : L.covers) {
    up[a].push_back(b);
    ++indeg[b];
  }
  std::vector<int> order;
  for (size_t i = 0; i < L.size(); ++i)
    if (!indeg[i]) order.push_back(static_cast<int>(i));
  for (size_t k = 0; k < order.size(); ++k)
    for (int b : up[order[k]]) {
      height[b] = std::max(height[b], height[order[k]] + 1);
      if (--indeg[b] == 0) order.push_back(b);
    }
  std::map<int, std::vector<size_t>> levels;
  for (size_t i = 0; i < L.size(); ++i) levels[height[i]].push_back(i);

  std::ostringstream o;
  o << "digraph congruences {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
  for (size_t i = 0; i < L.size(); ++i) {
    std::string lab = i < L.labels.size() && !L.labels[i].empty() ? L.labels[i] : "c" + std::to_string(i);
    o << "  n" << i << " [label=\"" << lab << "\"";
    if (is_rees_label(lab)) o << ", style=filled, fillcolor=black, fontcolor=white";
    o << "];\n";
  }
  for (auto& [h, ids] : levels) {
    o << "  { rank=same;";
    for (size_t i : ids) o << " n" << i << ";";
    o << " }\n";
  }
  for (auto [a, b] : L.covers) o << "  n" << a << " -> n" << b << ";\n";
  o << "}\n";
  return o.str();
}

}  // namespace congwb::io
