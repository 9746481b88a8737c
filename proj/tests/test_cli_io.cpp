#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "../tools/lattice_io.hpp"
#include "common.hpp"
#include "congwb/predict.hpp"

using namespace congwb;
using oracle::spec;

namespace {

// edges a -> b of a DOT text
std::vector<std::pair<int, int>> dot_edges(const std::string& dot) {
  std::vector<std::pair<int, int>> out;
  std::istringstream in(dot);
  std::string line;
  while (std::getline(in, line)) {
    int a, b;
    if (std::sscanf(line.c_str(), " n%d -> n%d;", &a, &b) == 2) out.emplace_back(a, b);
  }
  return out;
}

}  // namespace

TEST_CASE("lattice JSON round trip") {
  for (auto [sp, r] : {std::pair{spec(Family::T, {4}), -1}, {spec(Family::B, {4}), 2}, {spec(Family::L, {2}, 3), -1},
                       {spec(Family::P, {2}), 1}}) {
    auto X = IdealContext::make(sp, r);
    auto L = all_congruences(X->S);
    label_lattice(*X, L);
    auto j = io::lattice_json(*X, L);
    std::string text = j.dump(1);
    auto back = io::lattice_from_json(io::json::parse(text));
    CHECK(back.nodes == L.nodes);
    CHECK(back.covers == L.covers);
    CHECK(back.labels == L.labels);
    for (size_t i = 0; i < L.size(); ++i) CHECK(back.find(L.nodes[i]) == static_cast<int>(i));
    CHECK(io::lattice_json(*X, back).dump(1) == text);
    CHECK(io::spec_from_json(j).objects == sp.objects);
    CHECK(j["elements"].size() == X->S.n);
  }
}

TEST_CASE("malformed lattice JSON is rejected") {
  auto X = IdealContext::make(spec(Family::T, {2}), -1);
  auto j = io::lattice_json(*X, all_congruences(X->S));
  auto bad = j;
  bad["congruences"][0]["classes"][0].push_back(0);
  CHECK_THROWS(io::lattice_from_json(bad));
  bad = j;
  bad["covers"].push_back({0, 99});
  CHECK_THROWS(io::lattice_from_json(bad));
}

TEST_CASE("DOT output is the transitive reduction") {
  for (auto [sp, r] : {std::pair{spec(Family::T, {4}), -1}, {spec(Family::B, {4}), 2}, {spec(Family::J, {4}), -1}}) {
    auto X = IdealContext::make(sp, r);
    auto L = all_congruences(X->S);
    label_lattice(*X, L);
    auto edges = dot_edges(io::lattice_dot(L));
    std::sort(edges.begin(), edges.end());
    auto A = from_congruence_lattice(L);
    CHECK(edges == hasse(A));
    for (auto [a, b] : edges)
      for (size_t m = 0; m < L.size(); ++m)
        if (static_cast<int>(m) != a && static_cast<int>(m) != b) CHECK_FALSE((A.leq(a, m) && A.leq(m, b)));
  }
  auto T4 = IdealContext::make(spec(Family::T, {4}), -1);
  auto L = all_congruences(T4->S);
  label_lattice(*T4, L);
  std::string dot = io::lattice_dot(L);
  size_t filled = 0;
  for (size_t p = dot.find("style=filled"); p != std::string::npos; p = dot.find("style=filled", p + 1)) ++filled;
  // Delta, R_I1, R_I2, R_I3, Nabla
  CHECK(filled == 5);
}

TEST_CASE("congruence JSON") {
  auto M = IdealContext::make(spec(Family::L, {2}, 3), -1);
  auto j = io::congruence_json(*M, "zeta", M->zeta());
  CHECK(j["n_classes"] == 41);
  CHECK(io::congruence_from_json(j["classes"], M->S.n) == M->zeta());
  CHECK(io::is_rees_label("R_I2"));
  CHECK_FALSE(io::is_rees_label("R_I2_A3"));
}
