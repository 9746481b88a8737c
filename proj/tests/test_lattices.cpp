#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"
#include "congwb/predict.hpp"

using namespace congwb;
using oracle::spec;

namespace {

bool no_transitive_edge(const AbstractLattice& L, const std::vector<std::pair<int, int>>& covers) {
  for (auto [a, b] : covers)
    for (size_t m = 0; m < L.size(); ++m)
      if (static_cast<int>(m) != a && static_cast<int>(m) != b && L.leq(a, m) && L.leq(m, b)) return false;
  return true;
}

std::set<std::vector<Idx>> as_set(const std::vector<Congruence>& cs) {
  std::set<std::vector<Idx>> out;
  for (auto& c : cs) out.insert(c.cls);
  return out;
}

}  // namespace

TEST_CASE("Hasse diagrams and isomorphism") {
  auto T4 = IdealContext::make(spec(Family::T, {4}), -1);
  auto CL = all_congruences(T4->S);
  auto L = from_congruence_lattice(CL);
  CHECK(L.is_lattice());
  CHECK(is_isomorphic(L, chain(11)));
  CHECK_FALSE(is_isomorphic(L, chain(10)));
  CHECK(is_isomorphic(L, L));
  auto h = hasse(L);
  CHECK(h.size() == 10);
  CHECK(no_transitive_edge(L, h));

  auto P2 = IdealContext::make(spec(Family::P, {2}), 0);
  auto C0 = from_congruence_lattice(all_congruences(P2->S));
  CHECK(is_isomorphic(C0, direct_product(eq_lattice(2), eq_lattice(2))));
  CHECK_FALSE(is_isomorphic(C0, chain(4)));

  auto B = IdealContext::make(spec(Family::B, {4}), 2);
  auto LB = from_congruence_lattice(all_congruences(B->S));
  auto hb = hasse(LB);
  CHECK(no_transitive_edge(LB, hb));
  CHECK(is_isomorphic(LB, direct_product(direct_product(eq_lattice(3), eq_lattice(3)), chain(3))));
  CHECK_THROWS_AS(is_isomorphic(LB, LB, 10), LatticeGuardError);
}

TEST_CASE("standard lattices") {
  CHECK(eq_lattice(4).size() == 15);
  CHECK(eq_lattice(4).is_lattice());
  CHECK(direct_product(eq_lattice(3), eq_lattice(3)).size() == 25);
  CHECK(eq_lattice(1).size() == 1);
  CHECK_THROWS_AS(eq_lattice(7), LatticeGuardError);
  auto T4 = IdealContext::make(spec(Family::T, {4}), -1);
  auto trivial = subgroup_lattice(T4->normals(1));
  CHECK(is_isomorphic(adjoin_top(trivial), chain(2)));
  for (size_t n = 1; n <= 5; ++n) {
    CHECK(chain(n).size() == n);
    CHECK(hasse(chain(n)).size() == n - 1);
  }
  // two maximal elements
  auto two_tops = from_covers(3, {{0, 1}, {0, 2}});
  CHECK_FALSE(two_tops.is_lattice());
}

TEST_CASE("stacking") {
  auto T4 = IdealContext::make(spec(Family::T, {4}), -1);
  auto S = stack_lattices(chain(4), {subgroup_lattice(T4->normals(3)), subgroup_lattice(T4->normals(4))});
  CHECK(is_isomorphic(S, chain(11)));
  CHECK(is_isomorphic(S, from_congruence_lattice(all_congruences(T4->S))));
  CHECK(stack_lattices(chain(4), {}).size() == 5);
  CHECK(is_isomorphic(stack_lattices(eq_lattice(3), {}), adjoin_top(eq_lattice(3))));

  auto B4 = IdealContext::make(spec(Family::B, {4}), -1);
  std::vector<AbstractLattice> groups = {subgroup_lattice(B4->normals(2)), subgroup_lattice(B4->normals(4))};
  auto base = eq_lattice(3);
  auto st = stack_lattices(base, groups);
  size_t want = base.size();
  for (auto& g : groups) want += g.size();
  CHECK(st.size() == want);
  CHECK(st.is_lattice());

  auto ch = stack_lattices(chain(3), {chain(2), chain(4), chain(1)});
  CHECK(is_isomorphic(ch, chain(3 + 1 + 4 + 1 + 1)));
}

TEST_CASE("partial rectangular bands") {
  struct Case {
    FamilySpec sp;
    int r;
    size_t count;
  };
  for (auto& c : {Case{spec(Family::T, {4}), 1, 15}, Case{spec(Family::B, {4}), 0, 25},
                  Case{spec(Family::B, {3}), 1, 25}, Case{spec(Family::P, {2}), 0, 4}}) {
    CAPTURE(family_name(c.sp.family));
    auto X = IdealContext::make(c.sp, c.r);
    auto P = predict_prb(*X);
    CHECK(P.items.size() == c.count);
    CHECK(prb_lattice(*X).size() == c.count);
    auto CL = all_congruences(X->S);
    CHECK(as_set(P.congruences()) == as_set(CL.nodes));
    CHECK(is_isomorphic(prb_lattice(*X), from_congruence_lattice(CL)));
  }
  // a cyclic group is one D-class but not H-trivial
  auto Z3 = IdealContext::wrap(spec(Family::T, {3}), from_table(3, 1, {0, 0, 0}, {0, 0, 0}, [](Idx x, Idx y) -> Idx {
                                 return (x + y) % 3;
                               }));
  CHECK_THROWS_AS(predict_prb(*Z3), HypothesisError);
}

TEST_CASE("small ideals") {
  auto T4 = IdealContext::make(spec(Family::T, {4}), 2);
  auto a = predict_small(*T4, SmallVariant::NonretractH2);
  CHECK(a.items.size() == 4);
  CHECK(as_set(a.congruences()) == as_set(all_congruences(T4->S).nodes));

  auto B3 = IdealContext::make(spec(Family::B, {3}), -1);
  auto b = predict_small(*B3, SmallVariant::NonretractH2);
  CHECK(b.items.size() == 7);
  CHECK(as_set(b.congruences()) == as_set(all_congruences(B3->S).nodes));

  auto B4 = IdealContext::make(spec(Family::B, {4}), -1);
  auto c = predict_small(*B4, SmallVariant::NonretractH3);
  CHECK(c.items.size() == 19);
  CHECK(as_set(c.congruences()) == as_set(all_congruences(B4->S).nodes));

  auto P3 = IdealContext::make(spec(Family::P, {3}), 1);
  auto d = predict_small(*P3, SmallVariant::RetractableH2);
  CHECK(d.items.size() == 5408);

  // wrong variant: I_2(T_4) has no retraction onto its minimal ideal
  CHECK_THROWS_AS(predict_small(*T4, SmallVariant::RetractableH2), HypothesisError);
}

TEST_CASE("theorem predictions") {
  auto T4 = IdealContext::make(spec(Family::T, {4}), -1);
  auto P = predict_theorem(*T4);
  CHECK(P.items.size() == 11);
  CHECK(P.items.front().label == "Delta");
  CHECK(P.items.back().label == "Nabla");
  CHECK(P.find(rees(T4->S, T4->ideal(1))) >= 0);
  CHECK(P.items[P.find(r_in(*T4, 2, T4->normal_by_name(3, "A3").members))].label == "R_I2_A3");
  CHECK(P.lattice().is_lattice());

  auto r1 = verify_theorem(spec(Family::T, {4}), 4);
  CHECK(r1.equal);
  CHECK(r1.predicted == 11);
  CHECK(r1.isomorphic == 1);
  CHECK(r1.line().find("EQUAL") != std::string::npos);
  auto r2 = verify_theorem(spec(Family::B, {4}), 2);
  CHECK(r2.equal);
  CHECK(r2.oracle == 75);
  auto r3 = verify_theorem(spec(Family::L, {2}, 3), 2);
  CHECK(r3.equal);
  CHECK(r3.isomorphic == 1);
  CHECK(r3.missing.empty());
  CHECK(r3.extra.empty());

  // a deliberately incomplete prediction is reported with witnesses
  auto bad = predict_theorem(*T4);
  bad.items.pop_back();
  auto rep = verify_prediction(*T4, bad, all_congruences(T4->S));
  CHECK_FALSE(rep.equal);
  CHECK(rep.extra.size() == 1);
  CHECK(rep.line().find("MISMATCH") != std::string::npos);
}

TEST_CASE("generic stacking descriptions") {
  auto T4 = IdealContext::make(spec(Family::T, {4}), -1);
  auto s = predict_stacked(*T4, 2);
  CHECK(as_set(s.congruences()) == as_set(all_congruences(T4->S).nodes));
  auto M = IdealContext::make(spec(Family::L, {2}, 3), -1);
  auto oracle_set = as_set(all_congruences(M->S).nodes);
  CHECK(as_set(predict_stacked_h(*M, 1).congruences()) == oracle_set);
  CHECK(as_set(predict_tuples(*M).congruences()) == oracle_set);
  CHECK(oracle_set.size() == 9);
}

TEST_CASE("labelling the brute-force lattice") {
  auto T4 = IdealContext::make(spec(Family::T, {4}), -1);
  auto L = all_congruences(T4->S);
  label_lattice(*T4, L);
  for (auto& l : L.labels) CHECK_FALSE(l.empty());
  CHECK(L.labels.front() == "Delta");
}

TEST_CASE("separation and multiplication properties") {
  for (int r : {2, 3, 4}) {
    auto X = IdealContext::make(spec(Family::T, {4}), r);
    auto rep = check_properties(*X);
    CHECK(rep.mult.holds);
    CHECK(rep.sep.holds);
    CHECK(rep.consistent());
  }
  auto M = IdealContext::make(spec(Family::L, {2}, 3), 2);
  auto rm = check_properties(*M);
  CHECK_FALSE(rm.sep.holds);
  CHECK_FALSE(rm.sep.witness.empty());
  CHECK(rm.sepz.holds);
  CHECK(rm.multz.holds);
  CHECK(rm.consistent());
  auto PL = IdealContext::make(spec(Family::PL, {2}, 3), 2);
  auto rp = check_properties(*PL);
  CHECK(rp.sep.holds);
  CHECK(rp.mult.holds);
  for (auto sp : {spec(Family::B, {4}), spec(Family::TL, {5}), spec(Family::J, {4}), spec(Family::P, {3}),
                  spec(Family::OriPR_T, {4})}) {
    auto X = IdealContext::make(sp, -1);
    CHECK(check_properties(*X).consistent());
  }
}

TEST_CASE("the interval below R_{S,G} comes from liftable congruences") {
  for (auto sp : {spec(Family::T, {4}), spec(Family::B, {4}), spec(Family::L, {2}, 3), spec(Family::J, {4}),
                  spec(Family::P, {3}), spec(Family::TL, {5}), spec(Family::OriP_T, {4})}) {
    CAPTURE(family_name(sp.family));
    auto T = IdealContext::make(sp, -1);
    int r = T->top_rank();
    int q = T->ranks()[T->ranks().size() - 2];
    auto S = IdealContext::make(sp, q);
    const auto& G = T->embedding(r).group;
    Congruence top = r_in(*T, q, std::vector<int>(T->normals(r).back().members));
    REQUIRE(T->normals(r).back().members.size() == G.order());

    std::set<std::vector<Idx>> interval;
    for (auto& c : all_congruences(T->S).nodes)
      if (contains(top, c)) interval.insert(c.cls);

    std::set<std::vector<Idx>> built;
    std::vector<Congruence> lift;
    for (auto& s : all_congruences(S->S).nodes)
      if (is_liftable(S->S, s, T->S)) lift.push_back(extend_by_diagonal(S->S, s, T->S.n));
    for (auto& N : T->normals(r)) {
      Congruence tau = tau_n(*T, N.members);
      Congruence n = nu(T->S, T->G, G, N.members);
      for (auto& s : lift)
        if (contains(s, tau)) built.insert(join(s, n).cls);
    }
    CHECK(built == interval);
  }
}
