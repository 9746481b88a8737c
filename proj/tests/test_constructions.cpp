#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "common.hpp"

using namespace congwb;
using oracle::spec;

namespace {

std::vector<FamilySpec> small_specs() {
  return {spec(Family::T, {3}),       spec(Family::T, {4}),    spec(Family::OriPR_T, {4}),
          spec(Family::P, {2}),       spec(Family::P, {3}),    spec(Family::PB, {3}),
          spec(Family::B, {3}),       spec(Family::B, {4}),    spec(Family::TL, {4}),
          spec(Family::J, {4}),       spec(Family::Jpm, {4}),  spec(Family::L, {2}, 2),
          spec(Family::L, {2}, 3),    spec(Family::PL, {2}, 3)};
}

Congruence restrict_mask(const Congruence& c, const std::vector<char>& mask) {
  std::vector<Idx> lab(c.cls.size());
  for (Idx x = 0; x < c.cls.size(); ++x) lab[x] = mask[x] ? c.cls[x] : static_cast<Idx>(c.cls.size() + x);
  return canonical_from_labels(lab);
}

std::vector<int> subgroup_join(const GroupHClass& G, const std::vector<int>& a, const std::vector<int>& b) {
  std::set<int> s;
  for (int x : a)
    for (int y : b) s.insert(G.mult[x][y]);
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("Rees congruences") {
  auto X = IdealContext::make(spec(Family::T, {4}), -1);
  CHECK(rees(X->S, std::vector<char>(X->S.n, 1)) == hom_universal(X->S));
  auto L = all_congruences(X->S);
  CHECK(L.find(rees(X->S, X->ideal(1))) == 1);
  for (int q : X->ranks()) CHECK(oracle::brute_is_congruence(X->S, rees(X->S, X->ideal(q)).cls));
  std::vector<char> top = X->d_mask(4);
  CHECK_THROWS(rees(X->S, top));
}

TEST_CASE("nu agrees with the double coset description on small D-classes") {
  for (auto& sp : small_specs()) {
    auto X = IdealContext::make(sp, -1);
    for (int q : X->ranks()) {
      const auto& E = X->embedding(q);
      int d = X->d_class(q);
      const auto& D = X->G.d_members[d];
      if (D.size() > 400) continue;
      CAPTURE(family_name(sp.family));
      CAPTURE(q);
      for (auto& N : X->normals(q)) {
        Congruence c = nu(X->S, X->G, E.group, N.members);
        CHECK(oracle::pairs_on(c, D) == oracle::brute_nu(X->S, X->G, E.group, N.members));
        CHECK(c == nu_direct(X->S, X->G, E.group, N.members));
        CHECK(recover_subgroup(E.group, c) == N.members);
        for (Idx x : D)
          if (c.cls[x] != x) CHECK(X->G.h_class[c.cls[x]] == X->G.h_class[x]);
      }
      CHECK(nu(X->S, X->G, E.group, {0}) == diagonal(X->S.n));
    }
  }
}

TEST_CASE("nu respects joins of subgroups") {
  auto X = IdealContext::make(spec(Family::T, {4}), -1);
  const auto& G = X->embedding(3).group;
  const auto& subs = X->normals(3);
  for (auto& a : subs)
    for (auto& b : subs) {
      auto ab = subgroup_join(G, a.members, b.members);
      CHECK(nu(X->S, X->G, G, ab) == join(nu(X->S, X->G, G, a.members), nu(X->S, X->G, G, b.members)));
    }
}

TEST_CASE("IN-pair congruences") {
  auto X = IdealContext::make(spec(Family::T, {4}), -1);
  auto L = all_congruences(X->S);
  for (int q : {1, 2, 3}) {
    CHECK(r_in(*X, q, {0}) == rees(X->S, X->ideal(q)));
    const auto& subs = X->normals(q + 1);
    for (auto& a : subs) {
      Congruence ra = r_in(*X, q, a.members);
      CHECK(L.find(ra) >= 0);
      for (auto& b : subs) {
        bool sub = std::includes(b.members.begin(), b.members.end(), a.members.begin(), a.members.end());
        CHECK(contains(r_in(*X, q, b.members), ra) == sub);
      }
    }
  }
  CHECK(L.find(r_in(*X, 2, X->normal_by_name(3, "A3").members)) >= 0);
  // a non-normal subgroup: a transposition of S3
  const auto& G3 = X->embedding(3).group;
  int t = -1;
  for (size_t g = 1; g < G3.order() && t < 0; ++g)
    if (G3.mult[g][g] == 0) t = static_cast<int>(g);
  REQUIRE(t > 0);
  CHECK_THROWS_AS(r_in(*X, 2, {0, t}), INError);
}

TEST_CASE("retractions") {
  auto P3 = IdealContext::make(spec(Family::P, {3}), -1);
  auto R1 = build_retraction(*P3, 1);
  REQUIRE(R1.has_value());
  CHECK(R1->used_hat);
  CHECK(R1->findings.empty());
  CHECK(verify_retraction(P3->S, *R1, P3->ideal(0)));
  CHECK_FALSE(build_retraction(*P3, 2).has_value());

  auto B4 = IdealContext::make(spec(Family::B, {4}), -1);
  auto R2 = build_retraction(*B4, 2);
  REQUIRE(R2.has_value());
  CHECK(R2->used_hat);
  CHECK(verify_retraction(B4->S, *R2, B4->ideal(0)));

  auto T4 = IdealContext::make(spec(Family::T, {4}), -1);
  CHECK_FALSE(build_retraction(*T4, 2).has_value());
  auto M = build_retraction(*T4, 1);
  REQUIRE(M.has_value());
  for (Idx x : T4->C.ideal(1)) CHECK(M->f[x] == x);

  // the product identity on every instance small enough to check exhaustively
  for (auto sp : {spec(Family::P, {2}), spec(Family::P, {3}), spec(Family::B, {4}), spec(Family::TL, {4}),
                  spec(Family::PB, {3}), spec(Family::Jpm, {4})}) {
    auto X = IdealContext::make(sp, -1);
    for (int q : X->ranks()) {
      auto R = build_retraction(*X, q);
      if (!R) continue;
      CHECK(verify_retraction(X->S, *R, X->ideal(X->min_rank())));
      if (X->S.n <= 300) CHECK(check_axb(X->S, *R));
      for (Idx x = 0; x < X->S.n; ++x)
        if (R->in_ideal[x]) CHECK(X->S.same_hom(x, R->f[x]));
    }
  }
  auto big = IdealContext::make(spec(Family::P, {3}), -1);
  CHECK(check_axb(big->S, *R1, 20000));
}

TEST_CASE("theta family") {
  auto X = IdealContext::make(spec(Family::P, {3}), -1);
  auto M = build_retraction(*X, 0);
  REQUIRE(M.has_value());
  for (MRel m : {MRel::L, MRel::R, MRel::H, MRel::Delta, MRel::Nabla})
    CHECK(theta(X->S, *M, m_relation(*X, m)) == m_relation(*X, m));
  auto R1 = build_retraction(*X, 1);
  CHECK(theta(X->S, *R1, m_relation(*X, MRel::Nabla)) == rees(X->S, X->ideal(1)));
  // the minimal ideal is H-trivial
  CHECK(theta_named(*X, 1, MRel::H, {}) == theta_named(*X, 1, MRel::Delta, {}));

  struct Five {
    Congruence eta, mu, lam, rho, R;
  };
  auto five = [&](int q, const std::vector<int>& N) {
    return Five{theta_named(*X, q, MRel::Delta, N), theta_named(*X, q, MRel::H, N),
                theta_named(*X, q, MRel::L, N), theta_named(*X, q, MRel::R, N), r_in(*X, q, N)};
  };
  std::vector<Five> chain = {five(0, {0}), five(1, {0}), five(1, X->normal_by_name(2, "S2").members)};
  for (auto& f : chain) {
    CHECK(contains(f.mu, f.eta));
    CHECK(contains(f.lam, f.mu));
    CHECK(contains(f.rho, f.mu));
    CHECK(contains(f.R, f.lam));
    CHECK(contains(f.R, f.rho));
    CHECK(meet(f.lam, f.rho) == f.mu);
    CHECK(join(f.lam, f.rho) == f.R);
    for (auto* c : {&f.eta, &f.mu, &f.lam, &f.rho, &f.R}) CHECK(is_congruence(X->S, *c));
  }
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    CHECK(contains(chain[i + 1].eta, chain[i].eta));
    CHECK(contains(chain[i + 1].mu, chain[i].mu));
    CHECK(contains(chain[i + 1].lam, chain[i].lam));
    CHECK(contains(chain[i + 1].rho, chain[i].rho));
    CHECK(contains(chain[i + 1].R, chain[i].R));
  }
  CHECK(in_pair_retractable(*X, 1, X->normal_by_name(2, "S2").members));
  CHECK_FALSE(in_pair_retractable(*X, 2, X->normal_by_name(3, "S3").members));
  CHECK_THROWS_AS(theta_named(*X, 2, MRel::L, {}), INError);
}

TEST_CASE("tau_N") {
  auto T4 = IdealContext::make(spec(Family::T, {4}), -1);
  CHECK(tau_n(*T4, {0}) == diagonal(T4->S.n));
  CHECK(tau_n(*T4, T4->normal_by_name(4, "S4").members) == rees(T4->S, T4->ideal(3)));

  auto M = IdealContext::make(spec(Family::L, {2}, 3), -1);
  const auto& Z = M->normals(2);
  std::vector<int> z2;
  for (auto& N : Z)
    if (N.name == "Z2(2)") z2 = N.members;
  REQUIRE(z2.size() == 2);
  CHECK(tau_n(*M, z2) == restrict_mask(M->zeta(), M->ideal(1)));
}

TEST_CASE("N down") {
  for (int p : {3, 5}) {
    auto M = IdealContext::make(spec(Family::L, {2}, p), -1);
    for (auto& H : unit_subgroups(p)) {
      auto top = scalar_members(M->embedding(2), H);
      auto one = scalar_members(M->embedding(1), H);
      CHECK(n_down(*M, 2, top, 1) == one);
      CHECK(n_down(*M, 1, n_down(*M, 2, top, 1), 0) == n_down(*M, 2, top, 0));
    }
    CHECK(n_down(*M, 2, {0}, 1) == std::vector<int>{0});
  }
  auto M = IdealContext::make(spec(Family::L, {2}, 3), -1);
  CHECK_THROWS_AS(n_down(*M, 2, M->normals(2).back().members, 1), INError);
}

TEST_CASE("H-congruences from NZ-tuples") {
  auto M = IdealContext::make(spec(Family::L, {2}, 3), -1);
  auto tuples = enumerate_nz_tuples(*M);
  std::vector<std::vector<int>> trivial(M->ranks().size(), std::vector<int>{0});
  CHECK(theta_tuple(*M, trivial) == diagonal(M->S.n));
  std::vector<std::vector<int>> zs;
  for (int q : M->ranks()) zs.push_back(z_subgroup(*M, q));
  CHECK(theta_tuple(*M, zs) == M->zeta());
  std::set<std::vector<Idx>> seen;
  for (auto& t : tuples) {
    Congruence c = theta_tuple(*M, t);
    CHECK(contains(M->zeta(), c));
    CHECK(is_congruence(M->S, c));
    seen.insert(c.cls);
  }
  CHECK(seen.size() == tuples.size());
  size_t h_count = 0;
  for (auto& c : all_congruences(M->S).nodes) h_count += contains(M->zeta(), c);
  CHECK(h_count == tuples.size());
}

TEST_CASE("phi membership") {
  auto P3 = IdealContext::make(spec(Family::P, {3}), -1);
  const auto& A3 = P3->normal_by_name(3, "A3");
  const auto& E = P3->embedding(3);
  Congruence c = nu(P3->S, P3->G, E.group, A3.members);
  for (Idx x : P3->G.d_members[P3->d_class(3)])
    for (Idx y : P3->G.h_members[P3->G.h_class[x]]) CHECK(phi_in(*P3, x, y, A3.members) == c.related(x, y));
  for (Idx x : P3->G.d_members[P3->d_class(2)]) CHECK(phi_in(*P3, x, x, {0}));

  auto M = IdealContext::make(spec(Family::L, {2}, 3), -1);
  for (auto& N : M->normals(2)) {
    Congruence n = nu(M->S, M->G, M->embedding(2).group, N.members);
    for (Idx x : M->G.d_members[M->d_class(2)])
      for (Idx y : M->G.h_members[M->G.h_class[x]]) REQUIRE(phi_in(*M, x, y, N.members) == n.related(x, y));
  }
  Idx a = P3->G.d_members[P3->d_class(3)][0], b = P3->G.d_members[P3->d_class(2)][0];
  CHECK_THROWS(phi_in(*P3, a, b, A3.members));
}
