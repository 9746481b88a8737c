#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "common.hpp"

using namespace congwb;
using oracle::spec;

namespace {

// blocks from the worked product example, 1-based, negative = bottom row
Partition fig_alpha() {
  return make_partition(6, 8, {{1, 4}, {2, 3, -4, -5}, {5, 6}, {-1, -2, -6}, {-3}, {-7, -8}}, 0, 1);
}
Partition fig_beta() {
  return make_partition(8, 7, {{1, 2}, {3, 4, -1}, {5, -4, -5}, {6}, {7}, {8, -6, -7}, {-2}, {-3}}, 1, 2);
}

std::vector<Partition> all_partitions(Family f, std::vector<int> objs, int a = 0, int b = 0) {
  std::vector<Partition> out;
  for (auto& e : generate_homset(spec(f, objs), a, b)) out.push_back(std::get<Partition>(e));
  return out;
}

Partition random_partition(std::mt19937& rng, int m, int n) {
  std::vector<int> lab(m + n);
  int mx = -1;
  for (auto& l : lab) {
    l = std::uniform_int_distribution<int>(0, mx + 1)(rng);
    mx = std::max(mx, l);
  }
  return canon_partition(Partition{0, 0, m, n, lab});
}

bool noncrossing_eq(const std::vector<int>& lab) {
  int k = static_cast<int>(lab.size());
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      for (int a = j + 1; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
          if (lab[i] == lab[a] && lab[j] == lab[b] && lab[i] != lab[j]) return false;
  return true;
}

int find_index(const PartialSemigroup& S, const Element& e) {
  for (Idx x = 0; x < S.n; ++x)
    if (S.elements[x] == e) return static_cast<int>(x);
  return -1;
}

}  // namespace

TEST_CASE("worked partition product") {
  Partition ab = std::get<Partition>(compose(fig_alpha(), fig_beta()));
  Partition want = make_partition(6, 7, {{1, 4}, {2, 3, -1, -4, -5}, {5, 6}, {-2}, {-3}, {-6, -7}}, 0, 2);
  CHECK(ab == want);
  CHECK(rank(fig_alpha()) == 1);
  CHECK(rank(fig_beta()) == 3);
  CHECK(rank(ab) == 1);
}

TEST_CASE("identity is neutral and canonical forms are stable") {
  Partition a = fig_alpha();
  CHECK(std::get<Partition>(compose(identity_partition(6, 0), a)) == a);
  CHECK(std::get<Partition>(compose(a, identity_partition(8, 1))) == a);
  CHECK(canon_partition(canon_partition(a)) == canon_partition(a));
  CHECK(rank(identity_partition(5)) == 5);
}

TEST_CASE("star") {
  Partition s = star(fig_alpha());
  std::set<std::vector<int>> upper;
  for (auto& b : s.blocks()) {
    bool top_only = std::all_of(b.begin(), b.end(), [&](int v) { return v < s.m; });
    if (top_only) {
      std::vector<int> one_based;
      for (int v : b) one_based.push_back(v + 1);
      upper.insert(one_based);
    }
  }
  CHECK(upper == std::set<std::vector<int>>{{1, 2, 6}, {3}, {7, 8}});
  CHECK(star(identity_partition(4)) == identity_partition(4));
  CHECK(star(star(fig_alpha())) == fig_alpha());
}

TEST_CASE("star reverses products on random pairs") {
  std::mt19937 rng(12345);
  for (int t = 0; t < 1000; ++t) {
    int m = 1 + t % 4, k = 1 + (t / 4) % 4, n = 1 + (t / 16) % 4;
    Partition a = random_partition(rng, m, k), b = random_partition(rng, k, n);
    auto ab = std::get<Partition>(compose(a, b));
    auto rhs = std::get<Partition>(compose(star(b), star(a)));
    REQUIRE(star(ab) == rhs);
  }
}

TEST_CASE("involution laws exhaustively on small partition hom-sets") {
  for (auto objs : {std::vector<int>{2}, std::vector<int>{1, 2}}) {
    for (int a = 0; a < static_cast<int>(objs.size()); ++a)
      for (int b = 0; b < static_cast<int>(objs.size()); ++b)
        for (auto& x : all_partitions(Family::P, objs, a, b)) {
          auto xs = star(x);
          CHECK(std::get<Partition>(compose(compose(x, xs), x)) == x);
          CHECK(star(xs) == x);
        }
  }
}

TEST_CASE("rank is submultiplicative on P3") {
  auto all = all_partitions(Family::P, {3});
  CHECK(all.size() == static_cast<size_t>(oracle::bell(6)));
  for (auto& x : all)
    for (auto& y : all) {
      int r = rank(compose(x, y));
      REQUIRE(r <= std::min(rank(x), rank(y)));
    }
}

TEST_CASE("hom-set sizes") {
  CHECK(generate_homset(spec(Family::T, {4}), 0, 0).size() == 256);
  CHECK(generate_homset(spec(Family::TL, {4}), 0, 0).size() == static_cast<size_t>(oracle::catalan(4)));
  CHECK(generate_homset(spec(Family::B, {4}), 0, 0).size() ==
        static_cast<size_t>(oracle::double_factorial_odd(4)));
  CHECK(generate_homset(spec(Family::B, {3}), 0, 0).size() ==
        static_cast<size_t>(oracle::double_factorial_odd(3)));
  CHECK(generate_homset(spec(Family::P, {2}), 0, 0).size() == static_cast<size_t>(oracle::bell(4)));
  for (int n = 1; n <= 5; ++n)
    CHECK(generate_homset(spec(Family::TL, {n}), 0, 0).size() == static_cast<size_t>(oracle::catalan(n)));
  // 1 zero class plus the nonzero matrices up to scalars
  CHECK(generate_homset(spec(Family::PL, {2}, 3), 0, 0).size() == 1 + 80 / 2);
  CHECK(generate_homset(spec(Family::L, {2}, 3), 0, 0).size() == 81);
}

TEST_CASE("planarity") {
  CHECK(is_planar(fig_beta()));
  CHECK_FALSE(is_planar(fig_alpha()));
  CHECK(is_planar(identity_partition(5)));
  for (auto& x : all_partitions(Family::P, {3})) CHECK(is_planar(x) == is_planar(star(x)));
}

TEST_CASE("planar partitions are closed under composition") {
  auto S = build_instance(spec(Family::OP_P, {2, 3}));
  for (Idx x = 0; x < S.n; ++x)
    for (Idx y : S.right_mult(x)) REQUIRE(is_planar(std::get<Partition>(S.elements[S.compose(x, y)])));
}

TEST_CASE("annularity") {
  CHECK(is_annular(fig_alpha()));
  for (auto& x : all_partitions(Family::OP_P, {3})) CHECK(is_annular(x));
  auto B = all_partitions(Family::B, {4});
  std::vector<Partition> ann;
  for (auto& x : B)
    if (is_annular(x)) ann.push_back(x);
  CHECK(ann.size() == generate_homset(spec(Family::J, {4}), 0, 0).size());
  for (auto& x : ann)
    for (auto& y : ann) REQUIRE(is_annular(std::get<Partition>(compose(x, y))));
}

TEST_CASE("gamma and delta") {
  Partition d3 = delta_perm(3);
  CHECK(d3 == make_partition(3, 3, {{1, -2}, {2, -3}, {3, -1}}));
  Partition g3 = gamma_perm(3);
  CHECK(g3 == make_partition(3, 3, {{1, -3}, {2, -2}, {3, -1}}));
  for (int k = 1; k <= 5; ++k) CHECK(std::get<Partition>(compose(gamma_perm(k), gamma_perm(k))) == identity_partition(k));
}

TEST_CASE("anti-planarity") {
  CHECK(is_anti_planar(gamma_perm(3)));
  for (int k = 1; k <= 4; ++k) CHECK(is_anti_planar(identity_partition(k)) == is_planar(gamma_perm(k)));
  auto B = all_partitions(Family::B, {4});
  size_t planar = 0, anti = 0, both = 0;
  for (auto& x : B) {
    bool p = is_planar(x), a = is_anti_planar(x);
    planar += p, anti += a, both += p && a;
  }
  CHECK(generate_homset(spec(Family::TLpm, {4}), 0, 0).size() == planar + anti - both);
}

TEST_CASE("order and orientation of maps") {
  Transformation a = make_transformation(9, 7, {1, 1, 2, 3, 5, 5, 5, 6, 6});
  Transformation b = make_transformation(9, 7, {5, 6, 0, 0, 0, 3, 4, 5, 5});
  CHECK(order_preserving(a));
  CHECK(orientation_preserving(b));
  CHECK_FALSE(order_preserving(b));
  Transformation c = make_transformation(4, 3, {2, 2, 2, 2});
  CHECK(order_preserving(c));
  CHECK(order_reversing(c));
}

TEST_CASE("hat retraction") {
  // rank 1: {1,2,1'} {3,-2,-3}... the transversal is split into its two halves
  Partition x = make_partition(3, 3, {{1, 2, -1}, {3}, {-2, -3}});
  Partition hx = retract_hat(x, Family::P);
  CHECK(rank(hx) == 0);
  CHECK(hx == make_partition(3, 3, {{1, 2}, {-1}, {3}, {-2, -3}}));
  Partition z = make_partition(2, 2, {{1, 2}, {-1, -2}});
  CHECK(retract_hat(z, Family::P) == z);
  CHECK_THROWS(retract_hat(identity_partition(3), Family::P));
  Partition br = make_partition(4, 4, {{1, -2}, {2, -1}, {3, 4}, {-3, -4}});
  CHECK(rank(retract_hat(br, Family::B)) == 0);

  // retraction axioms on I_1(P_2)
  auto S = build_instance(spec(Family::P, {2}));
  std::vector<char> in(S.n);
  for (Idx x2 = 0; x2 < S.n; ++x2) in[x2] = rank(S.elements[x2]) <= 1;
  auto f = [&](Idx x2) {
    return find_index(S, retract_hat(std::get<Partition>(S.elements[x2]), Family::P));
  };
  for (Idx u = 0; u < S.n; ++u) {
    if (!in[u]) continue;
    int fu = f(u);
    REQUIRE(fu >= 0);
    CHECK(S.same_hom(u, fu));
    if (rank(S.elements[u]) == 0) CHECK(fu == static_cast<int>(u));
    for (Idx v : S.right_mult(u)) {
      if (!in[v]) continue;
      CHECK(f(S.compose(u, v)) == static_cast<int>(S.compose(fu, f(v))));
    }
  }
}

TEST_CASE("matrices") {
  Matrix id{0, 0, 2, 2, 3, {1, 0, 0, 1}};
  CHECK(matrix_rank(id) == 2);
  Matrix z{0, 0, 2, 2, 3, {0, 0, 0, 0}};
  CHECK(matrix_rank(z) == 0);
  CHECK(pl_canonicalize(z) == z);
  Matrix two{0, 0, 2, 2, 3, {0, 2, 2, 1}};
  CHECK(pl_canonicalize(two).entries == std::vector<int>{0, 1, 1, 2});
}

TEST_CASE("horizontal sums") {
  CHECK(oplus(identity_partition(2), identity_partition(3)) == identity_partition(5));
  auto B2 = all_partitions(Family::B, {2});
  for (auto& x : B2)
    for (auto& y : B2) CHECK(rank(oplus(x, y)) == rank(x) + rank(y));
  auto TL2 = all_partitions(Family::TL, {2});
  for (auto& x : TL2)
    for (auto& y : TL2) CHECK(is_planar(oplus(x, y)));
}

TEST_CASE("mixed parity is rejected") {
  CHECK_THROWS_AS(spec(Family::B, {2, 3}).validate(), SpecError);
  CHECK_THROWS_AS(build_instance(spec(Family::TL, {4, 5})), SpecError);
  CHECK_NOTHROW(spec(Family::B, {2, 4}).validate());
}

TEST_CASE("Green's relations agree with kernel and image data") {
  std::vector<FamilySpec> specs = {spec(Family::T, {3, 4}),   spec(Family::OriPR_T, {4}),
                                   spec(Family::P, {2, 3}),   spec(Family::PB, {3}),
                                   spec(Family::Motzkin, {3}), spec(Family::B, {2, 4}),
                                   spec(Family::TL, {5}),     spec(Family::Jpm, {4}),
                                   spec(Family::OriPR_P, {3}), spec(Family::L, {1, 2}, 3)};
  for (auto& sp : specs) {
    CAPTURE(family_name(sp.family));
    auto S = build_instance(sp);
    auto G = green_relations(S);
    auto rkey = [&](size_t x) { return std::make_pair(S.bd[x], ker_data(S.elements[x])); };
    auto lkey = [&](size_t x) { return std::make_pair(S.br[x], coker_data(S.elements[x])); };
    auto dkey = [&](size_t x) { return rank(S.elements[x]); };
    auto same = [](auto a, auto b) { return a.first == b.first && a.second == b.second; };
    for (Idx x = 0; x < S.n; ++x)
      for (Idx y = 0; y < S.n; ++y) {
        REQUIRE((G.r_class[x] == G.r_class[y]) == same(rkey(x), rkey(y)));
        REQUIRE((G.l_class[x] == G.l_class[y]) == same(lkey(x), lkey(y)));
        REQUIRE((G.d_class[x] == G.d_class[y]) == (dkey(x) == dkey(y)));
      }
  }
}

TEST_CASE("annular kernels are planar equivalences") {
  auto S = build_instance(spec(Family::OriPR_P, {3}));
  for (Idx x = 0; x < S.n; ++x) {
    CHECK(noncrossing_eq(ker_data(S.elements[x]).eq));
    CHECK(noncrossing_eq(coker_data(S.elements[x]).eq));
  }
}
