#pragma once
// Shared helpers for the unit tests: FamilySpec shorthands and brute-force
// oracles that avoid the library's own algorithms.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "congwb/predict.hpp"

namespace oracle {

using namespace congwb;

inline FamilySpec spec(Family f, std::vector<int> objs, int p = 2) {
  FamilySpec s;
  s.family = f;
  s.objects = std::move(objs);
  s.field_p = p;
  return s;
}

inline long long bell(int n) {
  // Bell triangle
  std::vector<long long> row{1};
  for (int i = 1; i <= n; ++i) {
    std::vector<long long> next{row.back()};
    for (long long v : row) next.push_back(next.back() + v);
    row = next;
  }
  return row.front();
}

inline long long double_factorial_odd(int n) {  // (2n-1)!!
  long long r = 1;
  for (int k = 2 * n - 1; k > 1; k -= 2) r *= k;
  return r;
}

inline long long catalan(int n) {
  std::vector<long long> c(n + 1, 0);
  c[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j) c[i] += c[j] * c[i - 1 - j];
  return c[n];
}

// xS^1 and S^1x as sorted index sets
inline std::vector<Idx> right_ideal(const PartialSemigroup& S, Idx x) {
  std::set<Idx> s{x};
  for (Idx c = 0; c < S.n; ++c)
    if (S.composable(x, c)) s.insert(S.compose(x, c));
  return {s.begin(), s.end()};
}

inline std::vector<Idx> left_ideal(const PartialSemigroup& S, Idx x) {
  std::set<Idx> s{x};
  for (Idx c = 0; c < S.n; ++c)
    if (S.composable(c, x)) s.insert(S.compose(c, x));
  return {s.begin(), s.end()};
}

inline std::vector<Idx> two_sided_ideal(const PartialSemigroup& S, Idx x) {
  std::set<Idx> s;
  for (Idx y : left_ideal(S, x))
    for (Idx z : right_ideal(S, y)) s.insert(z);
  return {s.begin(), s.end()};
}

// partitions compared as "same class" predicates
template <class A, class B>
bool same_partition(size_t n, A a, B b) {
  for (size_t x = 0; x < n; ++x)
    for (size_t y = x + 1; y < n; ++y)
      if ((a(x) == a(y)) != (b(x) == b(y))) return false;
  return true;
}

inline bool brute_is_congruence(const PartialSemigroup& S, const std::vector<Idx>& cls) {
  for (Idx x = 0; x < S.n; ++x) {
    if (!S.same_hom(x, cls[x])) return false;
    for (Idx y = 0; y < S.n; ++y) {
      if (cls[x] != cls[y]) continue;
      for (Idx c = 0; c < S.n; ++c) {
        if (S.composable(c, x) && cls[S.compose(c, x)] != cls[S.compose(c, y)]) return false;
        if (S.composable(x, c) && cls[S.compose(x, c)] != cls[S.compose(y, c)]) return false;
      }
    }
  }
  return true;
}

// subgroups generated by at most two elements, then filtered by conjugation
inline std::set<std::vector<int>> brute_normal_subgroups(const GroupHClass& G) {
  size_t k = G.order();
  auto gen = [&](std::vector<int> seed) {
    std::set<int> s(seed.begin(), seed.end());
    s.insert(0);
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(s.begin(), s.end());
      for (int a : cur)
        for (int b : cur)
          if (s.insert(G.mult[a][b]).second) grew = true;
    }
    return std::vector<int>(s.begin(), s.end());
  };
  std::set<std::vector<int>> out;
  for (size_t a = 0; a < k; ++a)
    for (size_t b = a; b < k; ++b) {
      auto H = gen({static_cast<int>(a), static_cast<int>(b)});
      bool normal = true;
      for (size_t g = 0; g < k && normal; ++g)
        for (int h : H) {
          int c = G.mult[G.mult[g][h]][G.inv[g]];
          if (!std::binary_search(H.begin(), H.end(), c)) {
            normal = false;
            break;
          }
        }
      if (normal) out.insert(H);
    }
  return out;
}

// D(N x N)D intersected with D x D, as a set of pairs
inline std::set<std::pair<Idx, Idx>> brute_nu(const PartialSemigroup& S, const GreenData& G,
                                               const GroupHClass& H, const std::vector<int>& members) {
  int d = H.d_class;
  std::set<std::pair<Idx, Idx>> out;
  Idx e = H.identity;
  std::vector<Idx> as{e}, bs{e};
  for (Idx a = 0; a < S.n; ++a)
    if (G.d_class[a] == d && S.composable(a, e)) as.push_back(a);
  for (Idx b = 0; b < S.n; ++b)
    if (G.d_class[b] == d && S.composable(e, b)) bs.push_back(b);
  for (Idx a : as)
    for (Idx b : bs)
      for (int g : members)
        for (int h : members) {
          Idx x = S.compose(S.compose(a, H.elements[g]), b);
          Idx y = S.compose(S.compose(a, H.elements[h]), b);
          if (G.d_class[x] == d && G.d_class[y] == d) out.insert({x, y});
        }
  return out;
}

inline std::set<std::pair<Idx, Idx>> pairs_on(const Congruence& c, const std::vector<Idx>& dom) {
  std::set<std::pair<Idx, Idx>> out;
  for (Idx x : dom)
    for (Idx y : dom)
      if (c.related(x, y)) out.insert({x, y});
  return out;
}

}  // namespace oracle
