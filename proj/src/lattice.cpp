#include "congwb/lattice.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>

namespace congwb {

size_t Bitset::count() const {
  size_t c = 0;
  for (uint64_t x : w) c += std::popcount(x);
  return c;
}

int AbstractLattice::bottom() const {
  for (size_t i = 0; i < size(); ++i)
    if (up[i].count() == size()) return static_cast<int>(i);
  return -1;
}

int AbstractLattice::top() const {
  for (size_t i = 0; i < size(); ++i) {
    bool ok = true;
    for (size_t j = 0; j < size() && ok; ++j) ok = leq(j, i);
    if (ok) return static_cast<int>(i);
  }
  return -1;
}

bool AbstractLattice::is_lattice() const {
  size_t n = size();
  if (n == 0) return false;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) {
      // least upper bound: an upper bound below every other upper bound
      Bitset common(n);
      for (size_t k = 0; k < common.w.size(); ++k) common.w[k] = up[a].w[k] & up[b].w[k];
      bool found = false;
      for (size_t c = 0; c < n && !found; ++c) {
        if (!common.test(c)) continue;
        bool least = true;
        for (size_t k = 0; k < common.w.size() && least; ++k)
          least = (common.w[k] & ~up[c].w[k]) == 0;
        found = least;
      }
      if (!found) return false;
    }
  return bottom() >= 0;  // finite with all joins and a bottom: meets exist too
}

AbstractLattice from_order(size_t n, const std::function<bool(size_t, size_t)>& leq) {
  AbstractLattice L;
  L.up.assign(n, Bitset(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (leq(i, j)) L.up[i].set(j);
  return L;
}

AbstractLattice from_covers(size_t n, const std::vector<std::pair<int, int>>& covers) {
  std::vector<std::vector<int>> upper(n);
  for (auto [a, b] : covers) upper[a].push_back(b);
  AbstractLattice L;
  L.up.assign(n, Bitset(n));
  for (size_t s = 0; s < n; ++s) {
    std::vector<int> stack{static_cast<int>(s)};
    L.up[s].set(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : upper[v])
        if (!L.up[s].test(w)) L.up[s].set(w), stack.push_back(w);
    }
  }
  return L;
}

AbstractLattice from_congruences(const std::vector<Congruence>& nodes) {
  return from_order(nodes.size(), [&](size_t i, size_t j) { return contains(nodes[j], nodes[i]); });
}

AbstractLattice from_congruence_lattice(const CongruenceLattice& L) {
  AbstractLattice A = from_covers(L.size(), L.covers);
  A.labels = L.labels;
  return A;
}

AbstractLattice subgroup_lattice(const std::vector<NormalSubgroup>& subs) {
  AbstractLattice L = from_order(subs.size(), [&](size_t i, size_t j) { return subset_of(subs[i], subs[j]); });
  for (auto& s : subs) L.labels.push_back(s.name);
  return L;
}

std::vector<std::pair<int, int>> hasse(const AbstractLattice& L) {
  size_t n = L.size();
  std::vector<std::pair<int, int>> out;
  for (size_t x = 0; x < n; ++x) {
    // covers of x: strict upper bounds not strictly above another one
    Bitset above(n);
    for (size_t z = 0; z < n; ++z) {
      if (z == x || !L.leq(x, z)) continue;
      for (size_t k = 0; k < above.w.size(); ++k) {
        uint64_t v = L.up[z].w[k];
        if (k == (z >> 6)) v &= ~(uint64_t{1} << (z & 63));
        above.w[k] |= v;
      }
    }
    for (size_t y = 0; y < n; ++y)
      if (y != x && L.leq(x, y) && !above.test(y)) out.emplace_back(static_cast<int>(x), static_cast<int>(y));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct Digraph {
  size_t n = 0;
  std::vector<std::vector<int>> out, in;
};

Digraph cover_graph(const AbstractLattice& L) {
  Digraph g;
  g.n = L.size();
  g.out.assign(g.n, {});
  g.in.assign(g.n, {});
  for (auto [a, b] : hasse(L)) g.out[a].push_back(b), g.in[b].push_back(a);
  return g;
}

// Joint refinement: colours are comparable across both graphs.
bool refine(const Digraph& g1, const Digraph& g2, std::vector<int>& c1, std::vector<int>& c2) {
  size_t prev = 0;
  while (true) {
    std::map<std::vector<int>, int> ids;
    auto sig = [&](const Digraph& g, const std::vector<int>& c, size_t v) {
      std::vector<int> key{c[v]};
      std::vector<int> o, i;
      for (int w : g.out[v]) o.push_back(c[w]);
      for (int w : g.in[v]) i.push_back(c[w]);
      std::sort(o.begin(), o.end());
      std::sort(i.begin(), i.end());
      key.push_back(-1);
      key.insert(key.end(), o.begin(), o.end());
      key.push_back(-2);
      key.insert(key.end(), i.begin(), i.end());
      return key;
    };
    std::vector<std::vector<int>> k1(g1.n), k2(g2.n);
    for (size_t v = 0; v < g1.n; ++v) ids.emplace(k1[v] = sig(g1, c1, v), 0);
    for (size_t v = 0; v < g2.n; ++v) ids.emplace(k2[v] = sig(g2, c2, v), 0);
    int next = 0;
    for (auto& [k, id] : ids) id = next++;
    for (size_t v = 0; v < g1.n; ++v) c1[v] = ids[k1[v]];
    for (size_t v = 0; v < g2.n; ++v) c2[v] = ids[k2[v]];
    std::vector<int> h1(next, 0), h2(next, 0);
    for (int c : c1) ++h1[c];
    for (int c : c2) ++h2[c];
    if (h1 != h2) return false;
    if (ids.size() == prev) return true;
    prev = ids.size();
  }
}

bool search(const Digraph& g1, const Digraph& g2, std::vector<int> c1, std::vector<int> c2) {
  if (!refine(g1, g2, c1, c2)) return false;
  int ncol = 0;
  for (int c : c1) ncol = std::max(ncol, c + 1);
  std::vector<int> sz(ncol, 0);
  for (int c : c1) ++sz[c];
  int pick = -1;
  for (int c = 0; c < ncol; ++c)
    if (sz[c] > 1 && (pick < 0 || sz[c] < sz[pick])) pick = c;
  if (pick < 0) {
    std::vector<int> map(g1.n), at(ncol);
    for (size_t v = 0; v < g2.n; ++v) at[c2[v]] = static_cast<int>(v);
    for (size_t v = 0; v < g1.n; ++v) map[v] = at[c1[v]];
    for (size_t v = 0; v < g1.n; ++v) {
      std::vector<int> a, b(g2.out[map[v]]);
      for (int w : g1.out[v]) a.push_back(map[w]);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) return false;
    }
    return true;
  }
  size_t v = 0;
  while (c1[v] != pick) ++v;
  for (size_t w = 0; w < g2.n; ++w) {
    if (c2[w] != pick) continue;
    auto d1 = c1, d2 = c2;
    d1[v] = d2[w] = ncol;
    if (search(g1, g2, d1, d2)) return true;
  }
  return false;
}

}  // namespace

bool is_isomorphic(const AbstractLattice& a, const AbstractLattice& b, size_t guard) {
  if (a.size() > guard || b.size() > guard)
    throw LatticeGuardError("lattice isomorphism is limited to " + std::to_string(guard) + " nodes");
  if (a.size() != b.size()) return false;
  Digraph g1 = cover_graph(a), g2 = cover_graph(b);
  return search(g1, g2, std::vector<int>(g1.n, 0), std::vector<int>(g2.n, 0));
}

AbstractLattice eq_lattice(int n) {
  if (n > 6) throw LatticeGuardError("eq_lattice is limited to n <= 6");
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int i, int mx) {
    if (i == n) {
      parts.push_back(cur);
      return;
    }
    for (int v = 0; v <= mx + 1; ++v) {
      cur.push_back(v);
      rec(i + 1, std::max(mx, v));
      cur.pop_back();
    }
  };
  rec(0, -1);
  return from_order(parts.size(), [&](size_t a, size_t b) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (parts[a][i] == parts[a][j] && parts[b][i] != parts[b][j]) return false;
    return true;
  });
}

AbstractLattice direct_product(const AbstractLattice& a, const AbstractLattice& b) {
  size_t m = b.size();
  return from_order(a.size() * m, [&](size_t x, size_t y) {
    return a.leq(x / m, y / m) && b.leq(x % m, y % m);
  });
}

AbstractLattice chain(size_t n) {
  return from_order(n, [](size_t i, size_t j) { return i <= j; });
}

AbstractLattice adjoin_top(const AbstractLattice& a) {
  size_t n = a.size();
  AbstractLattice out = from_order(n + 1, [&](size_t i, size_t j) { return j == n || (i < n && a.leq(i, j)); });
  out.labels = a.labels;
  if (!out.labels.empty()) out.labels.push_back("top");
  return out;
}

AbstractLattice stack_lattices(const AbstractLattice& base, const std::vector<AbstractLattice>& groups) {
  if (base.top() < 0) throw std::invalid_argument("stack_lattices: base has no top");
  // node -> (layer, local index); layer 0 is the base
  std::vector<std::pair<int, int>> nodes;
  for (size_t i = 0; i < base.size(); ++i) nodes.emplace_back(0, static_cast<int>(i));
  std::vector<const AbstractLattice*> layers{&base};
  for (auto& g : groups) {
    int b = g.bottom();
    if (b < 0 || g.top() < 0) throw std::invalid_argument("stack_lattices: layer without bottom or top");
    layers.push_back(&g);
    // only the first layer shares its bottom (R_{I_k}) with the base top
    for (size_t i = 0; i < g.size(); ++i)
      if (layers.size() > 2 || static_cast<int>(i) != b) nodes.emplace_back(static_cast<int>(layers.size()) - 1, static_cast<int>(i));
  }
  int cap = static_cast<int>(layers.size());
  nodes.emplace_back(cap, 0);
  return from_order(nodes.size(), [&](size_t x, size_t y) {
    auto [lx, ix] = nodes[x];
    auto [ly, iy] = nodes[y];
    if (lx != ly) return lx < ly;
    if (lx == cap) return true;
    return layers[lx]->leq(ix, iy);
  });
}

}  // namespace congwb
