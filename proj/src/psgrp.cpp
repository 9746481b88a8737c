#include "congwb/psgrp.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <random>
#include <unordered_map>

namespace congwb {

size_t max_elements_guard() {
  if (const char* s = std::getenv("CONGWB_MAX_ELEMENTS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return static_cast<size_t>(v);
  }
  return 5000;
}

std::string PartialSemigroup::name(Idx x) const {
  if (x < elements.size()) return to_string(elements[x]);
  return "e" + std::to_string(x);
}

namespace {

void index_structure(PartialSemigroup& S) {
  int k = S.n_objects;
  S.hom.assign(static_cast<size_t>(k) * k, {});
  S.by_dom.assign(k, {});
  S.by_ran.assign(k, {});
  S.pos_in_dom.assign(S.n, 0);
  for (Idx x = 0; x < S.n; ++x) {
    S.hom[S.bd[x] * k + S.br[x]].push_back(x);
    S.pos_in_dom[x] = static_cast<Idx>(S.by_dom[S.bd[x]].size());
    S.by_dom[S.bd[x]].push_back(x);
    S.by_ran[S.br[x]].push_back(x);
  }
  S.row_off.assign(S.n + 1, 0);
  for (Idx x = 0; x < S.n; ++x) S.row_off[x + 1] = S.row_off[x] + S.by_dom[S.br[x]].size();
  S.table.assign(S.row_off[S.n], 0);
}

}  // namespace

PartialSemigroup build_partial_semigroup(
    const std::vector<Element>& elems, int n_objects,
    const std::function<Element(const Element&, const Element&)>& composer, bool force) {
  if (!force && elems.size() > max_elements_guard())
    throw GuardError("instance has " + std::to_string(elems.size()) +
                     " elements, above the size guard of " + std::to_string(max_elements_guard()));
  PartialSemigroup S;
  S.n = elems.size();
  S.n_objects = n_objects;
  S.elements = elems;
  std::unordered_map<Element, Idx, ElementHash> index;
  index.reserve(S.n * 2);
  for (Idx i = 0; i < S.n; ++i) {
    if (!index.emplace(elems[i], i).second)
      throw BuildError("duplicate element " + to_string(elems[i]));
    S.bd.push_back(dom_of(elems[i]));
    S.br.push_back(ran_of(elems[i]));
    S.rank_label.push_back(rank(elems[i]));
  }
  index_structure(S);
  for (Idx x = 0; x < S.n; ++x) {
    size_t off = S.row_off[x];
    for (Idx y : S.by_dom[S.br[x]]) {
      Element z = composer(elems[x], elems[y]);
      auto it = index.find(z);
      if (it == index.end())
        throw BuildError("product " + to_string(elems[x]) + " * " + to_string(elems[y]) + " = " +
                         to_string(z) + " is not in the element universe");
      S.table[off + S.pos_in_dom[y]] = it->second;
    }
  }
  for (Idx x = 0; x < S.n; ++x)
    for (Idx y : S.by_dom[S.br[x]]) {
      Idx z = S.compose(x, y);
      if (S.bd[z] != S.bd[x] || S.br[z] != S.br[y]) throw BuildError("product has wrong objects");
    }
  if (!check_associativity(S)) throw BuildError("associativity violation");
  S.parent_index.resize(S.n);
  std::iota(S.parent_index.begin(), S.parent_index.end(), 0);
  compute_generators(S);
  return S;
}

PartialSemigroup build_instance(const FamilySpec& spec, bool force) {
  spec.validate();
  std::vector<Element> elems;
  int k = static_cast<int>(spec.objects.size());
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      auto h = generate_homset(spec, a, b);
      elems.insert(elems.end(), h.begin(), h.end());
      if (!force && elems.size() > max_elements_guard())
        throw GuardError("instance exceeds the size guard of " +
                         std::to_string(max_elements_guard()) + " elements");
    }
  std::function<Element(const Element&, const Element&)> composer = compose;
  if (spec.family == Family::PL)
    composer = [](const Element& x, const Element& y) {
      return Element{pl_canonicalize(std::get<Matrix>(compose(x, y)))};
    };
  return build_partial_semigroup(elems, k, composer, force);
}

PartialSemigroup from_table(size_t n, int n_objects, std::vector<ObjectId> bd,
                            std::vector<ObjectId> br, const std::function<Idx(Idx, Idx)>& mult) {
  PartialSemigroup S;
  S.n = n;
  S.n_objects = n_objects;
  S.bd = std::move(bd);
  S.br = std::move(br);
  S.rank_label.assign(n, -1);
  index_structure(S);
  for (Idx x = 0; x < n; ++x)
    for (Idx y : S.by_dom[S.br[x]]) S.table[S.row_off[x] + S.pos_in_dom[y]] = mult(x, y);
  S.parent_index.resize(n);
  std::iota(S.parent_index.begin(), S.parent_index.end(), 0);
  compute_generators(S);
  return S;
}

void compute_generators(PartialSemigroup& S) {
  std::vector<size_t> orbit(S.n, 0);
  std::vector<char> seen(S.n, 0);
  for (Idx x = 0; x < S.n; ++x) {
    std::vector<Idx> touched;
    for (Idx y : S.right_mult(x)) {
      Idx z = S.compose(x, y);
      if (!seen[z]) seen[z] = 1, touched.push_back(z);
    }
    orbit[x] = touched.size();
    for (Idx z : touched) seen[z] = 0;
  }
  std::vector<Idx> order(S.n);
  for (Idx x = 0; x < S.n; ++x) order[x] = x;
  auto label = [&](Idx x) { return x < S.rank_label.size() ? S.rank_label[x] : -1; };
  std::stable_sort(order.begin(), order.end(), [&](Idx a, Idx b) {
    if (label(a) != label(b)) return label(a) > label(b);
    return orbit[a] > orbit[b];
  });
  S.gens.clear();
  std::vector<char> in(S.n, 0);
  std::vector<Idx> members, queue;
  auto push = [&](Idx z) {
    if (!in[z]) in[z] = 1, members.push_back(z), queue.push_back(z);
  };
  for (Idx g : order) {
    if (in[g]) continue;
    S.gens.push_back(g);
    size_t m = members.size();
    push(g);
    for (size_t i = 0; i < m; ++i)
      if (S.composable(members[i], g)) push(S.compose(members[i], g));
    while (!queue.empty()) {
      Idx x = queue.back();
      queue.pop_back();
      for (Idx h : S.gens)
        if (S.composable(x, h)) push(S.compose(x, h));
    }
  }
  std::sort(S.gens.begin(), S.gens.end());
  S.gens_by_ran.assign(S.n_objects, {});
  S.gens_by_dom.assign(S.n_objects, {});
  for (Idx g : S.gens) S.gens_by_ran[S.br[g]].push_back(g), S.gens_by_dom[S.bd[g]].push_back(g);
}

bool check_associativity(const PartialSemigroup& S, size_t samples) {
  if (S.n <= 300) {
    for (Idx x = 0; x < S.n; ++x)
      for (Idx y : S.right_mult(x)) {
        Idx xy = S.compose(x, y);
        for (Idx z : S.right_mult(y))
          if (S.compose(xy, z) != S.compose(x, S.compose(y, z))) return false;
      }
    return true;
  }
  std::mt19937_64 rng(0x5eed);
  for (size_t t = 0; t < samples; ++t) {
    Idx x = static_cast<Idx>(rng() % S.n);
    const auto& ry = S.right_mult(x);
    if (ry.empty()) continue;
    Idx y = ry[rng() % ry.size()];
    const auto& rz = S.right_mult(y);
    if (rz.empty()) continue;
    Idx z = rz[rng() % rz.size()];
    if (S.compose(S.compose(x, y), z) != S.compose(x, S.compose(y, z))) return false;
  }
  return true;
}

namespace {

// Iterative Tarjan SCC; returns component id per node.
template <class Succ>
std::vector<int> scc(size_t n, Succ succ, int& ncomp) {
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<Idx> stack;
  std::vector<char> on(n, 0);
  int counter = 0;
  ncomp = 0;
  struct Frame {
    Idx v;
    size_t i;
  };
  std::vector<Frame> call;
  std::vector<Idx> nb;
  for (Idx s = 0; s < n; ++s) {
    if (index[s] >= 0) continue;
    call.push_back({s, 0});
    index[s] = low[s] = counter++;
    stack.push_back(s);
    on[s] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      Idx v = f.v;
      bool pushed = false;
      size_t deg = succ.degree(v);
      while (f.i < deg) {
        Idx w = succ(v, f.i++);
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
          pushed = true;
          break;
        }
        if (on[w]) low[v] = std::min(low[v], index[w]);
      }
      if (pushed) continue;
      if (low[v] == index[v]) {
        while (true) {
          Idx w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp[w] = ncomp;
          if (w == v) break;
        }
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) {
        Idx u = call.back().v;
        low[u] = std::min(low[u], low[v]);
      }
    }
  }
  return comp;
}

struct RightSucc {
  const PartialSemigroup& S;
  size_t degree(Idx v) const { return S.right_mult(v).size(); }
  Idx operator()(Idx v, size_t i) const { return S.compose(v, S.right_mult(v)[i]); }
};
struct LeftSucc {
  const PartialSemigroup& S;
  size_t degree(Idx v) const { return S.left_mult(v).size(); }
  Idx operator()(Idx v, size_t i) const { return S.compose(S.left_mult(v)[i], v); }
};
struct BothSucc {
  const PartialSemigroup& S;
  size_t degree(Idx v) const { return S.right_mult(v).size() + S.left_mult(v).size(); }
  Idx operator()(Idx v, size_t i) const {
    size_t r = S.right_mult(v).size();
    return i < r ? S.compose(v, S.right_mult(v)[i]) : S.compose(S.left_mult(v)[i - r], v);
  }
};

// Relabel class ids by first appearance so they are deterministic.
int normalize(std::vector<int>& c) {
  std::unordered_map<int, int> m;
  for (int& v : c) {
    auto it = m.find(v);
    if (it == m.end()) it = m.emplace(v, static_cast<int>(m.size())).first;
    v = it->second;
  }
  return static_cast<int>(m.size());
}

std::vector<std::vector<Idx>> members(const std::vector<int>& c, int k) {
  std::vector<std::vector<Idx>> out(k);
  for (Idx x = 0; x < c.size(); ++x) out[c[x]].push_back(x);
  return out;
}

}  // namespace

GreenData green_relations(const PartialSemigroup& S) {
  GreenData G;
  int nc = 0;
  G.r_class = scc(S.n, RightSucc{S}, nc);
  G.n_r = normalize(G.r_class);
  G.l_class = scc(S.n, LeftSucc{S}, nc);
  G.n_l = normalize(G.l_class);
  G.j_class = scc(S.n, BothSucc{S}, nc);
  int n_j = normalize(G.j_class);

  std::unordered_map<uint64_t, int> hmap;
  G.h_class.resize(S.n);
  for (Idx x = 0; x < S.n; ++x) {
    uint64_t key = (static_cast<uint64_t>(G.r_class[x]) << 32) | static_cast<uint32_t>(G.l_class[x]);
    auto it = hmap.find(key);
    if (it == hmap.end()) it = hmap.emplace(key, static_cast<int>(hmap.size())).first;
    G.h_class[x] = it->second;
  }
  G.n_h = static_cast<int>(hmap.size());

  // D as the join of R and L, then the eggbox test shows R o L = L o R = D.
  std::vector<int> p(S.n);
  std::iota(p.begin(), p.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  std::vector<int> rep_r(G.n_r, -1), rep_l(G.n_l, -1);
  for (Idx x = 0; x < S.n; ++x) {
    int& a = rep_r[G.r_class[x]];
    if (a < 0) a = x; else p[find(x)] = find(a);
    int& b = rep_l[G.l_class[x]];
    if (b < 0) b = x; else p[find(x)] = find(b);
  }
  G.d_class.resize(S.n);
  for (Idx x = 0; x < S.n; ++x) G.d_class[x] = find(x);
  G.n_d = normalize(G.d_class);
  G.r_members = members(G.r_class, G.n_r);
  G.l_members = members(G.l_class, G.n_l);
  G.h_members = members(G.h_class, G.n_h);
  G.d_members = members(G.d_class, G.n_d);
  for (int d = 0; d < G.n_d; ++d) {
    std::vector<int> rs, ls;
    for (Idx x : G.d_members[d]) rs.push_back(G.r_class[x]), ls.push_back(G.l_class[x]);
    std::sort(rs.begin(), rs.end());
    std::sort(ls.begin(), ls.end());
    size_t nr = std::unique(rs.begin(), rs.end()) - rs.begin();
    size_t nl = std::unique(ls.begin(), ls.end()) - ls.begin();
    std::vector<int> hs;
    for (Idx x : G.d_members[d]) hs.push_back(G.h_class[x]);
    std::sort(hs.begin(), hs.end());
    size_t nh = std::unique(hs.begin(), hs.end()) - hs.begin();
    if (nr * nl != nh) throw std::logic_error("R o L differs from L o R");
  }

  // D = J iff the partitions coincide.
  G.d_equals_j = n_j == G.n_d;
  for (Idx x = 0; x < S.n && G.d_equals_j; ++x)
    for (Idx y : G.d_members[G.d_class[x]])
      if (G.j_class[y] != G.j_class[x]) { G.d_equals_j = false; break; }

  // J-order on D-classes by reachability in the two-sided graph.
  G.j_leq.assign(G.n_d, std::vector<char>(G.n_d, 0));
  std::vector<std::vector<char>> edge(G.n_d, std::vector<char>(G.n_d, 0));
  for (Idx x = 0; x < S.n; ++x) {
    for (Idx c : S.right_mult(x)) edge[G.d_class[x]][G.d_class[S.compose(x, c)]] = 1;
    for (Idx c : S.left_mult(x)) edge[G.d_class[x]][G.d_class[S.compose(c, x)]] = 1;
  }
  for (int b = 0; b < G.n_d; ++b) {
    std::vector<int> todo{b};
    G.j_leq[b][b] = 1;
    while (!todo.empty()) {
      int u = todo.back();
      todo.pop_back();
      for (int v = 0; v < G.n_d; ++v)
        if (edge[u][v] && !G.j_leq[v][b]) {
          G.j_leq[v][b] = 1;
          todo.push_back(v);
        }
    }
  }
  G.j_is_chain = true;
  for (int a = 0; a < G.n_d; ++a)
    for (int b = 0; b < G.n_d; ++b)
      if (!G.j_leq[a][b] && !G.j_leq[b][a]) G.j_is_chain = false;

  for (Idx x = 0; x < S.n; ++x)
    if (S.bd[x] == S.br[x] && S.compose(x, x) == x) G.idempotents.push_back(x);
  return G;
}

std::vector<char> IdealChain::ideal_mask(int r) const {
  std::vector<char> mask(S->n, 0);
  for (size_t i = 0; i < d_sorted.size(); ++i)
    if (rank_of_class[i] <= r)
      for (Idx x : G->d_members[d_sorted[i]]) mask[x] = 1;
  return mask;
}

std::vector<Idx> IdealChain::ideal(int r) const {
  auto m = ideal_mask(r);
  std::vector<Idx> out;
  for (Idx x = 0; x < m.size(); ++x)
    if (m[x]) out.push_back(x);
  return out;
}

int IdealChain::d_at_rank(int r) const {
  for (size_t i = 0; i < d_sorted.size(); ++i)
    if (rank_of_class[i] == r) return d_sorted[i];
  return -1;
}

IdealChain ideal_chain(const PartialSemigroup& S, const GreenData& G) {
  if (!G.j_is_chain)
    throw ChainError(
        "the J-order on D-classes is not a chain; for Brauer-type categories split the objects "
        "by parity (even and odd parts)");
  IdealChain C;
  C.S = &S;
  C.G = &G;
  std::vector<std::pair<int, int>> order;
  for (int d = 0; d < G.n_d; ++d) {
    int below = 0;
    for (int e = 0; e < G.n_d; ++e) below += G.j_leq[e][d];
    order.push_back({below, d});
  }
  std::sort(order.begin(), order.end());
  for (size_t i = 0; i < order.size(); ++i) {
    int d = order[i].second;
    C.d_sorted.push_back(d);
    int lab = S.rank_label.empty() ? -1 : S.rank_label[G.d_members[d][0]];
    for (Idx x : G.d_members[d])
      if (!S.rank_label.empty() && S.rank_label[x] != lab) lab = -1;
    C.rank_of_class.push_back(lab);
  }
  bool labelled = true;
  for (size_t i = 0; i < C.rank_of_class.size(); ++i)
    if (C.rank_of_class[i] < 0 || (i && C.rank_of_class[i] <= C.rank_of_class[i - 1])) labelled = false;
  if (!labelled)
    for (size_t i = 0; i < C.rank_of_class.size(); ++i) C.rank_of_class[i] = static_cast<int>(i);
  for (int r : C.rank_of_class)
    if (!is_ideal(S, C.ideal_mask(r))) throw ChainError("I_" + std::to_string(r) + " is not an ideal");
  return C;
}

bool is_ideal(const PartialSemigroup& S, const std::vector<char>& mask) {
  for (Idx x = 0; x < S.n; ++x) {
    if (!mask[x]) continue;
    for (Idx c : S.right_mult(x))
      if (!mask[S.compose(x, c)]) return false;
    for (Idx c : S.left_mult(x))
      if (!mask[S.compose(c, x)]) return false;
  }
  return true;
}

bool is_stable(const PartialSemigroup& S, const GreenData& G) {
  for (Idx x = 0; x < S.n; ++x) {
    for (Idx a : S.right_mult(x)) {
      Idx y = S.compose(x, a);
      if (G.j_class[y] == G.j_class[x] && G.r_class[y] != G.r_class[x]) return false;
    }
    for (Idx a : S.left_mult(x)) {
      Idx y = S.compose(a, x);
      if (G.j_class[y] == G.j_class[x] && G.l_class[y] != G.l_class[x]) return false;
    }
  }
  return true;
}

bool is_regular(const PartialSemigroup& S) {
  for (Idx x = 0; x < S.n; ++x) {
    bool ok = false;
    for (Idx a : S.homset(S.br[x], S.bd[x]))
      if (S.compose(S.compose(x, a), x) == x) { ok = true; break; }
    if (!ok) return false;
  }
  return true;
}

bool is_h_trivial_class(const GreenData& G, int d_class) {
  for (Idx x : G.d_members[d_class])
    if (G.h_members[G.h_class[x]].size() != 1) return false;
  return true;
}

PartialSemigroup restrict_to_ideal(const PartialSemigroup& S, const std::vector<char>& mask) {
  if (!is_ideal(S, mask)) throw std::invalid_argument("restrict_to_ideal: not an ideal");
  std::vector<Idx> keep, newi(S.n, UINT32_MAX);
  for (Idx x = 0; x < S.n; ++x)
    if (mask[x]) {
      newi[x] = static_cast<Idx>(keep.size());
      keep.push_back(x);
    }
  std::vector<ObjectId> bd, br;
  for (Idx x : keep) bd.push_back(S.bd[x]), br.push_back(S.br[x]);
  PartialSemigroup T = from_table(keep.size(), S.n_objects, bd, br,
                                  [&](Idx a, Idx b) { return newi[S.compose(keep[a], keep[b])]; });
  T.parent_index = keep;
  for (size_t i = 0; i < keep.size(); ++i) {
    if (!S.elements.empty()) T.elements.push_back(S.elements[keep[i]]);
    T.rank_label[i] = S.rank_label.empty() ? -1 : S.rank_label[keep[i]];
  }
  compute_generators(T);
  return T;
}

}  // namespace congwb
