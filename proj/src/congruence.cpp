#include "congwb/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <thread>
#include <unordered_set>

namespace congwb {

namespace {

struct UF {
  std::vector<Idx> p;
  explicit UF(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  Idx find(Idx x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(Idx a, Idx b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    if (a < b) std::swap(a, b);
    p[a] = b;
    return true;
  }
};

Congruence canon_uf(UF& u) {
  Congruence c;
  c.cls.resize(u.p.size());
  std::vector<Idx> minrep(u.p.size(), UINT32_MAX);
  for (Idx x = 0; x < u.p.size(); ++x) {
    Idx r = u.find(x);
    if (minrep[r] == UINT32_MAX) minrep[r] = x;
    c.cls[x] = minrep[r];
  }
  return c;
}

struct VecHash {
  size_t operator()(const std::vector<Idx>& v) const {
    size_t h = v.size();
    for (Idx x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

size_t nonempty_homsets(const PartialSemigroup& S) {
  size_t k = 0;
  for (auto& h : S.hom) k += !h.empty();
  return k;
}

}  // namespace

size_t Congruence::n_classes() const {
  size_t k = 0;
  for (Idx x = 0; x < cls.size(); ++x) k += cls[x] == x;
  return k;
}

std::vector<std::vector<Idx>> Congruence::classes() const {
  std::vector<std::vector<Idx>> out;
  std::vector<int> slot(cls.size(), -1);
  for (Idx x = 0; x < cls.size(); ++x) {
    if (slot[cls[x]] < 0) {
      slot[cls[x]] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[cls[x]]].push_back(x);
  }
  return out;
}

size_t CongruenceHash::operator()(const Congruence& c) const {
  size_t h = c.cls.size();
  for (Idx v : c.cls) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Congruence canonical_from_labels(const std::vector<Idx>& labels) {
  Congruence c;
  c.cls.resize(labels.size());
  std::unordered_map<Idx, Idx> first;
  for (Idx x = 0; x < labels.size(); ++x) {
    auto it = first.emplace(labels[x], x).first;
    c.cls[x] = it->second;
  }
  return c;
}

Congruence diagonal(size_t n) {
  Congruence c;
  c.cls.resize(n);
  std::iota(c.cls.begin(), c.cls.end(), 0);
  return c;
}

Congruence hom_universal(const PartialSemigroup& S) {
  Congruence c;
  c.cls.resize(S.n);
  for (auto& h : S.hom)
    for (Idx x : h) c.cls[x] = h.front();
  return c;
}

bool contains(const Congruence& big, const Congruence& small) {
  for (Idx x = 0; x < small.cls.size(); ++x)
    if (big.cls[small.cls[x]] != big.cls[x]) return false;
  return true;
}

Congruence join(const Congruence& a, const Congruence& b) {
  UF u(a.cls.size());
  for (Idx x = 0; x < a.cls.size(); ++x) {
    if (a.cls[x] != x) u.unite(x, a.cls[x]);
    if (b.cls[x] != x) u.unite(x, b.cls[x]);
  }
  return canon_uf(u);
}

Congruence meet(const Congruence& a, const Congruence& b) {
  std::vector<Idx> lab(a.cls.size());
  std::unordered_map<uint64_t, Idx> m;
  for (Idx x = 0; x < a.cls.size(); ++x) {
    uint64_t key = (static_cast<uint64_t>(a.cls[x]) << 32) | b.cls[x];
    lab[x] = m.emplace(key, x).first->second;
  }
  return canonical_from_labels(lab);
}

Congruence relation_union(const Congruence& a, const Congruence& b) { return join(a, b); }

bool is_congruence(const PartialSemigroup& S, const Congruence& c) {
  if (c.cls.size() != S.n) return false;
  for (Idx x = 0; x < S.n; ++x) {
    Idx r = c.cls[x];
    if (c.cls[r] != r || r > x) return false;
    if (r == x) continue;
    if (!S.same_hom(x, r)) return false;
    for (Idx a : S.left_mult(x))
      if (c.cls[S.compose(a, x)] != c.cls[S.compose(a, r)]) return false;
    for (Idx a : S.right_mult(x))
      if (c.cls[S.compose(x, a)] != c.cls[S.compose(r, a)]) return false;
  }
  return true;
}

Congruence close_congruence(const PartialSemigroup& S, const Congruence& start,
                            const std::vector<std::pair<Idx, Idx>>& pairs) {
  for (auto [x, y] : pairs)
    if (!S.same_hom(x, y)) throw SeedError("seed pair is not hom-compatible");
  UF u(S.n);
  size_t classes = S.n;
  for (Idx x = 0; x < S.n; ++x)
    if (start.cls[x] != x) u.p[x] = start.cls[x], --classes;
  const size_t floor = nonempty_homsets(S);
  std::vector<std::pair<Idx, Idx>> work(pairs.rbegin(), pairs.rend());
  while (!work.empty() && classes > floor) {
    auto [a, b] = work.back();
    work.pop_back();
    if (!u.unite(a, b)) continue;
    --classes;
    // translations by generators suffice
    for (Idx c : S.gens_by_ran[S.bd[a]]) {
      Idx ca = S.compose(c, a), cb = S.compose(c, b);
      if (ca != cb) work.emplace_back(ca, cb);
    }
    for (Idx c : S.gens_by_dom[S.br[a]]) {
      Idx ac = S.compose(a, c), bc = S.compose(b, c);
      if (ac != bc) work.emplace_back(ac, bc);
    }
  }
  if (classes == floor) return hom_universal(S);
  return canon_uf(u);
}

Congruence principal_congruence(const PartialSemigroup& S,
                                const std::vector<std::pair<Idx, Idx>>& pairs) {
  return close_congruence(S, diagonal(S.n), pairs);
}

bool CongruenceLattice::is_chain() const {
  for (size_t i = 0; i < nodes.size(); ++i)
    for (size_t j = i + 1; j < nodes.size(); ++j)
      if (!contains(nodes[i], nodes[j]) && !contains(nodes[j], nodes[i])) return false;
  return true;
}

std::vector<Congruence> principal_congruences(const PartialSemigroup& S, const EnumOptions& opt) {
  std::vector<std::pair<Idx, Idx>> seeds;
  for (auto& h : S.hom)
    for (size_t i = 0; i < h.size(); ++i)
      for (size_t j = i + 1; j < h.size(); ++j) seeds.emplace_back(h[i], h[j]);
  unsigned nt = std::max(1u, opt.threads);
  std::vector<std::vector<Congruence>> part(nt);
  auto work = [&](unsigned t) {
    std::unordered_set<Congruence, CongruenceHash> seen;
    for (size_t i = t; i < seeds.size(); i += nt) {
      Congruence c = principal_congruence(S, {seeds[i]});
      if (seen.insert(c).second) part[t].push_back(std::move(c));
    }
  };
  if (nt == 1) {
    work(0);
  } else {
    std::vector<std::thread> th;
    for (unsigned t = 0; t < nt; ++t) th.emplace_back(work, t);
    for (auto& t : th) t.join();
  }
  std::vector<Congruence> out;
  std::unordered_set<Congruence, CongruenceHash> seen;
  for (auto& p : part)
    for (auto& c : p)
      if (seen.insert(c).second) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const Congruence& a, const Congruence& b) {
    size_t ka = a.n_classes(), kb = b.n_classes();
    return ka != kb ? ka > kb : a.cls < b.cls;
  });
  return out;
}

void build_covers(CongruenceLattice& L, const std::vector<Congruence>& principals) {
  L.covers.clear();
  std::vector<size_t> ncls(L.size());
  for (size_t i = 0; i < L.size(); ++i) ncls[i] = L.nodes[i].n_classes();
  for (size_t i = 0; i < L.size(); ++i) {
    std::vector<int> cand;
    for (auto& p : principals) {
      if (contains(L.nodes[i], p)) continue;
      int j = L.find(join(L.nodes[i], p));
      if (j < 0) throw std::logic_error("join closure incomplete");
      cand.push_back(j);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (int j : cand) {
      bool minimal = true;
      for (int k : cand)
        if (k != j && ncls[k] > ncls[j] && contains(L.nodes[j], L.nodes[k])) {
          minimal = false;
          break;
        }
      if (minimal) L.covers.emplace_back(static_cast<int>(i), j);
    }
  }
  std::sort(L.covers.begin(), L.covers.end());
}

CongruenceLattice all_congruences(const PartialSemigroup& S, const EnumOptions& opt) {
  if (!opt.force && S.n > opt.max_elements)
    throw GuardError("all_congruences: " + std::to_string(S.n) + " elements exceeds the guard of " +
                     std::to_string(opt.max_elements));
  auto principals = principal_congruences(S, opt);
  std::unordered_set<Congruence, CongruenceHash> seen;
  std::vector<Congruence> all;
  Congruence d = diagonal(S.n);
  seen.insert(d);
  all.push_back(d);
  for (auto& p : principals)
    if (seen.insert(p).second) all.push_back(p);
  for (size_t i = 1; i < all.size(); ++i) {
    for (auto& p : principals) {
      if (contains(all[i], p)) continue;
      Congruence j = join(all[i], p);
      if (seen.insert(j).second) {
        all.push_back(std::move(j));
        if (!opt.force && all.size() > opt.max_congruences)
          throw GuardError("all_congruences: more than " + std::to_string(opt.max_congruences) +
                           " congruences");
      }
    }
  }
  std::sort(all.begin(), all.end(), [](const Congruence& a, const Congruence& b) {
    size_t ka = a.n_classes(), kb = b.n_classes();
    return ka != kb ? ka > kb : a.cls < b.cls;
  });
  CongruenceLattice L;
  L.nodes = std::move(all);
  for (size_t i = 0; i < L.nodes.size(); ++i) L.index.emplace(L.nodes[i], static_cast<int>(i));
  L.labels.assign(L.nodes.size(), "");
  build_covers(L, principals);
  return L;
}

Congruence largest_congruence_below(const PartialSemigroup& S, const Congruence& theta) {
  Congruence cur = meet(theta, hom_universal(S));
  while (true) {
    std::unordered_map<std::vector<Idx>, Idx, VecHash> sig_of;
    std::vector<Idx> lab(S.n);
    for (Idx x = 0; x < S.n; ++x) {
      std::vector<Idx> key{cur.cls[x]};
      for (Idx a : S.gens_by_ran[S.bd[x]]) key.push_back(cur.cls[S.compose(a, x)]);
      for (Idx a : S.gens_by_dom[S.br[x]]) key.push_back(cur.cls[S.compose(x, a)]);
      lab[x] = sig_of.emplace(std::move(key), x).first->second;
    }
    Congruence next = canonical_from_labels(lab);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

Congruence h_relation(const PartialSemigroup& S, const GreenData& G) {
  std::vector<Idx> lab(S.n);
  for (Idx x = 0; x < S.n; ++x) lab[x] = static_cast<Idx>(G.h_class[x]);
  return canonical_from_labels(lab);
}

bool is_idempotent_separating(const GreenData& G, const Congruence& c) {
  std::unordered_set<Idx> seen;
  for (Idx e : G.idempotents)
    if (!seen.insert(c.cls[e]).second) return false;
  return true;
}

Congruence max_h_congruence(const PartialSemigroup& S, const GreenData& G) {
  if (!is_regular(S)) throw std::invalid_argument("max_h_congruence: not regular");
  Congruence z = largest_congruence_below(S, h_relation(S, G));
  if (!is_idempotent_separating(G, z)) throw std::logic_error("zeta is not idempotent-separating");
  return z;
}

Congruence extend_by_diagonal(const PartialSemigroup& I, const Congruence& sigma, size_t n_parent) {
  std::vector<Idx> lab(n_parent);
  std::iota(lab.begin(), lab.end(), 0);
  for (Idx i = 0; i < I.n; ++i) lab[I.parent_index[i]] = I.parent_index[sigma.cls[i]];
  return canonical_from_labels(lab);
}

Congruence restrict(const Congruence& sigma, const PartialSemigroup& I) {
  std::vector<Idx> lab(I.n);
  for (Idx i = 0; i < I.n; ++i) lab[i] = sigma.cls[I.parent_index[i]];
  return canonical_from_labels(lab);
}

bool is_liftable(const PartialSemigroup& I, const Congruence& sigma, const PartialSemigroup& T) {
  std::vector<char> mask(T.n, 0);
  for (Idx p : I.parent_index) mask[p] = 1;
  if (!is_ideal(T, mask)) throw std::invalid_argument("is_liftable: not an ideal");
  return is_congruence(T, extend_by_diagonal(I, sigma, T.n));
}

}  // namespace congwb
