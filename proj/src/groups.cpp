#include "congwb/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace congwb {

int GroupHClass::local(Idx x) const {
  auto it = std::find(elements.begin(), elements.end(), x);
  return it == elements.end() ? -1 : static_cast<int>(it - elements.begin());
}

GroupHClass group_h_class(const PartialSemigroup& S, const GreenData& G, Idx e) {
  if (S.bd[e] != S.br[e] || S.compose(e, e) != e) throw GroupError("anchor is not an idempotent");
  GroupHClass H;
  H.identity = e;
  H.d_class = G.d_class[e];
  H.rank = S.rank_label.empty() ? -1 : S.rank_label[e];
  H.elements.push_back(e);
  for (Idx x : G.h_members[G.h_class[e]])
    if (x != e) H.elements.push_back(x);
  size_t k = H.order();
  std::vector<int> loc(S.n, -1);
  for (size_t i = 0; i < k; ++i) loc[H.elements[i]] = static_cast<int>(i);
  H.mult.assign(k, std::vector<int>(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      int z = loc[S.compose(H.elements[i], H.elements[j])];
      if (z < 0) throw GroupError("H-class is not closed under composition");
      H.mult[i][j] = z;
    }
  H.inv.assign(k, -1);
  for (size_t i = 0; i < k; ++i) {
    if (H.mult[0][i] != static_cast<int>(i) || H.mult[i][0] != static_cast<int>(i))
      throw GroupError("anchor is not a two-sided identity");
    for (size_t j = 0; j < k; ++j)
      if (H.mult[i][j] == 0 && H.mult[j][i] == 0) { H.inv[i] = static_cast<int>(j); break; }
    if (H.inv[i] < 0) throw GroupError("element without inverse");
  }
  return H;
}

namespace {

std::vector<int> generate(const std::vector<std::vector<int>>& mult, const std::vector<int>& gens) {
  size_t k = mult.size();
  std::vector<char> in(k, 0);
  std::vector<int> out{0};
  in[0] = 1;
  for (size_t i = 0; i < out.size(); ++i)
    for (int g : gens) {
      int z = mult[out[i]][g];
      if (!in[z]) {
        in[z] = 1;
        out.push_back(z);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

int elem_order(const std::vector<std::vector<int>>& mult, int g) {
  int o = 1, x = g;
  while (x != 0) x = mult[x][g], ++o;
  return o;
}

std::string probe(const std::vector<std::vector<int>>& mult, const std::vector<int>& inv,
                  const std::vector<int>& mem) {
  size_t n = mem.size();
  if (n == 1) return "trivial";
  int maxo = 0, maxg = 0;
  for (int g : mem) {
    int o = elem_order(mult, g);
    if (o > maxo) maxo = o, maxg = g;
  }
  if (static_cast<size_t>(maxo) == n) return "cyclic";
  if (n % 2 == 0 && static_cast<size_t>(maxo) == n / 2) {
    // dihedral: some element outside <r> of order 2 inverts r
    auto cyc = generate(mult, {maxg});
    for (int s : mem) {
      if (std::binary_search(cyc.begin(), cyc.end(), s)) continue;
      if (mult[s][s] == 0 && mult[mult[s][maxg]][inv[s]] == inv[maxg]) return "dihedral";
    }
  }
  if (n == 4) return "klein";
  size_t f = 1;
  for (int k = 1; k <= 8; ++k) {
    f *= k;
    if (f == n) return "symmetric";
    if (f / 2 == n && k >= 4) return "alternating";
  }
  return "other";
}

int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

int modpow(long b, int e, int p) {
  long r = 1;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

int det_mod(std::vector<int> a, int q, int p) {
  long det = 1;
  for (int c = 0; c < q; ++c) {
    int piv = -1;
    for (int r = c; r < q; ++r)
      if (a[r * q + c] % p) { piv = r; break; }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < q; ++j) std::swap(a[c * q + j], a[piv * q + j]);
      det = p - det;
    }
    det = det * a[c * q + c] % p;
    int inv = modpow(a[c * q + c], p - 2, p);
    for (int r = c + 1; r < q; ++r) {
      long f = static_cast<long>(a[r * q + c]) * inv % p;
      for (int j = 0; j < q; ++j) a[r * q + j] = static_cast<int>(((a[r * q + j] - f * a[c * q + j]) % p + p) % p);
    }
  }
  return static_cast<int>((det % p + p) % p);
}

}  // namespace

bool is_normal(const GroupHClass& G, const std::vector<int>& m) {
  std::vector<char> in(G.order(), 0);
  for (int x : m) in[x] = 1;
  if (!in[0]) return false;
  for (int a : m) {
    if (!in[G.inv[a]]) return false;
    for (int b : m)
      if (!in[G.mult[a][b]]) return false;
  }
  for (size_t g = 0; g < G.order(); ++g)
    for (int a : m)
      if (!in[G.mult[G.mult[g][a]][G.inv[g]]]) return false;
  return true;
}

bool subset_of(const NormalSubgroup& a, const NormalSubgroup& b) {
  return std::includes(b.members.begin(), b.members.end(), a.members.begin(), a.members.end());
}

std::vector<NormalSubgroup> normal_subgroups(const GroupHClass& G, size_t max_order) {
  if (G.order() > max_order) throw GuardError("normal_subgroups: group too large");
  size_t k = G.order();
  std::vector<int> seen_class(k, 0);
  std::set<std::vector<int>> subs;
  subs.insert({0});
  for (size_t g = 0; g < k; ++g) {
    if (seen_class[g]) continue;
    std::vector<int> cls;
    std::vector<char> in(k, 0);
    for (size_t h = 0; h < k; ++h) {
      int c = G.mult[G.mult[h][g]][G.inv[h]];
      if (!in[c]) in[c] = 1, cls.push_back(c), seen_class[c] = 1;
    }
    subs.insert(generate(G.mult, cls));
  }
  // join closure: products of normal subgroups are normal subgroups
  std::vector<std::vector<int>> list(subs.begin(), subs.end());
  for (size_t i = 0; i < list.size(); ++i)
    for (size_t j = 0; j < i; ++j) {
      std::vector<char> in(k, 0);
      std::vector<int> prod;
      for (int a : list[i])
        for (int b : list[j]) {
          int z = G.mult[a][b];
          if (!in[z]) in[z] = 1, prod.push_back(z);
        }
      std::sort(prod.begin(), prod.end());
      if (subs.insert(prod).second) list.push_back(prod);
    }
  std::vector<NormalSubgroup> out;
  for (auto& m : subs) out.push_back({m, ""});
  std::sort(out.begin(), out.end(), [](const NormalSubgroup& a, const NormalSubgroup& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.members < b.members;
  });
  for (auto& n : out)
    if (!is_normal(G, n.members)) throw std::logic_error("non-normal subgroup produced");
  return out;
}

std::string structure_probe(const GroupHClass& G) {
  std::vector<int> all(G.order());
  std::iota(all.begin(), all.end(), 0);
  return probe(G.mult, G.inv, all);
}

NaturalEmbedding natural_embedding(const PartialSemigroup& S, const GreenData& G,
                                   const IdealChain& C, const FamilySpec& spec, int q) {
  int d = C.d_at_rank(q);
  if (d < 0) throw GroupError("no D-class of rank " + std::to_string(q));
  std::vector<int> objs(spec.objects.size());
  std::iota(objs.begin(), objs.end(), 0);
  std::stable_sort(objs.begin(), objs.end(),
                   [&](int a, int b) { return spec.objects[a] < spec.objects[b]; });
  NaturalEmbedding E;
  E.q = q;
  for (int o : objs) {
    const auto& hs = S.homset(o, o);
    Idx chosen = UINT32_MAX;
    if (auto nat = natural_idempotent(spec, o, q); nat && !S.elements.empty())
      for (Idx x : hs)
        if (S.elements[x] == *nat && G.d_class[x] == d) { chosen = x; break; }
    if (chosen == UINT32_MAX)
      for (Idx x : hs)
        if (G.d_class[x] == d && S.compose(x, x) == x) { chosen = x; break; }
    if (chosen != UINT32_MAX) {
      E.anchor_obj = o;
      E.anchor = chosen;
      break;
    }
  }
  if (E.anchor_obj < 0) throw GroupError("no admissible anchor object for rank " + std::to_string(q));
  E.group = group_h_class(S, G, E.anchor);
  if (S.elements.empty()) return E;
  const Element& e = S.elements[E.anchor];
  if (auto* t = std::get_if<Transformation>(&e)) {
    auto im = coker_data(e).support;
    for (Idx g : E.group.elements) {
      const auto& tg = std::get<Transformation>(S.elements[g]);
      std::vector<int> p(im.size());
      for (size_t i = 0; i < im.size(); ++i)
        p[i] = static_cast<int>(std::find(im.begin(), im.end(), tg.images[im[i]]) - im.begin());
      E.perm.push_back(p);
    }
    (void)t;
  } else if (std::holds_alternative<Partition>(e)) {
    auto raw = [&](const Partition& p) {
      // transversal blocks: (min top, min bottom), ordered by min top
      std::map<int, std::pair<int, int>> lo;
      for (int v = 0; v < p.m + p.n; ++v) {
        auto& b = lo.try_emplace(p.label[v], std::make_pair(1 << 30, 1 << 30)).first->second;
        if (v < p.m) b.first = std::min(b.first, v); else b.second = std::min(b.second, v);
      }
      std::vector<std::pair<int, int>> tr;
      for (auto& [l, b] : lo)
        if (b.first < (1 << 30) && b.second < (1 << 30)) tr.push_back(b);
      std::sort(tr.begin(), tr.end());
      std::vector<int> bots;
      for (auto& b : tr) bots.push_back(b.second);
      std::vector<int> sb = bots;
      std::sort(sb.begin(), sb.end());
      std::vector<int> out;
      for (int b : bots) out.push_back(static_cast<int>(std::lower_bound(sb.begin(), sb.end(), b) - sb.begin()));
      return out;
    };
    auto pe = raw(std::get<Partition>(e));
    std::vector<int> pe_inv(pe.size());
    for (size_t i = 0; i < pe.size(); ++i) pe_inv[pe[i]] = static_cast<int>(i);
    for (Idx g : E.group.elements) {
      auto pg = raw(std::get<Partition>(S.elements[g]));
      std::vector<int> r(pg.size());
      for (size_t i = 0; i < pg.size(); ++i) r[i] = pe_inv[pg[i]];
      E.perm.push_back(r);
    }
  } else {
    E.field_p = std::get<Matrix>(e).p;
    for (Idx g : E.group.elements) {
      const auto& m = std::get<Matrix>(S.elements[g]);
      std::vector<int> b;
      for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) b.push_back(m.at(i, j));
      E.block.push_back(b);
    }
  }
  return E;
}

std::vector<int> klein_members(const NaturalEmbedding& E) {
  std::vector<int> out;
  for (size_t i = 0; i < E.perm.size(); ++i) {
    const auto& p = E.perm[i];
    if (p.size() != 4) continue;
    bool fpf_inv = true, id = true;
    for (int j = 0; j < 4; ++j) {
      if (p[j] != j) id = false;
      if (p[j] == j || p[p[j]] != j) fpf_inv = false;
    }
    if (id || fpf_inv) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<int> scalar_members(const NaturalEmbedding& E, const std::vector<int>& scalars) {
  std::vector<int> out;
  int q = E.q;
  for (size_t i = 0; i < E.block.size(); ++i) {
    const auto& b = E.block[i];
    int c = q ? b[0] : 1;
    bool scalar = true;
    for (int r = 0; r < q; ++r)
      for (int s = 0; s < q; ++s)
        if (b[r * q + s] != (r == s ? c : 0)) scalar = false;
    if (scalar && std::find(scalars.begin(), scalars.end(), c) != scalars.end())
      out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

size_t involutions(const GroupHClass& G, const std::vector<int>& members) {
  size_t k = 0;
  for (int i : members)
    if (i != 0 && G.mult[i][i] == 0) ++k;
  return k;
}

}  // namespace

void name_subgroups(const NaturalEmbedding& E, const FamilySpec& spec,
                    std::vector<NormalSubgroup>& subs) {
  const auto& G = E.group;
  size_t gord = G.order();
  size_t qfact = 1;
  for (int i = 2; i <= E.q; ++i) qfact *= i;
  for (auto& N : subs) {
    size_t o = N.order();
    if (o == 1) { N.name = "1"; continue; }
    if (spec.family == Family::L && !E.block.empty()) {
      int q = E.q, p = E.field_p;
      std::vector<int> dets;
      bool all_scalar = true;
      for (int i : N.members) {
        const auto& b = E.block[i];
        for (int r = 0; r < q; ++r)
          for (int s = 0; s < q; ++s)
            if (b[r * q + s] != (r == s ? b[0] : 0)) all_scalar = false;
        dets.push_back(det_mod(b, q, p));
      }
      std::sort(dets.begin(), dets.end());
      dets.erase(std::unique(dets.begin(), dets.end()), dets.end());
      size_t sl = 0;
      for (size_t i = 0; i < gord; ++i) sl += det_mod(E.block[i], q, p) == 1;
      if (all_scalar) {
        N.name = "Z" + std::to_string(q) + "(" + std::to_string(o) + ")";
      } else if (o == sl * dets.size()) {
        N.name = "S" + std::to_string(q) + "(" + std::to_string(dets.size()) + ")";
      } else if (o == 8 && involutions(G, N.members) == 1 && probe(G.mult, G.inv, N.members) != "cyclic") {
        N.name = "Q8";
      } else {
        N.name = "N" + std::to_string(o);
      }
      continue;
    }
    std::string kind = probe(G.mult, G.inv, N.members);
    bool perms = !E.perm.empty();
    if (perms && gord == qfact && o == gord && E.q >= 3) {
      N.name = "S" + std::to_string(E.q);
    } else if (perms && gord == qfact && E.q >= 3 && o * 2 == gord &&
               std::all_of(N.members.begin(), N.members.end(),
                           [&](int i) { return perm_sign(E.perm[i]) == 1; })) {
      N.name = "A" + std::to_string(E.q);
    } else if (o == 4 && kind != "cyclic") {
      auto k = klein_members(E);
      N.name = (perms && k == N.members) ? "K" : "Kbar";
    } else if (kind == "cyclic") {
      N.name = (perms && gord == qfact && o == gord) ? "S" + std::to_string(E.q) : "C" + std::to_string(o);
    } else if (kind == "dihedral") {
      N.name = "D" + std::to_string(o / 2);
    } else {
      N.name = "N" + std::to_string(o);
    }
  }
  // disambiguate repeats
  std::map<std::string, int> count;
  for (auto& N : subs) ++count[N.name];
  std::map<std::string, int> used;
  for (auto& N : subs)
    if (count[N.name] > 1) N.name += "_" + std::to_string(used[N.name]++);
}

}  // namespace congwb
