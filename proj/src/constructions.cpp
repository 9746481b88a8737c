#include "congwb/constructions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <unordered_map>

namespace congwb {

namespace {

std::vector<std::pair<Idx, Idx>> anchor_pairs(const GroupHClass& H, const std::vector<int>& members) {
  std::vector<std::pair<Idx, Idx>> pairs;
  for (int g : members)
    if (g != 0) pairs.emplace_back(H.identity, H.elements[g]);
  return pairs;
}

// sigma on D, diagonal elsewhere
Congruence restrict_to_mask(const Congruence& sigma, const std::vector<char>& mask) {
  size_t n = sigma.cls.size();
  std::vector<Idx> lab(n);
  for (Idx x = 0; x < n; ++x) lab[x] = mask[x] ? static_cast<Idx>(n) + sigma.cls[x] : x;
  return canonical_from_labels(lab);
}

std::vector<char> d_class_mask(const GreenData& G, int d) {
  std::vector<char> m(G.d_class.size(), 0);
  for (Idx x : G.d_members[d]) m[x] = 1;
  return m;
}

void require_congruence(const PartialSemigroup& S, const Congruence& c, const std::string& what) {
  if (!is_congruence(S, c)) throw std::logic_error(what + " is not a congruence");
}

}  // namespace

// ---- IdealContext

std::unique_ptr<IdealContext> IdealContext::make(const FamilySpec& spec, int r, bool force) {
  PartialSemigroup full = build_instance(spec, force);
  if (r < 0) return wrap(spec, std::move(full));
  GreenData G0 = green_relations(full);
  IdealChain C0 = ideal_chain(full, G0);
  auto rk = C0.ranks();
  if (std::find(rk.begin(), rk.end(), r) == rk.end())
    throw std::invalid_argument("rank " + std::to_string(r) + " does not occur in this instance");
  if (r == rk.back()) return wrap(spec, std::move(full));
  auto X = wrap(spec, restrict_to_ideal(full, C0.ideal_mask(r)));
  X->r = r;
  return X;
}

std::unique_ptr<IdealContext> IdealContext::wrap(const FamilySpec& spec, PartialSemigroup S) {
  std::unique_ptr<IdealContext> X(new IdealContext());
  X->spec = spec;
  X->S = std::move(S);
  X->init();
  return X;
}

void IdealContext::init() {
  G = green_relations(S);
  C = ideal_chain(S, G);
  r = C.rank_of_class.back();
}

int IdealContext::next_rank(int q) const {
  for (int p : C.rank_of_class)
    if (p > q) return p;
  return -1;
}

std::vector<char> IdealContext::d_mask(int q) const {
  int d = d_class(q);
  if (d < 0) throw std::invalid_argument("no D-class of rank " + std::to_string(q));
  return d_class_mask(G, d);
}

const NaturalEmbedding& IdealContext::embedding(int q) {
  auto it = emb_.find(q);
  if (it == emb_.end()) it = emb_.emplace(q, natural_embedding(S, G, C, spec, q)).first;
  return it->second;
}

const std::vector<NormalSubgroup>& IdealContext::normals(int q) {
  auto it = normals_.find(q);
  if (it == normals_.end()) {
    const auto& E = embedding(q);
    auto subs = normal_subgroups(E.group);
    name_subgroups(E, spec, subs);
    it = normals_.emplace(q, std::move(subs)).first;
  }
  return it->second;
}

const NormalSubgroup& IdealContext::normal_by_name(int q, const std::string& name) {
  const auto& subs = normals(q);
  std::string known;
  for (auto& N : subs) {
    if (N.name == name) return N;
    known += (known.empty() ? "" : ", ") + N.name;
  }
  throw std::invalid_argument("no normal subgroup named " + name + " at rank " + std::to_string(q) +
                              " (known: " + known + ")");
}

const Congruence& IdealContext::zeta() {
  if (!zeta_) zeta_ = max_h_congruence(S, G);
  return *zeta_;
}

// ---- Rees, nu, R_{I,N}

Congruence rees(const PartialSemigroup& S, const std::vector<char>& mask) {
  if (!is_ideal(S, mask)) throw std::invalid_argument("rees: not an ideal");
  std::vector<Idx> lab(S.n);
  for (Idx x = 0; x < S.n; ++x)
    lab[x] = mask[x] ? static_cast<Idx>(S.n) + S.bd[x] * S.n_objects + S.br[x] : x;
  return canonical_from_labels(lab);
}

Congruence nu(const PartialSemigroup& S, const GreenData& G, const GroupHClass& H,
              const std::vector<int>& members) {
  Congruence sigma = principal_congruence(S, anchor_pairs(H, members));
  Congruence out = restrict_to_mask(sigma, d_class_mask(G, H.d_class));
  for (Idx x = 0; x < S.n; ++x)
    if (G.h_class[x] != G.h_class[out.cls[x]])
      throw std::logic_error("nu: relation leaves H; the D-class is not stable");
  return out;
}

Congruence nu_direct(const PartialSemigroup& S, const GreenData& G, const GroupHClass& H,
                     const std::vector<int>& members) {
  std::vector<char> D = d_class_mask(G, H.d_class);
  Idx e = H.identity;
  std::vector<Idx> lefts{e}, rights{e};
  for (Idx a : S.left_mult(e)) lefts.push_back(a);
  for (Idx b : S.right_mult(e)) rights.push_back(b);
  std::vector<Idx> p(S.n);
  std::iota(p.begin(), p.end(), 0);
  std::function<Idx(Idx)> find = [&](Idx x) { return p[x] == x ? x : p[x] = find(p[x]); };
  for (Idx a : lefts)
    for (Idx b : rights) {
      Idx first = UINT32_MAX;
      for (int g : members) {
        Idx x = S.compose(S.compose(a, H.elements[g]), b);
        if (!D[x]) continue;
        if (first == UINT32_MAX) {
          first = x;
        } else {
          Idx u = find(first), v = find(x);
          if (u != v) p[std::max(u, v)] = std::min(u, v);
        }
      }
    }
  std::vector<Idx> lab(S.n);
  for (Idx x = 0; x < S.n; ++x) lab[x] = find(x);
  return canonical_from_labels(lab);
}

std::vector<int> recover_subgroup(const GroupHClass& H, const Congruence& c) {
  std::vector<int> out;
  for (size_t i = 0; i < H.order(); ++i)
    if (c.related(H.identity, H.elements[i])) out.push_back(static_cast<int>(i));
  return out;
}

Congruence r_in(IdealContext& X, int q, const std::vector<int>& members) {
  Congruence R = rees(X.S, X.ideal(q));
  if (members.size() <= 1) return R;
  int p = X.next_rank(q);
  if (p < 0) throw INError("no D-class above the ideal I_" + std::to_string(q));
  const auto& E = X.embedding(p);
  if (!is_normal(E.group, members)) throw INError("subgroup is not normal");
  Congruence out = join(R, nu(X.S, X.G, E.group, members));
  require_congruence(X.S, out, "R_{I,N}");
  return out;
}

// ---- retractions

std::optional<Retraction> build_retraction(IdealContext& X, int q) {
  const PartialSemigroup& S = X.S;
  std::vector<char> I = X.ideal(q);
  std::vector<char> M = X.ideal(X.min_rank());
  Retraction R;
  R.in_ideal = I;
  R.f.assign(S.n, UINT32_MAX);

  bool hat = !S.elements.empty() && is_partition_family(X.spec.family) &&
             ((is_brauer_family(X.spec.family) && q == 2 && X.min_rank() == 0) ||
              (!is_brauer_family(X.spec.family) && q == 1 && X.min_rank() == 0));
  std::unordered_map<Element, Idx, ElementHash> index;
  if (hat)
    for (Idx x = 0; x < S.n; ++x) index.emplace(S.elements[x], x);

  for (Idx x = 0; x < S.n; ++x) {
    if (!I[x]) continue;
    if (M[x]) {
      R.f[x] = x;
      continue;
    }
    std::vector<Idx> cand;
    for (Idx y : S.homset(S.bd[x], S.br[x])) {
      if (!M[y]) continue;
      bool ok = true;
      for (Idx m : S.right_mult(x))
        if (M[m] && S.compose(x, m) != S.compose(y, m)) { ok = false; break; }
      if (ok)
        for (Idx m : S.left_mult(x))
          if (M[m] && S.compose(m, x) != S.compose(m, y)) { ok = false; break; }
      if (ok) cand.push_back(y);
    }
    if (cand.empty()) return std::nullopt;
    if (cand.size() > 1)
      R.findings.push_back("element " + S.name(x) + " has " + std::to_string(cand.size()) +
                           " retraction candidates");
    Idx pick = cand.front();
    if (hat) {
      auto it = index.find(Element{retract_hat(std::get<Partition>(S.elements[x]), X.spec.family)});
      if (it == index.end()) throw std::logic_error("hat map leaves the instance");
      if (std::find(cand.begin(), cand.end(), it->second) == cand.end())
        R.findings.push_back("hat image of " + S.name(x) + " fails the candidate test");
      pick = it->second;
    }
    R.f[x] = pick;
  }
  R.used_hat = hat;
  if (!verify_retraction(S, R, M)) {
    if (!R.findings.empty()) R.findings.push_back("candidate choice did not give a retraction");
    return std::nullopt;
  }
  return R;
}

bool verify_retraction(const PartialSemigroup& S, const Retraction& R, const std::vector<char>& M) {
  for (Idx x = 0; x < S.n; ++x) {
    if (!R.in_ideal[x]) continue;
    Idx fx = R.f[x];
    if (fx == UINT32_MAX || !M[fx] || !S.same_hom(x, fx)) return false;
    if (M[x] && fx != x) return false;
  }
  for (Idx x = 0; x < S.n; ++x) {
    if (!R.in_ideal[x]) continue;
    for (Idx y : S.right_mult(x))
      if (R.in_ideal[y] && R.f[S.compose(x, y)] != S.compose(R.f[x], R.f[y])) return false;
  }
  return true;
}

bool check_axb(const PartialSemigroup& S, const Retraction& R, size_t samples) {
  auto one = [&](Idx a, Idx x, Idx b) {
    // a or b == UINT32_MAX stands for the adjoined identity
    Idx ax = a == UINT32_MAX ? x : S.compose(a, x);
    Idx axb = b == UINT32_MAX ? ax : S.compose(ax, b);
    Idx afx = a == UINT32_MAX ? R.f[x] : S.compose(a, R.f[x]);
    Idx afxb = b == UINT32_MAX ? afx : S.compose(afx, b);
    return R.f[axb] == afxb;
  };
  if (samples == 0) {
    for (Idx x = 0; x < S.n; ++x) {
      if (!R.in_ideal[x]) continue;
      std::vector<Idx> L{UINT32_MAX}, Rt{UINT32_MAX};
      L.insert(L.end(), S.left_mult(x).begin(), S.left_mult(x).end());
      Rt.insert(Rt.end(), S.right_mult(x).begin(), S.right_mult(x).end());
      for (Idx a : L)
        for (Idx b : Rt)
          if (!one(a, x, b)) return false;
    }
    return true;
  }
  std::vector<Idx> I;
  for (Idx x = 0; x < S.n; ++x)
    if (R.in_ideal[x]) I.push_back(x);
  std::mt19937_64 rng(0x5eed);
  for (size_t s = 0; s < samples; ++s) {
    Idx x = I[rng() % I.size()];
    const auto& L = S.left_mult(x);
    const auto& Rt = S.right_mult(x);
    Idx a = L.empty() || rng() % 8 == 0 ? UINT32_MAX : L[rng() % L.size()];
    Idx b = Rt.empty() || rng() % 8 == 0 ? UINT32_MAX : Rt[rng() % Rt.size()];
    if (!one(a, x, b)) return false;
  }
  return true;
}

// ---- theta family

Congruence m_relation(const IdealContext& X, MRel which) {
  const PartialSemigroup& S = X.S;
  std::vector<char> M = X.ideal(X.min_rank());
  std::unordered_map<uint64_t, Idx> ids;
  std::vector<Idx> lab(S.n);
  for (Idx x = 0; x < S.n; ++x) {
    if (!M[x] || which == MRel::Delta) {
      lab[x] = x;
      continue;
    }
    uint64_t key = static_cast<uint64_t>(S.bd[x] * S.n_objects + S.br[x]) << 32;
    switch (which) {
      case MRel::L: key |= static_cast<uint32_t>(X.G.l_class[x]); break;
      case MRel::R: key |= static_cast<uint32_t>(X.G.r_class[x]); break;
      case MRel::H: key |= static_cast<uint32_t>(X.G.h_class[x]); break;
      default: break;
    }
    lab[x] = static_cast<Idx>(S.n) + ids.emplace(key, static_cast<Idx>(ids.size())).first->second;
  }
  return canonical_from_labels(lab);
}

Congruence theta(const PartialSemigroup& S, const Retraction& R, const Congruence& tau) {
  std::vector<Idx> lab(S.n);
  for (Idx x = 0; x < S.n; ++x)
    lab[x] = R.in_ideal[x] ? static_cast<Idx>(S.n) + tau.cls[R.f[x]] : x;
  return canonical_from_labels(lab);
}

bool in_pair_retractable(IdealContext& X, int q, const std::vector<int>& members) {
  int p = X.next_rank(q);
  if (p < 0) return false;
  const auto& H = X.embedding(p).group;
  std::vector<char> M = X.ideal(X.min_rank());
  const PartialSemigroup& S = X.S;
  for (Idx x = 0; x < S.n; ++x) {
    if (!M[x]) continue;
    Idx left = UINT32_MAX, right = UINT32_MAX;
    for (int g : members) {
      Idx y = H.elements[g];
      if (S.composable(y, x)) {
        Idx z = S.compose(y, x);
        if (left != UINT32_MAX && left != z) return false;
        left = z;
      }
      if (S.composable(x, y)) {
        Idx z = S.compose(x, y);
        if (right != UINT32_MAX && right != z) return false;
        right = z;
      }
    }
  }
  return true;
}

Congruence theta_named(IdealContext& X, int q, MRel which, const std::vector<int>& members) {
  auto R = build_retraction(X, q);
  if (!R) throw INError("the ideal I_" + std::to_string(q) + " is not retractable");
  Congruence out = theta(X.S, *R, m_relation(X, which));
  require_congruence(X.S, out, "theta");
  if (members.size() > 1) {
    if (!in_pair_retractable(X, q, members)) throw INError("IN-pair is not retractable");
    const auto& E = X.embedding(X.next_rank(q));
    out = join(out, nu(X.S, X.G, E.group, members));
    require_congruence(X.S, out, "theta with nu_N");
  }
  return out;
}

// ---- tau_N, N-down, NZ-tuples

Congruence tau_n(IdealContext& X, const std::vector<int>& members) {
  int t = X.top_rank();
  int d = X.d_class(t);
  if (!is_regular(X.S) || !is_stable(X.S, X.G))
    throw std::invalid_argument("tau_n: the top D-class condition fails");
  const auto& E = X.embedding(t);
  Congruence sigma = principal_congruence(X.S, anchor_pairs(E.group, members));
  std::vector<char> below(X.S.n, 1);
  for (Idx x : X.G.d_members[d]) below[x] = 0;
  return restrict_to_mask(sigma, below);
}

std::vector<int> n_down(IdealContext& X, int q, const std::vector<int>& members, int p) {
  const auto& Eq = X.embedding(q);
  const Congruence& z = X.zeta();
  for (int g : members)
    if (!z.related(Eq.group.identity, Eq.group.elements[g]))
      throw INError("n_down: subgroup is not contained in Z_q");
  Congruence sigma = principal_congruence(X.S, anchor_pairs(Eq.group, members));
  const auto& Ep = X.embedding(p);
  return recover_subgroup(Ep.group, sigma);
}

Congruence theta_tuple(IdealContext& X, const std::vector<std::vector<int>>& tuple) {
  auto ranks = X.ranks();
  if (tuple.size() != ranks.size()) throw std::invalid_argument("theta_tuple: one subgroup per rank");
  Congruence out = diagonal(X.S.n);
  for (size_t i = 0; i < ranks.size(); ++i)
    if (tuple[i].size() > 1)
      out = join(out, nu(X.S, X.G, X.embedding(ranks[i]).group, tuple[i]));
  require_congruence(X.S, out, "Theta(N)");
  return out;
}

std::vector<int> z_subgroup(IdealContext& X, int q) {
  return recover_subgroup(X.embedding(q).group, X.zeta());
}

std::vector<std::vector<std::vector<int>>> enumerate_nz_tuples(IdealContext& X) {
  auto ranks = X.ranks();
  size_t k = ranks.size();
  std::vector<std::vector<std::vector<int>>> cands(k);
  for (size_t i = 0; i < k; ++i) {
    auto Z = z_subgroup(X, ranks[i]);
    for (auto& N : X.normals(ranks[i]))
      if (std::includes(Z.begin(), Z.end(), N.members.begin(), N.members.end()))
        cands[i].push_back(N.members);
  }
  // downs[i][c][j] = cands[i][c] down to rank j < i
  std::vector<std::vector<std::vector<std::vector<int>>>> downs(k);
  for (size_t i = 0; i < k; ++i)
    for (auto& N : cands[i]) {
      std::vector<std::vector<int>> d(i);
      if (N.size() > 1) {
        Congruence sigma = principal_congruence(X.S, anchor_pairs(X.embedding(ranks[i]).group, N));
        for (size_t j = 0; j < i; ++j) d[j] = recover_subgroup(X.embedding(ranks[j]).group, sigma);
      } else {
        for (size_t j = 0; j < i; ++j) d[j] = {0};
      }
      downs[i].push_back(std::move(d));
    }
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> pick(k, 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == k) {
      std::vector<std::vector<int>> t(k);
      for (size_t j = 0; j < k; ++j) t[j] = cands[j][pick[j]];
      out.push_back(std::move(t));
      return;
    }
    for (size_t c = 0; c < cands[i].size(); ++c) {
      bool ok = true;
      for (size_t j = 0; j < i && ok; ++j) {
        const auto& d = downs[i][c][j];
        const auto& Nj = cands[j][pick[j]];
        ok = std::includes(Nj.begin(), Nj.end(), d.begin(), d.end());
      }
      if (!ok) continue;
      pick[i] = static_cast<int>(c);
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

bool phi_in(IdealContext& X, Idx x, Idx y, const std::vector<int>& members) {
  const PartialSemigroup& S = X.S;
  if (X.G.h_class[x] != X.G.h_class[y]) throw std::invalid_argument("phi: elements are not H-related");
  int d = X.G.d_class[x];
  int q = -1;
  for (size_t i = 0; i < X.C.d_sorted.size(); ++i)
    if (X.C.d_sorted[i] == d) q = X.C.rank_of_class[i];
  const auto& E = X.embedding(q);
  Idx e = E.group.identity;
  for (Idx u : S.homset(S.bd[e], S.bd[x])) {
    Idx ux = S.compose(u, x);
    if (X.G.d_class[ux] != d) continue;
    for (Idx v : S.homset(S.br[x], S.br[e])) {
      if (S.compose(ux, v) != e) continue;
      int g = E.group.local(S.compose(S.compose(u, y), v));
      if (g < 0) throw std::logic_error("phi: translation leaves the group H-class");
      return std::binary_search(members.begin(), members.end(), g);
    }
  }
  throw std::logic_error("phi: no Green translation to the anchor");
}

std::vector<std::vector<int>> unit_subgroups(int p) {
  std::vector<std::vector<int>> out;
  for (int d = 1; d <= p - 1; ++d) {
    if ((p - 1) % d) continue;
    std::vector<int> H;
    for (int c = 1; c < p; ++c) {
      long x = 1;
      for (int i = 0; i < d; ++i) x = x * c % p;
      if (x == 1) H.push_back(c);
    }
    out.push_back(H);
  }
  return out;
}

}  // namespace congwb
