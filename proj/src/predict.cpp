#include "congwb/predict.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace congwb {

// ---- Prediction

void Prediction::add(const std::string& label, Congruence c) {
  int i = find(c);
  if (i >= 0) {
    if (items[i].label != label) aliases.push_back(label + " = " + items[i].label);
    return;
  }
  items.push_back({label, std::move(c)});
}

int Prediction::find(const Congruence& c) const {
  for (size_t i = 0; i < items.size(); ++i)
    if (items[i].c == c) return static_cast<int>(i);
  return -1;
}

AbstractLattice Prediction::lattice() const {
  AbstractLattice L = from_congruences(congruences());
  for (auto& n : items) L.labels.push_back(n.label);
  return L;
}

std::vector<Congruence> Prediction::congruences() const {
  std::vector<Congruence> out;
  for (auto& n : items) out.push_back(n.c);
  return out;
}

namespace {

std::string group_name(IdealContext& X, int q, const std::vector<int>& members) {
  if (members.size() <= 1) return "1";
  for (auto& N : X.normals(q))
    if (N.members == members) return N.name;
  return "N" + std::to_string(members.size());
}

std::string ilab(int q) { return "I" + std::to_string(q); }

std::string with_n(const std::string& base, IdealContext& X, int p, const std::vector<int>& N) {
  return N.size() <= 1 ? base : base + "_" + group_name(X, p, N);
}

void add_r(Prediction& P, IdealContext& X, int q, const std::vector<int>& N) {
  P.add(with_n("R_" + ilab(q), X, X.next_rank(q), N), r_in(X, q, N));
}

// mu, lam, rho, R for the (retractable) pair (I_q, N)
void add_quad(Prediction& P, IdealContext& X, int q, const std::vector<int>& N) {
  int p = X.next_rank(q);
  P.add(with_n("mu_" + ilab(q), X, p, N), theta_named(X, q, MRel::H, N));
  P.add(with_n("lam_" + ilab(q), X, p, N), theta_named(X, q, MRel::L, N));
  P.add(with_n("rho_" + ilab(q), X, p, N), theta_named(X, q, MRel::R, N));
  add_r(P, X, q, N);
}

std::vector<int> ranks_between(IdealContext& X, int lo, int hi) {
  std::vector<int> out;
  for (int q : X.ranks())
    if (q >= lo && q < hi) out.push_back(q);
  return out;
}

// R_{I_q,N} for the given q and every N normal in the next group
void add_r_layers(Prediction& P, IdealContext& X, const std::vector<int>& qs) {
  for (int q : qs)
    for (auto& N : X.normals(X.next_rank(q))) add_r(P, X, q, N.members);
}

std::string rgs_string(const std::vector<int>& v) {
  static const char* digits = "0123456789abcdefghijklmnopqrstuvwxyz";
  std::string s;
  for (int x : v) s += digits[x % 36];
  return s;
}

std::vector<std::vector<int>> all_rgs(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int i, int mx) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= mx + 1; ++v) {
      cur.push_back(v);
      rec(i + 1, std::max(mx, v));
      cur.pop_back();
    }
  };
  rec(0, -1);
  return out;
}

struct PrbShape {
  int d = -1;
  // per object: sorted R-class ids of M with bd = A, L-class ids with br = A
  std::vector<std::vector<int>> xs, ys;
};

PrbShape prb_shape(IdealContext& X) {
  PrbShape sh;
  sh.d = X.d_class(X.min_rank());
  if (!is_h_trivial_class(X.G, sh.d)) throw HypothesisError("minimal ideal is not H-trivial");
  if (!d_class_regular(X, sh.d)) throw HypothesisError("minimal ideal is not regular");
  if (!d_class_stable(X, sh.d)) throw HypothesisError("minimal ideal is not stable");
  int k = X.S.n_objects;
  std::vector<std::set<int>> xs(k), ys(k);
  for (Idx x : X.G.d_members[sh.d]) {
    xs[X.S.bd[x]].insert(X.G.r_class[x]);
    ys[X.S.br[x]].insert(X.G.l_class[x]);
  }
  for (int a = 0; a < k; ++a) {
    sh.xs.emplace_back(xs[a].begin(), xs[a].end());
    sh.ys.emplace_back(ys[a].begin(), ys[a].end());
  }
  return sh;
}

bool pair_in(const Congruence& big, const Congruence& small) { return contains(big, small); }

// a class of sigma meets both D-classes
bool meets(const IdealContext& X, const Congruence& sigma, int dhi, int dlo) {
  std::vector<char> hi(X.S.n, 0);
  for (Idx x : X.G.d_members[dhi]) hi[sigma.cls[x]] = 1;
  for (Idx x : X.G.d_members[dlo])
    if (hi[sigma.cls[x]]) return true;
  return false;
}

// for x in D_hi, y in D_hi not H-related with x ~ y, cg(x,y) reaches D_lo
void check_drop(IdealContext& X, int dhi, int dlo, const std::string& item) {
  const auto& S = X.S;
  for (Idx x : X.G.d_members[dhi])
    for (Idx y : S.homset(S.bd[x], S.br[x])) {
      if (y <= x || X.G.d_class[y] != dhi || X.G.h_class[y] == X.G.h_class[x]) continue;
      if (!meets(X, principal_congruence(S, {{x, y}}), dhi, dlo))
        throw HypothesisError(item + " fails at " + S.name(x) + ", " + S.name(y));
    }
}

// for all x ~ y with (x,y) outside `skip`, target is contained in cg(x,y)
void check_contains(IdealContext& X, const Congruence& target,
                    const std::function<bool(Idx, Idx)>& skip, const std::string& item) {
  const auto& S = X.S;
  for (auto& h : S.hom)
    for (size_t i = 0; i < h.size(); ++i)
      for (size_t j = i + 1; j < h.size(); ++j) {
        if (skip(h[i], h[j])) continue;
        if (!pair_in(principal_congruence(S, {{h[i], h[j]}}), target))
          throw HypothesisError(item + " fails at " + S.name(h[i]) + ", " + S.name(h[j]));
      }
}

bool r_tilde_trivial(const IdealContext& X, int d, bool use_r) {
  std::map<std::tuple<int, int, int>, int> seen;
  for (Idx x : X.G.d_members[d]) {
    int cls = use_r ? X.G.r_class[x] : X.G.l_class[x];
    if (++seen[{X.S.bd[x], X.S.br[x], cls}] > 1) return false;
  }
  return true;
}

void require_height(IdealContext& X, size_t h) {
  if (X.C.d_sorted.size() != h)
    throw HypothesisError("expected a chain of ideals of height " + std::to_string(h) + ", found " +
                          std::to_string(X.C.d_sorted.size()));
  if (!is_h_trivial_class(X.G, X.C.d_sorted[0])) throw HypothesisError("D0 is not H-trivial");
}

void build_small_ideal(Prediction& P, IdealContext& X) {
  Prediction base = predict_prb(X);
  int t = X.top_rank();
  auto R = build_retraction(X, t);
  if (!R) throw HypothesisError("the ideal is not retractable");
  const auto& E = X.embedding(t);
  for (auto& tau : base.items)
    for (auto& N : X.normals(t)) {
      std::string lab = N.order() <= 1 ? tau.label : tau.label + "+nu_" + N.name;
      Congruence c = N.order() <= 1 ? tau.c : join(tau.c, nu(X.S, X.G, E.group, N.members));
      P.add(lab, std::move(c));
    }
  for (auto& tau : base.items) P.add("theta_" + ilab(t) + "[" + tau.label + "]", theta(X.S, *R, tau.c));
  for (auto& f : R->findings) P.notes.push_back("retraction: " + f);
}

void build_small01(Prediction& P, IdealContext& X) {
  int q0 = X.min_rank();
  P.add("Delta", diagonal(X.S.n));
  P.add("lam_" + ilab(q0), theta_named(X, q0, MRel::L, {}));
  P.add("rho_" + ilab(q0), theta_named(X, q0, MRel::R, {}));
  add_r_layers(P, X, {q0});
  P.add("Nabla", hom_universal(X.S));
}

// H bound for the middle ideal: the members allowed for N in the quads
void build_small012(Prediction& P, IdealContext& X, const std::function<bool(const NormalSubgroup&)>& below_h) {
  auto rk = X.ranks();
  int q0 = rk[0], q1 = rk[1];
  for (auto& N : X.normals(q1)) add_quad(P, X, q0, N.members);
  for (auto& N : X.normals(rk[2]))
    if (below_h(N)) add_quad(P, X, q1, N.members);
  for (auto& N : X.normals(rk[2]))
    if (!below_h(N)) add_r(P, X, q1, N.members);
  P.add("Nabla", hom_universal(X.S));
}

}  // namespace

// ---- PRB

Prediction predict_prb(IdealContext& X) {
  PrbShape sh = prb_shape(X);
  int k = X.S.n_objects;
  // one factor per object and side
  std::vector<std::vector<std::vector<int>>> factors;
  size_t total = 1;
  for (int a = 0; a < k; ++a) factors.push_back(all_rgs(static_cast<int>(sh.xs[a].size())));
  for (int a = 0; a < k; ++a) factors.push_back(all_rgs(static_cast<int>(sh.ys[a].size())));
  for (auto& f : factors) {
    total *= f.size();
    if (total > 100000) throw GuardError("partial rectangular band has too many congruences");
  }
  std::vector<int> rpos(X.G.n_r, -1), lpos(X.G.n_l, -1);
  for (int a = 0; a < k; ++a) {
    for (size_t i = 0; i < sh.xs[a].size(); ++i) rpos[sh.xs[a][i]] = static_cast<int>(i);
    for (size_t i = 0; i < sh.ys[a].size(); ++i) lpos[sh.ys[a][i]] = static_cast<int>(i);
  }
  Prediction P;
  std::vector<size_t> digit(factors.size(), 0);
  const auto& S = X.S;
  for (size_t count = 0; count < total; ++count) {
    std::string lab = "sigma[";
    for (size_t f = 0; f < factors.size(); ++f) {
      if (f == static_cast<size_t>(k)) lab += "|";
      else if (f > 0) lab += "/";
      lab += rgs_string(factors[f][digit[f]]);
    }
    lab += "]";
    std::map<std::tuple<int, int, int, int>, Idx> ids;
    std::vector<Idx> labels(S.n);
    for (Idx x = 0; x < S.n; ++x) {
      if (X.G.d_class[x] != sh.d) {
        labels[x] = x;
        continue;
      }
      int a = S.bd[x], b = S.br[x];
      int c1 = factors[a][digit[a]][rpos[X.G.r_class[x]]];
      int c2 = factors[k + b][digit[k + b]][lpos[X.G.l_class[x]]];
      auto key = std::make_tuple(a, b, c1, c2);
      labels[x] = static_cast<Idx>(S.n) + ids.emplace(key, static_cast<Idx>(ids.size())).first->second;
    }
    Congruence c = canonical_from_labels(labels);
    P.add(c == diagonal(S.n) ? "Delta" : lab, std::move(c));
    for (size_t f = 0; f < factors.size(); ++f) {
      if (++digit[f] < factors[f].size()) break;
      digit[f] = 0;
    }
  }
  if (P.items.size() != total) P.notes.push_back("distinct congruences fewer than the product count");
  return P;
}

AbstractLattice prb_lattice(IdealContext& X) {
  PrbShape sh = prb_shape(X);
  AbstractLattice L = chain(1);
  for (auto* side : {&sh.xs, &sh.ys})
    for (auto& v : *side) {
      AbstractLattice f = eq_lattice(static_cast<int>(v.size()));
      if (L.size() * f.size() > 5000) throw LatticeGuardError("product lattice above 5000 nodes");
      L = direct_product(L, f);
    }
  return L;
}

// ---- small ideals

Prediction predict_small(IdealContext& X, SmallVariant v) {
  Prediction P;
  auto& d = X.C.d_sorted;
  switch (v) {
    case SmallVariant::RetractableH2: {
      require_height(X, 2);
      check_drop(X, d[1], d[0], "drop condition on D1");
      P.notes.push_back("hypotheses: height 2, D0 H-trivial, retractable, drop condition");
      build_small_ideal(P, X);
      break;
    }
    case SmallVariant::NonretractH2: {
      require_height(X, 2);
      check_drop(X, d[1], d[0], "item (i)");
      const auto& G = X.G;
      int q0 = X.min_rank();
      Congruence rho = theta_named(X, q0, MRel::R, {});
      Congruence lam = theta_named(X, q0, MRel::L, {});
      check_contains(X, rho, [&](Idx x, Idx y) { return G.l_class[x] == G.l_class[y]; }, "item (ii)");
      check_contains(X, lam, [&](Idx x, Idx y) { return G.r_class[x] == G.r_class[y]; }, "item (iii)");
      const auto& E = X.embedding(X.top_rank());
      for (int side = 0; side < 2; ++side) {
        bool trivial = r_tilde_trivial(X, d[0], side == 0);
        if (trivial) continue;
        Idx e = E.group.identity;
        for (size_t g = 1; g < E.group.order(); ++g) {
          Idx x = E.group.elements[g];
          bool found = false;
          for (Idx a : G.d_members[d[0]]) {
            if (side == 0 && X.S.composable(a, e) && X.S.compose(a, e) != X.S.compose(a, x)) found = true;
            if (side == 1 && X.S.composable(e, a) && X.S.compose(e, a) != X.S.compose(x, a)) found = true;
            if (found) break;
          }
          if (!found) throw HypothesisError(side == 0 ? "item (iv) fails" : "item (v) fails");
        }
      }
      P.notes.push_back("hypotheses (i)-(v) verified");
      build_small01(P, X);
      break;
    }
    case SmallVariant::NonretractH3: {
      if (d.size() != 3) throw HypothesisError("expected a chain of ideals of height 3");
      if (!is_h_trivial_class(X.G, d[0])) throw HypothesisError("D0 is not H-trivial");
      auto rk = X.ranks();
      auto R = build_retraction(X, rk[1]);
      if (!R) throw HypothesisError("the ideal D0 u D1 is not retractable");
      PropertyReport rep = check_properties(X, PropertyOptions{false, true});
      if (!rep.sep.holds) throw HypothesisError("Sep fails: " + rep.sep.witness);
      check_drop(X, d[1], d[0], "item (i)");
      const auto& G = X.G;
      auto rel_f = [&](Idx x, Idx y, bool use_l) {
        if (!R->in_ideal[x] || !R->in_ideal[y]) return false;
        Idx fx = R->f[x], fy = R->f[y];
        return use_l ? G.l_class[fx] == G.l_class[fy] : G.r_class[fx] == G.r_class[fy];
      };
      int q0 = rk[0];
      Congruence rho = theta_named(X, q0, MRel::R, {});
      Congruence lam = theta_named(X, q0, MRel::L, {});
      check_contains(X, rho, [&](Idx x, Idx y) { return G.l_class[x] == G.l_class[y] || rel_f(x, y, true); },
                     "item (ii)");
      check_contains(X, lam, [&](Idx x, Idx y) { return G.r_class[x] == G.r_class[y] || rel_f(x, y, false); },
                     "item (iii)");
      // item (iv): the largest retractable N with the separation condition outside it
      const auto& E = X.embedding(rk[2]);
      Idx e = E.group.identity;
      auto separated = [&](Idx x) {
        bool left = false, right = false;
        for (Idx a : G.d_members[d[0]]) {
          if (X.S.composable(a, e) && X.S.compose(a, e) != X.S.compose(a, x)) left = true;
          if (X.S.composable(e, a) && X.S.compose(e, a) != X.S.compose(x, a)) right = true;
        }
        return left && right;
      };
      const NormalSubgroup* H = nullptr;
      const auto& subs = X.normals(rk[2]);
      for (auto it = subs.rbegin(); it != subs.rend() && !H; ++it) {
        if (!in_pair_retractable(X, rk[1], it->members)) continue;
        bool ok = true;
        for (size_t g = 0; g < E.group.order() && ok; ++g)
          if (!std::binary_search(it->members.begin(), it->members.end(), static_cast<int>(g)))
            ok = separated(E.group.elements[g]);
        if (ok) H = &*it;
      }
      if (!H) throw HypothesisError("item (iv): no retractable IN-pair (S,H) with the separation condition");
      P.notes.push_back("hypotheses verified; H = " + H->name);
      std::vector<int> hm = H->members;
      build_small012(P, X, [&](const NormalSubgroup& N) {
        return std::includes(hm.begin(), hm.end(), N.members.begin(), N.members.end());
      });
      break;
    }
  }
  return P;
}

// ---- classification dispatch

Prediction predict_theorem(IdealContext& X) {
  Family f = X.spec.family;
  int r = X.r;
  int m0 = X.min_rank();
  Prediction P;
  if (f == Family::L) return predict_tuples(X);
  if (f == Family::PL) {
    if (r == m0) {
      P.add("Nabla", hom_universal(X.S));
      return P;
    }
    add_r_layers(P, X, ranks_between(X, m0, r));
    P.add("Nabla", hom_universal(X.S));
    return P;
  }
  if (r == m0) return predict_prb(X);

  if (is_transformation_family(f)) {
    P.add("Delta", diagonal(X.S.n));
    add_r_layers(P, X, ranks_between(X, m0, r));
    P.add("Nabla", hom_universal(X.S));
    return P;
  }
  if (!is_brauer_family(f)) {  // P, PB, Motzkin and the planar/annular reducts
    auto rk = X.ranks();
    if (r == rk[1]) {
      build_small_ideal(P, X);
      return P;
    }
    for (int q : {rk[0], rk[1]})
      for (auto& N : X.normals(X.next_rank(q))) add_quad(P, X, q, N.members);
    add_r_layers(P, X, ranks_between(X, rk[2], r));
    P.add("Nabla", hom_universal(X.S));
    return P;
  }
  bool odd = X.spec.objects.front() % 2 == 1;
  if (odd) {
    P.add("Delta", diagonal(X.S.n));
    P.add("lam_" + ilab(m0), theta_named(X, m0, MRel::L, {}));
    P.add("rho_" + ilab(m0), theta_named(X, m0, MRel::R, {}));
    add_r_layers(P, X, ranks_between(X, m0, r));
    P.add("Nabla", hom_universal(X.S));
    return P;
  }
  if (r == 2) {
    build_small_ideal(P, X);
    return P;
  }
  // even, r >= 4
  std::vector<int> klein;
  if (f == Family::B || f == Family::J || f == Family::Jpm) klein = klein_members(X.embedding(4));
  auto below_h = [&](const NormalSubgroup& N) {
    if (f == Family::TL || f == Family::TLpm) return true;
    return std::includes(klein.begin(), klein.end(), N.members.begin(), N.members.end());
  };
  for (auto& N : X.normals(2)) add_quad(P, X, 0, N.members);
  for (auto& N : X.normals(4))
    if (below_h(N)) add_quad(P, X, 2, N.members);
  add_r_layers(P, X, ranks_between(X, 2, r));
  P.add("Nabla", hom_universal(X.S));
  return P;
}

// ---- generic stacking

std::vector<Congruence> lifted_oracle(IdealContext& X, int k, const EnumOptions& opt) {
  PartialSemigroup I = restrict_to_ideal(X.S, X.ideal(k));
  CongruenceLattice L = all_congruences(I, opt);
  std::vector<Congruence> out;
  for (auto& c : L.nodes) out.push_back(extend_by_diagonal(I, c, X.S.n));
  return out;
}

Prediction predict_stacked(IdealContext& X, int k, const EnumOptions& opt) {
  Prediction P;
  auto base = lifted_oracle(X, k, opt);
  for (size_t i = 0; i < base.size(); ++i) P.add("base" + std::to_string(i) + "+Delta", base[i]);
  if (X.r > k) {
    add_r_layers(P, X, ranks_between(X, k, X.r));
    P.add("Nabla", hom_universal(X.S));
  }
  return P;
}

namespace {

std::string tuple_label(IdealContext& X, const std::vector<std::vector<int>>& t) {
  auto rk = X.ranks();
  std::string s = "Theta(";
  for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + group_name(X, rk[i], t[i]);
  return s + ")";
}

}  // namespace

Prediction predict_stacked_h(IdealContext& X, int k, const EnumOptions& opt) {
  Prediction P;
  auto base = lifted_oracle(X, k, opt);
  auto tuples = enumerate_nz_tuples(X);
  auto rk = X.ranks();
  std::vector<Congruence> thetas;
  for (auto& t : tuples) thetas.push_back(theta_tuple(X, t));
  std::vector<char> Ik = X.ideal(k);
  for (size_t i = 0; i < base.size(); ++i)
    for (size_t j = 0; j < thetas.size(); ++j) {
      bool inside = true;
      for (Idx x = 0; x < X.S.n && inside; ++x)
        if (Ik[x]) inside = base[i].related(x, thetas[j].cls[x]);
      if (inside) P.add("base" + std::to_string(i) + "+" + tuple_label(X, tuples[j]), join(base[i], thetas[j]));
    }
  for (int q : ranks_between(X, k, X.r)) {
    int p = X.next_rank(q);
    size_t pi = std::find(rk.begin(), rk.end(), p) - rk.begin();
    for (auto& N : X.normals(p)) {
      Congruence R = r_in(X, q, N.members);
      for (size_t j = 0; j < thetas.size(); ++j) {
        const auto& Np = tuples[j][pi];
        if (!std::includes(N.members.begin(), N.members.end(), Np.begin(), Np.end())) continue;
        P.add(with_n("R_" + ilab(q), X, p, N.members) + "+" + tuple_label(X, tuples[j]), join(R, thetas[j]));
      }
    }
  }
  P.add("Nabla", hom_universal(X.S));
  return P;
}

Prediction predict_tuples(IdealContext& X) {
  Prediction P;
  auto rk = X.ranks();
  int d0 = X.C.d_sorted[0];
  for (auto& h : X.S.hom) {
    size_t in_d0 = 0;
    for (Idx x : h) in_d0 += X.G.d_class[x] == d0;
    if (in_d0 > 1) throw HypothesisError("minimal ideal is not trivial");
  }
  // candidates per rank: normal subgroups inside Z_p
  std::map<int, std::vector<std::vector<int>>> zcands;
  for (int p : rk) {
    auto Z = z_subgroup(X, p);
    for (auto& N : X.normals(p))
      if (std::includes(Z.begin(), Z.end(), N.members.begin(), N.members.end())) zcands[p].push_back(N.members);
  }
  std::map<std::pair<int, std::vector<int>>, std::map<int, std::vector<int>>> downs;
  auto down = [&](int t, const std::vector<int>& N, int p) -> const std::vector<int>& {
    auto& m = downs[{t, N}];
    auto it = m.find(p);
    if (it == m.end()) it = m.emplace(p, n_down(X, t, N, p)).first;
    return it->second;
  };
  for (size_t qi = 0; qi + 1 < rk.size(); ++qi) {
    int q = rk[qi];
    if (rk.back() > X.r) break;
    std::vector<int> upper(rk.begin() + qi + 1, rk.end());  // q+1, q+2, ...
    for (auto& N1 : X.normals(upper[0])) {
      std::vector<std::vector<int>> chosen{N1.members};
      std::function<void(size_t)> rec = [&](size_t i) {
        if (i == upper.size()) {
          Congruence c = r_in(X, q, chosen[0]);
          std::string lab = "R_" + ilab(q) + "[" + group_name(X, upper[0], chosen[0]);
          for (size_t j = 1; j < chosen.size(); ++j) {
            if (chosen[j].size() > 1) c = join(c, nu(X.S, X.G, X.embedding(upper[j]).group, chosen[j]));
            lab += "," + group_name(X, upper[j], chosen[j]);
          }
          P.add(lab + "]", c);
          return;
        }
        for (auto& Nt : zcands[upper[i]]) {
          bool ok = true;
          for (size_t j = 0; j < i && ok; ++j) {
            const auto& d = down(upper[i], Nt, upper[j]);
            ok = std::includes(chosen[j].begin(), chosen[j].end(), d.begin(), d.end());
          }
          if (!ok) continue;
          chosen.push_back(Nt);
          rec(i + 1);
          chosen.pop_back();
        }
      };
      rec(1);
    }
  }
  P.add("Nabla", hom_universal(X.S));
  return P;
}

// ---- verification

std::string VerifyReport::line(bool timing) const {
  std::ostringstream o;
  o << family << " {";
  for (size_t i = 0; i < objects.size(); ++i) o << (i ? "," : "") << objects[i];
  o << "}";
  if (p) o << " p=" << p;
  o << " r=" << r << " |I_r|=" << n_elements << ": " << (equal ? "EQUAL" : "MISMATCH") << " predicted="
    << predicted << " oracle=" << oracle;
  if (isomorphic >= 0) o << " iso=" << (isomorphic ? "yes" : "no");
  if (timing) {
    o.precision(3);
    o << " (" << seconds << "s)";
  }
  return o.str();
}

VerifyReport verify_prediction(IdealContext& X, const Prediction& P, const CongruenceLattice& L) {
  VerifyReport rep;
  rep.family = family_name(X.spec.family);
  rep.objects = X.spec.objects;
  rep.p = is_linear_family(X.spec.family) ? X.spec.field_p : 0;
  rep.r = X.r;
  rep.n_elements = X.S.n;
  rep.predicted = P.items.size();
  rep.oracle = L.size();
  for (auto& n : P.items)
    if (L.find(n.c) < 0 && rep.missing.size() < 10) rep.missing.push_back(n.label);
  size_t matched = 0;
  for (size_t i = 0; i < L.size(); ++i) {
    if (P.find(L.nodes[i]) >= 0) {
      ++matched;
    } else if (rep.extra.size() < 10) {
      rep.extra.push_back("c" + std::to_string(i) + " (" + std::to_string(L.nodes[i].n_classes()) + " classes)");
    }
  }
  rep.equal = rep.missing.empty() && matched == L.size() && rep.predicted == rep.oracle;
  if (rep.equal && L.size() <= 5000) {
    rep.isomorphic = is_isomorphic(P.lattice(), from_congruence_lattice(L)) ? 1 : 0;
  }
  rep.notes = P.notes;
  for (auto& a : P.aliases) rep.notes.push_back("alias " + a);
  return rep;
}

VerifyReport verify_theorem(const FamilySpec& spec, int r, const EnumOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  auto X = IdealContext::make(spec, r, opt.force);
  Prediction P = predict_theorem(*X);
  CongruenceLattice L = all_congruences(X->S, opt);
  VerifyReport rep = verify_prediction(*X, P, L);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

void label_lattice(IdealContext& X, CongruenceLattice& L) {
  L.labels.assign(L.size(), "");
  auto set = [&](const std::string& lab, const Congruence& c) {
    int i = L.find(c);
    if (i >= 0 && L.labels[i].empty()) L.labels[i] = lab;
  };
  set("Delta", diagonal(X.S.n));
  set("Nabla", hom_universal(X.S));
  for (int q : X.ranks()) {
    if (q == X.r) continue;
    set("R_" + ilab(q), rees(X.S, X.ideal(q)));
    for (auto& N : X.normals(X.next_rank(q)))
      if (N.order() > 1) set(with_n("R_" + ilab(q), X, X.next_rank(q), N.members), r_in(X, q, N.members));
  }
  try {
    Prediction P = predict_theorem(X);
    for (auto& n : P.items) set(n.label, n.c);
  } catch (const std::exception&) {
  }
  for (size_t i = 0; i < L.size(); ++i)
    if (L.labels[i].empty()) L.labels[i] = "c" + std::to_string(i);
}

}  // namespace congwb
