#include "congwb/properties.hpp"

#include <unordered_map>

namespace congwb {

bool d_class_regular(const IdealContext& X, int d) {
  for (Idx e : X.G.idempotents)
    if (X.G.d_class[e] == d) return true;
  return false;
}

bool d_class_stable(const IdealContext& X, int d) {
  const auto& S = X.S;
  const auto& G = X.G;
  for (Idx x : G.d_members[d]) {
    for (Idx c : S.right_mult(x)) {
      Idx z = S.compose(x, c);
      if (G.d_class[z] == d && G.r_class[z] != G.r_class[x]) return false;
    }
    for (Idx c : S.left_mult(x)) {
      Idx z = S.compose(c, x);
      if (G.d_class[z] == d && G.l_class[z] != G.l_class[x]) return false;
    }
  }
  return true;
}

bool PropertyReport::consistent() const {
  auto imp = [](const PropertyResult& a, const PropertyResult& b) { return !a.holds || b.holds; };
  return imp(mult, sep) && imp(multz, sepz) && imp(multb, sepb) && imp(mult, multz) &&
         imp(multz, multb) && imp(sep, sepz) && imp(sepz, sepb) && imp(m1, s1) && imp(m2, s2) &&
         imp(m3, s3) && imp(m3z, s3z);
}

namespace {

struct Ctx {
  const PartialSemigroup& S;
  const GreenData& G;
  std::vector<char> inDT, inS, inDS;
};

std::string pair_name(const PartialSemigroup& S, Idx x, Idx y) {
  return "(" + S.name(x) + ", " + S.name(y) + ")";
}

// search a,b in T^1; cond(u,v) is tried in both orders
template <class Cond>
bool mult_search(const Ctx& c, Idx x, Idx y, Cond cond) {
  const auto& S = c.S;
  auto try_rights = [&](Idx ax, Idx ay) {
    if (cond(ax, ay) || cond(ay, ax)) return true;
    for (Idx b : S.right_mult(ax)) {
      Idx u = S.compose(ax, b), v = S.compose(ay, b);
      if (cond(u, v) || cond(v, u)) return true;
    }
    return false;
  };
  if (try_rights(x, y)) return true;
  for (Idx a : S.left_mult(x))
    if (try_rights(S.compose(a, x), S.compose(a, y))) return true;
  return false;
}

// a class of sigma meets D_S and spans two H-classes of S
bool sep_to_ds(const Ctx& c, const Congruence& sigma) {
  std::unordered_map<Idx, int> first_h;
  std::unordered_map<Idx, char> multi, has_ds;
  for (Idx x = 0; x < c.S.n; ++x) {
    if (!c.inS[x]) continue;
    Idx k = sigma.cls[x];
    auto [it, fresh] = first_h.emplace(k, c.G.h_class[x]);
    if (!fresh && it->second != c.G.h_class[x]) multi[k] = 1;
    if (c.inDS[x]) has_ds[k] = 1;
  }
  for (auto& [k, v] : multi)
    if (has_ds.count(k)) return true;
  return false;
}

// a class of sigma meets both D_T and S
bool sep_to_dt_s(const Ctx& c, const Congruence& sigma) {
  std::vector<char> seen_dt(c.S.n, 0);
  for (Idx x = 0; x < c.S.n; ++x)
    if (c.inDT[x]) seen_dt[sigma.cls[x]] = 1;
  for (Idx x = 0; x < c.S.n; ++x)
    if (c.inS[x] && seen_dt[sigma.cls[x]]) return true;
  return false;
}

}  // namespace

PropertyReport check_properties(IdealContext& X, const PropertyOptions& opt) {
  PropertyReport R;
  R.r = X.r;
  const auto& S = X.S;
  const auto& G = X.G;
  const auto& order = X.C.d_sorted;
  int dT = order.back();
  bool top_max = true;
  for (int d = 0; d < G.n_d; ++d) top_max = top_max && G.j_leq[d][dT];
  R.dmax.holds = top_max && d_class_regular(X, dT) && d_class_stable(X, dT);
  if (!R.dmax.holds) R.dmax.witness = "top D-class is not a regular stable maximum";

  Congruence nabla = hom_universal(S);
  if (opt.ngen && R.dmax.holds) {
    R.ngen.holds = true;
    for (Idx x : G.d_members[dT]) {
      for (Idx y : S.homset(S.bd[x], S.br[x])) {
        if (G.h_class[y] == G.h_class[x]) continue;
        if (!(principal_congruence(S, {{x, y}}) == nabla)) {
          R.ngen.holds = false;
          R.ngen.witness = pair_name(S, x, y);
          break;
        }
      }
      if (!R.ngen.holds) break;
    }
  }

  if (order.size() < 2) {
    R.dmax_below.witness = "no ideal below the top D-class";
    return R;
  }
  int dS = order[order.size() - 2];
  bool below_max = true;
  for (size_t i = 0; i + 1 < order.size(); ++i) below_max = below_max && G.j_leq[order[i]][dS];
  R.dmax_below.holds = below_max && d_class_regular(X, dS) && d_class_stable(X, dS);
  if (!R.dmax_below.holds) R.dmax_below.witness = "second D-class is not a regular stable maximum";

  Ctx c{S, G, std::vector<char>(S.n, 0), std::vector<char>(S.n, 0), std::vector<char>(S.n, 0)};
  for (Idx x = 0; x < S.n; ++x) {
    c.inDT[x] = G.d_class[x] == dT;
    c.inS[x] = !c.inDT[x];
    c.inDS[x] = G.d_class[x] == dS;
  }
  auto to_ds = [&](Idx u, Idx v) { return c.inDS[u] && c.inS[v] && G.h_class[u] != G.h_class[v]; };
  auto to_dt_s = [&](Idx u, Idx v) { return c.inDT[u] && c.inS[v]; };
  const Congruence& zeta = X.zeta();

  // kind: 1 = (x in D_T, y in S), 2 = D_T not H-related, 3 = H-related, 4 = H minus zeta
  auto run = [&](int kind, PropertyResult& m, PropertyResult& s) {
    m.holds = s.holds = true;
    size_t pairs = 0;
    for (Idx x : G.d_members[dT]) {
      for (Idx y : S.homset(S.bd[x], S.br[x])) {
        bool want = false;
        switch (kind) {
          case 1: want = c.inS[y]; break;
          case 2: want = c.inDT[y] && y > x && G.h_class[y] != G.h_class[x]; break;
          case 3: want = y > x && G.h_class[y] == G.h_class[x]; break;
          case 4: want = y > x && G.h_class[y] == G.h_class[x] && !zeta.related(x, y); break;
        }
        if (!want) continue;
        ++pairs;
        bool mm = kind == 2 ? mult_search(c, x, y, to_dt_s) : mult_search(c, x, y, to_ds);
        if (mm) continue;
        if (m.holds) m.holds = false, m.witness = pair_name(S, x, y);
        if (!opt.separation || !s.holds) continue;
        Congruence sigma = principal_congruence(S, {{x, y}});
        bool ss = kind == 2 ? sep_to_dt_s(c, sigma) : sep_to_ds(c, sigma);
        if (!ss) s.holds = false, s.witness = pair_name(S, x, y);
      }
    }
    if (m.holds) m.witness = std::to_string(pairs) + " pairs";
    if (s.holds) s.witness = std::to_string(pairs) + " pairs";
  };
  run(1, R.m1, R.s1);
  run(2, R.m2, R.s2);
  run(3, R.m3, R.s3);
  run(4, R.m3z, R.s3z);
  if (!opt.separation) R.s1 = R.s2 = R.s3 = R.s3z = PropertyResult{};

  bool base = R.dmax.holds && R.dmax_below.holds;
  auto combine = [&](PropertyResult& out, std::initializer_list<const PropertyResult*> items) {
    out.holds = base;
    if (!base) out.witness = R.dmax.holds ? R.dmax_below.witness : R.dmax.witness;
    for (auto* p : items)
      if (out.holds && !p->holds) out.holds = false, out.witness = p->witness;
  };
  combine(R.sep, {&R.s1, &R.s2, &R.s3});
  combine(R.sepb, {&R.s1, &R.s2});
  combine(R.sepz, {&R.s1, &R.s2, &R.s3z});
  combine(R.mult, {&R.m1, &R.m2, &R.m3});
  combine(R.multb, {&R.m1, &R.m2});
  combine(R.multz, {&R.m1, &R.m2, &R.m3z});
  return R;
}

}  // namespace congwb
