#include "congwb/elements.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace congwb {

namespace {

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

std::vector<int> rgs(const std::vector<int>& lab) {
  std::vector<int> out(lab.size());
  std::vector<int> seen;
  for (size_t i = 0; i < lab.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), lab[i]);
    if (it == seen.end()) {
      out[i] = static_cast<int>(seen.size());
      seen.push_back(lab[i]);
    } else {
      out[i] = static_cast<int>(it - seen.begin());
    }
  }
  return out;
}

size_t mix(size_t h, size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

int modpow(int b, int e, int p) {
  long r = 1, x = b % p;
  while (e) {
    if (e & 1) r = r * x % p;
    x = x * x % p;
    e >>= 1;
  }
  return static_cast<int>(r);
}

// Reduced row echelon form (nonzero rows only), rows x cols, mod p.
std::vector<int> rref(std::vector<int> a, int rows, int cols, int p, int* rk = nullptr) {
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (a[i * cols + c]) { piv = i; break; }
    if (piv < 0) continue;
    for (int j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[piv * cols + j]);
    int inv = modpow(a[r * cols + c], p - 2, p);
    for (int j = 0; j < cols; ++j) a[r * cols + j] = a[r * cols + j] * inv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || !a[i * cols + c]) continue;
      int f = a[i * cols + c];
      for (int j = 0; j < cols; ++j)
        a[i * cols + j] = ((a[i * cols + j] - f * a[r * cols + j]) % p + p) % p;
    }
    ++r;
  }
  if (rk) *rk = r;
  a.resize(static_cast<size_t>(r) * cols);
  return a;
}

std::vector<int> transpose(const Matrix& m) {
  std::vector<int> t(m.entries.size());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) t[j * m.rows + i] = m.at(i, j);
  return t;
}

// Position of a vertex in the boundary reading a_1..a_m, b_n'..b_1'.
int boundary_pos(int v, int m, int n) { return v < m ? v : m + (n - 1 - (v - m)); }

bool noncrossing(const std::vector<int>& lab_by_pos) {
  int nb = 0;
  for (int l : lab_by_pos) nb = std::max(nb, l + 1);
  std::vector<int> remaining(nb, 0);
  for (int l : lab_by_pos) ++remaining[l];
  std::vector<char> started(nb, 0);
  std::vector<int> stack;
  for (int l : lab_by_pos) {
    if (started[l]) {
      if (stack.empty() || stack.back() != l) return false;
    } else {
      started[l] = 1;
      stack.push_back(l);
    }
    if (--remaining[l] == 0) stack.pop_back();
  }
  return true;
}

}  // namespace

int Partition::n_blocks() const {
  int b = 0;
  for (int l : label) b = std::max(b, l + 1);
  return b;
}

std::vector<std::vector<int>> Partition::blocks() const {
  std::vector<std::vector<int>> out(n_blocks());
  for (int v = 0; v < m + n; ++v) out[label[v]].push_back(v);
  return out;
}

size_t ElementHash::operator()(const Element& e) const {
  size_t h = e.index();
  std::visit(
      [&](const auto& x) {
        h = mix(h, x.dom_obj);
        h = mix(h, x.ran_obj);
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Transformation>) {
          for (int v : x.images) h = mix(h, v);
        } else if constexpr (std::is_same_v<X, Partition>) {
          for (int v : x.label) h = mix(h, v);
        } else {
          for (int v : x.entries) h = mix(h, v);
        }
      },
      e);
  return h;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::T: return "T";
    case Family::OP_T: return "OP-T";
    case Family::OPR_T: return "OPR-T";
    case Family::OriP_T: return "OriP-T";
    case Family::OriPR_T: return "OriPR-T";
    case Family::P: return "P";
    case Family::PB: return "PB";
    case Family::Motzkin: return "Motzkin";
    case Family::OP_P: return "OP-P";
    case Family::OPR_P: return "OPR-P";
    case Family::OriP_P: return "OriP-P";
    case Family::OriPR_P: return "OriPR-P";
    case Family::B: return "B";
    case Family::TL: return "TL";
    case Family::TLpm: return "TLpm";
    case Family::J: return "J";
    case Family::Jpm: return "Jpm";
    case Family::L: return "L";
    case Family::PL: return "PL";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Family::PL); ++i)
    if (family_name(static_cast<Family>(i)) == s) return static_cast<Family>(i);
  throw SpecError("unknown family '" + s + "'");
}

bool is_transformation_family(Family f) { return f <= Family::OriPR_T; }
bool is_partition_family(Family f) { return f >= Family::P && f <= Family::Jpm; }
bool is_brauer_family(Family f) { return f >= Family::B && f <= Family::Jpm; }
bool is_linear_family(Family f) { return f == Family::L || f == Family::PL; }
int min_rank(Family f) { return is_transformation_family(f) ? 1 : 0; }

void FamilySpec::validate() const {
  if (objects.empty()) throw SpecError("object list is empty");
  for (int k : objects)
    if (k < 1 || k > 12) throw SpecError("object sizes must lie in 1..12");
  if (is_linear_family(family)) {
    if (field_p != 2 && field_p != 3 && field_p != 5 && field_p != 7)
      throw SpecError("field must be a prime in {2,3,5,7}");
  }
  if (is_brauer_family(family)) {
    bool ev = false, od = false;
    for (int k : objects) (k % 2 ? od : ev) = true;
    if (ev && od)
      throw SpecError(
          "mixed parity: this category is the disjoint union of its even and odd "
          "parts; run each part separately");
  }
}

ObjectId dom_of(const Element& x) {
  return std::visit([](const auto& e) { return e.dom_obj; }, x);
}
ObjectId ran_of(const Element& x) {
  return std::visit([](const auto& e) { return e.ran_obj; }, x);
}

Transformation make_transformation(int m, int n, std::vector<int> images, ObjectId a, ObjectId b) {
  Transformation t{a, b, m, n, std::move(images)};
  if (static_cast<int>(t.images.size()) != m) throw std::invalid_argument("image length");
  for (int v : t.images)
    if (v < 0 || v >= n) throw std::invalid_argument("image out of range");
  return t;
}

Partition canon_partition(Partition x) {
  x.label = rgs(x.label);
  return x;
}

Partition make_partition(int m, int n, const std::vector<std::vector<int>>& blocks, ObjectId a,
                         ObjectId b) {
  Partition p{a, b, m, n, std::vector<int>(m + n, -1)};
  for (size_t bi = 0; bi < blocks.size(); ++bi)
    for (int v : blocks[bi]) {
      int idx = v > 0 ? v - 1 : m + (-v - 1);
      if (idx < 0 || idx >= m + n || p.label[idx] != -1)
        throw std::invalid_argument("bad partition vertex");
      p.label[idx] = static_cast<int>(bi);
    }
  for (int l : p.label)
    if (l < 0) throw std::invalid_argument("partition does not cover all vertices");
  return canon_partition(p);
}

Partition identity_partition(int k, ObjectId a) {
  std::vector<int> id(k);
  std::iota(id.begin(), id.end(), 0);
  return permutation_partition(id, a);
}

Partition permutation_partition(const std::vector<int>& perm, ObjectId a) {
  int k = static_cast<int>(perm.size());
  Partition p{a, a, k, k, std::vector<int>(2 * k)};
  for (int i = 0; i < k; ++i) {
    p.label[i] = i;
    p.label[k + perm[i]] = i;
  }
  return canon_partition(p);
}

Partition gamma_perm(int k, ObjectId a) {
  std::vector<int> g(k);
  for (int i = 0; i < k; ++i) g[i] = k - 1 - i;
  return permutation_partition(g, a);
}

Partition delta_perm(int k, ObjectId a) {
  std::vector<int> d(k);
  for (int i = 0; i < k; ++i) d[i] = (i + 1) % k;
  return permutation_partition(d, a);
}

Partition star(const Partition& a) {
  Partition s{a.ran_obj, a.dom_obj, a.n, a.m, std::vector<int>(a.m + a.n)};
  for (int i = 0; i < a.n; ++i) s.label[i] = a.label[a.m + i];
  for (int j = 0; j < a.m; ++j) s.label[a.n + j] = a.label[j];
  return canon_partition(s);
}

Partition oplus(const Partition& a, const Partition& b) {
  int m = a.m + b.m, n = a.n + b.n, off = a.n_blocks();
  Partition s{0, 0, m, n, std::vector<int>(m + n)};
  for (int i = 0; i < a.m; ++i) s.label[i] = a.label[i];
  for (int i = 0; i < b.m; ++i) s.label[a.m + i] = off + b.label[i];
  for (int j = 0; j < a.n; ++j) s.label[m + j] = a.label[a.m + j];
  for (int j = 0; j < b.n; ++j) s.label[m + a.n + j] = off + b.label[b.m + j];
  return canon_partition(s);
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  Matrix c{a.dom_obj, b.ran_obj, a.rows, b.cols, a.p, std::vector<int>(a.rows * b.cols, 0)};
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      int v = a.at(i, k);
      if (!v) continue;
      for (int j = 0; j < b.cols; ++j)
        c.entries[i * b.cols + j] = (c.entries[i * b.cols + j] + v * b.at(k, j)) % a.p;
    }
  return c;
}

Matrix pl_canonicalize(Matrix m) {
  for (int v : m.entries)
    if (v) {
      int inv = modpow(v, m.p - 2, m.p);
      for (int& e : m.entries) e = e * inv % m.p;
      break;
    }
  return m;
}

int matrix_rank(const Matrix& m) {
  int r = 0;
  rref(m.entries, m.rows, m.cols, m.p, &r);
  return r;
}

namespace {

Partition compose_partitions(const Partition& a, const Partition& b) {
  if (a.n != b.m) throw std::invalid_argument("incompatible partitions");
  int m = a.m, k = a.n, n = b.n;
  DSU d(m + k + n);
  // vertex of alpha's block representatives and beta's
  std::vector<int> first_a(a.n_blocks(), -1), first_b(b.n_blocks(), -1);
  for (int v = 0; v < m + k; ++v) {
    int l = a.label[v];
    if (first_a[l] < 0) first_a[l] = v; else d.unite(v, first_a[l]);
  }
  for (int v = 0; v < k + n; ++v) {
    int l = b.label[v], g = m + v;
    if (first_b[l] < 0) first_b[l] = g; else d.unite(g, first_b[l]);
  }
  Partition c{a.dom_obj, b.ran_obj, m, n, std::vector<int>(m + n)};
  for (int i = 0; i < m; ++i) c.label[i] = d.find(i);
  for (int j = 0; j < n; ++j) c.label[m + j] = d.find(m + k + j);
  return canon_partition(c);
}

}  // namespace

Element compose(const Element& x, const Element& y) {
  if (x.index() != y.index()) throw std::invalid_argument("mixed element kinds");
  if (ran_of(x) != dom_of(y)) throw std::invalid_argument("incompatible objects");
  if (auto* t = std::get_if<Transformation>(&x)) {
    const auto& u = std::get<Transformation>(y);
    Transformation c{t->dom_obj, u.ran_obj, t->m, u.n, std::vector<int>(t->m)};
    for (int i = 0; i < t->m; ++i) c.images[i] = u.images[t->images[i]];
    return c;
  }
  if (auto* p = std::get_if<Partition>(&x)) return compose_partitions(*p, std::get<Partition>(y));
  const auto& a = std::get<Matrix>(x);
  return matmul(a, std::get<Matrix>(y));
}

std::string to_string(const Element& x) {
  std::ostringstream os;
  if (auto* t = std::get_if<Transformation>(&x)) {
    os << '[';
    for (int i = 0; i < t->m; ++i) os << (i ? "," : "") << t->images[i] + 1;
    os << ']';
  } else if (auto* p = std::get_if<Partition>(&x)) {
    for (auto& blk : p->blocks()) {
      os << '{';
      for (size_t i = 0; i < blk.size(); ++i) {
        if (i) os << ',';
        int v = blk[i];
        if (v < p->m) os << v + 1; else os << v - p->m + 1 << '\'';
      }
      os << '}';
    }
    if (p->m + p->n == 0) os << "{}";
  } else {
    const auto& m = std::get<Matrix>(x);
    os << '[';
    for (int i = 0; i < m.rows; ++i) {
      os << (i ? ",[" : "[");
      for (int j = 0; j < m.cols; ++j) os << (j ? "," : "") << m.at(i, j);
      os << ']';
    }
    os << ']';
  }
  return os.str();
}

int rank(const Element& x) {
  if (auto* t = std::get_if<Transformation>(&x)) {
    std::vector<int> im = t->images;
    std::sort(im.begin(), im.end());
    return static_cast<int>(std::unique(im.begin(), im.end()) - im.begin());
  }
  if (auto* p = std::get_if<Partition>(&x)) {
    int nb = p->n_blocks(), r = 0;
    std::vector<int> top(nb, 0), bot(nb, 0);
    for (int v = 0; v < p->m; ++v) top[p->label[v]] = 1;
    for (int v = p->m; v < p->m + p->n; ++v) bot[p->label[v]] = 1;
    for (int b = 0; b < nb; ++b) r += top[b] && bot[b];
    return r;
  }
  return matrix_rank(std::get<Matrix>(x));
}

namespace {

SideData partition_side(const Partition& p, bool top) {
  int nb = p.n_blocks();
  std::vector<int> has_top(nb, 0), has_bot(nb, 0);
  for (int v = 0; v < p.m; ++v) has_top[p.label[v]] = 1;
  for (int v = p.m; v < p.m + p.n; ++v) has_bot[p.label[v]] = 1;
  SideData s;
  int lo = top ? 0 : p.m, hi = top ? p.m : p.m + p.n;
  std::vector<int> lab;
  for (int v = lo; v < hi; ++v) {
    int l = p.label[v];
    if (has_top[l] && has_bot[l]) s.support.push_back(v - lo);
    lab.push_back(l);
  }
  s.eq = rgs(lab);
  return s;
}

}  // namespace

SideData ker_data(const Element& x) {
  if (auto* t = std::get_if<Transformation>(&x)) return {{}, rgs(t->images)};
  if (auto* p = std::get_if<Partition>(&x)) return partition_side(*p, true);
  const auto& m = std::get<Matrix>(x);
  SideData s{{m.rows}, rref(transpose(m), m.cols, m.rows, m.p)};
  return s;
}

SideData coker_data(const Element& x) {
  if (auto* t = std::get_if<Transformation>(&x)) {
    std::vector<int> im = t->images;
    std::sort(im.begin(), im.end());
    im.erase(std::unique(im.begin(), im.end()), im.end());
    return {im, {}};
  }
  if (auto* p = std::get_if<Partition>(&x)) return partition_side(*p, false);
  const auto& m = std::get<Matrix>(x);
  return {{m.cols}, rref(m.entries, m.rows, m.cols, m.p)};
}

bool is_planar(const Partition& a) {
  std::vector<int> by_pos(a.m + a.n);
  for (int v = 0; v < a.m + a.n; ++v) by_pos[boundary_pos(v, a.m, a.n)] = a.label[v];
  return noncrossing(by_pos);
}

bool is_annular(const Partition& a) {
  if (is_planar(a)) return true;
  // delta^{-1} = delta^{k-1}; iterate over all rotation powers on both sides.
  Partition left = identity_partition(a.m, a.dom_obj);
  Partition dm = delta_perm(a.m, a.dom_obj), dn = delta_perm(a.n, a.ran_obj);
  for (int i = 0; i < std::max(a.m, 1); ++i) {
    Partition cur = a.m ? compose_partitions(left, a) : a;
    for (int j = 0; j < std::max(a.n, 1); ++j) {
      if (is_planar(cur)) return true;
      if (a.n) cur = compose_partitions(cur, dn);
    }
    if (a.m) left = compose_partitions(left, dm);
  }
  return false;
}

bool is_anti_planar(const Partition& a) {
  bool left = a.m == 0 ? is_planar(a) : is_planar(compose_partitions(gamma_perm(a.m), a));
  bool right = a.n == 0 ? is_planar(a) : is_planar(compose_partitions(a, gamma_perm(a.n)));
  if (left != right) throw std::logic_error("anti-planarity characterizations disagree");
  return left;
}

bool is_anti_annular(const Partition& a) {
  bool left = a.m == 0 ? is_annular(a) : is_annular(compose_partitions(gamma_perm(a.m), a));
  bool right = a.n == 0 ? is_annular(a) : is_annular(compose_partitions(a, gamma_perm(a.n)));
  if (left != right) throw std::logic_error("anti-annularity characterizations disagree");
  return left;
}

bool order_preserving(const Transformation& t) {
  return std::is_sorted(t.images.begin(), t.images.end());
}

bool order_reversing(const Transformation& t) {
  return std::is_sorted(t.images.rbegin(), t.images.rend());
}

bool orientation_preserving(const Transformation& t) {
  int desc = 0, m = t.m;
  for (int i = 0; i < m; ++i) desc += t.images[i] > t.images[(i + 1) % m];
  return desc <= 1;
}

bool orientation_reversing(const Transformation& t) {
  int asc = 0, m = t.m;
  for (int i = 0; i < m; ++i) asc += t.images[i] < t.images[(i + 1) % m];
  return asc <= 1;
}

Partition retract_hat(const Partition& a, Family f) {
  int r = rank(Element{a});
  if (r == 0) return a;
  Partition out = a;
  int nb = a.n_blocks();
  if (is_brauer_family(f)) {
    if (r != 2) throw std::invalid_argument("retract_hat: rank above the retractable ideal");
    std::vector<int> tops, bots;
    for (int v = 0; v < a.m + a.n; ++v) {
      // transversal blocks have exactly one top and one bottom vertex
      int l = a.label[v];
      bool transversal = false;
      for (int w = 0; w < a.m + a.n; ++w)
        if (w != v && a.label[w] == l) transversal = (v < a.m) != (w < a.m);
      if (transversal) (v < a.m ? tops : bots).push_back(v);
    }
    out.label[tops[0]] = out.label[tops[1]] = nb;
    out.label[bots[0]] = out.label[bots[1]] = nb + 1;
    return canon_partition(out);
  }
  if (r != 1) throw std::invalid_argument("retract_hat: rank above the retractable ideal");
  std::vector<int> top(nb, 0), bot(nb, 0);
  for (int v = 0; v < a.m; ++v) top[a.label[v]] = 1;
  for (int v = a.m; v < a.m + a.n; ++v) bot[a.label[v]] = 1;
  for (int v = a.m; v < a.m + a.n; ++v)
    if (top[a.label[v]]) out.label[v] = nb;
  return canon_partition(out);
}

bool family_contains(Family f, const Element& x) {
  if (auto* t = std::get_if<Transformation>(&x)) {
    switch (f) {
      case Family::T: return true;
      case Family::OP_T: return order_preserving(*t);
      case Family::OPR_T: return order_preserving(*t) || order_reversing(*t);
      case Family::OriP_T: return orientation_preserving(*t);
      case Family::OriPR_T: return orientation_preserving(*t) || orientation_reversing(*t);
      default: return false;
    }
  }
  if (auto* p = std::get_if<Partition>(&x)) {
    if (!is_partition_family(f)) return false;
    auto bl = p->blocks();
    size_t maxb = 0, minb = 99;
    for (auto& b : bl) maxb = std::max(maxb, b.size()), minb = std::min(minb, b.size());
    bool brauer = bl.empty() || (maxb == 2 && minb == 2);
    switch (f) {
      case Family::P: return true;
      case Family::PB: return maxb <= 2;
      case Family::Motzkin: return maxb <= 2 && is_planar(*p);
      case Family::OP_P: return is_planar(*p);
      case Family::OPR_P: return is_planar(*p) || is_anti_planar(*p);
      case Family::OriP_P: return is_annular(*p);
      case Family::OriPR_P: return is_annular(*p) || is_anti_annular(*p);
      case Family::B: return brauer;
      case Family::TL: return brauer && is_planar(*p);
      case Family::TLpm: return brauer && (is_planar(*p) || is_anti_planar(*p));
      case Family::J: return brauer && is_annular(*p);
      case Family::Jpm: return brauer && (is_annular(*p) || is_anti_annular(*p));
      default: return false;
    }
  }
  if (f == Family::L) return true;
  if (f == Family::PL) return std::get<Matrix>(x) == pl_canonicalize(std::get<Matrix>(x));
  return false;
}

namespace {

// All set partitions of k points as RGS labellings, optionally limiting
// block sizes to at most `maxb` and, when `exact2`, to exactly 2.
void gen_partitions(int k, int maxb, bool exact2, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> lab(k, -1);
  std::vector<int> size;
  std::function<void(int)> rec = [&](int i) {
    if (i == k) {
      if (exact2)
        for (int s : size)
          if (s != 2) return;
      emit(lab);
      return;
    }
    if (exact2) {
      // prune: open singleton blocks must be completable
      int open = 0;
      for (int s : size) open += s == 1;
      if (open > k - i) return;
    }
    for (size_t b = 0; b < size.size(); ++b) {
      if (size[b] >= maxb) continue;
      lab[i] = static_cast<int>(b);
      ++size[b];
      rec(i + 1);
      --size[b];
    }
    lab[i] = static_cast<int>(size.size());
    size.push_back(1);
    rec(i + 1);
    size.pop_back();
  };
  rec(0);
}

}  // namespace

std::vector<Element> generate_homset(const FamilySpec& spec, ObjectId a, ObjectId b) {
  int m = spec.objects.at(a), n = spec.objects.at(b);
  std::vector<Element> out;
  Family f = spec.family;
  if (is_transformation_family(f)) {
    std::vector<int> img(m, 0);
    while (true) {
      Element e = Transformation{a, b, m, n, img};
      if (family_contains(f, e)) out.push_back(std::move(e));
      int i = m - 1;
      while (i >= 0 && img[i] == n - 1) img[i--] = 0;
      if (i < 0) break;
      ++img[i];
    }
  } else if (is_partition_family(f)) {
    if (is_brauer_family(f) && (m + n) % 2) return out;
    int maxb = (f == Family::PB || f == Family::Motzkin || is_brauer_family(f)) ? 2 : m + n;
    gen_partitions(m + n, std::max(maxb, 1), is_brauer_family(f), [&](const std::vector<int>& lab) {
      Element e = Partition{a, b, m, n, lab};
      if (family_contains(f, e)) out.push_back(std::move(e));
    });
  } else {
    int p = spec.field_p, sz = m * n;
    std::vector<int> ent(sz, 0);
    while (true) {
      Matrix mx{a, b, m, n, p, ent};
      if (f == Family::L || mx == pl_canonicalize(mx)) out.push_back(mx);
      int i = sz - 1;
      while (i >= 0 && ent[i] == p - 1) ent[i--] = 0;
      if (i < 0) break;
      ++ent[i];
    }
  }
  return out;
}

std::optional<Element> natural_idempotent(const FamilySpec& spec, ObjectId obj, int q) {
  int k = spec.objects.at(obj);
  if (q > k || q < min_rank(spec.family)) return std::nullopt;
  Family f = spec.family;
  Element e;
  if (is_transformation_family(f)) {
    std::vector<int> img(k);
    for (int i = 0; i < k; ++i) img[i] = std::min(i, q - 1);
    e = Transformation{obj, obj, k, k, img};
  } else if (is_partition_family(f)) {
    std::vector<int> lab(2 * k, -1);
    int next = 0;
    for (int i = 0; i < q; ++i) lab[i] = lab[k + i] = next++;
    if (is_brauer_family(f)) {
      if ((k - q) % 2) return std::nullopt;
      for (int i = q; i < k; i += 2) {
        lab[i] = lab[i + 1] = next++;
        lab[k + i] = lab[k + i + 1] = next++;
      }
    } else {
      for (int i = q; i < k; ++i) {
        lab[i] = next++;
        lab[k + i] = next++;
      }
    }
    e = canon_partition(Partition{obj, obj, k, k, lab});
  } else {
    Matrix mx{obj, obj, k, k, spec.field_p, std::vector<int>(k * k, 0)};
    for (int i = 0; i < q; ++i) mx.entries[i * k + i] = 1;
    e = mx;
  }
  if (!family_contains(f, e)) return std::nullopt;
  return e;
}

}  // namespace congwb
