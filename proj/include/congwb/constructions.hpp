#pragma once
// Named congruences: Rees, nu_N, R_{I,N}, retraction families, tau_N,
// N-down, NZ-tuples and the phi membership predicate.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "congwb/congruence.hpp"
#include "congwb/groups.hpp"

namespace congwb {

// One materialized ideal I_r (or the whole instance) with its Green data,
// chain, anchors and normal-subgroup lattices, computed on demand.
class IdealContext {
 public:
  FamilySpec spec;
  int r = 0;
  PartialSemigroup S;
  GreenData G;
  IdealChain C;

  IdealContext(const IdealContext&) = delete;
  IdealContext& operator=(const IdealContext&) = delete;

  // The ideal I_r of the family instance; r < 0 means the whole instance.
  static std::unique_ptr<IdealContext> make(const FamilySpec& spec, int r, bool force = false);
  static std::unique_ptr<IdealContext> wrap(const FamilySpec& spec, PartialSemigroup S);

  std::vector<int> ranks() const { return C.rank_of_class; }
  int min_rank() const { return C.rank_of_class.front(); }
  int top_rank() const { return C.rank_of_class.back(); }
  int next_rank(int q) const;  // -1 if none
  int d_class(int q) const { return C.d_at_rank(q); }
  std::vector<char> ideal(int q) const { return C.ideal_mask(q); }
  std::vector<char> d_mask(int q) const;

  const NaturalEmbedding& embedding(int q);
  const std::vector<NormalSubgroup>& normals(int q);
  const NormalSubgroup& normal_by_name(int q, const std::string& name);
  const Congruence& zeta();

 private:
  IdealContext() = default;
  void init();
  std::map<int, NaturalEmbedding> emb_;
  std::map<int, std::vector<NormalSubgroup>> normals_;
  std::optional<Congruence> zeta_;
};

Congruence rees(const PartialSemigroup& S, const std::vector<char>& ideal_mask);

// nu_N = cg{(e,g) : g in N} restricted to the D-class of e (diagonal elsewhere).
Congruence nu(const PartialSemigroup& S, const GreenData& G, const GroupHClass& H,
              const std::vector<int>& members);
// D(N x N)D intersected with D x D, computed by direct enumeration (test oracle).
Congruence nu_direct(const PartialSemigroup& S, const GreenData& G, const GroupHClass& H,
                     const std::vector<int>& members);
std::vector<int> recover_subgroup(const GroupHClass& H, const Congruence& c);

struct INError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// R_{I_q,N}: N is a normal subgroup of G_{next rank above q}.
Congruence r_in(IdealContext& X, int q, const std::vector<int>& members);

struct Retraction {
  std::vector<char> in_ideal;
  std::vector<Idx> f;          // f[x] for x in the ideal, UINT32_MAX elsewhere
  bool used_hat = false;
  std::vector<std::string> findings;  // e.g. multiple candidates
};

// Retraction of I_q onto the minimal ideal, or nullopt if none exists.
std::optional<Retraction> build_retraction(IdealContext& X, int q);
bool verify_retraction(const PartialSemigroup& S, const Retraction& R, const std::vector<char>& M);
bool check_axb(const PartialSemigroup& S, const Retraction& R, size_t samples = 0);

// Liftable congruences on M used by the theta family.
enum class MRel { L, R, H, Delta, Nabla };
Congruence m_relation(const IdealContext& X, MRel which);

Congruence theta(const PartialSemigroup& S, const Retraction& R, const Congruence& tau);
bool in_pair_retractable(IdealContext& X, int q, const std::vector<int>& members);
// lam/rho/mu/eta_{I_q,N}; members may be empty for the trivial subgroup.
Congruence theta_named(IdealContext& X, int q, MRel which, const std::vector<int>& members);

// tau_N = (nu_N)^sharp restricted to the ideal below the top D-class.
Congruence tau_n(IdealContext& X, const std::vector<int>& members);
// N down to rank p (N at rank q > p).
std::vector<int> n_down(IdealContext& X, int q, const std::vector<int>& members, int p);

// Theta(N) = union of nu_{N_q}; one subgroup per rank in ascending order.
Congruence theta_tuple(IdealContext& X, const std::vector<std::vector<int>>& tuple);
std::vector<int> z_subgroup(IdealContext& X, int q);
std::vector<std::vector<std::vector<int>>> enumerate_nz_tuples(IdealContext& X);

// (x,y) in nu_N via phi(x,y) in N, using a Green's-lemma bijection to G_q.
bool phi_in(IdealContext& X, Idx x, Idx y, const std::vector<int>& members);

// subgroups of the multiplicative group of Z_p, one per divisor of p-1
std::vector<std::vector<int>> unit_subgroups(int p);

}  // namespace congwb
