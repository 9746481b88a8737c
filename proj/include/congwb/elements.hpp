#pragma once
// Concrete morphisms of the supported categories and hom-set generators.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace congwb {

using ObjectId = int;

struct Transformation {
  ObjectId dom_obj = 0, ran_obj = 0;
  int m = 0, n = 0;             // |A|, |B|
  std::vector<int> images;      // 0-based values in [0,n)
  bool operator==(const Transformation&) const = default;
};

// Vertices: top 0..m-1, bottom i' encoded as m+i. `label` is the
// restricted-growth block labelling, which is canonical.
struct Partition {
  ObjectId dom_obj = 0, ran_obj = 0;
  int m = 0, n = 0;
  std::vector<int> label;
  bool operator==(const Partition&) const = default;
  int n_blocks() const;
  std::vector<std::vector<int>> blocks() const;
};

// Row-major dim(A) x dim(B) over Z_p; composition is the ordinary product.
struct Matrix {
  ObjectId dom_obj = 0, ran_obj = 0;
  int rows = 0, cols = 0, p = 2;
  std::vector<int> entries;
  bool operator==(const Matrix&) const = default;
  int at(int i, int j) const { return entries[i * cols + j]; }
};

using Element = std::variant<Transformation, Partition, Matrix>;

struct ElementHash {
  size_t operator()(const Element& e) const;
};

enum class Family {
  T, OP_T, OPR_T, OriP_T, OriPR_T,
  P, PB, Motzkin, OP_P, OPR_P, OriP_P, OriPR_P,
  B, TL, TLpm, J, Jpm,
  L, PL
};

struct FamilySpec {
  Family family = Family::T;
  std::vector<int> objects;  // set sizes or dimensions
  int field_p = 2;
  void validate() const;     // throws SpecError
};

struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string family_name(Family f);
Family parse_family(const std::string& s);
bool is_transformation_family(Family f);
bool is_partition_family(Family f);
bool is_brauer_family(Family f);  // B, TL, TLpm, J, Jpm
bool is_linear_family(Family f);
// Smallest possible rank in the family (1 for maps, 0 otherwise).
int min_rank(Family f);

// ---- element operations
ObjectId dom_of(const Element& x);
ObjectId ran_of(const Element& x);
Element compose(const Element& x, const Element& y);
std::string to_string(const Element& x);

Transformation make_transformation(int m, int n, std::vector<int> images,
                                   ObjectId a = 0, ObjectId b = 0);
// blocks use 1-based top labels and negative numbers for bottom vertices
// (-1 is 1'), which is how diagrams are written by hand.
Partition make_partition(int m, int n, const std::vector<std::vector<int>>& blocks,
                         ObjectId a = 0, ObjectId b = 0);
Partition canon_partition(Partition x);
Partition identity_partition(int k, ObjectId a = 0);
Partition permutation_partition(const std::vector<int>& perm, ObjectId a = 0);
Partition star(const Partition& a);
Partition oplus(const Partition& a, const Partition& b);

int rank(const Element& x);
// For maps: kernel labels on the domain and sorted image. For partitions:
// the domain (top vertices in transversals) with the kernel labelling, and
// dually for the bottom. For matrices: left null space / row space in RREF.
struct SideData {
  std::vector<int> support;  // dom / codom / image
  std::vector<int> eq;       // canonical labelling (ker / coker); empty for maps' image side
  bool operator==(const SideData&) const = default;
};
SideData ker_data(const Element& x);
SideData coker_data(const Element& x);

bool is_planar(const Partition& a);
bool is_annular(const Partition& a);
bool is_anti_planar(const Partition& a);
bool is_anti_annular(const Partition& a);
Partition gamma_perm(int k, ObjectId a = 0);
Partition delta_perm(int k, ObjectId a = 0);

bool order_preserving(const Transformation& t);
bool order_reversing(const Transformation& t);
bool orientation_preserving(const Transformation& t);
bool orientation_reversing(const Transformation& t);

// hat map of the retractable ideal (rank<=1 partitions, rank<=2 Brauer).
Partition retract_hat(const Partition& a, Family f);

int matrix_rank(const Matrix& m);
Matrix pl_canonicalize(Matrix m);
Matrix matmul(const Matrix& a, const Matrix& b);

bool family_contains(Family f, const Element& x);
std::vector<Element> generate_homset(const FamilySpec& spec, ObjectId a, ObjectId b);

// Anchor idempotent id_q^natural on object `obj` of the family, if it is
// meaningful there (parity etc.).
std::optional<Element> natural_idempotent(const FamilySpec& spec, ObjectId obj, int q);

}  // namespace congwb
