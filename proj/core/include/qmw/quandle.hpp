#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmw/abelian.hpp"
#include "qmw/permgroup.hpp"

namespace qmw {

/// A finite binary algebra on {0..n-1} given by its multiplication table,
/// table[a*n + b] = a*b.  Construction only checks that entries are in
/// range; use validate() for the quandle axioms.
class Quandle {
 public:
  Quandle() = default;
  Quandle(int n, std::vector<int> table);
  static Quandle from_rows(const std::vector<std::vector<int>>& rows);
  static Quandle projection(int n);
  /// Aff(A, f): x*y = (1 - f)(x) + f(y), elements in index order.
  static Quandle affine(const AbelianGroup& group, const Homomorphism& f);
  /// Pairs (a, b) are indexed a * |right| + b.
  static Quandle direct_product(const Quandle& left, const Quandle& right);

  int size() const noexcept { return n_; }
  int operator()(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  const std::vector<int>& table() const noexcept { return table_; }
  std::vector<int> row(int a) const;

  /// x -> a*x.  Throws PreconditionError when the row is not a bijection.
  Permutation left(int a) const;
  /// x -> x*a as a plain map.
  std::vector<int> right(int a) const;

  /// The subalgebra on `elements` (which must be closed), relabelled in the
  /// given order.
  Quandle restrict_to(const std::vector<int>& elements) const;
  /// The algebra transported along the bijection `relabel` (old -> new).
  Quandle relabelled(const std::vector<int>& relabel) const;

  friend bool operator==(const Quandle&, const Quandle&) = default;

 private:
  int n_ = 0;
  std::vector<int> table_;
};

struct AxiomReport {
  bool idempotent = true;
  bool left_quasigroup = true;
  bool left_distributive = true;
  /// a with a*a != a.
  std::optional<int> idempotent_witness;
  /// (a, b1, b2) with a*b1 == a*b2 and b1 != b2.
  std::optional<std::array<int, 3>> quasigroup_witness;
  /// (a, b, c) with a*(b*c) != (a*b)*(a*c).
  std::optional<std::array<int, 3>> distributive_witness;

  bool ok() const { return idempotent && left_quasigroup && left_distributive; }
  /// One line per failing axiom, empty when all hold.
  std::string describe() const;
};

AxiomReport validate(const Quandle& q);

/// (xy)(uv) == (xu)(yv) over all quadruples.
bool is_medial_by_identity(const Quandle& q);
/// Dis(Q) abelian, by generator commutation.
bool is_medial_by_displacement(const Quandle& q);
/// Runs both methods; throws ConsistencyError if they disagree.
bool is_medial(const Quandle& q);

/// The generators L_a L_0^{-1} (a != 0) of Dis(Q), identities dropped.
std::vector<Permutation> dis_generators(const Quandle& q);
PermGroup dis(const Quandle& q, std::size_t cap = PermGroup::kDefaultCap);
PermGroup lmlt(const Quandle& q, std::size_t cap = PermGroup::kDefaultCap);
/// Orbits of LMlt(Q), each sorted, ordered by minimum.
std::vector<std::vector<int>> orbits(const Quandle& q);

/// The orbit Qe as an abelian group with neutral element e, identified with
/// a canonical AbelianGroup.
struct OrbitChart {
  int base = 0;
  std::vector<int> orbit;              // sorted quandle elements
  std::vector<int> add_table;          // over orbit positions, |Qe| x |Qe|
  AbelianGroup group;
  std::vector<int> to_group;           // quandle element -> group index, -1 off the orbit
  std::vector<int> from_group;         // group index -> quandle element
  Homomorphism translation = Homomorphism::zero(AbelianGroup(), AbelianGroup());  // L_e

  /// Aff(group, translation), the orbit as an affine quandle.
  Quandle chart() const;
};

/// Precondition: Q medial.  Throws ConsistencyError when the orbit addition
/// is not an abelian group or L_e is not additive.
OrbitChart orbit_group(const Quandle& q, int e);

bool is_latin(const Quandle& q);
bool is_connected(const Quandle& q);
/// Least m >= 1 with (L_a)^m = 1 for every a.
int symmetry_order(const Quandle& q);
/// Least m <= cap with (R_y)^m constant onto y for every y; nullopt when
/// there is none (cap defaults to n).
std::optional<int> reductivity_degree(const Quandle& q, std::optional<int> cap = std::nullopt);

/// A bijection sigma with sigma(a*b) = sigma(a)*sigma(b), or nullopt.
std::optional<std::vector<int>> brute_force_iso(const Quandle& a, const Quandle& b);

/// All quandles of size n satisfying `predicate`, one per isomorphism class,
/// in discovery order.  Throws CapExceeded when n > cap.
std::vector<Quandle> brute_force_enumerate(int n,
                                           const std::function<bool(const Quandle&)>& predicate,
                                           int cap = 6);

}  // namespace qmw
